"""Exact arithmetic in definite rational quaternion algebras.

An algebra is fixed by a pair of negative integers (m, n).  Elements live in
the basis 1, i, j, k with the relations

    i*i = m,    j*j = n,    k = i*j = -j*i.

Coordinates are exact rationals throughout, so the classical embedding into
the real quaternions (i -> sqrt(-m) I, j -> sqrt(-n) J, k -> sqrt(m*n) K)
never has to be evaluated numerically.  The norm form in these coordinates is

    N(a1 + a2 i + a3 j + a4 k) = a1^2 + (-m) a2^2 + (-n) a3^2 + (m n) a4^2,

which is positive definite exactly because m < 0 and n < 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class AlgebraMismatchError(ValueError):
    """Two operands belong to algebras with different (m, n)."""


@dataclass(frozen=True)
class AlgebraParams:
    """Structure constants (m, n) of the algebra; both must be negative."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise TypeError("algebra parameters must be integers")
        if self.m >= 0 or self.n >= 0:
            raise ValueError(
                f"definite algebra needs m < 0 and n < 0, got ({self.m}, {self.n})"
            )

    @property
    def norm_weights(self) -> tuple[int, int, int, int]:
        """Diagonal weights of the norm form in algebra coordinates."""
        return (1, -self.m, -self.n, self.m * self.n)

    def __str__(self) -> str:
        return f"({self.m},{self.n}/Q)"


def _reduce_word(word: str, m: int, n: int) -> tuple[int, int]:
    """Reduce a word in the letters i, j to (coefficient, basis index).

    Rewriting rules: ji -> -ij, ii -> m, jj -> n.  The surviving word is one
    of '', 'i', 'j', 'ij', reported as basis index 0..3.
    """
    letters = list(word)
    coef = 1
    changed = True
    while changed:
        changed = False
        for t in range(len(letters) - 1):
            if letters[t] == "j" and letters[t + 1] == "i":
                letters[t], letters[t + 1] = "i", "j"
                coef = -coef
                changed = True
    ni = letters.count("i")
    nj = letters.count("j")
    coef *= m ** (ni // 2) * n ** (nj // 2)
    idx = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}[(ni % 2, nj % 2)]
    return coef, idx


_WORDS = ("", "i", "j", "ij")
_PRODUCT_CACHE: dict[tuple[int, int], tuple] = {}


def basis_products(params: AlgebraParams):
    """4x4 table with entry (r, s) = (coef, idx) meaning e_r * e_s = coef * e_idx.

    Generated once per algebra by word reduction, not entered by hand.
    """
    key = (params.m, params.n)
    tab = _PRODUCT_CACHE.get(key)
    if tab is None:
        tab = tuple(
            tuple(_reduce_word(_WORDS[r] + _WORDS[s], params.m, params.n) for s in range(4))
            for r in range(4)
        )
        _PRODUCT_CACHE[key] = tab
    return tab


def _as_fraction(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Quat:
    """A quaternion with exact rational coordinates in the basis 1, i, j, k."""

    __slots__ = ("params", "coords")

    params: AlgebraParams
    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    def __init__(self, params: AlgebraParams, a1: Rational, a2: Rational,
                 a3: Rational, a4: Rational) -> None:
        object.__setattr__(self, "params", params)
        object.__setattr__(
            self, "coords",
            (_as_fraction(a1), _as_fraction(a2), _as_fraction(a3), _as_fraction(a4)),
        )

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("Quat is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, params: AlgebraParams) -> "Quat":
        return cls(params, 0, 0, 0, 0)

    @classmethod
    def one(cls, params: AlgebraParams) -> "Quat":
        return cls(params, 1, 0, 0, 0)

    @classmethod
    def basis(cls, params: AlgebraParams, idx: int) -> "Quat":
        c = [0, 0, 0, 0]
        c[idx] = 1
        return cls(params, *c)

    @classmethod
    def scalar(cls, params: AlgebraParams, x: Rational) -> "Quat":
        return cls(params, x, 0, 0, 0)

    # -- structure ---------------------------------------------------------

    def _check(self, other: "Quat") -> None:
        if self.params != other.params:
            raise AlgebraMismatchError(
                f"cannot combine elements of {self.params} and {other.params}"
            )

    def __add__(self, other: "Quat") -> "Quat":
        if not isinstance(other, Quat):
            return NotImplemented
        self._check(other)
        a, b = self.coords, other.coords
        return Quat(self.params, a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    def __sub__(self, other: "Quat") -> "Quat":
        if not isinstance(other, Quat):
            return NotImplemented
        self._check(other)
        a, b = self.coords, other.coords
        return Quat(self.params, a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])

    def __neg__(self) -> "Quat":
        a = self.coords
        return Quat(self.params, -a[0], -a[1], -a[2], -a[3])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quat(self.params, *(c * other for c in self.coords))
        if not isinstance(other, Quat):
            return NotImplemented
        self._check(other)
        tab = basis_products(self.params)
        out = [Fraction(0), Fraction(0), Fraction(0), Fraction(0)]
        a, b = self.coords, other.coords
        for r in range(4):
            ar = a[r]
            if not ar:
                continue
            row = tab[r]
            for s in range(4):
                bs = b[s]
                if not bs:
                    continue
                coef, idx = row[s]
                out[idx] += coef * ar * bs
        return Quat(self.params, *out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quat(self.params, *(other * c for c in self.coords))
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quat)
            and self.params == other.params
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.params, self.coords))

    def conj(self) -> "Quat":
        """Standard involution: fixes the real part, negates i, j, k parts."""
        a = self.coords
        return Quat(self.params, a[0], -a[1], -a[2], -a[3])

    def norm(self) -> Fraction:
        """Reduced norm; equals self * self.conj() and is >= 0."""
        w = self.params.norm_weights
        a = self.coords
        return w[0] * a[0] ** 2 + w[1] * a[1] ** 2 + w[2] * a[2] ** 2 + w[3] * a[3] ** 2

    def trace(self) -> Fraction:
        """Reduced trace 2*a1; equals self + self.conj()."""
        return 2 * self.coords[0]

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def real_part(self) -> Fraction:
        return self.coords[0]

    def inverse(self) -> "Quat":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conj() * Fraction(1, 1) * Fraction(n.denominator, n.numerator)

    def __str__(self) -> str:
        return format_quat(self)

    def __repr__(self) -> str:
        return f"Quat{self.params} {format_quat(self)}"


# -- operator-style entry points used by the rest of the package -----------

def mul(p: Quat, q: Quat) -> Quat:
    return p * q


def conj(q: Quat) -> Quat:
    return q.conj()


def norm(q: Quat) -> Fraction:
    return q.norm()


def trace(q: Quat) -> Fraction:
    return q.trace()


_BASIS_NAMES = ("", "i", "j", "k")


def format_quat(q: Quat) -> str:
    """Canonical text rendering: a1 + a2*i + a3*j + a4*k, rationals as p/q.

    Zero terms are dropped, the zero quaternion prints as "0".  The output
    parses back to the same element.
    """
    parts: list[str] = []
    for coef, name in zip(q.coords, _BASIS_NAMES):
        if not coef:
            continue
        mag = abs(coef)
        if name and mag == 1:
            body = name
        elif name:
            body = f"{mag}*{name}"
        else:
            body = str(mag)
        if not parts:
            parts.append(body if coef > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coef > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def coords_json(q: Quat) -> list[str]:
    """Coordinates as exact strings for JSON payloads."""
    return [str(c) for c in q.coords]
