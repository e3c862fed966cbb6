"""Rank-4 lattices in a quaternion algebra: orders and diagonal target modules.

An Order is the Z-span of four generators that happens to be a ring with 1;
`verify_order` checks that claim instead of trusting it.  A DiagonalModule is
the simpler lattice Z[s1*1, s2*i, s3*j, s4*k], which carries a diagonal norm
form but usually is not a ring; associates of order elements are searched
inside such modules.

Coordinates come in two flavours and both appear in the API:
  * algebra coordinates: exact rationals in the basis 1, i, j, k;
  * generator coordinates: integers relative to the lattice basis.
Conversion is exact (Fraction Gaussian elimination, no floats).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .algebra import AlgebraParams, Quat

Vec4 = tuple[int, int, int, int]


class SingularBasisError(ValueError):
    """The four proposed generators do not span the algebra."""


class NotClosedError(ValueError):
    """A product of generators left the Z-span of the generators."""

    def __init__(self, row: int, col: int, product: Quat) -> None:
        self.row = row
        self.col = col
        self.product = product
        super().__init__(
            f"generator product g{row + 1}*g{col + 1} = {product} "
            f"is outside the Z-span"
        )


# -- exact 4x4 linear algebra ----------------------------------------------

def invert_matrix(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination; raises SingularBasisError."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == r)) for i in range(n)]
           for r, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularBasisError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _mat_vec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum(r[c] * v[c] for c in range(4)) for r in rows]


# -- multiplication tables -------------------------------------------------

@dataclass(frozen=True)
class MulTable:
    """Integer structure constants: entry (r, c) = generator coordinates of g_r * g_c."""

    order_name: str
    gen_names: tuple[str, str, str, str]
    entries: tuple[tuple[Vec4, ...], ...]

    def entry(self, row: int, col: int) -> Vec4:
        return self.entries[row][col]

    def render_entry(self, row: int, col: int) -> str:
        return combo_str(self.entries[row][col], self.gen_names)

    def render(self) -> str:
        """Aligned text grid, rows and columns indexed by the generators."""
        names = self.gen_names
        cells = [[""] + list(names)]
        for r in range(4):
            cells.append([names[r]] + [self.render_entry(r, c) for c in range(4)])
        widths = [max(len(row[c]) for row in cells) for c in range(5)]
        lines = []
        for idx, row in enumerate(cells):
            lines.append("  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)))
            if idx == 0:
                lines.append("-" * len(lines[0]))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "order": self.order_name,
            "generators": list(self.gen_names),
            "entries": [[list(e) for e in row] for row in self.entries],
        }


def combo_str(coords: Sequence[int], names: Sequence[str]) -> str:
    """Render an integer generator combination, highest generator first."""
    parts: list[str] = []
    for idx in range(3, -1, -1):
        c = coords[idx]
        if not c:
            continue
        body = names[idx] if abs(c) == 1 else f"{abs(c)}*{names[idx]}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


# -- orders ----------------------------------------------------------------

class Order:
    """Z-module with a distinguished basis inside a definite quaternion algebra.

    `basis_matrix` has the generator algebra coordinates as columns.  The
    instance precomputes the exact inverse for membership tests plus integer
    scalings of both matrices for the vectorised kernels.
    """

    def __init__(self, name: str, params: AlgebraParams, basis: Sequence[Quat],
                 gen_names: Optional[Sequence[str]] = None,
                 rounding_schedule: Optional[tuple] = None,
                 delta_bound: Optional[Fraction] = None) -> None:
        if len(basis) != 4:
            raise ValueError("an order needs exactly 4 generators")
        for g in basis:
            if g.params != params:
                raise ValueError("generator lives in a different algebra")
        self.name = name
        self.params = params
        self.basis: tuple[Quat, ...] = tuple(basis)
        self.gen_names: tuple[str, ...] = tuple(gen_names or ("g1", "g2", "g3", "g4"))
        self.rounding_schedule = rounding_schedule
        self.delta_bound = delta_bound

        # columns = generator coordinates
        self.basis_matrix: list[list[Fraction]] = [
            [basis[c].coords[r] for c in range(4)] for r in range(4)
        ]
        self.inv_matrix: list[list[Fraction]] = invert_matrix(self.basis_matrix)

        self.den: int = lcm(*(x.denominator for row in self.basis_matrix for x in row))
        self.col_num: list[list[int]] = [
            [int(x * self.den) for x in row] for row in self.basis_matrix
        ]
        self.inv_den: int = lcm(*(x.denominator for row in self.inv_matrix for x in row))
        self.inv_num: list[list[int]] = [
            [int(x * self.inv_den) for x in row] for row in self.inv_matrix
        ]
        self._mul_table: Optional[MulTable] = None

    def __repr__(self) -> str:
        return f"<Order {self.name} in {self.params}>"

    # -- elements ----------------------------------------------------------

    def element(self, coords: Sequence[int]) -> Quat:
        """Integer generator combination as a Quat."""
        out = Quat.zero(self.params)
        for c, g in zip(coords, self.basis):
            if c:
                out = out + g * int(c)
        return out

    def coords_in(self, q: Quat) -> Optional[Vec4]:
        """Integer generator coordinates of q, or None if q is not in the lattice."""
        if q.params != self.params:
            return None
        sol = _mat_vec(self.inv_matrix, q.coords)
        if any(x.denominator != 1 for x in sol):
            return None
        return (int(sol[0]), int(sol[1]), int(sol[2]), int(sol[3]))

    def __contains__(self, q: Quat) -> bool:
        return self.coords_in(q) is not None

    # -- ring structure ----------------------------------------------------

    def mul_table(self) -> MulTable:
        """Structure constants of the generator products; raises NotClosedError."""
        if self._mul_table is None:
            rows = []
            for r in range(4):
                row = []
                for c in range(4):
                    prod = self.basis[r] * self.basis[c]
                    coords = self.coords_in(prod)
                    if coords is None:
                        raise NotClosedError(r, c, prod)
                    row.append(coords)
                rows.append(tuple(row))
            self._mul_table = MulTable(self.name, tuple(self.gen_names), tuple(rows))
        return self._mul_table

    def mul_vec(self, a: Sequence[int], b: Sequence[int]) -> Vec4:
        """Product of two lattice elements in generator coordinates."""
        tab = self.mul_table().entries
        out = [0, 0, 0, 0]
        for r in range(4):
            ar = a[r]
            if not ar:
                continue
            row = tab[r]
            for c in range(4):
                bc = b[c]
                if not bc:
                    continue
                e = row[c]
                f = ar * bc
                out[0] += f * e[0]
                out[1] += f * e[1]
                out[2] += f * e[2]
                out[3] += f * e[3]
        return (out[0], out[1], out[2], out[3])

    def norm_vec(self, a: Sequence[int]) -> Fraction:
        q = self.element(a)
        return q.norm()

    def gram(self) -> list[list[Fraction]]:
        """Gram matrix of the norm form in generator coordinates."""
        w = self.params.norm_weights
        out = []
        for r in range(4):
            row = []
            gr = self.basis[r].coords
            for c in range(4):
                gc = self.basis[c].coords
                row.append(sum(Fraction(w[t]) * gr[t] * gc[t] for t in range(4)))
            out.append(row)
        return out


@dataclass(frozen=True)
class OrderReport:
    """Result of verify_order: named checks with pass/fail and detail text."""

    order_name: str
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, passed, detail in self.checks if not passed]

    def render(self) -> str:
        lines = [f"order {self.order_name}:"]
        for name, passed, detail in self.checks:
            flag = "ok " if passed else "FAIL"
            lines.append(f"  [{flag}] {name}: {detail}")
        return "\n".join(lines)


def verify_order(order: Order) -> OrderReport:
    """Check ring-with-1 structure: unit, closure, integrality, conjugation."""
    checks: list[tuple[str, bool, str]] = []

    one = order.coords_in(Quat.one(order.params))
    checks.append(("contains 1", one is not None,
                   f"coordinates {one}" if one else "1 is not an integer combination"))

    try:
        order.mul_table()
        checks.append(("multiplicative closure", True, "all 16 generator products inside"))
    except NotClosedError as err:
        checks.append(("multiplicative closure", False, str(err)))

    integral = True
    detail = []
    for g, nm in zip(order.basis, order.gen_names):
        nrm, tr = g.norm(), g.trace()
        if nrm.denominator != 1 or tr.denominator != 1:
            integral = False
            detail.append(f"{nm}: norm {nrm}, trace {tr}")
    checks.append(("integral norms and traces", integral,
                   "all generators integral" if integral else "; ".join(detail)))

    conj_ok = all(order.coords_in(g.conj()) is not None for g in order.basis)
    checks.append(("closed under conjugation", conj_ok,
                   "conjugates stay inside" if conj_ok else "a generator conjugate escapes"))

    return OrderReport(order.name, tuple(checks))


# -- diagonal modules ------------------------------------------------------

class DiagonalModule:
    """The lattice Z[s1*1, s2*i, s3*j, s4*k]; rarely a ring, always diagonal.

    Its norm form is diagonal with coefficients s_t^2 * w_t where w is the
    algebra's norm weight vector; `coords_in` is a divisibility check per
    coordinate, no elimination needed.
    """

    def __init__(self, params: AlgebraParams, scale: Sequence[int]) -> None:
        if len(scale) != 4 or any(int(s) <= 0 for s in scale):
            raise ValueError("scale must be 4 positive integers")
        self.params = params
        self.scale: Vec4 = tuple(int(s) for s in scale)

    @property
    def form_coeffs(self) -> Vec4:
        w = self.params.norm_weights
        return tuple(s * s * wt for s, wt in zip(self.scale, w))

    def element(self, coords: Sequence[int]) -> Quat:
        return Quat(self.params, *(int(c) * s for c, s in zip(coords, self.scale)))

    def coords_in(self, q: Quat) -> Optional[Vec4]:
        if q.params != self.params:
            return None
        out = []
        for c, s in zip(q.coords, self.scale):
            if c.denominator != 1 or int(c) % s:
                return None
            out.append(int(c) // s)
        return (out[0], out[1], out[2], out[3])

    def __contains__(self, q: Quat) -> bool:
        return self.coords_in(q) is not None

    def __str__(self) -> str:
        names = ("1", "i", "j", "k")
        gens = [nm if s == 1 else (f"{s}" if nm == "1" else f"{s}{nm}")
                for s, nm in zip(self.scale, names)]
        return "Z[" + ", ".join(gens) + "]"

    def __repr__(self) -> str:
        return f"<DiagonalModule {self} in {self.params}>"


# -- the built-in maximal orders -------------------------------------------

def _hurwitz() -> Order:
    P = AlgebraParams(-1, -1)
    h = Fraction(1, 2)
    return Order(
        "H111", P,
        (Quat.one(P), Quat.basis(P, 1), Quat.basis(P, 2), Quat(P, h, h, h, h)),
        gen_names=("1", "i", "j", "h"),
        rounding_schedule=(("coord", 3, 3), ("coord", 2, 2), ("coord", 1, 1), ("coord", 0, 0)),
        delta_bound=Fraction(1, 2),
    )


def _order_h122() -> Order:
    P = AlgebraParams(-1, -2)
    h = Fraction(1, 2)
    return Order(
        "H122", P,
        (Quat.one(P), Quat.basis(P, 1), Quat(P, h, h, h, 0), Quat(P, h, h, 0, h)),
        gen_names=("v1", "v2", "v3", "v4"),
        rounding_schedule=(("coord", 3, 3), ("coord", 2, 2), ("coord", 1, 1), ("coord", 0, 0)),
        delta_bound=Fraction(3, 4),
    )


def _order_h236() -> Order:
    P = AlgebraParams(-2, -3)
    return Order(
        "H236", P,
        (
            Quat.one(P),
            Quat(P, Fraction(1, 2), 0, Fraction(1, 2), 0),
            Quat(P, Fraction(1, 2), 0, Fraction(1, 6), Fraction(1, 3)),
            Quat(P, 0, Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)),
        ),
        gen_names=("w1", "w2", "w3", "w4"),
        rounding_schedule=(("coord", 3, 1), ("coord", 2, 3), ("coord", 1, 2), ("coord", 0, 0)),
        delta_bound=Fraction(35, 48),
    )


def _order_h133() -> Order:
    P = AlgebraParams(-1, -3)
    return Order(
        "H133", P,
        (
            Quat.one(P),
            Quat(P, 0, Fraction(1, 2), 0, Fraction(-1, 2)),
            Quat(P, 0, Fraction(1, 4), Fraction(1, 2), Fraction(-1, 4)),
            Quat(P, Fraction(1, 2), Fraction(3, 4), 0, Fraction(1, 4)),
        ),
        gen_names=("x1", "x2", "x3", "x4"),
        # x3 controls the j coordinate alone; x2 and x4 are solved jointly in
        # the (i, k) plane; x1 mops up the real part.
        rounding_schedule=(("coord", 2, 2), ("plane", (1, 3), (1, 3)), ("coord", 0, 0)),
        delta_bound=Fraction(7, 8),
    )


_BUILTIN: dict[str, Order] = {}


def builtin_orders() -> dict[str, Order]:
    """The four bundled maximal orders, keyed H111, H122, H236, H133."""
    if not _BUILTIN:
        for make in (_hurwitz, _order_h122, _order_h236, _order_h133):
            o = make()
            report = verify_order(o)
            if not report.ok:  # defensive: bundled data must be a ring
                raise AssertionError(f"bundled order failed checks: {report.failures()}")
            _BUILTIN[o.name] = o
    return _BUILTIN


def get_order(name: str) -> Order:
    orders = builtin_orders()
    key = name.upper()
    if key not in orders:
        raise KeyError(f"unknown order {name!r}; choose from {sorted(orders)}")
    return orders[key]
