"""Why x^2 + 2y^2 + 5z^2 + 10w^2 gets no quaternion pipeline.

The missing ingredient is a pure-imaginary unit: a lattice point of trace 0
whose norm equals its rational part squared, which after clearing
denominators becomes the Diophantine equation

    e^2 = 2 b^2 + 5 c^2 + 10 d^2,        e, b, c, d >= 1.

This module provides (a) an exhaustive scan showing the equation has no
solutions up to a bound, and (b) the infinite-descent step showing a
solution would force another one five times smaller, so no bound is ever
enough.  The descent hinges on 2 not being a square mod 5.
"""

from __future__ import annotations

from math import isqrt
from typing import NamedTuple

import numpy as np


class DescentError(ValueError):
    """The tuple fed to the descent is not actually a solution."""


class DescentState(NamedTuple):
    e: int
    b: int
    c: int
    d: int

    def equation_holds(self) -> bool:
        return self.e ** 2 == 2 * self.b ** 2 + 5 * self.c ** 2 + 10 * self.d ** 2

    def positive(self) -> bool:
        return all(v >= 1 for v in self)


def square_residues(m: int) -> list[int]:
    """Sorted set of quadratic residues modulo m (including 0)."""
    return sorted({(x * x) % m for x in range(m)})


def scale_down(s: DescentState) -> DescentState:
    """Divide all four entries by 5, checking divisibility entry by entry."""
    for name, v in zip(("e", "b", "c", "d"), s):
        if v % 5:
            raise DescentError(f"{name} = {v} is not divisible by 5")
    return DescentState(s.e // 5, s.b // 5, s.c // 5, s.d // 5)


def descent_step(s: DescentState) -> DescentState:
    """From one positive solution, produce the strictly smaller one.

    Mod 5 the equation reads e^2 = 2 b^2; since 2 is not among the squares
    mod 5 (they are 0, 1, 4), both e and b must vanish mod 5, and then
    c^2 + 2 d^2 = 0 mod 5 forces c and d to vanish as well.  Dividing by 5
    gives another positive solution, contradicting minimality; hence no
    solution exists at all and this function can never run to completion on
    honest input.
    """
    s = DescentState(*(int(v) for v in s))
    if not s.positive():
        raise DescentError(f"entries must be positive, got {tuple(s)}")
    if not s.equation_holds():
        raise DescentError(
            f"{s.e}^2 != 2*{s.b}^2 + 5*{s.c}^2 + 10*{s.d}^2; not a solution"
        )
    # the residue argument, kept executable: a true solution forces 5 | b
    # (else 2 = (e/b)^2 mod 5, but the squares mod 5 are 0, 1, 4), then
    # 5 | e, and the reduced c^2 + 2 d^2 = 0 mod 5 forces 5 | c and 5 | d
    if s.b % 5 or s.e % 5:
        raise AssertionError("2 surfaced as a square mod 5; impossible for a true solution")
    if s.c % 5 or s.d % 5:
        raise AssertionError("-2 surfaced as a square mod 5; impossible for a true solution")
    out = scale_down(s)
    if not out.equation_holds():
        raise AssertionError("scaling by 1/5 destroyed the equation")
    return out


def search_imaginary_unit(e_max: int) -> list[DescentState]:
    """All solutions with 1 <= e <= e_max, exhaustively; expected empty.

    Enumerates every (b, c, d) with 2b^2 + 5c^2 + 10d^2 <= e_max^2 and tests
    the sum for squareness.  Integer-exact: the float sqrt is only a guess
    that is confirmed with integer multiplication.
    """
    if e_max < 1:
        raise ValueError("e_max must be >= 1")
    cap = e_max * e_max
    hits: list[DescentState] = []
    d_top = isqrt(cap // 10)
    for d in range(1, d_top + 1):
        rem_d = cap - 10 * d * d
        if rem_d < 7:  # need at least 2 + 5
            break
        c_top = isqrt(rem_d // 5)
        for c in range(1, c_top + 1):
            rem = rem_d - 5 * c * c
            if rem < 2:
                break
            b_top = isqrt(rem // 2)
            if b_top < 1:
                continue
            b = np.arange(1, b_top + 1, dtype=np.int64)
            s = 2 * b * b + (cap - rem)
            e = np.rint(np.sqrt(s.astype(np.float64))).astype(np.int64)
            ok = np.flatnonzero(e * e == s)
            for idx in ok:
                hits.append(DescentState(int(e[idx]), int(b[idx]), c, d))
    return sorted(hits)
