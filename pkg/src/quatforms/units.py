"""Unit groups of definite quaternion orders by exact finite enumeration.

The norm form restricted to generator coordinates is a positive definite
integer-valued quadratic form a^T G a.  Everything with norm 1 lies inside
the ellipsoid Q(a) <= 1, whose bounding box is read off the diagonal of
G^{-1}: |a_t| <= sqrt((G^{-1})_{tt}).  The box is tiny for the bundled
orders, so the scan is exact and exhaustive.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import isqrt, lcm
from typing import Sequence

from .algebra import Quat
from .order import Order, SingularBasisError, Vec4, invert_matrix


class DegenerateFormError(ValueError):
    """Gram matrix is singular; the proposed lattice is not full rank."""


def _isqrt_fraction_floor(x: Fraction) -> int:
    """floor(sqrt(p/q)) for a nonnegative rational, exactly."""
    if x < 0:
        raise ValueError("negative radicand")
    p, q = x.numerator, x.denominator
    return isqrt(p * q) // q


def norm_box_bounds(order: Order, value: int) -> Vec4:
    """Per-coordinate bounds enclosing every lattice vector of norm <= value.

    The ellipsoid a^T G a <= value projects onto coordinate t with extent
    sqrt(value * (G^{-1})_{tt}); the floor of each extent bounds the scan.
    """
    gram = order.gram()
    try:
        inv = invert_matrix(gram)
    except SingularBasisError as err:
        raise DegenerateFormError(f"order {order.name}: degenerate norm form") from err
    out = []
    for t in range(4):
        d = inv[t][t]
        if d < 0:
            raise DegenerateFormError(f"order {order.name}: norm form not definite")
        out.append(_isqrt_fraction_floor(value * d))
    return (out[0], out[1], out[2], out[3])


def coefficient_bounds(order: Order) -> Vec4:
    """Per-coordinate bounds enclosing every norm-1 lattice vector."""
    return norm_box_bounds(order, 1)


class UnitSet:
    """All units of an order, in canonical (lexicographic) coordinate order.

    The ordering is the tie-breaker for every deterministic search built on
    top (associate searches, residue tables), so it is fixed here once.
    """

    def __init__(self, order: Order, coords: Sequence[Vec4]) -> None:
        self.order = order
        self.coords: tuple[Vec4, ...] = tuple(sorted(tuple(c) for c in coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __contains__(self, coords: Vec4) -> bool:
        return tuple(coords) in set(self.coords)

    def quats(self) -> list[Quat]:
        return [self.order.element(c) for c in self.coords]

    def coord_set(self) -> frozenset[Vec4]:
        return frozenset(self.coords)

    def to_json(self) -> dict:
        return {
            "order": self.order.name,
            "count": len(self.coords),
            "units": [list(c) for c in self.coords],
        }


def enumerate_units(order: Order, bounds: Vec4 | None = None) -> UnitSet:
    """Exhaustive scan of the bounding box for vectors of norm exactly 1."""
    if bounds is None:
        bounds = coefficient_bounds(order)
    gram = order.gram()
    # common denominator so the comparison is pure integer arithmetic
    den = lcm(*(x.denominator for row in gram for x in row))
    g_int = [[int(x * den) for x in row] for row in gram]
    hits: list[Vec4] = []
    ranges = [range(-b, b + 1) for b in bounds]
    for a in product(*ranges):
        acc = 0
        for r in range(4):
            ar = a[r]
            if not ar:
                continue
            row = g_int[r]
            acc += ar * (row[0] * a[0] + row[1] * a[1] + row[2] * a[2] + row[3] * a[3])
        if acc == den:
            hits.append(a)
    return UnitSet(order, hits)


_UNIT_CACHE: dict[str, UnitSet] = {}


def units_of(order: Order) -> UnitSet:
    """Cached canonical unit set of a bundled (or any named) order."""
    us = _UNIT_CACHE.get(order.name)
    if us is None or us.order is not order:
        us = enumerate_units(order)
        _UNIT_CACHE[order.name] = us
    return us
