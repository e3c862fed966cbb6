"""Norm-Euclidean division in definite quaternion orders.

`nearest_element` approximates an arbitrary rational quaternion t by a
lattice element in two exact stages:

  1. greedy sequential rounding along a per-order generator schedule (the
     schedule fixes which generator absorbs which algebra coordinate, and in
     which sequence);
  2. a bounded local search over {-1, 0, 1}^4 generator perturbations, which
     can only shrink the residual norm and breaks ties toward the greedy
     point, then lexicographically.

All arithmetic is integer arithmetic over a common denominator; rounding is
round-half-up, chosen because it is translation invariant (adding a lattice
vector to t shifts the answer by exactly that vector), which makes the grid
certificate in `verify_delta` representative of the whole space.

Division convention, stated once and relied on everywhere downstream:
`div_rem(a, b)` produces a LEFT quotient, a = g*b + h.  Iterating it keeps
common RIGHT divisors, so the Euclidean loop here computes right gcds and
the Bezout identity reads d = r*a + s*b with the coefficients multiplying
from the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .algebra import Quat
from .order import Order, Vec4


class EuclideanFailureError(ArithmeticError):
    """The residual norm reached 1; the order is not norm-Euclidean there."""


class DeltaBoundError(AssertionError):
    """A grid point exceeded the claimed Euclidean bound."""

    def __init__(self, order_name: str, residual: Fraction, bound: Fraction,
                 witness: tuple) -> None:
        self.residual = residual
        self.bound = bound
        self.witness = witness
        super().__init__(
            f"{order_name}: residual {residual} > bound {bound} at grid point {witness}"
        )


# ties prefer the greedy point, then lexicographic offset order
_OFFSETS: tuple[Vec4, ...] = ((0, 0, 0, 0),) + tuple(
    o for o in product((-1, 0, 1), repeat=4) if o != (0, 0, 0, 0)
)


def _nearest_int(p: int, q: int) -> int:
    """Nearest integer to p/q (q > 0), halves rounding up."""
    return (2 * p + q) // (2 * q)


# -- compiled rounding schedules -------------------------------------------

@dataclass(frozen=True)
class _CoordStep:
    gen: int
    coord: int
    vnum: int   # generator algebra coordinate as vnum/vden, must be positive
    vden: int


@dataclass(frozen=True)
class _PlaneStep:
    gens: tuple[int, int]
    coords: tuple[int, int]
    # per generator: (A, B, pden): coefficient = nearest((A*ra + B*rb)/(pden*den))
    rows: tuple[tuple[int, int, int], tuple[int, int, int]]


@dataclass(frozen=True)
class _SolveStep:
    """Fallback: round all four exact generator coordinates at once."""


def _compile_schedule(order: Order):
    cached = getattr(order, "_euclid_compiled", None)
    if cached is not None:
        return cached
    steps: list = []
    if order.rounding_schedule is None:
        steps.append(_SolveStep())
    else:
        for step in order.rounding_schedule:
            if step[0] == "coord":
                _, gen, coord = step
                v = order.basis_matrix[coord][gen]
                if v <= 0:
                    raise ValueError(f"schedule step {step}: coordinate must be positive")
                steps.append(_CoordStep(gen, coord, v.numerator, v.denominator))
            elif step[0] == "plane":
                _, gens, coords = step
                from .order import invert_matrix
                m2 = [[order.basis_matrix[coords[0]][gens[0]], order.basis_matrix[coords[0]][gens[1]]],
                      [order.basis_matrix[coords[1]][gens[0]], order.basis_matrix[coords[1]][gens[1]]]]
                det = m2[0][0] * m2[1][1] - m2[0][1] * m2[1][0]
                if not det:
                    raise ValueError(f"schedule step {step}: singular plane projection")
                p = [[m2[1][1] / det, -m2[0][1] / det], [-m2[1][0] / det, m2[0][0] / det]]
                rows = []
                for r in range(2):
                    pden = lcm(p[r][0].denominator, p[r][1].denominator)
                    rows.append((int(p[r][0] * pden), int(p[r][1] * pden), pden))
                steps.append(_PlaneStep(tuple(gens), tuple(coords), (rows[0], rows[1])))
            else:
                raise ValueError(f"unknown schedule step {step!r}")
    compiled = tuple(steps)
    order._euclid_compiled = compiled
    return compiled


# -- scalar path (exact unbounded integers) --------------------------------

def _greedy_int(order: Order, nums: list[int], den: int) -> list[int]:
    """Run the schedule in place on nums (residual at denominator den)."""
    scale = den // order.den
    cols = [[order.col_num[t][g] * scale for t in range(4)] for g in range(4)]
    base = [0, 0, 0, 0]

    def take(gen: int, a: int) -> None:
        if a:
            base[gen] += a
            col = cols[gen]
            for t in range(4):
                nums[t] -= a * col[t]

    for step in _compile_schedule(order):
        if isinstance(step, _CoordStep):
            take(step.gen, _nearest_int(nums[step.coord] * step.vden, den * step.vnum))
        elif isinstance(step, _PlaneStep):
            ca, cb = step.coords
            ra, rb = nums[ca], nums[cb]
            picks = []
            for (A, B, pden), gen in zip(step.rows, step.gens):
                picks.append((gen, _nearest_int(A * ra + B * rb, pden * den)))
            for gen, a in picks:
                take(gen, a)
        else:  # _SolveStep
            sd = order.inv_den
            picks = []
            for g in range(4):
                row = order.inv_num[g]
                val = row[0] * nums[0] + row[1] * nums[1] + row[2] * nums[2] + row[3] * nums[3]
                picks.append((g, _nearest_int(val, sd * den)))
            for gen, a in picks:
                take(gen, a)
    return base


def _local_search_int(order: Order, base: list[int], nums: list[int],
                      den: int) -> tuple[list[int], int]:
    """Try all 3^4 offsets; return improved coords and residual norm numerator."""
    scale = den // order.den
    cols = [[order.col_num[t][g] * scale for t in range(4)] for g in range(4)]
    w = order.params.norm_weights
    best_num: Optional[int] = None
    best_off = (0, 0, 0, 0)
    for off in _OFFSETS:
        r0, r1, r2, r3 = nums
        for g in range(4):
            og = off[g]
            if og:
                col = cols[g]
                r0 -= og * col[0]
                r1 -= og * col[1]
                r2 -= og * col[2]
                r3 -= og * col[3]
        val = w[0] * r0 * r0 + w[1] * r1 * r1 + w[2] * r2 * r2 + w[3] * r3 * r3
        if best_num is None or val < best_num:
            best_num = val
            best_off = off
            if val == 0:
                break
    coords = [b + o for b, o in zip(base, best_off)]
    assert best_num is not None
    return coords, best_num


class NearestResult(NamedTuple):
    coords: Vec4
    element: Quat
    residual: Fraction


def nearest_element(order: Order, t: Quat) -> NearestResult:
    """Lattice point near t with exact residual norm(t - e).

    For the bundled orders the greedy stage alone already guarantees a
    residual below 1; the local search then matches the certified bound.
    Raises EuclideanFailureError if the residual somehow reaches 1 (possible
    only for custom orders without a schedule).
    """
    if t.params != order.params:
        raise ValueError("point lives in a different algebra")
    den = lcm(order.den, *(c.denominator for c in t.coords))
    nums = [int(c * den) for c in t.coords]
    base = _greedy_int(order, nums, den)
    coords, res_num = _local_search_int(order, base, nums, den)
    residual = Fraction(res_num, den * den)
    if residual >= 1:
        raise EuclideanFailureError(
            f"{order.name}: residual {residual} >= 1 at {t}"
        )
    cvec: Vec4 = (coords[0], coords[1], coords[2], coords[3])
    return NearestResult(cvec, order.element(cvec), residual)


# -- vectorised twin for grid certification --------------------------------

def _batch_nearest(order: Order, idx: np.ndarray, depth: int):
    """Greedy + local search on many grid points t = B @ (idx/depth) at once.

    Mirrors the scalar path step for step in int64; used by verify_delta.
    Returns (coords, residual numerators) at denominator (den, den**2).
    """
    den = order.den * depth
    scale = den // order.den
    colT = np.array(order.col_num, dtype=np.int64).T * scale   # (gen, coord)
    nums = idx @ np.array(order.col_num, dtype=np.int64).T     # (N, coord)
    base = np.zeros_like(nums)

    def nearest(p: np.ndarray, q: int) -> np.ndarray:
        return (2 * p + q) // (2 * q)

    def take(gen: int, a: np.ndarray) -> None:
        base[:, gen] += a
        nums[:] -= a[:, None] * colT[gen][None, :]

    for step in _compile_schedule(order):
        if isinstance(step, _CoordStep):
            take(step.gen, nearest(nums[:, step.coord] * step.vden, den * step.vnum))
        elif isinstance(step, _PlaneStep):
            ca, cb = step.coords
            ra = nums[:, ca].copy()
            rb = nums[:, cb].copy()
            picks = [(gen, nearest(A * ra + B * rb, pden * den))
                     for (A, B, pden), gen in zip(step.rows, step.gens)]
            for gen, a in picks:
                take(gen, a)
        else:
            sd = order.inv_den
            inv = np.array(order.inv_num, dtype=np.int64)
            vals = nums @ inv.T
            picks = [(g, nearest(vals[:, g], sd * den)) for g in range(4)]
            for gen, a in picks:
                take(gen, a)

    w = np.array(order.params.norm_weights, dtype=np.int64)
    off = np.array(_OFFSETS, dtype=np.int64)
    off_elem = off @ colT                                      # (81, coord)
    best = None
    best_idx = None
    for o in range(off.shape[0]):
        rr = nums - off_elem[o][None, :]
        val = (rr * rr) @ w
        if best is None:
            best = val
            best_idx = np.zeros(len(val), dtype=np.int64)
        else:
            better = val < best
            best = np.where(better, val, best)
            best_idx = np.where(better, o, best_idx)
    coords = base + off[best_idx]
    return coords, best


@dataclass(frozen=True)
class DeltaReport:
    order_name: str
    depth: int
    max_residual: Fraction
    witness: tuple[Fraction, Fraction, Fraction, Fraction]  # generator coords of worst t
    bound: Fraction
    points: int

    @property
    def ok(self) -> bool:
        return self.max_residual <= self.bound

    def render(self) -> str:
        return (
            f"{self.order_name}: depth {self.depth} grid ({self.points} points), "
            f"max residual {self.max_residual} <= bound {self.bound}"
        )

    def to_json(self) -> dict:
        return {
            "order": self.order_name,
            "depth": self.depth,
            "points": self.points,
            "max_residual": str(self.max_residual),
            "bound": str(self.bound),
            "witness": [str(x) for x in self.witness],
            "ok": self.ok,
        }


def verify_delta(order: Order, bound: Optional[Fraction] = None, depth: int = 24,
                 chunk: int = 1 << 14) -> DeltaReport:
    """Certify max residual of nearest_element over a closed fundamental cell.

    The grid runs over generator coordinates idx/depth, idx in [0, depth]^4
    (closed on both ends).  Exact integer arithmetic throughout; raises
    DeltaBoundError with the witness point if the bound is exceeded.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    if bound is None:
        bound = order.delta_bound
    if bound is None:
        raise ValueError(f"no Euclidean bound on record for {order.name}")
    side = depth + 1
    total = side ** 4
    den = order.den * depth
    den2 = den * den
    max_num = -1
    max_flat = 0
    powers = np.array([side ** 3, side ** 2, side, 1], dtype=np.int64)
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total), dtype=np.int64)
        idx = (flat[:, None] // powers[None, :]) % side
        _, res = _batch_nearest(order, idx, depth)
        pos = int(np.argmax(res))
        if int(res[pos]) > max_num:
            max_num = int(res[pos])
            max_flat = int(flat[pos])
    digits = [(max_flat // int(p)) % side for p in powers]
    witness = tuple(Fraction(d, depth) for d in digits)
    max_residual = Fraction(max_num, den2)
    report = DeltaReport(order.name, depth, max_residual, witness, bound, total)
    if max_residual > bound:
        raise DeltaBoundError(order.name, max_residual, bound, witness)
    return report


# -- division and right gcd ------------------------------------------------

class DivisionResult(NamedTuple):
    quotient: Quat    # left quotient g
    remainder: Quat   # h = a - g*b


def _div_rem_unchecked(order: Order, a: Quat, b: Quat) -> DivisionResult:
    t = a * b.inverse()
    g = nearest_element(order, t).element
    h = a - g * b
    return DivisionResult(g, h)


def div_rem(order: Order, a: Quat, b: Quat) -> DivisionResult:
    """Left-quotient division: a = g*b + h with norm(h) < norm(b).

    Both inputs must be lattice elements; b must be nonzero.  The remainder
    bound is strict because the order's Euclidean constant is below 1.
    """
    if b.is_zero:
        raise ZeroDivisionError("division by zero")
    if order.coords_in(a) is None or order.coords_in(b) is None:
        raise ValueError("div_rem arguments must lie in the order")
    res = _div_rem_unchecked(order, a, b)
    if res.remainder.norm() >= b.norm():
        raise EuclideanFailureError(
            f"{order.name}: remainder norm {res.remainder.norm()} did not drop "
            f"below {b.norm()}"
        )
    return res


@dataclass(frozen=True)
class GcdWitness:
    """Right gcd d of (a, b) with full audit trail.

    Identities: d = r*a + s*b, c1*d = a, c2*d = b.  All five witnesses are
    lattice elements; callers can re-verify with `verify`.
    """

    a: Quat
    b: Quat
    d: Quat
    r: Quat
    s: Quat
    c1: Quat
    c2: Quat

    def verify(self) -> bool:
        return (
            self.r * self.a + self.s * self.b == self.d
            and self.c1 * self.d == self.a
            and self.c2 * self.d == self.b
        )


def _exact_right_divide(order: Order, x: Quat, d: Quat) -> Quat:
    """The c with c*d = x, asserting it exists in the order."""
    n = d.norm()
    c = x * d.conj()
    c = Quat(c.params, *(coord / n for coord in c.coords))
    if order.coords_in(c) is None:
        raise ArithmeticError(f"{d} does not right-divide {x} in {order.name}")
    return c


def right_gcd(order: Order, a: Quat, b: Quat) -> GcdWitness:
    """Euclidean right gcd with Bezout and cofactor witnesses.

    The left-quotient convention of div_rem makes every common RIGHT divisor
    of (a, b) survive each step, hence the result is a greatest common right
    divisor (unique up to left unit factors).
    """
    if order.coords_in(a) is None or order.coords_in(b) is None:
        raise ValueError("right_gcd arguments must lie in the order")
    if a.is_zero and b.is_zero:
        raise ValueError("right_gcd(0, 0) is undefined")
    one = Quat.one(order.params)
    zero = Quat.zero(order.params)
    x, y = a, b
    rx, sx = one, zero
    ry, sy = zero, one
    while not y.is_zero:
        g, h = _div_rem_unchecked(order, x, y)
        if h.norm() >= y.norm():
            raise EuclideanFailureError(f"{order.name}: gcd loop failed to descend")
        x, y = y, h
        rx, ry = ry, rx - g * ry
        sx, sy = sy, sx - g * sy
    d = x
    c1 = _exact_right_divide(order, a, d)
    c2 = _exact_right_divide(order, b, d)
    return GcdWitness(a=a, b=b, d=d, r=rx, s=sx, c1=c1, c2=c2)
