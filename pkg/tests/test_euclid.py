"""Nearest-element rounding, division with remainder, and right gcds."""

import random
from fractions import Fraction

import numpy as np
import pytest

from quatforms.algebra import Quat
from quatforms.euclid import (
    DeltaBoundError,
    _batch_nearest,
    div_rem,
    nearest_element,
    right_gcd,
    verify_delta,
)
from quatforms.order import builtin_orders, get_order

ORDER_NAMES = ("H111", "H122", "H236", "H133")

# depth-8 grid maxima, frozen from an initial scan and re-checked here
DEPTH8_MAX = {
    "H111": Fraction(1, 2),
    "H122": Fraction(1, 2),
    "H236": Fraction(1, 2),
    "H133": Fraction(19, 32),
}


def _point(order, gen_coords):
    out = Quat.zero(order.params)
    for c, g in zip(gen_coords, order.basis):
        out = out + g * c
    return out


def _random_member(order, rng, span=6):
    return tuple(rng.randint(-span, span) for _ in range(4))


def test_lattice_points_round_to_themselves():
    rng = random.Random(7020)
    for name in ORDER_NAMES:
        o = get_order(name)
        for _ in range(50):
            coords = _random_member(o, rng)
            res = nearest_element(o, o.element(coords))
            assert res.coords == coords
            assert res.residual == 0


def test_translation_invariance():
    rng = random.Random(7021)
    for name in ORDER_NAMES:
        o = get_order(name)
        for _ in range(30):
            t = _point(o, [Fraction(rng.randint(-20, 20), rng.choice((1, 2, 3, 5)))
                           for _ in range(4)])
            shift = _random_member(o, rng)
            r0 = nearest_element(o, t)
            r1 = nearest_element(o, t + o.element(shift))
            assert r1.coords == tuple(c + s for c, s in zip(r0.coords, shift))
            assert r1.residual == r0.residual


def test_depth8_grid_maxima():
    for name, expected in DEPTH8_MAX.items():
        report = verify_delta(get_order(name), depth=8)
        assert report.max_residual == expected, name
        assert report.ok


def test_certified_bounds_hold_on_builtin_orders():
    for name, o in builtin_orders().items():
        report = verify_delta(o, depth=8)
        assert report.max_residual <= o.delta_bound, name


def test_known_worst_points():
    # spot-check the scalar path at grid witnesses found by the batch scan
    cases = (
        ("H111", (0, Fraction(1, 2), Fraction(1, 2), 0), Fraction(1, 2)),
        ("H122", (0, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)), Fraction(1, 2)),
        ("H133", (Fraction(1, 3),) * 4, Fraction(2, 3)),
    )
    for name, gen_coords, residual in cases:
        o = get_order(name)
        assert nearest_element(o, _point(o, gen_coords)).residual == residual, name


def test_residual_never_reaches_one_on_random_points():
    rng = random.Random(7022)
    for name in ORDER_NAMES:
        o = get_order(name)
        for _ in range(200):
            t = _point(o, [Fraction(rng.randint(-50, 50), rng.randint(1, 12))
                           for _ in range(4)])
            res = nearest_element(o, t)
            assert res.residual < 1
            assert (t - res.element).norm() == res.residual


def test_batch_twin_agrees_with_scalar_path():
    rng = random.Random(7023)
    for name in ORDER_NAMES:
        o = get_order(name)
        for depth in (3, 8, 24):
            idx = np.array([[rng.randint(-2 * depth, 2 * depth) for _ in range(4)]
                            for _ in range(40)], dtype=np.int64)
            coords, res = _batch_nearest(o, idx, depth)
            den = o.den * depth
            for row in range(idx.shape[0]):
                t = _point(o, [Fraction(int(v), depth) for v in idx[row]])
                scalar = nearest_element(o, t)
                assert tuple(int(c) for c in coords[row]) == scalar.coords
                assert Fraction(int(res[row]), den * den) == scalar.residual


def test_nearest_rejects_foreign_algebra():
    with pytest.raises(ValueError):
        nearest_element(get_order("H111"), Quat.one(get_order("H122").params))


def test_delta_bound_error_carries_witness():
    o = get_order("H111")
    with pytest.raises(DeltaBoundError) as err:
        verify_delta(o, bound=Fraction(1, 4), depth=4)
    assert err.value.residual > Fraction(1, 4)
    assert len(err.value.witness) == 4


# -- division ---------------------------------------------------------------

def test_div_rem_identity_and_strict_descent():
    rng = random.Random(7024)
    for name in ORDER_NAMES:
        o = get_order(name)
        done = 0
        while done < 100:
            a = o.element(_random_member(o, rng))
            b = o.element(_random_member(o, rng))
            if b.is_zero:
                continue
            g, h = div_rem(o, a, b)
            assert g * b + h == a
            assert h.norm() < b.norm()
            assert g in o and h in o
            done += 1


def test_div_rem_rejects_zero_divisor_and_outsiders():
    o = get_order("H111")
    a = o.element((1, 2, 0, 1))
    with pytest.raises(ZeroDivisionError):
        div_rem(o, a, Quat.zero(o.params))
    with pytest.raises(ValueError):
        div_rem(o, Quat(o.params, Fraction(1, 3), 0, 0, 0), a)


# -- right gcd --------------------------------------------------------------

def test_right_gcd_random_witnesses_verify():
    rng = random.Random(7025)
    for name in ORDER_NAMES:
        o = get_order(name)
        done = 0
        while done < 60:
            a = o.element(_random_member(o, rng))
            b = o.element(_random_member(o, rng))
            if a.is_zero and b.is_zero:
                continue
            w = right_gcd(o, a, b)
            assert w.verify()
            assert w.d in o and w.r in o and w.s in o and w.c1 in o and w.c2 in o
            done += 1


def test_right_gcd_splits_a_norm21_element_against_7():
    # a has norm 3*7; gcd against the rational prime 7 peels off the
    # norm-7 right factor
    o = get_order("H122")
    a = Quat(o.params, 1, 0, -1, 3)
    assert a.norm() == 21
    assert a in o
    w = right_gcd(o, a, Quat.scalar(o.params, 7))
    assert w.verify()
    assert w.d.norm() == 7


def test_right_gcd_of_zero_and_b_is_b():
    o = get_order("H236")
    b = o.element((2, 1, 0, 1))
    w = right_gcd(o, Quat.zero(o.params), b)
    assert w.verify()
    assert w.d.norm() == b.norm()


def test_right_gcd_rejects_double_zero():
    o = get_order("H111")
    with pytest.raises(ValueError):
        right_gcd(o, Quat.zero(o.params), Quat.zero(o.params))
