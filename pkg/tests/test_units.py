"""Unit group enumeration against the published lists."""

import random
from fractions import Fraction

from quatforms.algebra import Quat
from quatforms.order import get_order
from quatforms.units import coefficient_bounds, enumerate_units, norm_box_bounds, units_of

# published unit lists, one representative per +- pair, generator coordinates
H122_HALF = (
    (1,0,0,0), (0,1,0,0), (0,0,1,0), (-1,0,1,0), (0,-1,1,0), (-1,-1,1,0),
    (0,0,0,1), (-1,0,0,1), (0,-1,0,1), (-1,-1,0,1), (0,0,-1,1), (-1,-1,1,1),
)
H236_HALF = (
    (1,0,0,0), (0,1,0,0), (0,0,1,0), (0,0,0,1), (0,0,-1,1), (0,-1,1,0),
    (-1,1,0,0), (-1,0,1,0), (0,-1,0,1), (1,-1,0,1), (1,-1,-1,1), (1,0,-1,1),
)
H133_HALF = (
    (1,0,0,0), (0,1,0,0), (0,0,1,0), (0,0,0,1), (-1,0,0,1), (0,-1,1,0),
)


def _with_negatives(half):
    return frozenset(half) | frozenset(tuple(-x for x in c) for c in half)


def test_unit_counts():
    assert len(units_of(get_order("H111"))) == 24
    assert len(units_of(get_order("H122"))) == 24
    assert len(units_of(get_order("H236"))) == 24
    assert len(units_of(get_order("H133"))) == 12


def test_published_unit_sets_match_exactly():
    for name, half in (("H122", H122_HALF), ("H236", H236_HALF), ("H133", H133_HALF)):
        assert units_of(get_order(name)).coord_set() == _with_negatives(half), name


def test_hurwitz_units_match_classical_list():
    # the classical 24: +-1, +-i, +-j, +-k and all (+-1 +- i +- j +- k)/2
    o = get_order("H111")
    P = o.params
    quats = []
    for t in range(4):
        quats += [Quat.basis(P, t), -Quat.basis(P, t)]
    for signs in range(16):
        coords = [Fraction((1 if (signs >> t) & 1 else -1), 2) for t in range(4)]
        quats.append(Quat(P, *coords))
    expected = {o.coords_in(q) for q in quats}
    assert None not in expected
    assert units_of(o).coord_set() == expected


def test_every_unit_has_norm_one_and_integral_coords():
    for name in ("H111", "H122", "H236", "H133"):
        o = get_order(name)
        for coords in units_of(o):
            assert o.element(coords).norm() == 1


def test_units_form_a_group():
    for name in ("H111", "H122", "H236", "H133"):
        o = get_order(name)
        us = units_of(o)
        all_units = us.coord_set()
        assert o.coords_in(Quat.one(o.params)) in all_units
        for a in us:
            # inverse of a unit is its conjugate
            inv = o.coords_in(o.element(a).conj())
            assert inv in all_units
            for b in us:
                assert o.mul_vec(a, b) in all_units


def test_bounds_are_within_the_published_manual_bounds():
    # hand-derived boxes in the source construction; the exact ellipsoid
    # boxes may only be tighter, never wider
    manual = {"H122": (2, 2, 2, 2), "H236": (2, 2, 1, 1), "H133": (2, 2, 2, 2)}
    for name, cap in manual.items():
        got = coefficient_bounds(get_order(name))
        assert all(g <= c for g, c in zip(got, cap)), (name, got)


def test_doubling_the_box_finds_no_extra_units():
    for name in ("H111", "H122", "H236", "H133"):
        o = get_order(name)
        bounds = coefficient_bounds(o)
        doubled = tuple(2 * b for b in bounds)
        assert enumerate_units(o, doubled).coord_set() == units_of(o).coord_set()


def test_norm_box_bounds_scale_with_value():
    o = get_order("H236")
    b1 = norm_box_bounds(o, 1)
    b9 = norm_box_bounds(o, 9)
    assert all(x9 >= 3 * x1 for x9, x1 in zip(b9, b1))


def test_canonical_ordering_is_sorted_and_deterministic():
    for name in ("H111", "H122", "H236", "H133"):
        coords = list(units_of(get_order(name)))
        assert coords == sorted(coords)
        assert coords == list(enumerate_units(get_order(name)))
