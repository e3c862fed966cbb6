"""The obstruction equation e^2 = 2b^2 + 5c^2 + 10d^2 and its descent."""

from math import isqrt

import pytest

from quatforms.nonexist import (
    DescentError,
    DescentState,
    descent_step,
    scale_down,
    search_imaginary_unit,
    square_residues,
)


def test_squares_mod_five():
    assert square_residues(5) == [0, 1, 4]
    assert 2 not in square_residues(5)
    assert 3 not in square_residues(5)
    assert square_residues(8) == [0, 1, 4]


def test_scan_is_empty_up_to_100():
    assert search_imaginary_unit(100) == []


def test_scan_agrees_with_naive_enumeration():
    e_max = 40
    cap = e_max * e_max
    naive = []
    for b in range(1, isqrt(cap // 2) + 1):
        for c in range(1, isqrt(cap // 5) + 1):
            for d in range(1, isqrt(cap // 10) + 1):
                s = 2 * b * b + 5 * c * c + 10 * d * d
                if s <= cap and isqrt(s) ** 2 == s:
                    naive.append(DescentState(isqrt(s), b, c, d))
    assert search_imaginary_unit(e_max) == sorted(naive) == []


def test_scan_rejects_silly_bound():
    with pytest.raises(ValueError):
        search_imaginary_unit(0)


def test_no_rational_sqrt2_even_without_the_5_and_10_terms():
    for e in range(1, 101):
        for b in range(1, 101):
            assert e * e != 2 * b * b


def test_scale_down():
    assert scale_down(DescentState(5, 10, 15, 20)) == DescentState(1, 2, 3, 4)
    with pytest.raises(DescentError, match="b = 7"):
        scale_down(DescentState(5, 7, 15, 20))


def test_descent_rejects_non_solutions():
    with pytest.raises(DescentError, match="positive"):
        descent_step(DescentState(1, 0, 1, 1))
    with pytest.raises(DescentError, match="not a solution"):
        descent_step(DescentState(5, 5, 5, 5))
    # state helpers used by the checks above
    assert not DescentState(5, 5, 5, 5).equation_holds()
    assert DescentState(5, 5, 5, 5).positive()
    assert not DescentState(1, 0, 1, 1).positive()


def test_equation_holds_recognises_the_arithmetic():
    # the form is anisotropic: even allowing zeros, only the trivial tuple
    # satisfies it (a quick exhaustive confirmation below the scan bound)
    assert DescentState(0, 0, 0, 0).equation_holds()
    assert not DescentState(7, 1, 1, 2).equation_holds()
    for e in range(1, 30):
        for b in range(0, 22):
            for c in range(0, 14):
                for d in range(0, 10):
                    if (e, b, c, d) != (0, 0, 0, 0):
                        assert not DescentState(e, b, c, d).equation_holds()
