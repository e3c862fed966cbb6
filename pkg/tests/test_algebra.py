"""Defining relations, norm/trace/conjugation identities, rendering."""

import random
from fractions import Fraction

import pytest

from quatforms.algebra import (
    AlgebraMismatchError,
    AlgebraParams,
    Quat,
    basis_products,
    format_quat,
)

P11 = AlgebraParams(-1, -1)
P12 = AlgebraParams(-1, -2)
P23 = AlgebraParams(-2, -3)
P13 = AlgebraParams(-1, -3)
ALL_PARAMS = (P11, P12, P23, P13)


def _rand_quat(rng, params, span=9):
    return Quat(params, *(Fraction(rng.randint(-span, span),
                                   rng.choice((1, 1, 2, 3, 4))) for _ in range(4)))


def test_params_must_be_negative():
    with pytest.raises(ValueError):
        AlgebraParams(1, -1)
    with pytest.raises(ValueError):
        AlgebraParams(-1, 0)


def test_defining_relations():
    for params in ALL_PARAMS:
        i = Quat.basis(params, 1)
        j = Quat.basis(params, 2)
        k = Quat.basis(params, 3)
        one = Quat.one(params)
        assert i * i == one * params.m
        assert j * j == one * params.n
        assert i * j == k
        assert j * i == -k
        assert k * k == one * (-params.m * params.n)
        # derived mixed products
        assert i * k == j * params.m
        assert k * i == -(j * params.m)
        assert j * k == -(i * params.n)
        assert k * j == i * params.n


def test_generated_product_table_is_associative_on_basis():
    # the table comes from word reduction; check it against itself
    for params in ALL_PARAMS:
        es = [Quat.basis(params, t) for t in range(4)]
        for a in es:
            for b in es:
                for c in es:
                    assert (a * b) * c == a * (b * c)


def test_product_table_entries():
    tab = basis_products(P12)
    assert tab[1][2] == (1, 3)        # i*j = k
    assert tab[2][1] == (-1, 3)       # j*i = -k
    assert tab[3][3] == (-(-1) * (-2), 0)  # k*k = -mn


def test_norm_examples():
    h = Quat(P11, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    assert h.norm() == 1
    assert Quat.zero(P11).norm() == 0
    # congruence seed with (a, b) = (1, 3): 1 + 2*1 + 2*9 = 21
    seed = Quat(P12, 1, 0, -1, 3)
    assert seed.norm() == 21


def test_norm_equals_q_times_conj():
    rng = random.Random(7001)
    for _ in range(300):
        q = _rand_quat(rng, rng.choice(ALL_PARAMS))
        assert q * q.conj() == Quat.scalar(q.params, q.norm())
        assert q.conj() * q == Quat.scalar(q.params, q.norm())


def test_norm_multiplicative_and_definite():
    rng = random.Random(7002)
    for _ in range(500):
        params = rng.choice(ALL_PARAMS)
        p = _rand_quat(rng, params)
        q = _rand_quat(rng, params)
        assert (p * q).norm() == p.norm() * q.norm()
        assert p.norm() >= 0
        if p.norm() == 0:
            assert p.is_zero


def test_conj_is_an_anti_automorphism():
    rng = random.Random(7003)
    for _ in range(300):
        params = rng.choice(ALL_PARAMS)
        p = _rand_quat(rng, params)
        q = _rand_quat(rng, params)
        assert (p * q).conj() == q.conj() * p.conj()
        assert p.conj().conj() == p
        assert (p + q).conj() == p.conj() + q.conj()


def test_trace_and_characteristic_identity():
    rng = random.Random(7004)
    i = Quat.basis(P11, 1)
    assert i.trace() == 0
    h = Quat(P11, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    assert h.trace() == 1
    for _ in range(300):
        params = rng.choice(ALL_PARAMS)
        q = _rand_quat(rng, params)
        # q^2 - tr(q) q + N(q) = 0
        lhs = q * q - q * q.trace() + Quat.scalar(params, q.norm())
        assert lhs.is_zero
        assert q + q.conj() == Quat.scalar(params, q.trace())


def test_mismatched_algebras_refuse_to_mix():
    with pytest.raises(AlgebraMismatchError):
        Quat.one(P11) * Quat.one(P12)
    with pytest.raises(AlgebraMismatchError):
        Quat.one(P11) + Quat.one(P23)


def test_inverse():
    rng = random.Random(7005)
    for _ in range(100):
        q = _rand_quat(rng, P23)
        if q.is_zero:
            continue
        assert q * q.inverse() == Quat.one(P23)
        assert q.inverse() * q == Quat.one(P23)


def test_rendering():
    q = Quat(P12, Fraction(1, 2), -3, 0, Fraction(2, 7))
    assert format_quat(q) == "1/2 - 3*i + 2/7*k"
    assert format_quat(Quat.zero(P12)) == "0"
    assert format_quat(Quat.basis(P12, 3)) == "k"
    assert format_quat(-Quat.basis(P12, 1)) == "-i"
