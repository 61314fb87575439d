import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncbieberbach.scalars import (
    Cyclotomic,
    OrderMismatchError,
    PhasedScalar,
    cyc_root,
    cyclotomic_polynomial,
    phased,
    rational_theta_fold,
)

ORDER = 24


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(24) == (1, 0, 0, 0, -1, 0, 0, 0, 1)


def test_root_constructor_examples():
    i = cyc_root(4, 1, order=ORDER)
    assert i * i == -1
    assert cyc_root(3, 0, order=ORDER) + cyc_root(3, 1, order=ORDER) + cyc_root(3, 2, order=ORDER) == 0
    assert cyc_root(24, 12, order=ORDER) == -1
    assert cyc_root(4, 0, order=ORDER).is_one()


def test_root_constructor_order_mismatch():
    with pytest.raises(OrderMismatchError):
        cyc_root(5, 1, order=ORDER)
    with pytest.raises(OrderMismatchError):
        cyc_root(7, 2, order=ORDER)


def test_root_inverse_pairs():
    for k in range(ORDER):
        assert cyc_root(ORDER, k, order=ORDER) * cyc_root(ORDER, ORDER - k, order=ORDER) == 1


def test_phased_examples():
    assert phased(1, 1, order=ORDER) * phased(-1, 1, order=ORDER) == phased(0, 1, order=ORDER)
    assert phased(Fraction(1, 3), 1, order=ORDER) ** 3 == phased(1, 1, order=ORDER)
    i = cyc_root(4, 1, order=ORDER)
    assert phased(1, i, order=ORDER).conj() == phased(-1, -i, order=ORDER)


def test_fold_examples():
    i = cyc_root(4, 1, order=ORDER)
    assert rational_theta_fold(phased(1, 1, order=ORDER), Fraction(1, 2)) == PhasedScalar.of(i, ORDER)
    c = cyc_root(24, 7, order=ORDER)
    assert rational_theta_fold(phased(0, c, order=ORDER), Fraction(3, 7)) == PhasedScalar.of(c, ORDER)
    assert rational_theta_fold(phased(2, 1, order=ORDER), Fraction(1, 3)) == PhasedScalar.of(
        cyc_root(3, 1, order=ORDER), ORDER
    )


def test_fold_order_mismatch():
    # theta = 1/5 requires a tenth root of unity, outside the order-24 field
    with pytest.raises(OrderMismatchError):
        phased(1, 1, order=ORDER).fold(Fraction(1, 5))


def test_conjugation_is_field_automorphism():
    rng = random.Random(1)
    for _ in range(50):
        a = _random_scalar(rng)
        b = _random_scalar(rng)
        assert a.conj().conj() == a
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a + b).conj() == a.conj() + b.conj()


def _random_scalar(rng: random.Random, terms: int = 2) -> PhasedScalar:
    out = PhasedScalar.zero(ORDER)
    for _ in range(terms):
        b = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
        root = cyc_root(ORDER, rng.randrange(ORDER), order=ORDER)
        scale = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        out = out + PhasedScalar.phase(b, root * scale, order=ORDER)
    return out


def test_ring_axioms_on_seeded_triples():
    rng = random.Random(20240)
    one = PhasedScalar.one(ORDER)
    for _ in range(200):
        x = _random_scalar(rng)
        y = _random_scalar(rng)
        z = _random_scalar(rng)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        assert x + (-x) == PhasedScalar.zero(ORDER)
        assert x * one == x


def test_canonical_form_uniqueness():
    rng = random.Random(7)
    for _ in range(100):
        x = _random_scalar(rng)
        y = _random_scalar(rng)
        assert ((x - y).is_zero()) == (x.terms() == y.terms())


small_fractions = st.fractions(min_value=-2, max_value=2, max_denominator=6)
root_indices = st.integers(min_value=0, max_value=ORDER - 1)


@st.composite
def phased_scalars(draw):
    n_terms = draw(st.integers(min_value=1, max_value=2))
    out = PhasedScalar.zero(ORDER)
    for _ in range(n_terms):
        b = draw(small_fractions)
        k = draw(root_indices)
        q = draw(st.fractions(min_value=-2, max_value=2, max_denominator=3))
        out = out + PhasedScalar.phase(b, cyc_root(ORDER, k, order=ORDER) * q, order=ORDER)
    return out


@settings(max_examples=60, deadline=None)
@given(phased_scalars(), phased_scalars())
def test_commutativity_and_conj_property(x, y):
    assert x * y == y * x
    assert (x * y).conj() == x.conj() * y.conj()


@settings(max_examples=60, deadline=None)
@given(root_indices, root_indices)
def test_root_products_property(j, k):
    zj = cyc_root(ORDER, j, order=ORDER)
    zk = cyc_root(ORDER, k, order=ORDER)
    assert zj * zk == cyc_root(ORDER, j + k, order=ORDER)
    assert zj.conj() == cyc_root(ORDER, -j, order=ORDER)
    assert zj.is_unit_modulus()


def test_rational_value_and_unit_checks():
    half = Cyclotomic.from_rational(ORDER, Fraction(1, 2))
    assert half.is_rational() and half.rational_value() == Fraction(1, 2)
    with pytest.raises(ValueError):
        (half + cyc_root(ORDER, 1, order=ORDER)).rational_value()
    assert not half.is_unit_modulus()
    assert cyc_root(ORDER, 5, order=ORDER).root_exponent() == 5
