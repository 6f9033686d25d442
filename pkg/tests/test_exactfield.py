"""Field axioms and exact arithmetic in Q(zeta_n)."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from siegelbound.exactfield import (
    CycNum,
    as_rational,
    cyclotomic_polynomial,
    euler_phi,
    rational_str,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)


def cycnums(n):
    deg = euler_phi(n)
    return st.lists(rationals, min_size=deg, max_size=deg).map(
        lambda cs: CycNum.make(n, cs)
    )


class TestRationalHelpers:
    def test_as_rational_parses_strings(self):
        assert as_rational("3/4") == Fraction(3, 4)
        assert as_rational("-7") == Fraction(-7)
        assert as_rational(5) == Fraction(5)

    def test_rational_str_round_trips(self):
        for x in [Fraction(3, 4), Fraction(-7), Fraction(0), Fraction(22, 7)]:
            assert as_rational(rational_str(x)) == x

    def test_euler_phi_small_values(self):
        assert [euler_phi(n) for n in range(1, 13)] == [
            1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4,
        ]


class TestCyclotomicPolynomial:
    def test_known_polynomials(self):
        # Phi_1 = x - 1, Phi_6 = x^2 - x + 1, Phi_12 = x^4 - x^2 + 1
        assert cyclotomic_polynomial(1) == (Fraction(-1), Fraction(1))
        assert cyclotomic_polynomial(6) == (
            Fraction(1), Fraction(-1), Fraction(1),
        )
        assert cyclotomic_polynomial(12) == (
            Fraction(1), Fraction(0), Fraction(-1), Fraction(0), Fraction(1),
        )

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8, 12, 13])
    def test_root_satisfies_polynomial(self, n):
        # Phi_n(zeta_n) = 0: evaluate the minimal polynomial at the root
        zeta = CycNum.root(n)
        acc = CycNum.zero(n)
        for i, c in enumerate(cyclotomic_polynomial(n)):
            acc = acc + CycNum.rational(c) * zeta ** i
        assert acc.is_zero()


class TestArithmetic:
    def test_zeta6_relations(self):
        z = CycNum.root(6)
        assert z ** 2 == z - 1
        assert z ** 6 == 1
        assert z.inverse() == 1 - z
        assert (-z) ** 3 == 1

    def test_lift_preserves_value(self):
        z3 = CycNum.root(3)
        z6 = CycNum.root(6)
        assert z3.lift(6) == z6 ** 2

    def test_mixed_order_equality(self):
        assert CycNum.root(2) == CycNum.rational(-1)
        assert CycNum.root(4) ** 2 == CycNum.root(2)

    def test_division_by_zero_raises(self):
        with pytest.raises(ArithmeticError):
            CycNum.one() / CycNum.zero()

    def test_json_round_trip_bit_exact(self):
        z = CycNum.root(12)
        x = z ** 3 - CycNum.rational(Fraction(5, 3)) * z
        assert CycNum.from_json(x.to_json()) == x
        assert x.to_json() == CycNum.from_json(x.to_json()).to_json()


@pytest.mark.parametrize("n", [6, 12])
class TestFieldAxioms:
    """1000 random samples per field: 500 triples exercise the ring
    axioms, 500 nonzero samples exercise inverses."""

    @settings(max_examples=500, deadline=None)
    @given(data=st.data())
    def test_ring_axioms(self, n, data):
        x = data.draw(cycnums(n))
        y = data.draw(cycnums(n))
        z = data.draw(cycnums(n))
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + CycNum.zero(n) == x
        assert x * CycNum.one(n) == x
        assert (x - x).is_zero()

    @settings(max_examples=500, deadline=None)
    @given(data=st.data())
    def test_inverse(self, n, data):
        x = data.draw(cycnums(n).filter(lambda v: not v.is_zero()))
        assert x * x.inverse() == 1
        assert (CycNum.one(n) / x) * x == 1
