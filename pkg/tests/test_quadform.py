"""Index forms, reduction, and determining-set enumeration."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from siegelbound.intervals import Interval
from siegelbound.quadform import (
    DeterminingSet,
    IndexForm,
    QuadFormError,
    SendingMatrix,
    _check_prime_power,
    determining_bound,
    dyadic_trace,
    enumerate_determining,
    enumerate_determining_level,
    inner,
    is_reduced,
    reduce,
    trace_below,
    unimodular_matrices,
)


def small_forms():
    triples = st.tuples(
        st.integers(min_value=1, max_value=6),
        st.integers(min_value=-11, max_value=11),
        st.integers(min_value=1, max_value=6),
    )
    return triples.filter(
        lambda t: 4 * t[0] * t[2] - t[1] * t[1] > 0
    ).map(lambda t: IndexForm(2 * t[0], t[1], 2 * t[2]))


class TestIndexForm:
    def test_odd_diagonal_rejected(self):
        with pytest.raises(QuadFormError):
            IndexForm(3, 0, 2)
        with pytest.raises(QuadFormError):
            IndexForm(2, 0, 5)

    def test_indefinite_rejected(self):
        with pytest.raises(QuadFormError):
            IndexForm(2, 3, 2)
        with pytest.raises(QuadFormError):
            IndexForm(-2, 0, 2)

    def test_str_notation(self):
        assert str(IndexForm(2, 1, 4)) == "[2^1 4]"

    def test_transform_is_congruence(self):
        t = IndexForm(2, 1, 4)
        u = t.transform(1, 1, 0, 1)
        # u^T t u with u = [[1,1],[0,1]] shifts b and c
        assert u.triple() == (2, 3, 8)
        assert u.det4() == t.det4()


class TestReduce:
    @settings(max_examples=300, deadline=None)
    @given(t=small_forms())
    def test_reduced_and_in_orbit(self, t):
        r = reduce(t)
        assert is_reduced(r)
        assert r.det4() == t.det4()
        # the reduced form is reachable from t by some unimodular u
        bound = max(abs(x) for x in t.triple()) + 2
        orbit = {t.transform(*u).triple() for u in unimodular_matrices(bound)}
        assert r.triple() in orbit

    @settings(max_examples=200, deadline=None)
    @given(t=small_forms(), data=st.data())
    def test_class_function(self, t, data):
        us = list(unimodular_matrices(2))
        u = data.draw(st.sampled_from(us))
        assert reduce(t.transform(*u)) == reduce(t)

    def test_unique_reduced_rep_in_orbit(self):
        # exhaustive check on a few orbits: exactly one reduced member
        for t in [IndexForm(2, 1, 4), IndexForm(4, 2, 6), IndexForm(6, 3, 6)]:
            orbit = {t.transform(*u).triple() for u in unimodular_matrices(4)}
            reduced = {v for v in orbit if is_reduced(IndexForm(*v))}
            assert reduced == {reduce(t).triple()}

    def test_fixed_point_on_reduced(self):
        for t in [IndexForm(2, 0, 2), IndexForm(4, 2, 4), IndexForm(2, 1, 8)]:
            assert reduce(t) == t


class TestTraceAndInner:
    def test_dyadic_trace_values(self):
        assert dyadic_trace(IndexForm(2, 1, 2)) == Fraction(3, 2)
        assert dyadic_trace(IndexForm(6, 3, 6)) == Fraction(9, 2)

    def test_inner_against_definition(self):
        s = SendingMatrix(1, 0, 2)
        t = IndexForm(2, 1, 4)
        assert inner(t, s) == Fraction(2, 2) + 0 + Fraction(8, 2)

    @settings(max_examples=100, deadline=None)
    @given(t=small_forms())
    def test_inner_positive(self, t):
        assert inner(t, SendingMatrix(1, 0, 1)) > 0


class TestPrimePower:
    def test_split(self):
        assert _check_prime_power(13) == (13, 1)
        assert _check_prime_power(9) == (3, 2)
        assert _check_prime_power(8) == (2, 3)

    @pytest.mark.parametrize("level", [1, 6, 12, 100])
    def test_rejects_composites(self, level):
        with pytest.raises(QuadFormError):
            _check_prime_power(level)


class TestDeterminingBound:
    def test_prime_level_exact(self):
        assert determining_bound(13, 1, 2) == Fraction(14, 3)
        assert determining_bound(43, 1, 2) == Fraction(44, 3)

    def test_prime_power_enclosure(self):
        enc = determining_bound(3, 2, 2)
        assert isinstance(enc, Interval)
        assert enc.width < Fraction(1, 4)
        # 3/2 + 9 (2/(sqrt(3) pi) - 1/6) (4/3)(10/9) ~ 4.1784790704
        assert Fraction(4178479, 10 ** 6) < enc.lo < enc.hi < Fraction(4178480, 10 ** 6)

    def test_invalid_arguments(self):
        with pytest.raises(QuadFormError):
            determining_bound(3, 0, 2)
        with pytest.raises(QuadFormError):
            determining_bound(3, 2, 0)


class TestTraceBelow:
    def test_exact_threshold(self):
        assert trace_below(Fraction(9, 2), Fraction(14, 3))
        assert not trace_below(Fraction(14, 3), Fraction(14, 3))

    def test_interval_classification(self):
        enc = Interval(Fraction(4), Fraction(41, 10))
        assert trace_below(Fraction(7, 2), enc)
        assert not trace_below(Fraction(9, 2), enc)
        with pytest.raises(QuadFormError):
            trace_below(Fraction(81, 20), enc)


class TestEnumeration:
    def test_level_13_set(self):
        det = enumerate_determining(13, 1, 2)
        expected = [
            (2, 0, 2), (2, 0, 4), (2, 0, 6), (2, 1, 2), (2, 1, 4),
            (2, 1, 6), (2, 1, 8), (4, 0, 4), (4, 1, 4), (4, 1, 6),
            (4, 2, 4), (4, 2, 6), (6, 3, 6),
        ]
        assert [t.triple() for t in det] == expected

    def test_level_9_set(self):
        det = enumerate_determining(3, 2, 2)
        expected = [
            (2, 0, 2), (2, 0, 4), (2, 0, 6), (2, 1, 2), (2, 1, 4),
            (2, 1, 6), (4, 0, 4), (4, 1, 4), (4, 2, 4), (4, 2, 6),
        ]
        assert [t.triple() for t in det] == expected

    def test_completeness_against_brute_force(self):
        det = enumerate_determining(13, 1, 2)
        upper = Fraction(14, 3)
        brute = set()
        for a in range(2, 21, 2):
            for b in range(0, a // 2 + 1):
                for c in range(a, 21, 2):
                    t = IndexForm(a, b, c)
                    if is_reduced(t) and dyadic_trace(t) < upper:
                        brute.add(t.triple())
        assert {t.triple() for t in det} == brute

    def test_threshold_override(self):
        # the looser cutoff keeps more forms than the strict one
        strict = enumerate_determining(43, 1, 2)
        capped = enumerate_determining(43, 1, 2, threshold=Fraction(29, 2))
        assert len(strict) == 255
        assert len(capped) == 234
        assert set(capped.forms) <= set(strict.forms)

    def test_level_wrapper(self):
        assert len(enumerate_determining_level(9, 2)) == 10
        with pytest.raises(QuadFormError):
            enumerate_determining_level(6, 2)

    def test_json_shape(self):
        det = enumerate_determining(13, 1, 2)
        obj = det.to_json()
        assert obj["level"] == 13 and obj["weight"] == 2
        assert obj["threshold"] == {"exact": "14/3"}
        assert obj["forms"][0] == [2, 0, 2]
        enc = enumerate_determining(3, 2, 2).to_json()
        assert "interval" in enc["threshold"]

    def test_membership_protocol(self):
        det = enumerate_determining(13, 1, 2)
        assert IndexForm(6, 3, 6) in det
        assert len(det) == 13
