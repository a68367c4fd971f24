import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzeta.arith import (
    CompositionError,
    DirichletPoly,
    MPoly,
    NonInvertibleError,
    Series,
    dirichlet_eval,
    frac_from_str,
    frac_to_str,
    series_arith,
    series_compose,
    series_revert,
    stirling2,
)

N = 6
small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
series_st = st.lists(small, min_size=N + 1, max_size=N + 1).map(Series.from_coeffs)


def tseries(*cs, order=None):
    return Series.from_coeffs(cs, order)


class TestSeriesExamples:
    def test_square(self):
        a = tseries(1, 1, order=2)
        assert series_arith("mul", a, a, 2) == tseries(1, 2, 1)

    def test_bernoulli_quotient(self):
        t = Series.monomial(1, 3)
        q = series_arith("div", t, Series.exp(3) - 1, 2)
        assert q == tseries(1, Fraction(-1, 2), Fraction(1, 12))

    def test_self_quotient(self):
        t = Series.monomial(1, 4)
        assert series_arith("div", t, t, 3) == Series.one(3)

    def test_non_invertible(self):
        with pytest.raises(NonInvertibleError, match="non-invertible divisor"):
            series_arith("div", Series.one(3), Series.zero(3), 3)

    def test_compose_examples(self):
        inner = 1 - Series.exp(3, -1)
        assert series_compose(Series.monomial(1, 3), inner, 3) == tseries(0, 1, Fraction(-1, 2), Fraction(1, 6))
        assert series_compose(Series.monomial(2, 3), inner, 3) == tseries(0, 0, 1, -1)
        inner5 = 1 - Series.exp(5, -1)
        neglog = tseries(0, *[Fraction(1, n) for n in range(1, 6)])
        assert series_compose(neglog, inner5, 5) == Series.monomial(1, 5)

    def test_compose_needs_positive_valuation(self):
        with pytest.raises(CompositionError, match="positive valuation"):
            series_compose(Series.one(3), Series.one(3), 3)

    def test_order_is_checked(self):
        with pytest.raises(ValueError):
            series_arith("mul", Series.one(2), Series.one(5), 4)


@settings(max_examples=40, deadline=None)
@given(series_st, series_st, series_st)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(series_st, series_st)
def test_div_inverts_mul(a, b):
    if b.coeffs[0] == 0:
        b = b + 1
    q = series_arith("div", a, b, N)
    assert series_arith("mul", q, b, N) == a


@settings(max_examples=25, deadline=None)
@given(series_st, st.lists(small, min_size=N, max_size=N))
def test_compose_with_reversion(outer, tail):
    if tail[0] == 0:
        tail[0] = Fraction(1)
    inner = Series.from_coeffs([0] + tail)
    g = series_revert(inner, N)
    assert series_compose(inner, g, N) == Series.monomial(1, N)
    back = series_compose(series_compose(outer, inner, N), g, N)
    assert back == outer


def test_series_calculus():
    e = Series.exp(6)
    assert e.derivative() == e.truncate(5)
    assert e.integral().truncate(6) == e - 1


def _partitions(n, m):
    """Set partitions of {0..n-1} into m blocks, by brute force."""
    if n == 0:
        return 1 if m == 0 else 0
    count = 0
    for labels in product(range(m), repeat=n):
        # canonical labelling: first occurrences in increasing order
        seen = []
        for x in labels:
            if x not in seen:
                seen.append(x)
        if seen == list(range(m)):
            count += 1
    return count


class TestStirling:
    def test_examples(self):
        assert stirling2(0, 0) == 1
        assert stirling2(4, 2) == 7
        assert stirling2(3, 5) == 0

    @pytest.mark.parametrize("n", range(0, 7))
    def test_against_enumeration(self, n):
        for m in range(0, n + 1):
            assert stirling2(n, m) == _partitions(n, m)

    def test_beyond_cap_matches_recurrence(self):
        n = 300
        for m in (1, 2, 150, 299, 300):
            assert stirling2(n, m) == m * stirling2(n - 1, m) + stirling2(n - 1, m - 1)


class TestDirichlet:
    D = DirichletPoly(1, {(3,): 1, (2,): -1})

    def test_examples(self):
        assert dirichlet_eval(self.D, -1) == 1
        assert dirichlet_eval(self.D, 0) == 0
        v = dirichlet_eval(DirichletPoly(1, {(2,): 1}), 2.5, "float")
        assert v.contains(2 ** -2.5, 0)
        assert abs(v.value - 0.176776695) < 1e-9

    def test_merges_bases(self):
        D = DirichletPoly(1, [((2,), 1), ((2,), -1), ((3,), 2)])
        assert D.terms == {(3,): 2}
        assert repr(D) == "2*3^(-s)"

    @settings(max_examples=50, deadline=None)
    @given(st.dictionaries(st.tuples(st.integers(1, 9), st.integers(1, 9)), small, max_size=6),
           st.integers(-4, 4), st.integers(-4, 4))
    def test_exact_matches_float(self, terms, s1, s2):
        D = DirichletPoly(2, terms)
        exact = dirichlet_eval(D, (s1, s2))
        approx = dirichlet_eval(D, (float(s1), float(s2)), "float")
        assert abs(approx.value - float(exact)) <= approx.err

    def test_exact_mode_rejects_fractional(self):
        with pytest.raises(ValueError):
            dirichlet_eval(self.D, 0.5)


class TestMPoly:
    def test_substitute_matches_multinomial(self):
        caps = (4, 4)
        e = MPoly.substitute(Series.exp(8), caps, (0, 1))
        for a in range(5):
            for b in range(5):
                assert e.coefficient((a, b)) == Fraction(1, math.factorial(a) * math.factorial(b))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
    def test_ring_laws(self, xs, ys):
        caps = (3, 3)
        x, y = MPoly.variable(caps, 0), MPoly.variable(caps, 1)
        a = x * xs[0] + y * xs[1] + MPoly.constant(caps, xs[2])
        b = x * ys[0] + x * y * ys[1] + MPoly.constant(caps, ys[2])
        assert (a * b) * a == a * (b * a)
        assert a * (b + a) == a * b + a * a
        assert a ** 2 == a * a


def test_fraction_strings():
    for q in (Fraction(0), Fraction(-3, 7), Fraction(5)):
        assert frac_from_str(frac_to_str(q)) == q
    assert frac_to_str(Fraction(-3, 7)) == "-3/7"
