import math

import mpmath
import numpy as np
import pytest

from polyzeta.arith import Series, dirichlet_eval, series_compose
from polyzeta.mzv import li_real
from polyzeta.polybern import eta_neg_closed, frak_B_symbolic, poly_bernoulli, li_taylor
from polyzeta.quad import (
    LiContinuation,
    consistency_suite,
    eta_neg_dirichlet,
    eta_neg_multi_dirichlet,
    eta_neg_multi_quad,
    eta_quad,
    li_continued,
    li_continued_taylor,
    mellin_integral,
    xi_quad,
    xi_tilde_dirichlet,
    xi_tilde_quad,
)

Z2 = math.pi ** 2 / 6
Z3 = float(mpmath.zeta(3))


class TestContinuation:
    @pytest.mark.parametrize("k", [(1,), (3,), (1, 2), (2, 1, 1)])
    @pytest.mark.parametrize("sigma", [1, -1])
    def test_taylor_matches_composition(self, k, sigma):
        N = 20
        composed = series_compose(li_taylor(k, N), 1 - Series.exp(N, sigma), N)
        assert li_continued_taylor(k, sigma, N)[k] == composed

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("t", [0.2, 0.5, 1.0, 3.0, 12.0])
    def test_depth_one_against_mpmath(self, k, t):
        truth = float(mpmath.polylog(k, 1 - mpmath.exp(t)))
        v = li_continued((k,), t, 1e-9)
        assert abs(v.value - truth) <= v.err + 1e-14 * abs(truth)

    def test_log_identity(self):
        for t in (0.1, 2.0, 30.0):
            assert li_continued((1,), t).contains(-t)

    def test_negative_sigma_against_series(self):
        cont = LiContinuation((1, 2), -1, 4.0)
        ts = np.array([0.3, 0.9, 2.0, 4.0])
        vals, errs = cont.values(ts)
        for t, v, e in zip(ts, vals, errs):
            ref = li_real((1, 2), 1 - math.exp(-t), 1e-12)
            assert abs(v - ref.value) <= e + ref.err + 1e-13

    def test_requires_positive_t(self):
        with pytest.raises(ValueError):
            li_continued((1,), 0.0)


class TestMellin:
    def test_gamma_integral(self):
        # (1/Gamma(s)) int t^{s-1} e^{-2t} dt = 2^{-s}
        res = mellin_integral(lambda t: np.exp(-2 * t), 0.7, 1e-11,
                              lambda T: math.exp(-2 * T))
        assert res.value.contains(2 ** -0.7, 0)
        assert {"quad", "tail", "rounding", "T"} <= set(res.breakdown)


class TestEtaXi:
    @pytest.mark.parametrize("s", [1.5, 2.0, 2.5])
    def test_minus_one(self, s):
        r = eta_quad((-1,), s, 1e-10)
        assert abs(r.value.value - 2 ** -s) <= 1e-8
        assert r.value.contains(2 ** -s)

    @pytest.mark.parametrize("k", range(1, 5))
    def test_against_frak(self, k):
        D = frak_B_symbolic((k,))
        assert eta_neg_dirichlet((k,)) == D
        for s in (0.25, 1.5, 3.0):
            v = eta_quad((-k,), s, 1e-10).value
            assert v.overlaps(dirichlet_eval(D, s, "float"))

    def test_positive_values(self):
        assert eta_quad((1,), 1.0).value.contains(Z2)
        assert eta_quad((2,), 1.0).value.contains(2 * Z3)
        assert xi_quad((1,), 2.0).value.contains(2 * Z3)

    def test_positive_non_integer_s(self):
        # eta_1(s) = s zeta(s+1)
        s = 1.7
        assert eta_quad((1,), s).value.contains(s * float(mpmath.zeta(s + 1)))

    def test_domain_errors(self):
        with pytest.raises(ValueError, match="divergent"):
            eta_quad((1,), 0.0)
        with pytest.raises(ValueError, match="mixed"):
            eta_quad((1, -1), 2.0)
        with pytest.raises(ValueError, match="divergent"):
            xi_quad((2,), -0.5)


class TestXiTilde:
    def test_zero_index_rejected(self):
        for k in ((0,), (0, 0)):
            with pytest.raises(ValueError, match="every entry is zero"):
                xi_tilde_quad(k, 2.0)
            with pytest.raises(ValueError):
                xi_tilde_dirichlet(k)

    def test_values_at_negative_integers(self):
        for k in range(1, 6):
            D = xi_tilde_dirichlet((k,))
            for m in range(6):
                assert dirichlet_eval(D, -m) == poly_bernoulli("C", (-k,), m)

    def test_quad_matches_closed_form(self):
        for k in ((1,), (2,), (1, 0), (0, 1), (2, 1)):
            D = xi_tilde_dirichlet(k)
            for s in (0.5, 2.0):
                assert xi_tilde_quad(k, s).value.overlaps(dirichlet_eval(D, s, "float"))


class TestMulti:
    def test_closed_forms_agree(self):
        for k in ((0, 0), (1, 0), (0, 1), (2, 1), (1, 3), (1, 1, 0)):
            assert eta_neg_multi_dirichlet(k) == eta_neg_closed(k)

    def test_quadrature(self):
        r = eta_neg_multi_quad((1, 0), (2.0, 2.0), 1e-9)
        closed = dirichlet_eval(eta_neg_closed((1, 0)), (2.0, 2.0), "float")
        assert abs(r.value.value - closed.value) <= 1e-6
        assert r.value.overlaps(closed)

    def test_rejections(self):
        with pytest.raises(ValueError):
            eta_neg_multi_quad((1, 0, 0), (1.0, 1.0, 1.0))
        with pytest.raises(ValueError):
            eta_neg_multi_quad((1, 0), (1.0, 0.0))


def test_consistency_suite():
    rep = consistency_suite()
    assert rep.ok, [c.to_json() for c in rep.failures]


from hypothesis import given, settings
from hypothesis import strategies as st


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4), st.floats(0.05, 5.0))
def test_negative_index_bounds_are_honest(k, s):
    D = eta_neg_dirichlet((k,))
    v = eta_quad((-k,), s, 1e-10).value
    assert v.overlaps(dirichlet_eval(D, s, "float"), 0)
