"""One test per acceptance criterion, each printing a single PASS/FAIL line.

The lines are repeated in the terminal summary under "acceptance criteria".
"""

import math
import time
from fractions import Fraction
from itertools import product

import pytest

from polyzeta.arith import dirichlet_eval
from polyzeta.etaxi import eta_single_38, identity_suite, theorem_value
from polyzeta.indices import Index, compositions, dual
from polyzeta.mzv import mzv, mzv_star, zeta_r
from polyzeta.neglog import IntPoly, li_neg_series_direct, p_poly, p_tilde
from polyzeta.numvalue import NumValue
from polyzeta.polybern import (
    congruence_check,
    duality_suite,
    eta_neg_closed,
    family_numbers,
    frak_B_symbolic,
    is_prime,
    multi_indexed,
    poly_bernoulli,
    poly_bernoulli_closed,
)
from polyzeta.quad import (
    consistency_suite,
    eta_neg_dirichlet,
    eta_neg_multi_quad,
    eta_quad,
    xi_quad,
    xi_tilde_quad,
)

PI = math.pi
Z3 = 1.2020569031595942853997


class Criterion:
    """Collects the individual checks of one criterion and prints a verdict."""

    def __init__(self, number, sink, limit=None):
        self.number = number
        self.sink = sink
        self.limit = limit
        self.failures = []
        self.notes = []
        self.checks = 0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def check(self, ok, what):
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def near(self, got, want, tol, what):
        got_v = got.value if isinstance(got, NumValue) else float(got)
        dev = abs(got_v - want)
        self.check(dev <= tol, f"{what}: |{got_v!r} - {want!r}| = {dev:.3g} > {tol:g}")

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if self.limit is not None and elapsed >= self.limit:
            self.failures.append(f"runtime {elapsed:.1f}s exceeds {self.limit}s")
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        verdict = "FAIL" if self.failures else "PASS"
        extra = "; ".join(self.notes)
        line = (f"{verdict} criterion {self.number}: {self.checks} checks in {elapsed:.2f}s"
                + (f" ({extra})" if extra else ""))
        self.sink.append(line)
        print("\n" + line)
        for f in self.failures[:10]:
            print(f"    {f}")
        assert not self.failures, self.failures[:10]
        return False


def assert_report(c, rep, label):
    c.check(rep.ok, f"{label}: {len(rep.failures)} failures, first {rep.failures[:1]}")
    c.checks += len(rep.cases) - 1


def test_criterion_1_family_values(verdicts):
    with Criterion(1, verdicts, limit=1.0) as c:
        seq = family_numbers("B", (-1, 0), 20)
        for m in range(21):
            c.check(seq[m] == 3 ** m - 2 ** m, f"B_{m}^(-1,0) = {seq[m]}")


def test_criterion_2_dualities(verdicts):
    with Criterion(2, verdicts, limit=60.0) as c:
        assert_report(c, duality_suite("B-neg", 12, 12), "B-neg")
        assert_report(c, duality_suite("C-neg", 10, 10), "C-neg")
        assert_report(c, duality_suite("multi-B", 4, 4, max_depth=2), "multi-B")
        assert_report(c, duality_suite("frak", 5, 6, max_depth=3), "frak")
        for k, m, want in [((-1, -2), (1, 0), 18), ((-1, 0), (1, 2), 18), ((-2, -1), (2, 2), 1958),
                           ((-2, -2), (2, 1), 1958), ((-3, -1), (1, 2), 1820),
                           ((-1, -2), (3, 1), 1820)]:
            got = multi_indexed(k=k, m=m, d=2)
            c.check(got == want, f"multi-indexed {k} {m} = {got}, expected {want}")
        D = frak_B_symbolic((1, 0))
        c.check(D.terms == {3: Fraction(1), 2: Fraction(-1)} or
                all(D.evaluate(-m) == 3 ** m - 2 ** m for m in range(12)),
                "frak B_(1,0) is not 3^-s - 2^-s")
        for s in (0.5, 1.5, 2.0, 3.25):
            got = dirichlet_eval(D, s, "float")
            c.near(got, 3 ** -s - 2 ** -s, 1e-14, f"frak B_(1,0) at s={s}")


def test_criterion_3_series_vs_closed(verdicts):
    with Criterion(3, verdicts) as c:
        for k in range(-6, 7):
            seq = family_numbers("B", (k,), 12)
            for n in range(13):
                closed = poly_bernoulli_closed(n, k)
                c.check(seq[n] == closed, f"n={n} k={k}: {seq[n]} != {closed}")
                c.check(poly_bernoulli("B", (k,), n) == closed, f"single n={n} k={k}")


def test_criterion_4_congruence(verdicts):
    with Criterion(4, verdicts) as c:
        skipped = []
        for p in [q for q in range(2, 14) if is_prime(q)]:
            for w in range(1, 5):
                for k in compositions(w):
                    if len(k) > 3:
                        continue
                    rep = congruence_check(p, k)
                    for case in rep.cases:
                        if case.status == "INAPPLICABLE":
                            skipped.append((p, tuple(k)))
                        else:
                            c.check(case.status == "PASS", f"p={p} k={tuple(k)}")
        c.notes.append(f"{len(skipped)} inapplicable: {skipped}")
        c.check(c.checks > 0, "no applicable cases")


def test_criterion_5_neglog(verdicts):
    with Criterion(5, verdicts) as c:
        x = IntPoly.var(1, 0)
        c.check(p_poly((0, 1)) == x ** 2 * 2, "P(x;0,1) != 2x^2")
        for r in range(1, 6):
            c.check(p_poly((0,) * r) == x ** r, f"P(x;0^{r}) != x^{r}")
        y1, y2 = IntPoly.var(2, 0), IntPoly.var(2, 1)
        f = p_tilde((1, 0))
        c.check(f.numerator == y1 * y2 and f.exponents == (2, 1), "Li_(-1,0) form")
        f = p_tilde((0, 1))
        c.check(f.numerator == y1 * y2 * (IntPoly.const(2, 2) - y1 - y2)
                and f.exponents == (2, 2), "Li_(0,-1) form")
        for r in range(1, 4):
            for k in product(range(6), repeat=r):
                if sum(k) > 5:
                    continue
                series = p_tilde(k).series(8)
                direct = {l: li_neg_series_direct(k, l)
                          for l in product(range(9), repeat=r) if sum(l) <= 8}
                c.check(series == direct, f"series mismatch at k={k}")


def admissible(max_weight):
    for w in range(2, max_weight + 1):
        for k in compositions(w):
            if k[-1] >= 2:
                yield tuple(k)


def test_criterion_6_mzv(verdicts):
    with Criterion(6, verdicts, limit=120.0) as c:
        c.near(mzv((1, 2)), Z3, 1e-8, "zeta(1,2)")
        c.near(mzv((2, 2)), PI ** 4 / 120, 1e-8, "zeta(2,2)")
        c.near(mzv((1, 3)), PI ** 4 / 360, 1e-8, "zeta(1,3)")
        c.near(mzv_star((1, 2)), 2 * Z3, 1e-8, "zeta*(1,2)")
        c.near(mzv_star((1, 3)), PI ** 4 / 72, 1e-8, "zeta*(1,3)")
        for k in admissible(7):
            d = tuple(dual(Index(k)))
            a, b = mzv(k), mzv(d)
            c.near(a, b.value, 1e-6, f"duality {k} vs {d}")
            c.check(a.overlaps(b), f"duality bounds {k} vs {d}")


def test_criterion_7_theorem_values(verdicts):
    with Criterion(7, verdicts) as c:
        for m in range(1, 7):
            c.near(theorem_value("xi", (1,), m), m * zeta_r(m + 1, 1e-14).value, 1e-6,
                   f"xi(1;{m})")
        c.near(theorem_value("xi", (2,), 2), PI ** 4 / 72, 1e-8, "xi(2;2)")
        c.near(theorem_value("eta", (2,), 1), 2 * Z3, 1e-8, "eta(2;1)")
        for k in range(1, 8):
            for m in range(1, 9 - k):
                a = eta_single_38(k, m)
                b = theorem_value("eta", (k,), m)
                c.near(a, b.value, 1e-6, f"corollary vs theorem at k={k} m={m}")


def test_criterion_8_identity_suites(verdicts):
    with Criterion(8, verdicts) as c:
        for name, opts in [("refinement", {"max_weight": 5, "max_m": 3}),
                           ("landen", {"max_weight": 4, "z": ["1/5", "3/10", "1/2"]}),
                           ("euler-table", {"z": ["3/10", "1/2", "7/10"]}),
                           ("xi-zeta-table", {"m": [2, 3]}),
                           ("ohno", {"max_sum": 7}),
                           ("le-murakami", {"max_k": 7})]:
            rep = identity_suite(name, eps=1e-10, **opts)
            assert_report(c, rep, name)
            tol = 1e-8 if name == "euler-table" else 1e-6
            for case in rep.cases:
                if isinstance(case.lhs, NumValue) and isinstance(case.rhs, NumValue):
                    c.near(case.lhs, case.rhs.value, tol, f"{name} {case.input}")
        rep = identity_suite("eta-dual", eps=1e-10, max_sum=8)
        c.checks += len(rep.cases)
        dev = rep.params["max_deviation"]
        c.notes.append(f"eta-dual experiment max deviation {dev:.2g}")
        c.check(all(case.status == "EXPERIMENT" for case in rep.cases), "eta-dual status")
        c.check(dev <= 1e-6, f"eta-dual deviation {dev:g}")


def test_criterion_9_quadrature(verdicts):
    with Criterion(9, verdicts, limit=300.0) as c:
        for s in (1.5, 2.0, 2.5):
            c.near(eta_quad((-1,), s, 1e-10).value, 2 ** -s, 1e-8, f"eta(-1;{s})")
        for k in range(5):
            D = eta_neg_closed((k,))
            for s in (0.5, 1.0, 1.5, 2.0, 3.0):
                want = dirichlet_eval(D, s, "float")
                c.near(eta_quad((-k,), s, 1e-9).value, want.value, 1e-7, f"eta(-{k};{s})")
        c.near(eta_quad((1,), 1, 1e-7).value, PI ** 2 / 6, 1e-5, "eta(1;1)")
        c.near(eta_quad((2,), 1, 1e-7).value, 2 * Z3, 1e-5, "eta(2;1)")
        c.near(xi_quad((1,), 2, 1e-8).value, 2 * Z3, 1e-6, "xi(1;2)")
        want = dirichlet_eval(eta_neg_closed((1, 0)), (2, 2), "float")
        c.near(eta_neg_multi_quad((1, 0), (2, 2), 1e-8).value, want.value, 1e-6,
               "eta(-1,0;2,2)")
        try:
            xi_tilde_quad((0, 0), 2.0)
            c.check(False, "all-zero xi-tilde accepted")
        except ValueError:
            c.check(True, "")
        rep = consistency_suite(1e-9)
        assert_report(c, rep, "quadrature consistency")


def test_criterion_10_coverage(verdicts):
    # continuation claims are checked on finite samples: closed form = integral
    # where both exist, closed form = coefficient at the negative integers
    with Criterion(10, verdicts) as c:
        c.notes.append("continuation statements covered by criteria 2 and 9")
        rep = duality_suite("frak", 3, 6, max_depth=2)
        assert_report(c, rep, "coefficient at negative integers")
        for k in ((0,), (1,), (2,), (3,)):
            D = eta_neg_dirichlet(k)
            c.check(D == eta_neg_closed(k), f"Dirichlet forms differ at {k}")
        for k, s in (((-2,), 0.75), ((-3,), 2.5)):
            r = eta_quad(k, s, 1e-10)
            c.check(r.value.overlaps(dirichlet_eval(eta_neg_closed((-k[0],)), s, "float")),
                    f"integral vs closed form at {k}, s={s}")
