"""Exact poly-Bernoulli families and their verification suites.

Two independent routes are kept on purpose:

* the series pipeline ``Li_k(z)`` -> substitute ``z = 1 - e^{-t}`` -> divide by
  the family's divisor, used for B, C and the multi-poly versions;
* the finite Dirichlet-polynomial extraction, used for the multi-indexed numbers
  and for the second family of multi-poly numbers, whose exponent ``s`` stays
  symbolic.

The duality suites compare one route against the other wherever possible.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from polyzeta.arith import DirichletPoly, Series, series_arith, series_compose, stirling2
from polyzeta.indices import Index, SignedIndex, compositions
from polyzeta.report import FAIL, INAPPLICABLE, PASS, Report

__all__ = [
    "BernoulliKind",
    "MultiIndexSpec",
    "congruence_check",
    "duality_suite",
    "eta_neg_closed",
    "family_numbers",
    "finite_mzv",
    "frak_B",
    "frak_B_symbolic",
    "is_prime",
    "li_taylor",
    "mixed_coefficient",
    "multi_indexed",
    "multi_indexed_dirichlet",
    "poly_bernoulli",
    "poly_bernoulli_closed",
    "sum_formula_check",
]


class BernoulliKind(str, Enum):
    B = "B"    # divisor 1 - e^{-t}
    C = "C"    # divisor e^t - 1
    BB = "BB"  # divisor (1 - e^{-t})^r

    @classmethod
    def parse(cls, tag) -> "BernoulliKind":
        if isinstance(tag, cls):
            return tag
        try:
            return cls(str(tag).upper())
        except ValueError:
            raise ValueError(f"unknown Bernoulli kind {tag!r}; use B, C or BB") from None


# --------------------------------------------------------------------------
# series route


@lru_cache(maxsize=512)
def _li_taylor_cached(k: tuple, N: int) -> Series:
    coeffs = [Fraction(0)] * (N + 1)
    if N < 1:
        return Series(tuple(coeffs))
    # level[n] holds the depth-j partial sums ending exactly at n
    level = [Fraction(0)] + [Fraction(n) ** (-k[0]) for n in range(1, N + 1)]
    for kj in k[1:]:
        nxt = [Fraction(0)] * (N + 1)
        run = Fraction(0)
        for n in range(1, N + 1):
            run += level[n - 1]
            if run:
                nxt[n] = Fraction(n) ** (-kj) * run
        level = nxt
    coeffs[1:] = level[1:]
    return Series(tuple(coeffs))


def li_taylor(k: Sequence[int], N: int) -> Series:
    """Taylor series of ``Li_k(z)`` through ``z**N``; any integer entries."""
    return _li_taylor_cached(tuple(SignedIndex(k)), int(N))


def _one_minus_exp_neg(N: int) -> Series:
    return 1 - Series.exp(N, -1)


def _truncation(n: int, depth: int) -> int:
    return n + depth + 2


@lru_cache(maxsize=1024)
def _family_series(kind: BernoulliKind, k: tuple, N: int) -> tuple:
    r = len(k)
    T = _truncation(N, r)
    z = _one_minus_exp_neg(T)
    numer = series_compose(li_taylor(k, T), z, T)
    if kind is BernoulliKind.B:
        divisor = z
    elif kind is BernoulliKind.C:
        divisor = Series.exp(T) - 1
    else:
        divisor = z ** r
    v = divisor.valuation()
    assert T - v >= N, "truncation margin too small for the divisor"
    q = series_arith("div", numer, divisor, N)
    return tuple(q.egf())


def family_numbers(kind, k: Sequence[int], nmax: int) -> list:
    """``[X_0, ..., X_nmax]`` for the family ``kind`` and index ``k``."""
    kind = BernoulliKind.parse(kind)
    k = tuple(SignedIndex(k))
    if nmax < 0:
        raise ValueError("n must be >= 0")
    N = max(8, -(-nmax // 8) * 8)  # round up so nearby requests share a cache entry
    return list(_family_series(kind, k, N)[: nmax + 1])


def poly_bernoulli(kind, k: Sequence[int], n: int) -> Fraction:
    """``n!`` times the ``t**n`` coefficient of the family's generating function."""
    return family_numbers(kind, k, n)[n]


def poly_bernoulli_closed(n: int, k: int) -> Fraction:
    """``B_n^{(k)}`` from the Stirling-number closed formula."""
    total = Fraction(0)
    for m in range(n + 1):
        total += (-1) ** (m + n) * math.factorial(m) * stirling2(n, m) * Fraction(m + 1) ** (-k)
    return total


# --------------------------------------------------------------------------
# Dirichlet route


@lru_cache(maxsize=None)
def _power_egf(p: int, n: int) -> int:
    # n! [X^n] (1 - e^{-X})^p
    if n < p:
        return 0
    return math.factorial(p) * (-1) ** (n - p) * stirling2(n, p)


@lru_cache(maxsize=200_000)
def mixed_coefficient(p: tuple, m: tuple) -> int:
    """``m!`` times the coefficient of ``x^m`` in ``prod_j (1 - e^{-X_j})^{p_j}``.

    Here ``X_j = x_j + ... + x_r``. Variables are peeled off left to right; the
    part of ``X_j``'s degree not spent on ``x_j`` is carried to ``X_{j+1}``.
    """
    r = len(m)
    suffix = [sum(m[j:]) for j in range(r + 1)]
    if any(sum(p[j:]) > suffix[j] for j in range(r)):
        return 0
    carry = [1]
    for j in range(r):
        top = suffix[j]
        pj = p[j]
        mixed = [0] * (top + 1)
        for N in range(top + 1):
            acc = 0
            for n in range(pj, N + 1):
                c = carry[N - n] if N - n < len(carry) else 0
                if c:
                    acc += math.comb(N, n) * _power_egf(pj, n) * c
            mixed[N] = acc
        carry = [mixed[e + m[j]] for e in range(suffix[j + 1] + 1)]
    return carry[0]


def _exponent_vectors(m: tuple, lower: Sequence[int]):
    """All ``p >= lower`` with ``sum(p[j:]) <= sum(m[j:])`` for every ``j``."""
    r = len(m)
    suffix = [sum(m[j:]) for j in range(r + 1)]

    def rec(j, tail):
        # fill from the right so the suffix constraint is checked incrementally
        if j < 0:
            yield ()
            return
        for pj in range(lower[j], suffix[j] - tail + 1):
            for head in rec(j - 1, tail + pj):
                yield head + (pj,)

    yield from rec(r - 1, 0)


@lru_cache(maxsize=4096)
def multi_indexed_dirichlet(m: tuple, d: int) -> DirichletPoly:
    """The multi-indexed number at orders ``m`` and divisor depth ``d`` as a
    Dirichlet polynomial in ``(s_1, ..., s_r)``."""
    m = tuple(int(x) for x in m)
    r = len(m)
    if not 1 <= d <= r:
        raise ValueError(f"divisor depth must lie in 1..{r}")
    if any(x < 0 for x in m):
        raise ValueError("orders must be >= 0")
    delta = [1 if j < d else 0 for j in range(r)]
    lower = [1 - dj for dj in delta]
    terms = []
    for p in _exponent_vectors(m, lower):
        c = mixed_coefficient(p, m)
        if not c:
            continue
        bases, acc = [], 0
        for pj, dj in zip(p, delta):
            acc += pj + dj
            bases.append(acc)
        terms.append((tuple(bases), c))
    return DirichletPoly(r, terms)


class MultiIndexSpec:
    """Index ``k``, orders ``m`` and divisor depth ``d`` of a multi-indexed number."""

    __slots__ = ("k", "m", "d")

    def __init__(self, k: Sequence[int], m: Sequence[int], d: int):
        self.k = SignedIndex(k)
        self.m = tuple(int(x) for x in m)
        self.d = int(d)
        if len(self.m) != len(self.k):
            raise ValueError("k and m must have the same depth")
        if not 1 <= self.d <= len(self.k):
            raise ValueError(f"divisor depth must lie in 1..{len(self.k)}")
        if any(x < 0 for x in self.m):
            raise ValueError("orders must be >= 0")

    def __repr__(self):
        return f"MultiIndexSpec(k={tuple(self.k)}, m={self.m}, d={self.d})"


def multi_indexed(spec: MultiIndexSpec | None = None, *, k=None, m=None, d=None) -> Fraction:
    if spec is None:
        spec = MultiIndexSpec(k, m, d if d is not None else len(k))
    return multi_indexed_dirichlet(spec.m, spec.d).evaluate(tuple(spec.k), "exact-int")


def eta_neg_closed(k: Sequence[int]) -> DirichletPoly:
    """Closed finite form of ``eta(-k_1, ..., -k_r; s_1, ..., s_r)``."""
    k = tuple(int(x) for x in k)
    if any(x < 0 for x in k):
        raise ValueError("entries must be >= 0")
    return multi_indexed_dirichlet(k, len(k))


@lru_cache(maxsize=4096)
def frak_B_symbolic(k: tuple) -> DirichletPoly:
    """The second multi-poly family at orders ``k`` as a Dirichlet polynomial in ``s``."""
    k = tuple(int(x) for x in k)
    if not k or any(x < 0 for x in k):
        raise ValueError("orders must be a non-empty vector of integers >= 0")
    r = len(k)
    terms = []
    for p in _exponent_vectors(k, [0] * r):
        c = mixed_coefficient(p, k)
        if not c:
            continue
        total = sum(p) + r
        for a in range(r):
            terms.append(((total - a,), (-1) ** a * math.comb(r - 1, a) * c))
    return DirichletPoly(1, terms)


def frak_B(k: Sequence[int], s=None):
    """Symbolic form when ``s`` is None, otherwise the exact value at integer ``s``."""
    D = frak_B_symbolic(tuple(k))
    return D if s is None else D.evaluate(s, "exact-int")


# --------------------------------------------------------------------------
# finite multiple zeta values


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def finite_mzv(p: int, k: Sequence[int]) -> int:
    """``sum_{0 < m_1 < ... < m_r < p} prod m_i^{-k_i}`` reduced mod ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = Index(k)
    inv = [0] + [pow(n, -1, p) for n in range(1, p)]
    level = [0] + [pow(inv[n], k[0], p) for n in range(1, p)]
    for kj in k[1:]:
        nxt = [0] * p
        run = 0
        for n in range(1, p):
            run = (run + level[n - 1]) % p
            nxt[n] = pow(inv[n], kj, p) * run % p
        level = nxt
    return sum(level) % p


def _residue(q: Fraction, p: int) -> int | None:
    if q.denominator % p == 0:
        return None
    return q.numerator * pow(q.denominator, -1, p) % p


def congruence_check(p: int, k: Sequence[int], report: Report | None = None) -> Report:
    """Finite MZV against ``-C_{p-2}`` at the index with its last entry lowered by one."""
    k = Index(k)
    rep = report or Report("congruence", {"p": p, "k": list(k)})
    lhs = finite_mzv(p, k)
    k_minus = tuple(k[:-1]) + (k[-1] - 1,)
    c = poly_bernoulli(BernoulliKind.C, k_minus, p - 2)
    res = _residue(-c, p)
    inp = {"p": p, "k": list(k)}
    if res is None:
        rep.add(inp, lhs, str(c), INAPPLICABLE, note=f"{p} divides the denominator of {c}")
    else:
        rep.add(inp, lhs, res, lhs == res)
    return rep


# --------------------------------------------------------------------------
# verification suites


def _nonneg_vectors(depth: int, max_entry: int | None = None, max_sum: int | None = None):
    hi = max_entry if max_entry is not None else max_sum
    for v in product(range(hi + 1), repeat=depth):
        if max_sum is None or sum(v) <= max_sum:
            yield v


def duality_suite(kind: str, max_k: int, max_m: int, max_depth: int = 1,
                  weight_bound: bool = False) -> Report:
    """Exhaustive exact duality checks.

    ``B-neg`` and ``C-neg`` cover ``0 <= n <= max_m``, ``0 <= k <= max_k``.
    ``multi-B`` covers every depth up to ``max_depth`` with entries of both
    vectors bounded by ``max_k`` and ``max_m``. ``frak`` covers index vectors of
    depth up to ``max_depth`` with entry sum at most ``max_k`` and ``m <= max_m``.
    """
    kind_norm = kind.replace("ℬ", "B")
    params = {"kind": kind_norm, "max_k": max_k, "max_m": max_m, "max_depth": max_depth}
    rep = Report("duality", params)
    if kind_norm == "B-neg":
        for n in range(max_m + 1):
            row = family_numbers("B", (-n,), max_k)
            for k in range(max_k + 1):
                lhs = family_numbers("B", (-k,), max_m)[n]
                rhs = row[k]
                rep.add({"n": n, "k": k}, lhs, rhs, lhs == rhs)
    elif kind_norm == "C-neg":
        for n in range(max_m + 1):
            for k in range(max_k + 1):
                lhs = family_numbers("C", (-k - 1,), max_m)[n]
                rhs = family_numbers("C", (-n - 1,), max_k)[k]
                rep.add({"n": n, "k": k}, lhs, rhs, lhs == rhs)
    elif kind_norm == "multi-B":
        for r in range(1, max_depth + 1):
            for k in _nonneg_vectors(r, max_k):
                for m in _nonneg_vectors(r, max_m):
                    lhs = multi_indexed(k=tuple(-x for x in k), m=m, d=r)
                    rhs = multi_indexed(k=tuple(-x for x in m), m=k, d=r)
                    rep.add({"k": list(k), "m": list(m)}, lhs, rhs, lhs == rhs)
    elif kind_norm == "frak":
        for r in range(1, max_depth + 1):
            for k in _nonneg_vectors(r, max_sum=max_k):
                seq = family_numbers("B", tuple(-x for x in k), max_m)
                D = frak_B_symbolic(k)
                for m in range(max_m + 1):
                    lhs = seq[m]
                    rhs = D.evaluate(-m)
                    rep.add({"k": list(k), "m": m}, lhs, rhs, lhs == rhs)
    else:
        raise ValueError(f"unknown duality suite {kind!r}; use B-neg, C-neg, multi-B or frak")
    return rep


def sum_formula_check(m: int, k: int) -> Report:
    """``B_m^{(k)} = (-1)^m sum C_m^{(k')}`` and the same with B and C swapped,
    the sums running over all compositions ``k'`` of ``k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rep = Report("sum-formula", {"m": m, "k": k})
    sign = (-1) ** m
    for left, right in (("B", "C"), ("C", "B")):
        lhs = poly_bernoulli(left, (k,), m)
        rhs = sign * sum(poly_bernoulli(right, tuple(c), m) for c in compositions(k))
        rep.add({"m": m, "k": k, "family": left}, lhs, rhs, lhs == rhs)
    return rep
