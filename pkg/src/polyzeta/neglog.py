"""Rational normal forms of multiple polylogarithms at non-positive indices.

``Li_{-k}(z) = P(z; k) / (1 - z)^{|k| + r}`` in one variable, and in several
variables ``Li^sh_{-k}(y) = Ptilde(y; k) / prod_j (1 - y_j)^{e_j}`` with
``e_j = k_j + ... + k_r + 1``. Both numerators are integer polynomials built by
recursion on the last entry.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

__all__ = [
    "CTable",
    "IntPoly",
    "RatPolyForm",
    "c_table",
    "eulerian_poly",
    "li_neg_eval",
    "li_neg_series_direct",
    "p_poly",
    "p_tilde",
]


class IntPoly:
    """Polynomial with integer coefficients in ``nvars`` variables.

    Stored expanded as a map from exponent tuples to nonzero ints.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | Iterable = ()):
        self.nvars = int(nvars)
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars or any(x < 0 for x in e):
                raise ValueError("bad exponent vector")
            acc[e] = acc.get(e, 0) + int(c)
        self.terms = {e: c for e, c in acc.items() if c}

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, nvars: int, c: int = 1) -> "IntPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, j: int, power: int = 1) -> "IntPoly":
        e = [0] * nvars
        e[j] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "IntPoly":
        """Univariate polynomial from ``[c_0, c_1, ...]``."""
        return cls(1, {(n,): c for n, c in enumerate(coeffs)})

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        self._same(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = IntPoly.const(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.nvars, other)
        return isinstance(other, IntPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _same(self, other):
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")

    # structure ------------------------------------------------------------

    def derivative(self, j: int = 0) -> "IntPoly":
        out = {}
        for e, c in self.terms.items():
            if e[j]:
                f = list(e)
                f[j] -= 1
                out[tuple(f)] = c * e[j]
        return IntPoly(self.nvars, out)

    def degree(self, j: int | None = None) -> int:
        """Degree in variable ``j`` (total degree when ``j`` is None); -1 for zero."""
        if not self.terms:
            return -1
        if j is None:
            return max(sum(e) for e in self.terms)
        return max(e[j] for e in self.terms)

    def min_degree(self, j: int) -> int:
        return min(e[j] for e in self.terms) if self.terms else -1

    def divisible_by_all_vars(self) -> bool:
        return all(all(x >= 1 for x in e) for e in self.terms)

    def embed(self, nvars: int) -> "IntPoly":
        """Same polynomial viewed in ``nvars >= self.nvars`` variables (new ones trailing)."""
        pad = (0,) * (nvars - self.nvars)
        return IntPoly(nvars, {e + pad: c for e, c in self.terms.items()})

    def diagonal(self) -> "IntPoly":
        """Univariate polynomial obtained by setting every variable equal."""
        return IntPoly(1, [((sum(e),), c) for e, c in self.terms.items()])

    def coeffs(self) -> list:
        """Dense coefficient list of a univariate polynomial."""
        if self.nvars != 1:
            raise ValueError("coeffs() is for univariate polynomials")
        d = self.degree()
        return [self.terms.get((n,), 0) for n in range(d + 1)] if d >= 0 else []

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for x, n in zip(pt, e):
                if n:
                    term *= x ** n
            total += term
        return total

    def to_json(self) -> list:
        return [[c, *e] for e, c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ["x"] if self.nvars == 1 else [f"x{j + 1}" for j in range(self.nvars)]
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"{n}^{p}" if p > 1 else n for n, p in zip(names, e) if p)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _one_minus(nvars: int, j: int) -> IntPoly:
    return IntPoly.const(nvars) - IntPoly.var(nvars, j)


# --------------------------------------------------------------------------
# univariate numerators


@lru_cache(maxsize=None)
def _p_poly(k: tuple) -> IntPoly:
    r = len(k)
    x = IntPoly.var(1, 0)
    if k[-1] == 0:
        return x if r == 1 else x * _p_poly(k[:-1])
    prev_k = k[:-1] + (k[-1] - 1,)
    prev = _p_poly(prev_k)
    # z d/dz of P / (1-z)^{K-1+r}
    return x * (prev.derivative() * (1 - x) + (sum(k) - 1 + r) * prev)


def p_poly(k: Sequence[int]) -> IntPoly:
    """Numerator ``P(x; k)`` with ``Li_{-k}(z) = P(z; k) / (1 - z)^{|k| + r}``."""
    k = tuple(int(v) for v in k)
    if not k or any(v < 0 for v in k):
        raise ValueError("k must be a non-empty vector of integers >= 0")
    P = _p_poly(k)
    r, K = len(k), sum(k)
    expected = r if K == 0 else K + r - 1
    if P.degree() != expected or P.min_degree(0) < r:
        raise ArithmeticError(f"normal form of {k} violates its degree/divisibility bounds")
    return P


def eulerian_poly(k: int) -> IntPoly:
    """``sum_j A(k, j) x^{j+1}`` built from the explicit Eulerian-number sum."""
    if k == 0:
        return IntPoly.var(1, 0)
    coeffs = [0]
    for j in range(k):
        coeffs.append(sum((-1) ** i * math.comb(k + 1, i) * (j + 1 - i) ** k
                          for i in range(j + 1)))
    return IntPoly.from_coeffs(coeffs)


# --------------------------------------------------------------------------
# c-coefficient tables


@dataclass(frozen=True)
class CTable:
    """``c_{j,nu}`` with ``d/dz sum_{m>l} m^k z^m = (1-z)^{-k-2} sum c_{j,nu} l^nu z^{l+j}``."""

    k: int
    entries: tuple  # entries[j][nu]

    def __getitem__(self, jn) -> int:
        j, nu = jn
        return self.entries[j][nu]

    def numerator(self, l: int) -> IntPoly:
        """``sum_j (sum_nu c_{j,nu} l^nu) z^{l+j}`` for a concrete ``l``."""
        return IntPoly(1, [((l + j,), sum(c * l ** nu for nu, c in enumerate(row)))
                           for j, row in enumerate(self.entries)])

    def to_json(self) -> dict:
        return {"k": self.k, "entries": [list(r) for r in self.entries]}


_ctable_lock = threading.Lock()
_ctables: dict = {}


def _c_rows(k: int) -> dict:
    # R(z, l) with Q = z^l R; dict (j, nu) -> coefficient
    R = {(0, 0): 1, (0, 1): 1, (1, 1): -1}
    for kk in range(1, k + 1):
        nxt: dict = {}

        def add(j, nu, c):
            nxt[(j, nu)] = nxt.get((j, nu), 0) + c

        for (j, nu), c in R.items():
            # (1 - z)(1 + l) R
            add(j, nu, c)
            add(j, nu + 1, c)
            add(j + 1, nu, -c)
            add(j + 1, nu + 1, -c)
            # z (1 - z) dR/dz
            if j:
                add(j, nu, j * c)
                add(j + 1, nu, -j * c)
            # (kk + 1) z R
            add(j + 1, nu, (kk + 1) * c)
        R = {key: v for key, v in nxt.items() if v}
    return R


def c_table(k: int) -> CTable:
    if k < 0:
        raise ValueError("k must be >= 0")
    with _ctable_lock:
        tab = _ctables.get(k)
        if tab is None:
            R = _c_rows(k)
            size = k + 2
            if any(j >= size or nu >= size for j, nu in R):
                raise ArithmeticError("c-table exceeds its index range")
            tab = CTable(k, tuple(tuple(R.get((j, nu), 0) for nu in range(size))
                                  for j in range(size)))
            _ctables[k] = tab
    return tab


# --------------------------------------------------------------------------
# multivariate numerators


def _exponents(k: tuple) -> tuple:
    return tuple(sum(k[j:]) + 1 for j in range(len(k)))


@lru_cache(maxsize=None)
def _p_tilde(k: tuple) -> IntPoly:
    r = len(k)
    if r == 1:
        return _p_poly(k)
    if k[-1] == 0:
        return _p_tilde(k[:-1]).embed(r) * IntPoly.var(r, r - 1)
    kr = k[-1]
    tab = c_table(kr - 1)
    total = IntPoly(r)
    for nu in range(kr + 1):
        inner_k = k[:-2] + (k[-2] + nu,)
        inner = _p_tilde(inner_k).embed(r)
        # every earlier denominator exponent falls short by kr - nu
        fix = IntPoly.const(r)
        for i in range(r - 1):
            fix = fix * _one_minus(r, i) ** (kr - nu)
        base = inner * fix
        for j in range(kr + 1):
            c = tab[j, nu]
            if c:
                total = total + base * IntPoly.var(r, r - 1, j + 1) * c
    return total


@dataclass(frozen=True)
class RatPolyForm:
    """``numerator(y) / prod_j (1 - y_j)^{exponents[j]}``."""

    numerator: IntPoly
    exponents: tuple

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    def evaluate(self, y: Sequence) -> Fraction:
        y = [Fraction(v) for v in y]
        den = Fraction(1)
        for yj, e in zip(y, self.exponents):
            if yj == 1:
                raise ZeroDivisionError("evaluation at pole")
            den *= (1 - yj) ** e
        return self.numerator.evaluate(y) / den

    def series_coefficient(self, l: Sequence[int]) -> int:
        """Coefficient of ``y^l`` in the power-series expansion at the origin."""
        total = 0
        for a, c in self.numerator.terms.items():
            term = c
            for lj, aj, e in zip(l, a, self.exponents):
                n = lj - aj
                if n < 0:
                    term = 0
                    break
                term *= math.comb(n + e - 1, n)
            total += term
        return total

    def series(self, max_total: int) -> dict:
        """All coefficients of total degree ``<= max_total`` (zeros included)."""
        r = self.nvars
        return {l: self.series_coefficient(l)
                for l in product(range(max_total + 1), repeat=r) if sum(l) <= max_total}

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "exponents": list(self.exponents)}


def p_tilde(k: Sequence[int]) -> RatPolyForm:
    """Normal form of ``Li^sh_{-k}(y_1, ..., y_r)``."""
    k = tuple(int(v) for v in k)
    if not k or any(v < 0 for v in k):
        raise ValueError("k must be a non-empty vector of integers >= 0")
    P = _p_tilde(k)
    ex = _exponents(k)
    for j, e in enumerate(ex):
        if P.degree(j) > e:
            raise ArithmeticError(f"degree bound fails in variable {j + 1} for {k}")
    if not P.divisible_by_all_vars():
        raise ArithmeticError(f"numerator for {k} is not divisible by y_1...y_r")
    return RatPolyForm(P, ex)


def li_neg_series_direct(k: Sequence[int], l: Sequence[int]) -> int:
    """Coefficient of ``y^l`` in ``Li^sh_{-k}(y)`` straight from the defining sum."""
    if any(v < 1 for v in l):
        return 0
    out, acc = 1, 0
    for kj, lj in zip(k, l):
        acc += lj
        out *= acc ** kj
    return out


def li_neg_eval(k: Sequence[int], z: Sequence, variant: str = "sh") -> Fraction:
    """Exact value of ``Li^sh_{-k}(z)`` or ``Li^*_{-k}(z)`` at rational ``z``."""
    k = tuple(int(v) for v in k)
    if len(z) != len(k):
        raise ValueError("z must have one entry per index slot")
    z = [Fraction(v) for v in z]
    if variant == "sh":
        y = z
    elif variant == "star":
        y = []
        acc = Fraction(1)
        for zj in reversed(z):
            acc *= zj
            y.append(acc)
        y.reverse()
    else:
        raise ValueError(f"unknown variant {variant!r}; use sh or star")
    return p_tilde(k).evaluate(y)
