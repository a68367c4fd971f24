"""Exact rational substrate: truncated power series, sparse multivariate
truncated polynomials, Stirling tables and Dirichlet polynomials.

Rationals are :class:`fractions.Fraction` throughout; they are always reduced
and never rounded. Every truncation order is supplied by the caller.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from polyzeta.numvalue import UNIT, NumValue

__all__ = [
    "CompositionError",
    "DirichletPoly",
    "MPoly",
    "NonInvertibleError",
    "Series",
    "binomial",
    "dirichlet_eval",
    "frac_from_str",
    "frac_to_str",
    "series_arith",
    "series_compose",
    "series_revert",
    "stirling2",
]


class NonInvertibleError(ValueError):
    """Raised when a series division has no power-series quotient."""


class CompositionError(ValueError):
    """Raised when the inner series of a composition has a constant term."""


def frac_to_str(q: Fraction) -> str:
    """Serialize as ``"p/q"`` (``"p"`` when the denominator is 1)."""
    return str(Fraction(q))


def frac_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


# --------------------------------------------------------------------------
# Stirling and binomial tables

STIRLING_CAP = 256

_stirling_rows: list[list[int]] = [[1]]
_stirling_lock = threading.Lock()


def _extend_stirling(n: int) -> None:
    with _stirling_lock:
        while len(_stirling_rows) <= n:
            prev = _stirling_rows[-1]
            m_max = len(prev)
            row = [0] * (m_max + 1)
            for m in range(1, m_max + 1):
                left = prev[m] if m < m_max else 0
                row[m] = m * left + prev[m - 1]
            _stirling_rows.append(row)


def stirling2(n: int, m: int) -> int:
    """Stirling number of the second kind S(n, m)."""
    if n < 0 or m < 0:
        raise ValueError("stirling2 takes non-negative arguments")
    if m > n:
        return 0
    if n > STIRLING_CAP:
        # outside the memoized table: explicit inclusion-exclusion
        return sum((-1) ** (m - i) * math.comb(m, i) * i ** n
                   for i in range(m + 1)) // math.factorial(m)
    if n >= len(_stirling_rows):
        _extend_stirling(n)
    return _stirling_rows[n][m]


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# --------------------------------------------------------------------------
# Univariate truncated series


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Series:
    """Power series known exactly through ``t**order``."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a Series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    # construction ---------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None) -> "Series":
        cs = list(coeffs)
        if order is not None:
            cs = (cs + [0] * (order + 1))[: order + 1]
        return cls(tuple(cs))

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls((0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, power: int, order: int, coeff=1) -> "Series":
        cs = [Fraction(0)] * (order + 1)
        if power <= order:
            cs[power] = _frac(coeff)
        return cls(tuple(cs))

    @classmethod
    def exp(cls, order: int, scale=1) -> "Series":
        """exp(scale * t)."""
        scale = _frac(scale)
        cs = [Fraction(1)]
        for n in range(1, order + 1):
            cs.append(cs[-1] * scale / n)
        return cls(tuple(cs))

    # inspection -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise IndexError(f"coefficient {n} beyond stored order {self.order}")
        return self.coeffs[n]

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order}")
        return Series(self.coeffs[: order + 1])

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            return self + Series.monomial(0, self.order, other)
        n = min(self.order, other.order)
        return Series(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Series(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        c = _frac(c)
        return Series(tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            s = Fraction(0)
            for i in range(k + 1):
                ai = a[i]
                if ai:
                    bk = b[k - i]
                    if bk:
                        s += ai * bk
            out.append(s)
        return Series(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers: use division")
        result = Series.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift_down(self, v: int) -> "Series":
        """Divide by t**v; the low coefficients must vanish."""
        if any(self.coeffs[:v]):
            raise NonInvertibleError("non-invertible divisor")
        return Series(self.coeffs[v:]) if v <= self.order else Series((Fraction(0),))

    def shift_up(self, v: int) -> "Series":
        """Multiply by t**v, keeping the known order."""
        return Series((Fraction(0),) * v + self.coeffs[: len(self.coeffs) - v]
                      if v <= self.order else (Fraction(0),) * (self.order + 1))

    def __truediv__(self, other):
        if not isinstance(other, Series):
            return self.scale(Fraction(1) / _frac(other))
        v = other.valuation()
        if v is None:
            raise NonInvertibleError("non-invertible divisor")
        va = self.valuation()
        if va is not None and va < v:
            raise NonInvertibleError("non-invertible divisor")
        a = self.shift_down(v)
        b = other.shift_down(v)
        n = min(a.order, b.order)
        b0 = b.coeffs[0]
        q = []
        for k in range(n + 1):
            s = a.coeffs[k]
            for i in range(1, k + 1):
                bi = b.coeffs[i]
                if bi:
                    s -= bi * q[k - i]
            q.append(s / b0)
        return Series(tuple(q))

    def derivative(self) -> "Series":
        if self.order == 0:
            return Series((Fraction(0),))
        return Series(tuple(n * c for n, c in enumerate(self.coeffs) if n))

    def integral(self) -> "Series":
        """Antiderivative with zero constant term (gains one order)."""
        return Series((Fraction(0),) + tuple(c / (n + 1) for n, c in enumerate(self.coeffs)))

    def compose(self, inner: "Series", order: int | None = None) -> "Series":
        return series_compose(self, inner, order if order is not None
                              else min(self.order, inner.order))

    def egf(self) -> list:
        """Coefficients multiplied by n! (exponential generating function view)."""
        return [c * math.factorial(n) for n, c in enumerate(self.coeffs)]

    def evaluate(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def to_json(self) -> list:
        return [frac_to_str(c) for c in self.coeffs]

    def __repr__(self):
        terms = [f"{c}*t^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"Series({' + '.join(terms) or '0'}; O(t^{self.order + 1}))"


def series_arith(kind: str, a: Series, b: Series, N: int) -> Series:
    """``a (kind) b`` exact through ``t**N``.

    Both operands must be known far enough for the requested order; for
    ``div`` that includes the valuation shift of the divisor.
    """
    if kind == "add":
        need = N
        out = a + b
    elif kind == "mul":
        need = N
        out = a * b
    elif kind == "div":
        v = b.valuation()
        if v is None:
            raise NonInvertibleError("non-invertible divisor")
        need = N + v
        out = a / b
    else:
        raise ValueError(f"unknown series operation {kind!r}")
    if min(a.order, b.order) < need:
        raise ValueError(f"operands known to order {min(a.order, b.order)}, need {need}")
    return out.truncate(N)


def series_compose(outer: Series, inner: Series, N: int) -> Series:
    """``outer(inner(t))`` through ``t**N``; ``inner`` must have no constant term."""
    if inner.coeffs[0] != 0:
        raise CompositionError("composition requires positive valuation")
    if inner.order < N:
        raise ValueError(f"inner series known to order {inner.order}, need {N}")
    if outer.order < N:
        # terms past outer's order could still reach t**N
        v = inner.valuation()
        if v is None or (outer.order + 1) * v <= N:
            raise ValueError(f"outer series known to order {outer.order}, need {N}")
    inner = inner.truncate(N)
    top = min(outer.order, N)
    acc = Series.monomial(0, N, outer.coeffs[top])
    for n in range(top - 1, -1, -1):
        acc = acc * inner
        acc = acc + outer.coeffs[n]
    return acc


def series_revert(f: Series, N: int) -> Series:
    """Compositional inverse ``g`` with ``f(g(t)) = t`` through ``t**N``.

    ``f`` needs valuation exactly 1. Coefficients are fixed one order at a
    time: the ``t**n`` coefficient of ``f(g)`` is linear in ``g_n`` with slope
    ``f_1``.
    """
    if f.coeffs[0] != 0 or f.order < 1 or f.coeffs[1] == 0:
        raise CompositionError("reversion requires valuation exactly 1")
    if f.order < N:
        raise ValueError(f"series known to order {f.order}, need {N}")
    f1 = f.coeffs[1]
    g = [Fraction(0), 1 / f1] + [Fraction(0)] * (N - 1)
    for n in range(2, N + 1):
        c = series_compose(f, Series.from_coeffs(g[: n + 1]), n)[n]
        g[n] = -c / f1
    return Series.from_coeffs(g[: N + 1])


# --------------------------------------------------------------------------
# Sparse multivariate truncated polynomials


class MPoly:
    """Polynomial in ``nvars`` variables, truncated per variable at ``caps``.

    Terms live in a dict from exponent tuples to Fractions; zero coefficients
    are never stored and every exponent respects its cap.
    """

    __slots__ = ("caps", "terms")

    def __init__(self, caps: Sequence[int], terms: Mapping | None = None):
        self.caps = tuple(int(c) for c in caps)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.caps):
                raise ValueError("exponent vector has the wrong length")
            if c and all(x <= cap for x, cap in zip(e, self.caps)):
                clean[e] = _frac(c)
        self.terms = clean

    @property
    def nvars(self) -> int:
        return len(self.caps)

    @classmethod
    def constant(cls, caps, c=1) -> "MPoly":
        return cls(caps, {(0,) * len(caps): c})

    @classmethod
    def variable(cls, caps, j: int) -> "MPoly":
        e = [0] * len(caps)
        e[j] = 1
        return cls(caps, {tuple(e): 1})

    @classmethod
    def linear_form(cls, caps, variables: Iterable[int]) -> "MPoly":
        out = cls(caps)
        for j in variables:
            out = out + cls.variable(caps, j)
        return out

    @classmethod
    def substitute(cls, series: Series, caps, variables: Iterable[int]) -> "MPoly":
        """``series(X)`` with ``X`` the sum of the listed variables."""
        X = cls.linear_form(caps, variables)
        total = sum(caps)
        top = min(series.order, total)
        if series.order < total:
            raise ValueError(f"series known to order {series.order}, caps need {total}")
        acc = cls.constant(caps, series.coeffs[top])
        for n in range(top - 1, -1, -1):
            acc = acc * X + cls.constant(caps, series.coeffs[n])
        return acc

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def _check(self, other: "MPoly"):
        if self.caps != other.caps:
            raise ValueError("MPoly caps differ")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.caps, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(self.caps, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.caps, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = _frac(other)
            return MPoly(self.caps, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        caps = self.caps
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if all(x <= cap for x, cap in zip(e, caps)):
                    out[e] = out.get(e, 0) + c1 * c2
        return MPoly(caps, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = MPoly.constant(self.caps)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.caps == other.caps and self.terms == other.terms

    def __repr__(self):
        return f"MPoly(caps={self.caps}, terms={len(self.terms)})"


# --------------------------------------------------------------------------
# Dirichlet polynomials


class DirichletPoly:
    """Finite sum ``sum_i c_i * prod_j n_ij ** (-s_j)`` with rational ``c_i``.

    ``terms`` maps base tuples (one positive integer per s-slot) to
    coefficients; equal bases are merged and zero coefficients dropped.
    """

    __slots__ = ("nslots", "terms")

    def __init__(self, nslots: int, terms: Mapping | Iterable = ()):
        self.nslots = int(nslots)
        merged: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for bases, c in items:
            bases = (bases,) if isinstance(bases, int) else tuple(int(b) for b in bases)
            if len(bases) != self.nslots:
                raise ValueError("base tuple does not match slot count")
            if any(b < 1 for b in bases):
                raise ValueError("Dirichlet bases must be >= 1")
            merged[bases] = merged.get(bases, 0) + _frac(c)
        self.terms = {b: c for b, c in sorted(merged.items()) if c}

    def __add__(self, other: "DirichletPoly"):
        if self.nslots != other.nslots:
            raise ValueError("slot counts differ")
        return DirichletPoly(self.nslots, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "DirichletPoly":
        c = _frac(c)
        return DirichletPoly(self.nslots, {b: c * v for b, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, DirichletPoly) and self.nslots == other.nslots
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for bases, c in self.terms.items():
            powers = "*".join(f"{b}^(-s{j + 1})" if self.nslots > 1 else f"{b}^(-s)"
                              for j, b in enumerate(bases))
            parts.append(f"{c}*{powers}")
        return " + ".join(parts)

    def evaluate(self, s, mode: str = "exact-int"):
        return dirichlet_eval(self, s, mode)

    def to_json(self) -> list:
        return [{"coeff": frac_to_str(c), "bases": list(b)} for b, c in self.terms.items()]


def dirichlet_eval(D: DirichletPoly, s, mode: str = "exact-int"):
    """Evaluate ``D`` at the exponent vector ``s`` (a scalar for one slot).

    ``exact-int`` returns a Fraction and needs integral exponents; ``float``
    returns a :class:`NumValue` whose bound covers the rounding of every term.
    """
    if not isinstance(s, (list, tuple)):
        s = (s,)
    if len(s) != D.nslots:
        raise ValueError(f"expected {D.nslots} exponents, got {len(s)}")
    if mode == "exact-int":
        ints = []
        for x in s:
            if isinstance(x, float) and not x.is_integer():
                raise ValueError("exact-int mode requires integral exponents")
            q = _frac(x)
            if q.denominator != 1:
                raise ValueError("exact-int mode requires integral exponents")
            ints.append(int(q))
        total = Fraction(0)
        for bases, c in D.terms.items():
            term = c
            for b, e in zip(bases, ints):
                term *= Fraction(b) ** (-e)
            total += term
        return total
    if mode == "float":
        sf = [float(x) for x in s]
        total = 0.0
        mag = 0.0
        for bases, c in D.terms.items():
            term = float(c)
            for b, e in zip(bases, sf):
                term *= float(b) ** (-e)
            total += term
            mag += abs(term)
        # pow is faithfully rounded; one product per slot, one conversion, one add
        err = mag * (2 * D.nslots + 4) * UNIT + len(D.terms) * UNIT * mag
        return NumValue(total, err)
    raise ValueError(f"unknown evaluation mode {mode!r}")


def product_range(caps: Sequence[int]):
    """All exponent vectors within ``caps``."""
    return product(*(range(c + 1) for c in caps))
