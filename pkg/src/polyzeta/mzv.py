"""Multiple zeta values, zeta-star values and multiple polylogarithms in double
precision, each returned as a :class:`NumValue` whose radius is a proven bound.

Multiple zeta values use the Hölder convolution: cutting the iterated integral
at ``c = 1/3`` writes ``zeta(k)`` as a finite sum of products of polylogarithms
at ``2/3`` and ``1/3``. Both converge geometrically, and the tails are bounded
explicitly.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from polyzeta.arith import Series, series_arith
from polyzeta.indices import Index, SignedIndex, _from_word, _to_word, coarsenings
from polyzeta.numvalue import UNIT, NumValue, nsum

__all__ = [
    "DEFAULT_EPS",
    "ValueCache",
    "li_real",
    "mzv",
    "mzv_star",
    "value_cache",
    "zeta_fn_int",
    "zeta_r",
]

DEFAULT_EPS = 1e-8

# split point of the Hölder convolution
_CUT = Fraction(1, 3)

_MAX_TERMS = 20_000_000

# coefficient recursions run in the widest native float; its unit roundoff is
# read from the platform so the bounds stay valid where longdouble == double
_WIDE = np.longdouble
_WIDE_UNIT = float(np.finfo(_WIDE).eps) / 2


class ValueCache:
    """Thread-safe map from ``(kind, index, eps)`` to NumValue."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data: dict = {}
        self.hits = 0
        self.misses = 0

    def get(self, key):
        with self._lock:
            v = self._data.get(key)
            if v is None:
                self.misses += 1
            else:
                self.hits += 1
            return v

    def put(self, key, value: NumValue) -> NumValue:
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0

    def __len__(self):
        with self._lock:
            return len(self._data)

    def export(self) -> list:
        with self._lock:
            return [[kind, list(idx), eps, v.value, v.err]
                    for (kind, idx, eps), v in sorted(self._data.items(), key=repr)]

    def load(self, rows: list) -> int:
        n = 0
        with self._lock:
            for kind, idx, eps, value, err in rows:
                self._data.setdefault((kind, tuple(idx), float(eps)), NumValue(value, err))
                n += 1
        return n


value_cache = ValueCache()


# --------------------------------------------------------------------------
# polylogarithms by direct summation


def _coefficients(k: tuple, N: int):
    """Taylor coefficients ``a_1..a_N`` of ``Li_k`` together with the same
    recursion run on absolute values (the rounding-error scale)."""
    n = np.arange(1, N + 1, dtype=_WIDE)
    level = n ** _WIDE(-k[0])
    mag = np.abs(level)
    for kj in k[1:]:
        w = n ** _WIDE(-kj)
        run = np.concatenate((np.zeros(1, dtype=_WIDE), np.cumsum(level)[:-1]))
        run_mag = np.concatenate((np.zeros(1, dtype=_WIDE), np.cumsum(mag)[:-1]))
        level = w * run
        mag = np.abs(w) * run_mag
    return level, mag


def _tail_bound(k: tuple, x: float, N: int) -> float:
    """Bound on ``sum_{n > N} |a_n x^n|``; ``inf`` when not yet geometric."""
    r = len(k)
    ax = abs(x)
    if ax == 0.0:
        return 0.0
    n1 = N + 1
    if all(e >= 1 for e in k):
        env = (1 + math.log(n1)) ** (r - 1) / (math.factorial(r - 1) * n1 ** k[-1])
        rho = ax * (1 + 1 / (n1 * (1 + math.log(n1)))) ** (r - 1)
    else:
        power = r - 1 + sum(-e for e in k if e < 0)
        env = float(n1) ** power
        rho = ax * (1 + 1 / n1) ** power
    if rho >= 1:
        return math.inf
    log_term = math.log(env) + n1 * math.log(ax)
    if log_term < -745:
        return 0.0
    return math.exp(log_term) / (1 - rho)


def _li_sum(k: tuple, x: float, eps: float) -> NumValue:
    N = 32
    while True:
        tail = _tail_bound(k, x, N)
        if tail <= eps / 2:
            break
        if N >= _MAX_TERMS:
            raise ValueError(f"cannot reach eps={eps:g} for Li_{k}({x}) within {N} terms")
        N = min(2 * N, _MAX_TERMS)
    # shrink N back toward the smallest sufficient truncation
    lo, hi = N // 2, N
    while hi - lo > 8:
        mid = (lo + hi) // 2
        if _tail_bound(k, x, mid) <= eps / 2:
            hi = mid
        else:
            lo = mid
    N = hi
    tail = _tail_bound(k, x, N)
    a, mag = _coefficients(k, N)
    powers = _WIDE(x) ** np.arange(1, N + 1, dtype=_WIDE)
    wide = np.sum(a * powers)
    value = float(wide)
    scale = float(np.sum(mag * np.abs(powers)))
    r = len(k)
    # r cumulative sums, the power, the product and the final sum, all in the
    # wide type; then one rounding to double
    rounding = 2.0 * (r + 3) * (N + 3) * _WIDE_UNIT * scale + UNIT * abs(value)
    return NumValue(value, tail + rounding)


def li_real(k: Sequence[int], x, eps: float = DEFAULT_EPS) -> NumValue:
    """``Li_k(x)`` for real ``|x| < 1`` by summation with a geometric tail bound."""
    k = SignedIndex(k)
    xf = float(x)
    if not abs(xf) < 1:
        raise ValueError("li_real requires |x| < 1")
    key = ("li", tuple(k) + (xf,), float(eps))
    hit = value_cache.get(key)
    if hit is not None:
        return hit
    out = _li_sum(tuple(k), xf, eps)
    if out.err > eps:
        raise ValueError(f"error bound {out.err:g} exceeds eps={eps:g}")
    return value_cache.put(key, out)


# --------------------------------------------------------------------------
# Riemann zeta


@lru_cache(maxsize=None)
def _bernoulli_even(count: int) -> tuple:
    N = 2 * count + 2
    t = Series.monomial(1, N + 1)
    q = series_arith("div", t, Series.exp(N + 1) - 1, N)
    return tuple(q[2 * j] * math.factorial(2 * j) for j in range(1, count + 1))


def zeta_r(s: float, eps: float = DEFAULT_EPS) -> NumValue:
    """``zeta(s)`` for real ``s > 1`` by Euler-Maclaurin.

    The remainder after the last correction is bounded by the first omitted
    term; this holds for real ``s`` because every derivative of ``x^{-s}`` keeps
    one sign.
    """
    s = float(s)
    if not s > 1:
        raise ValueError("zeta_r requires s > 1")
    key = ("zeta", (s,), float(eps))
    hit = value_cache.get(key)
    if hit is not None:
        return hit
    N = 16
    B = _bernoulli_even(30)
    head = math.fsum(n ** -s for n in range(1, N))
    mags = [abs(n ** -s) for n in range(1, N)]
    tail_int = N ** (1 - s) / (s - 1)
    half = 0.5 * N ** -s
    total = [head, tail_int, half]
    mags += [tail_int, half]
    rising = s  # s (s+1) ... (s + 2j - 2)
    remainder = math.inf
    for j in range(1, len(B) + 1):
        term = float(B[j - 1]) / math.factorial(2 * j) * rising * N ** (-s - 2 * j + 1)
        if j == len(B):
            break
        nxt_rising = rising * (s + 2 * j - 1) * (s + 2 * j)
        nxt = float(B[j]) / math.factorial(2 * j + 2) * nxt_rising * N ** (-s - 2 * j - 1)
        total.append(term)
        mags.append(abs(term))
        remainder = abs(nxt)
        rising = nxt_rising
        if remainder < eps / 4:
            break
    value = math.fsum(total)
    # fsum rounds once; each term carries a few ulps from pow and products
    rounding = 8.0 * UNIT * math.fsum(mags)
    out = NumValue(value, remainder + rounding)
    if out.err > eps:
        raise ValueError(f"zeta_r({s}) cannot reach eps={eps:g}")
    return value_cache.put(key, out)


# --------------------------------------------------------------------------
# multiple zeta values


def _rc(word: str) -> str:
    return "".join("1" if c == "0" else "0" for c in reversed(word))


def mzv(k: Sequence[int], eps: float = DEFAULT_EPS) -> NumValue:
    """``zeta(k_1, ..., k_r) = sum_{m_1 < ... < m_r} prod m_i^{-k_i}``."""
    k = Index(k)
    if not k.admissible:
        raise ValueError("divergent series: the last entry must be >= 2")
    key = ("mzv", tuple(k), float(eps))
    hit = value_cache.get(key)
    if hit is not None:
        return hit
    word = _to_word(k)
    w = len(word)
    hi, lo = float(1 - _CUT), float(_CUT)
    # |Li(2/3)| <= 3 and |Li(1/3)| <= 3/2, so this split keeps the total <= eps/2
    part = max(eps / (10 * (w + 1)), 1e-15)
    terms = []
    for j in range(w + 1):
        left = NumValue(1.0) if j == 0 else li_real(_from_word(_rc(word[:j])), hi, part)
        right = NumValue(1.0) if j == w else li_real(_from_word(word[j:]), lo, part)
        terms.append(left * right)
    out = nsum(terms)
    if out.err > eps:
        raise ValueError(f"mzv{tuple(k)} bound {out.err:g} exceeds eps={eps:g}")
    return value_cache.put(key, out)


def mzv_star(k: Sequence[int], eps: float = DEFAULT_EPS) -> NumValue:
    """``zeta*(k)``: the sum of ``zeta`` over every coarsening of ``k``."""
    k = Index(k)
    if not k.admissible:
        raise ValueError("divergent series: the last entry must be >= 2")
    parts = coarsenings(k, admissible_only=True)
    share = max(eps / len(parts), 1e-14)
    return nsum(mzv(c, share) for c in parts)


def zeta_fn_int(k: Sequence[int], s: int, eps: float = DEFAULT_EPS) -> NumValue:
    """``zeta(k_1, ..., k_r; s)`` at an integer ``s >= 2``; an empty ``k`` gives ``zeta(s)``."""
    if int(s) != s or s < 2:
        raise ValueError("zeta_fn_int requires an integer s >= 2")
    k = tuple(k)
    if not k:
        return zeta_r(s, eps)
    return mzv(tuple(Index(k)) + (int(s),), eps)
