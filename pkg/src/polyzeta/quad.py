"""Direct quadrature of the Mellin-type integrals that define eta, xi and
xi-tilde, together with the continuation of ``Li_k(1 - e^{t})`` to ``t > 0``.

Positive indices: ``Li_k(1 - e^{sigma t})`` is known exactly as a Taylor series
near ``t = 0`` and is carried further by an ODE system that follows from
``d/dz Li_k = Li_{k_-}/z`` (or ``Li_{prefix}/(1 - z)`` when the last entry is 1).
Non-positive indices: the integrand is an explicit polynomial in ``u = e^{-t}``
and ``1 - u``, read off from the rational normal form in :mod:`polyzeta.neglog`.

Integrals over ``(0, inf)`` are split into a tanh-sinh part on ``(0, 1]``,
Gauss-Legendre panels on ``[1, T]`` and a bounded tail beyond ``T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import gammaincc

from polyzeta.arith import DirichletPoly, Series, series_arith
from polyzeta.indices import Index
from polyzeta.neglog import p_poly, p_tilde
from polyzeta.numvalue import UNIT, NumValue

__all__ = [
    "LiContinuation",
    "QuadResult",
    "eta_neg_dirichlet",
    "eta_neg_multi_dirichlet",
    "eta_neg_multi_quad",
    "eta_quad",
    "li_continued",
    "li_continued_taylor",
    "mellin_integral",
    "xi_quad",
    "xi_tilde_dirichlet",
    "xi_tilde_quad",
    "consistency_suite",
]

TAYLOR_ORDER = 48
TAYLOR_RADIUS = 3.0   # below the distance pi to the nearest singularity
BOOT_T = 0.5
ODE_RTOL = 1e-13
ODE_RTOL_CHECK = 1e-11


@dataclass
class QuadResult:
    value: NumValue
    breakdown: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "breakdown": dict(self.breakdown)}

    def __str__(self):
        return str(self.value)


# --------------------------------------------------------------------------
# continuation of Li_k(1 - e^{sigma t})


def _closure(k: tuple) -> list:
    """``k`` and every index reached by lowering or dropping the last entry."""
    out = []
    cur = k
    stack = [k]
    seen = set()
    while stack:
        cur = stack.pop()
        if not cur or cur in seen:
            continue
        seen.add(cur)
        out.append(cur)
        stack.append(cur[:-1] if cur[-1] == 1 else cur[:-1] + (cur[-1] - 1,))
    return sorted(out, key=lambda c: (sum(c), len(c), c))


def _parent(c: tuple) -> tuple:
    return c[:-1] if c[-1] == 1 else c[:-1] + (c[-1] - 1,)


@lru_cache(maxsize=256)
def li_continued_taylor(k: tuple, sigma: int, N: int = TAYLOR_ORDER) -> dict:
    """Exact Taylor series of ``Li_c(1 - e^{sigma t})`` at ``t = 0`` for each ``c``
    in the closure of ``k``.

    With ``H(t) = sigma t e^{sigma t} / (e^{sigma t} - 1)`` the derivative rule
    reads ``f_c' = H(t) f_{c_-}(t) / t`` (last entry > 1) or
    ``f_c' = -sigma f_{prefix}`` (last entry 1).
    """
    t = Series.monomial(1, N + 1)
    e = Series.exp(N + 1, sigma)
    H = series_arith("div", t.scale(sigma) * e, e - 1, N)
    one = Series.one(N)
    out = {(): one}
    for c in _closure(k):
        par = out[_parent(c)]
        if c[-1] == 1:
            f = par.scale(-sigma).integral().truncate(N)
        else:
            f = (H.truncate(N - 1) * par.shift_down(1)).integral()
        out[c] = f
    return out


def _taylor_eval(series: Series, t: np.ndarray):
    coeffs = [float(c) for c in series.coeffs]
    acc = np.zeros_like(t)
    mag = np.zeros_like(t)
    at = np.abs(t)
    for c in reversed(coeffs):
        acc = acc * t + c
        mag = mag * at + abs(c)
    N = series.order
    tail_scale = max(abs(c) * TAYLOR_RADIUS ** n
                     for n, c in enumerate(coeffs) if n >= N - 8)
    q = at / TAYLOR_RADIUS
    tail = tail_scale * q ** (N + 1) / (1 - q)
    rounding = 2 * (N + 2) * UNIT * mag
    return acc, tail + rounding


class LiContinuation:
    """``Li_k(1 - e^{sigma t})`` on ``[0, t_max]`` for ``sigma = +1`` or ``-1``.

    Values for ``t <= 1/2`` come from the exact Taylor series; beyond that an
    8th-order Runge-Kutta integration (with dense output) starts from the
    series value at ``t = 1/2``. A second integration at a looser tolerance
    supplies the error estimate.
    """

    def __init__(self, k: Sequence[int], sigma: int, t_max: float):
        self.k = tuple(Index(k))
        if sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")
        self.sigma = sigma
        self.t_max = float(max(t_max, BOOT_T))
        self.states = _closure(self.k)
        self.pos = {c: i for i, c in enumerate(self.states)}
        self.series = li_continued_taylor(self.k, sigma)
        y0, e0 = [], []
        for c in self.states:
            v, e = _taylor_eval(self.series[c], np.array([BOOT_T]))
            y0.append(float(v[0]))
            e0.append(float(e[0]))
        self.y0 = np.array(y0)
        self.boot_err = float(max(e0))
        self._tight = self._loose = None
        if self.t_max > BOOT_T:
            self._tight = self._solve(ODE_RTOL)
            self._loose = self._solve(ODE_RTOL_CHECK)

    def _rhs(self, t, y):
        if self.sigma == 1:
            g = 1.0 / -math.expm1(-t)
        else:
            g = 1.0 / math.expm1(t)
        out = np.empty_like(y)
        for i, c in enumerate(self.states):
            par = _parent(c)
            pv = y[self.pos[par]] if par else 1.0
            out[i] = -self.sigma * pv if c[-1] == 1 else g * pv
        return out

    def _solve(self, rtol):
        sol = solve_ivp(self._rhs, (BOOT_T, self.t_max), self.y0, method="DOP853",
                        rtol=rtol, atol=rtol * 1e-3, dense_output=True)
        if not sol.success:
            raise RuntimeError(f"ODE integration failed: {sol.message}")
        return sol.sol

    def values(self, t) -> tuple:
        """``(values, error bounds)`` at the points ``t`` (array-like, ``>= 0``)."""
        t = np.asarray(t, dtype=float)
        vals = np.empty_like(t)
        errs = np.empty_like(t)
        row = self.pos[self.k]
        small = t <= BOOT_T
        if small.any():
            v, e = _taylor_eval(self.series[self.k], t[small])
            vals[small] = v
            errs[small] = e
        big = ~small
        if big.any():
            if self._tight is None or t[big].max() > self.t_max * (1 + 1e-12):
                raise ValueError("point beyond the integrated range")
            a = self._tight(t[big])[row]
            b = self._loose(t[big])[row]
            vals[big] = a
            # the looser run's deviation dominates the tighter run's error
            errs[big] = np.abs(a - b) + 10 * self.boot_err * np.maximum(1.0, np.abs(a)) \
                + 4 * UNIT * np.abs(a)
        return vals, errs


def li_continued(k: Sequence[int], t: float, tol: float = 1e-10) -> NumValue:
    """``Li_k(1 - e^{t})`` for real ``t > 0``."""
    t = float(t)
    if not t > 0:
        raise ValueError("li_continued requires t > 0")
    cont = LiContinuation(k, 1, t)
    v, e = cont.values(np.array([t]))
    out = NumValue(float(v[0]), float(e[0]))
    if out.err > tol:
        raise ValueError(f"continuation error {out.err:g} exceeds tol={tol:g}")
    return out


# --------------------------------------------------------------------------
# one-dimensional Mellin quadrature


def _tanh_sinh(level: int, tau_max: float = 4.0):
    """Nodes and weights for ``int_0^1`` at step ``2^-level``."""
    h = 2.0 ** -level
    # the left end may need a long reach for weak endpoint singularities; at
    # the right end the integrand is smooth and tau = 4 leaves < 1e-37
    lo, hi = int(math.ceil(tau_max / h)), int(math.ceil(4.0 / h))
    tau = h * np.arange(-lo, hi + 1)
    a = math.pi * np.sinh(tau)
    with np.errstate(over="ignore"):
        t = 1.0 / (1.0 + np.exp(-a))          # accurate near 0
        one_minus = 1.0 / (1.0 + np.exp(a))   # accurate near 1
    w = h * math.pi * np.cosh(tau) * t * one_minus
    keep = (t > 0) & (one_minus > 0)
    return t[keep], w[keep]


@lru_cache(maxsize=16)
def _gauss(order: int):
    return np.polynomial.legendre.leggauss(order)


def _panels(T: float, order: int, width: float = 1.0):
    x, w = _gauss(order)
    edges = np.arange(1.0, T + width * 0.5, width)
    if edges[-1] < T:
        edges = np.append(edges, T)
    a, b = edges[:-1], edges[1:]
    half = (b - a) / 2
    mid = (b + a) / 2
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _tau_max(a: float, tol: float) -> float:
    """Cut-off for the tanh-sinh parameter so that ``t_min^a / a`` is far below ``tol``.

    ``a`` is the exponent of the integrand's power behaviour at 0 plus one.
    """
    need = math.log(1e3 / (tol * a)) / a  # -log t_min
    need = min(max(need, 40.0), 700.0)
    return math.asinh(need / math.pi)


def _head_bound(t: np.ndarray, w: np.ndarray, vals: np.ndarray, s: float, order0: int) -> float:
    """``int_0^{t_min} |t^{s-1} f|`` for ``|f(t)| <= C t^order0`` near 0, ``C``
    calibrated on the ten smallest nodes with a safety factor of 10."""
    a = s + order0
    idx = np.argsort(t)[:10]
    C = 10 * float(np.max(np.abs(vals[idx]) / t[idx] ** order0))
    tmin = float(t[idx[0]])
    return C * tmin ** a / a


def _rule(s: float, T: float, level: int, order: int, tau_max: float = 4.0):
    """Nodes and weights (including ``t^{s-1}``) covering ``(0, T]``."""
    t0, w0 = _tanh_sinh(level, tau_max)
    t1, w1 = _panels(T, order)
    t = np.concatenate((t0, t1))
    w = np.concatenate((w0, w1)) * t ** (s - 1)
    return t, w


def _choose_T(tail: Callable[[float], float], target: float) -> float:
    T = 16.0
    while tail(T) > target:
        T += 8.0
        if T > 400:
            raise ValueError("integrand decays too slowly for the requested tolerance")
    return T


def _upper_gamma(a: float, x: float) -> float:
    """Unnormalized upper incomplete gamma for ``a > 0``."""
    return float(gammaincc(a, x)) * math.gamma(a)


def mellin_integral(f: Callable, s: float, tol: float, tail: Callable[[float], float],
                    f_err: Callable | None = None, order0: int = 0) -> QuadResult:
    """``(1/Gamma(s)) int_0^inf t^{s-1} f(t) dt``.

    ``f`` maps an array of nodes to values; ``f_err`` (optional) maps nodes to
    pointwise error bounds on ``f``. ``tail(T)`` bounds ``int_T^inf |t^{s-1} f|``.
    ``f`` must vanish to order ``order0`` at 0 with ``s + order0 > 0``.
    """
    a = s + order0
    if not a > 0:
        raise ValueError("divergent integral at t = 0")
    T = _choose_T(tail, tol / 10)
    tail_err = tail(T)
    tau = _tau_max(a, tol)
    prev = None
    best = None
    for level, order in ((4, 16), (5, 20), (6, 24), (7, 32), (8, 40)):
        t, w = _rule(s, T, level, order, tau)
        vals = f(t)
        I = float(np.sum(w * vals))
        if prev is not None:
            diff = abs(I - prev)
            best = (I, diff, t, w, vals)
            if diff < tol / 4:
                break
        prev = I
    I, diff, t, w, vals = best
    mag = float(np.sum(np.abs(w * vals)))
    parts = {"quad": diff, "tail": tail_err, "head": _head_bound(t, w, vals, s, order0),
             "rounding": 4 * len(t) * UNIT * mag}
    if f_err is not None:
        parts["integrand"] = float(np.sum(np.abs(w) * f_err(t)))
    g = math.gamma(s)
    total = sum(parts.values())
    value = I / g
    err = total / abs(g) + 4 * UNIT * abs(value)
    breakdown = {key: v / abs(g) for key, v in parts.items()}
    breakdown["T"] = T
    return QuadResult(NumValue(value, err), breakdown)


# --------------------------------------------------------------------------
# eta and xi at positive indices


def _calibrated_tail(f: Callable, s: float, growth: float, rate: float = 1.0):
    """Tail bound for ``|f(t)| <= C t^growth e^{-rate t}``, ``C`` calibrated on
    ``[T/2, T]`` with a safety factor of 10."""

    def tail(T):
        probe = np.linspace(T / 2, T, 65)
        ratio = np.abs(f(probe)) * np.exp(rate * probe) / probe ** growth
        C = 10 * float(np.max(ratio)) + 1e-300
        a = s + growth
        return C * _upper_gamma(a, rate * T) / rate ** a
    return tail


def _check_s(s: float, r: int):
    if not s > 1 - r:
        raise ValueError(f"divergent integral: need s > {1 - r}")


def _positive_quad(k: tuple, s: float, tol: float, sigma: int) -> QuadResult:
    r = len(k)
    w = sum(k)
    T_cap = 400.0

    def make(cont):
        if sigma == 1:
            def f(t):
                v, _ = cont.values(t)
                return v / -np.expm1(t)

            def fe(t):
                _, e = cont.values(t)
                return e / np.abs(np.expm1(t))
        else:
            def f(t):
                v, _ = cont.values(t)
                return v / np.expm1(t)

            def fe(t):
                _, e = cont.values(t)
                return e / np.abs(np.expm1(t))
        return f, fe

    # the tail bound needs values near T, so pick T with a provisional run
    def tail_for(T):
        c = LiContinuation(k, sigma, T)
        f, _ = make(c)
        return _calibrated_tail(f, s, w)(T)

    T = 24.0
    while tail_for(T) > tol / 10:
        T += 8.0
        if T > T_cap:
            raise ValueError("integrand decays too slowly for the requested tolerance")
    cont = LiContinuation(k, sigma, T)
    f, fe = make(cont)
    tail_val = _calibrated_tail(f, s, w)(T)
    res = mellin_integral(f, s, tol, lambda X: tail_val if X >= T else math.inf, fe,
                          order0=len(k) - 1)
    res.breakdown["series_bootstrap"] = cont.boot_err
    return res


def _split_index(k) -> tuple:
    k = tuple(int(v) for v in k)
    if not k:
        raise ValueError("index must be non-empty")
    if all(v >= 1 for v in k):
        return "pos", k
    if all(v <= 0 for v in k):
        return "neg", tuple(-v for v in k)
    raise ValueError("unsupported: mixed-sign indices")


def eta_quad(k: Sequence[int], s: float, tol: float = 1e-9) -> QuadResult:
    """``(1/Gamma(s)) int_0^inf t^{s-1} Li_k(1 - e^t) / (1 - e^t) dt``."""
    kind, kk = _split_index(k)
    s = float(s)
    _check_s(s, len(kk))
    if kind == "pos":
        return _positive_quad(kk, s, tol, 1)
    return _neg_quad(kk, s, tol, shift=1)


def xi_quad(k: Sequence[int], s: float, tol: float = 1e-9) -> QuadResult:
    """``(1/Gamma(s)) int_0^inf t^{s-1} Li_k(1 - e^{-t}) / (e^t - 1) dt``."""
    k = tuple(Index(k))
    s = float(s)
    _check_s(s, len(k))
    return _positive_quad(k, s, tol, -1)


# --------------------------------------------------------------------------
# non-positive indices


def _u_polynomial(k: tuple, shift: int) -> list:
    """Integrand as ``[(coeff, j, a), ...]`` meaning ``coeff * (1-u)^j * u^a``.

    ``shift = 1`` gives the eta integrand, ``shift = 0`` the xi-tilde one.
    """
    P = p_poly(k)
    K, r = sum(k), len(k)
    out = []
    for (j,), c in P.terms.items():
        # p_j (-(1-u))^{j-1} u^{K + r + shift - j}
        out.append((c * (-1) ** (j - 1), j - 1, K + r + shift - j))
    return out


def _expand_u(terms: list) -> dict:
    """Collect ``sum coeff (1-u)^j u^a`` into ``{power of u: coefficient}``."""
    out: dict = {}
    for c, j, a in terms:
        for i in range(j + 1):
            out[a + i] = out.get(a + i, 0) + c * math.comb(j, i) * (-1) ** i
    return {p: c for p, c in out.items() if c}


def eta_neg_dirichlet(k: Sequence[int]) -> DirichletPoly:
    """Closed form of ``eta(-k; s)`` read off the integrand (each ``u^a`` gives ``a^{-s}``)."""
    k = tuple(int(v) for v in k)
    return DirichletPoly(1, [((a,), c) for a, c in _expand_u(_u_polynomial(k, 1)).items()])


def xi_tilde_dirichlet(k: Sequence[int]) -> DirichletPoly:
    k = tuple(int(v) for v in k)
    if not any(k):
        raise ValueError("xi-tilde is not defined when every entry is zero")
    return DirichletPoly(1, [((a,), c) for a, c in _expand_u(_u_polynomial(k, 0)).items()])


def _neg_quad(k: tuple, s: float, tol: float, shift: int) -> QuadResult:
    terms = _u_polynomial(k, shift)
    min_pow = min(a for _, _, a in terms)
    if min_pow < 1:
        raise ValueError("integral diverges at infinity for every s")
    A = float(sum(abs(c) for c, _, _ in terms))

    def f(t):
        u = np.exp(-t)
        om = -np.expm1(-t)
        acc = np.zeros_like(t)
        for c, j, a in terms:
            acc = acc + c * om ** j * u ** a
        return acc

    # |(1-u)^j u^a| <= e^{-min_pow t}
    def tail(T):
        return A * _upper_gamma(s, min_pow * T) / min_pow ** s if s > 0 else \
            A * T ** (s - 1) * math.exp(-min_pow * T) / min_pow

    return mellin_integral(f, s, tol, tail, order0=len(k) - 1)


def xi_tilde_quad(k: Sequence[int], s: float, tol: float = 1e-9) -> QuadResult:
    """``(1/Gamma(s)) int_0^inf t^{s-1} Li_{-k}(1 - e^t) / (e^{-t} - 1) dt``."""
    k = tuple(int(v) for v in k)
    if not k or any(v < 0 for v in k):
        raise ValueError("k must be a non-empty vector of integers >= 0")
    if not any(k):
        raise ValueError("xi-tilde is not defined when every entry is zero: "
                         "the integral diverges for every s")
    s = float(s)
    _check_s(s, len(k))
    return _neg_quad(k, s, tol, shift=0)


# --------------------------------------------------------------------------
# the multi-variable eta at non-positive indices


def _q_terms(k: tuple) -> tuple:
    """``Ptilde / (y_1...y_r) * prod (1-y_j)^{e_j}`` as terms in ``U_j = e^{-T_j}``:
    ``[(coeff, (a_1..a_r), (b_1..b_r))]`` meaning ``coeff prod (1-U_j)^{a_j} U_j^{b_j}``."""
    form = p_tilde(k)
    out = []
    for e, c in form.numerator.terms.items():
        a = tuple(x - 1 for x in e)
        b = tuple(ej - aj for ej, aj in zip(form.exponents, a))
        out.append((c * (-1) ** sum(a), a, b))
    return tuple(out), form.exponents


def eta_neg_multi_dirichlet(k: Sequence[int]) -> DirichletPoly:
    """Closed form of the multi-variable eta read off its integrand."""
    k = tuple(int(v) for v in k)
    terms, _ = _q_terms(k)
    r = len(k)
    acc: dict = {}
    for c, a, b in terms:
        # expand each (1 - U_j)^{a_j}
        for pick in product(*(range(x + 1) for x in a)):
            coef = c
            pw = []
            for aj, ij, bj in zip(a, pick, b):
                coef *= math.comb(aj, ij) * (-1) ** ij
                pw.append(bj + ij)
            # U_j = e^{-(t_j + ... + t_r)}: t_nu collects b_1 + ... + b_nu
            bases = tuple(sum(pw[: nu + 1]) for nu in range(r))
            acc[bases] = acc.get(bases, 0) + coef
    return DirichletPoly(r, acc)


def eta_neg_multi_quad(k: Sequence[int], s: Sequence[float], tol: float = 1e-8) -> QuadResult:
    """Tensor-product quadrature of the ``r``-fold integral (``r <= 2``)."""
    k = tuple(int(v) for v in k)
    s = tuple(float(v) for v in s)
    if len(k) > 2:
        raise ValueError("unsupported: depth > 2")
    if len(s) != len(k):
        raise ValueError("need one s per index entry")
    if any(v < 0 for v in k):
        raise ValueError("entries must be >= 0")
    if any(not v > 0 for v in s):
        raise ValueError("divergent integral: every s_j must be > 0")
    if len(k) == 1:
        return eta_quad((-k[0],), s[0], tol)
    terms, _ = _q_terms(k)
    A = float(sum(abs(c) for c, _, _ in terms))
    s1, s2 = s

    def F(t1, t2):
        T1 = t1[:, None] + t2[None, :]
        T2 = np.broadcast_to(t2[None, :], T1.shape)
        U1, U2 = np.exp(-T1), np.exp(-T2)
        O1, O2 = -np.expm1(-T1), -np.expm1(-T2)
        acc = np.zeros_like(T1)
        for c, a, b in terms:
            acc += c * O1 ** a[0] * U1 ** b[0] * O2 ** a[1] * U2 ** b[1]
        return acc

    # every term is bounded by U_1 U_2 = e^{-t_1 - 2 t_2}
    def tail(T):
        g1, g2 = math.gamma(s1), math.gamma(s2) / 2 ** s2
        return A * (_upper_gamma(s1, T) * g2 + g1 * _upper_gamma(s2, 2 * T) / 2 ** s2)

    T = _choose_T(tail, tol / 10)
    tail_err = tail(T)
    prev = None
    tau1, tau2 = _tau_max(s1, tol), _tau_max(s2, tol)
    for level, order in ((4, 16), (5, 20), (6, 24), (7, 32)):
        ta, wa = _rule(s1, T, level, order, tau1)
        tb, wb = _rule(s2, T, level, order, tau2)
        vals = F(ta, tb)
        I = float(wa @ vals @ wb)
        if prev is not None:
            diff = abs(I - prev)
            if diff < tol / 4:
                break
        prev = I
    mag = float(np.abs(wa) @ np.abs(vals) @ np.abs(wb))
    # the same envelope bounds the strips next to the axes that the rule omits
    t1min, t2min = float(ta.min()), float(tb.min())
    head = A * (t1min ** s1 / s1 * math.gamma(s2) / 2 ** s2
                + math.gamma(s1) * t2min ** s2 / s2)
    parts = {"quad": diff, "tail": tail_err, "head": head,
             "rounding": 8 * vals.size * UNIT * mag}
    g = math.gamma(s1) * math.gamma(s2)
    value = I / g
    err = sum(parts.values()) / g + 4 * UNIT * abs(value)
    breakdown = {key: v / g for key, v in parts.items()}
    breakdown["T"] = T
    return QuadResult(NumValue(value, err), breakdown)


# --------------------------------------------------------------------------
# consistency suite


def consistency_suite(tol: float = 1e-10) -> "Report":
    """Quadrature against closed forms on the overlap of their domains."""
    from polyzeta.mzv import zeta_r
    from polyzeta.polybern import eta_neg_closed, frak_B_symbolic, poly_bernoulli
    from polyzeta.report import Report

    rep = Report("quad-consistency", {"tol": tol})

    def check(label, lhs: NumValue, rhs: NumValue):
        rep.add(label, lhs, rhs, lhs.overlaps(rhs, 1e-12))

    for s in (1.5, 2.0, 2.5):
        check({"eta": [-1], "s": s}, eta_quad((-1,), s, tol).value,
              NumValue(2.0 ** -s, 2 * UNIT * 2.0 ** -s))
    for k in range(1, 5):
        closed = frak_B_symbolic((k,))
        for s in (0.5, 1.5, 2.5, 4.0):
            check({"eta": [-k], "s": s}, eta_quad((-k,), s, tol).value,
                  closed.evaluate(s, "float"))
    z2, z3 = zeta_r(2, 1e-14), zeta_r(3, 1e-14)
    check({"eta": [1], "s": 1.0}, eta_quad((1,), 1.0, tol).value, z2)
    check({"eta": [2], "s": 1.0}, eta_quad((2,), 1.0, tol).value, z3 * 2)
    check({"xi": [1], "s": 2.0}, xi_quad((1,), 2.0, tol).value, z3 * 2)
    for k in ((1, 0), (0, 1), (1, 1), (2, 1)):
        s = (2.0, 2.0)
        check({"eta_multi": list(k), "s": list(s)}, eta_neg_multi_quad(k, s, tol).value,
              eta_neg_closed(k).evaluate(s, "float"))
    for k in range(1, 4):
        D = xi_tilde_dirichlet((k,))
        for m in range(4):
            rep.add({"xi_tilde_closed": [k], "s": -m}, D.evaluate(-m),
                    poly_bernoulli("C", (-k,), m), D.evaluate(-m) == poly_bernoulli("C", (-k,), m))
        check({"xi_tilde": [k], "s": 2.0}, xi_tilde_quad((k,), 2.0, tol).value,
              D.evaluate(2.0, "float"))
    return rep
