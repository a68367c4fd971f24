"""Values of eta and xi at positive integers, and numeric checks of the
identities that connect them with multiple zeta values.

At ``s = m`` both functions are finite sums of multiple zeta (or zeta-star)
values indexed by ``l + j``, where ``l`` is the dual of ``k_+`` (``k`` with its
last entry raised by one) and ``j`` runs over weak compositions of ``m - 1``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from polyzeta.indices import (
    Index,
    adjust_last,
    b_coeff,
    compositions,
    dual,
    refinements,
    weak_compositions,
)
from polyzeta.mzv import DEFAULT_EPS, li_real, mzv, mzv_star, zeta_fn_int, zeta_r
from polyzeta.numvalue import ABS_FLOOR, NumValue, nsum
from polyzeta.report import EXPERIMENT, Report

__all__ = [
    "ValueFormula",
    "classical_identity_check",
    "eta_single_38",
    "euler_connection_check",
    "euler_ids",
    "identity_suite",
    "landen_check",
    "refinement_relation_check",
    "theorem_value",
    "value_formula",
    "xi_by_zeta_check",
    "xi_zeta_ids",
]

TARGETS = ("eta", "xi")

# smallest per-term budget requested from the MZV routines; below this the
# double-precision bounds cannot certify anything and the reported radius
# (always the true bound) simply comes out larger than the split suggests
_MIN_SHARE = 1e-14


def _share(eps: float, parts: float) -> float:
    return max(eps / parts, _MIN_SHARE)


def _agree(a: NumValue, b: NumValue) -> bool:
    return a.overlaps(b, ABS_FLOOR)


# --------------------------------------------------------------------------
# values at positive integers


@dataclass(frozen=True)
class ValueFormula:
    """``sign * sum coeff * zeta(index)`` (``zeta*`` when ``star``)."""

    target: str
    k: Index
    m: int
    sign: int
    terms: tuple  # (coefficient, star, index)

    def evaluate(self, eps: float = DEFAULT_EPS) -> NumValue:
        total = sum(abs(c) for c, _, _ in self.terms)
        parts = []
        for c, star, idx in self.terms:
            share = _share(eps, 2 * total)
            v = mzv_star(idx, share) if star else mzv(idx, share)
            parts.append(v * (self.sign * c))
        return nsum(parts)

    def to_json(self) -> dict:
        return {"target": self.target, "k": list(self.k), "m": self.m, "sign": self.sign,
                "terms": [[c, star, list(idx)] for c, star, idx in self.terms]}


@lru_cache(maxsize=4096)
def _formula(target: str, k: tuple, m: int) -> ValueFormula:
    r = len(k)
    l = dual(adjust_last(Index(k), 1))
    n = len(l)
    star = target == "eta"
    terms = []
    for j in weak_compositions(m - 1, n):
        idx = Index(tuple(a + b for a, b in zip(l, j)))
        terms.append((b_coeff(l, j), star, idx))
    sign = (-1) ** (r - 1) if star else 1
    return ValueFormula(target, Index(k), m, sign, tuple(terms))


def value_formula(target: str, k: Sequence[int], m: int) -> ValueFormula:
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}")
    if int(m) != m or m < 1:
        raise ValueError("m must be a positive integer")
    return _formula(target, tuple(Index(k)), int(m))


def theorem_value(target: str, k: Sequence[int], m: int, eps: float = DEFAULT_EPS) -> NumValue:
    """``eta(k; m)`` or ``xi(k; m)`` as a combination of (star) multiple zeta values."""
    return value_formula(target, k, m).evaluate(eps)


def eta_single_38(k: int, m: int, eps: float = DEFAULT_EPS) -> NumValue:
    """``eta_k(m)`` as ``sum (j_k - 1) zeta*(j)`` over ``j`` of depth ``k`` and
    weight ``k + m`` with every entry ``>= 1`` and last entry ``>= 2``."""
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    idx = [c for c in compositions(k + m) if len(c) == k and c[-1] >= 2]
    total = sum(c[-1] - 1 for c in idx)
    return nsum(mzv_star(c, _share(eps, 2 * total)) * (c[-1] - 1) for c in idx)


# --------------------------------------------------------------------------
# relations


def refinement_relation_check(k: Sequence[int], m: int, eps: float = 1e-10,
                              report: Report | None = None) -> Report:
    """Both directions of ``eta(k) = (-1)^{r-1} sum xi(k')`` over refinements ``k'``."""
    k = Index(k)
    rep = report or Report("refinement", {"eps": eps})
    sign = (-1) ** (k.depth - 1)
    refs = refinements(k)
    share = _share(eps, len(refs))
    for lhs_t, rhs_t in (("eta", "xi"), ("xi", "eta")):
        lhs = theorem_value(lhs_t, k, m, eps)
        rhs = nsum(theorem_value(rhs_t, c, m, share) for c in refs) * sign
        rep.add({"relation": f"{lhs_t}-by-{rhs_t}", "k": list(k), "m": m}, lhs, rhs,
                _agree(lhs, rhs))
    return rep


def _rational(z) -> Fraction:
    return Fraction(z) if not isinstance(z, str) else Fraction(z.strip())


def landen_check(k: Sequence[int], z, eps: float = 1e-10,
                 report: Report | None = None) -> Report:
    """``Li_k(z/(z-1)) = (-1)^r sum Li_{k'}(z)`` over refinements, ``0 < z <= 1/2``.

    The left side is evaluated through ``z/(z-1) = 1 - e^t`` with
    ``t = -log(1-z)`` by the continuation in :mod:`polyzeta.quad`; for
    ``z < 1/2`` the power series at ``z/(z-1)`` is used as a second route.
    """
    from polyzeta.quad import li_continued

    k = Index(k)
    q = _rational(z)
    if not 0 < q <= Fraction(1, 2):
        raise ValueError("landen_check requires 0 < z <= 1/2")
    zf = float(q)
    rep = report or Report("landen", {"eps": eps})
    refs = refinements(k)
    rhs = nsum(li_real(c, zf, _share(eps, len(refs))) for c in refs) * ((-1) ** k.depth)
    lhs = li_continued(k, -math.log1p(-zf), eps)
    note = ""
    ok = _agree(lhs, rhs)
    if q < Fraction(1, 2):
        direct = li_real(k, float(q / (q - 1)), eps)
        ok = ok and _agree(direct, rhs)
        note = f"series route {direct.value!r}"
    rep.add({"k": list(k), "z": str(q)}, lhs, rhs, ok, note)
    return rep


# --------------------------------------------------------------------------
# tabulated identities


@lru_cache(maxsize=1)
def _tables() -> dict:
    text = resources.files("polyzeta").joinpath("data/identities.json").read_text("utf-8")
    doc = json.loads(text)
    if doc.get("schema") != "polyzeta-identities/1":
        raise ValueError("unexpected identity table schema")
    return doc


def _entries(section: str) -> dict:
    return {key: v for key, v in _tables()[section].items() if not key.startswith("_")}


def euler_ids() -> list:
    return list(_entries("euler"))


def xi_zeta_ids() -> list:
    return list(_entries("xi_zeta"))


def _zeta_product(consts: list, eps: float) -> NumValue:
    out = NumValue(1.0)
    for c in consts:
        out = out * zeta_r(c, eps)
    return out


def euler_connection_check(id: str, z, eps: float = 1e-11,
                           report: Report | None = None) -> Report:
    """``Li_k(1-z)`` against its tabulated expansion in ``Li(z)``, ``log(1-z)`` and zeta values."""
    table = _entries("euler")
    if id not in table:
        raise ValueError(f"unknown identity {id!r}; known: {', '.join(table)}")
    q = _rational(z)
    if not 0 < q < 1:
        raise ValueError("z must lie in (0, 1)")
    entry = table[id]
    zf, wf = float(q), float(1 - q)
    lhs = li_real(entry["k"], wf, eps)
    parts = []
    for c, consts, j, idx in entry["terms"]:
        term = NumValue(float(Fraction(c))) * _zeta_product(consts, eps)
        if j:
            term = term * li_real((1,) * j, wf, eps)
        if idx:
            term = term * li_real(idx, zf, eps)
        parts.append(term)
    rhs = nsum(parts)
    rep = report or Report("euler-table", {"eps": eps})
    rep.add({"id": id, "z": str(q)}, lhs, rhs, _agree(lhs, rhs))
    return rep


def xi_by_zeta_check(id: str, m: int, eps: float = 1e-10,
                     report: Report | None = None) -> Report:
    """A tabulated expression in ``zeta(l; s + j)`` at ``s = m`` against :func:`theorem_value`."""
    table = _entries("xi_zeta")
    if id not in table:
        raise ValueError(f"unknown expression {id!r}; known: {', '.join(table)}")
    if int(m) != m or m < 2:
        raise ValueError("m must be an integer >= 2 (zeta(s) diverges at s = 1)")
    m = int(m)
    entry = table[id]
    parts = []
    for c, consts, j, idx in entry["terms"]:
        coef = Fraction(c) * math.comb(m + j - 1, j)
        term = _zeta_product(consts, eps) * zeta_fn_int(idx, m + j, eps)
        parts.append(term * float(coef))
    lhs = nsum(parts)
    rhs = theorem_value(entry["target"], entry["k"], m, eps)
    rep = report or Report("xi-zeta-table", {"eps": eps})
    rep.add({"id": id, "m": m}, lhs, rhs, _agree(lhs, rhs))
    return rep


# --------------------------------------------------------------------------
# classical identities


def classical_identity_check(selector: str, params: dict, eps: float = 1e-10,
                             report: Report | None = None) -> Report:
    """``ohno`` (k, m), ``eta_dual`` (k, m) or ``le_murakami`` (k)."""
    rep = report or Report(selector.replace("_", "-"), {"eps": eps})
    if selector == "ohno":
        k, m = int(params["k"]), int(params["m"])
        lhs = theorem_value("xi", (k,), m, eps)
        rhs = mzv_star((1,) * (m - 1) + (k + 1,), eps)
        rep.add({"k": k, "m": m}, lhs, rhs, _agree(lhs, rhs))
    elif selector == "eta_dual":
        k, m = int(params["k"]), int(params["m"])
        lhs = theorem_value("eta", (k,), m, eps)
        rhs = theorem_value("eta", (m,), k, eps)
        dev = abs(lhs.value - rhs.value)
        rep.params["max_deviation"] = max(rep.params.get("max_deviation", 0.0), dev)
        rep.add({"k": k, "m": m}, lhs, rhs, EXPERIMENT,
                "" if _agree(lhs, rhs) else "deviation")
    elif selector == "le_murakami":
        k = int(params["k"])
        if k < 2:
            raise ValueError("le_murakami requires k >= 2")
        lhs = nsum(theorem_value("eta", (k - j,), j, _share(eps, k)) * ((-1) ** (j - 1))
                   for j in range(1, k))
        if k % 2:
            rhs = NumValue(0.0)
        else:
            rhs = zeta_r(k, eps) * (2 * (1 - 2.0 ** (1 - k)))
        rep.add({"k": k}, lhs, rhs, _agree(lhs, rhs))
    else:
        raise ValueError(f"unknown selector {selector!r}")
    return rep


# --------------------------------------------------------------------------
# whole suites


def _indices_up_to(weight: int) -> list:
    return [c for w in range(1, weight + 1) for c in compositions(w)]


def identity_suite(name: str, **opts) -> Report:
    """Run one named suite with its default ranges (overridable through ``opts``)."""
    eps = opts.get("eps", 1e-10)
    if name == "refinement":
        rep = Report(name, {"max_weight": opts.get("max_weight", 5),
                            "max_m": opts.get("max_m", 3), "eps": eps})
        for k in _indices_up_to(rep.params["max_weight"]):
            for m in range(1, rep.params["max_m"] + 1):
                refinement_relation_check(k, m, eps, rep)
    elif name == "landen":
        zs = opts.get("z", ["1/5", "3/10", "1/2"])
        rep = Report(name, {"max_weight": opts.get("max_weight", 4), "z": zs, "eps": eps})
        for k in _indices_up_to(rep.params["max_weight"]):
            for z in zs:
                landen_check(k, z, eps, rep)
    elif name == "euler-table":
        zs = opts.get("z", ["3/10", "1/2", "7/10"])
        rep = Report(name, {"z": zs, "eps": eps})
        for key in euler_ids():
            for z in zs:
                euler_connection_check(key, z, eps, rep)
    elif name == "xi-zeta-table":
        ms = opts.get("m", [2, 3])
        rep = Report(name, {"m": ms, "eps": eps})
        for key in xi_zeta_ids():
            for m in ms:
                xi_by_zeta_check(key, m, eps, rep)
    elif name == "ohno":
        top = opts.get("max_sum", 7)
        rep = Report(name, {"max_sum": top, "eps": eps})
        for k in range(1, top):
            for m in range(1, top - k + 1):
                classical_identity_check("ohno", {"k": k, "m": m}, eps, rep)
    elif name == "eta-dual":
        top = opts.get("max_sum", 8)
        rep = Report(name, {"max_sum": top, "eps": eps, "max_deviation": 0.0})
        for k in range(1, top):
            for m in range(1, top - k + 1):
                classical_identity_check("eta_dual", {"k": k, "m": m}, eps, rep)
    elif name == "le-murakami":
        top = opts.get("max_k", 7)
        rep = Report(name, {"max_k": top, "eps": eps})
        for k in range(2, top + 1):
            classical_identity_check("le_murakami", {"k": k}, eps, rep)
    else:
        raise ValueError(f"unknown suite {name!r}")
    return rep
