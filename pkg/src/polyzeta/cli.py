"""Command-line interface: ``polyzeta <verb> <target> [options]``.

Every command prints a versioned report (``--output json|csv|pretty``) that
echoes its argv. Exit status: 0 when all checks pass or for pure computations,
1 when any check fails, 2 on usage errors or out-of-range parameters.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from polyzeta.indices import parse_index
from polyzeta.report import FAIL, INFO, Report

CACHE_ENV = "POLYZETA_CACHE"
CACHE_SCHEMA = "polyzeta-cache/1"

COMPUTE = ("bernoulli", "multi-indexed", "frak", "dirichlet", "finite-mzv",
           "theorem-value", "mzv", "mzv-star")
VERIFY = ("duality", "sum-formula", "congruence", "refinement", "landen", "euler-table",
          "xi-zeta-table", "ohno", "eta-dual", "le-murakami", "quad-consistency")
QUAD = ("eta", "xi", "xi-tilde", "eta-multi")
CACHE = ("stats", "clear")
FAMILIES = ("B", "C", "BB")

# options whose values may start with a minus sign
_VALUE_OPTS = {"--index", "--n", "--m", "--s", "--k", "--z", "--ranges", "--d", "--p"}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# argument parsing helpers


def _glue_negative_values(argv: Sequence[str]) -> list:
    """Turn ``--index -1,0`` into ``--index=-1,0`` so argparse keeps the value."""
    out = []
    it = iter(range(len(argv)))
    skip = False
    for i in it:
        if skip:
            skip = False
            continue
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and len(argv[i + 1]) > 1 and (argv[i + 1][1].isdigit() or argv[i + 1][1] == "."):
            out.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def parse_range(text: str) -> list:
    """``"a..b"`` (inclusive), a single integer, or a comma list."""
    text = text.strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"malformed range {text!r}") from None


def _index(text: str | None, signed: bool = True):
    if text is None:
        raise UsageError("--index is required")
    try:
        return parse_index(text, signed=signed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ints(text: str | None, name: str) -> tuple:
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"malformed --{name} {text!r}") from None


def _floats(text: str | None, name: str) -> tuple:
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"malformed --{name} {text!r}") from None


def _one_int(text: str | None, name: str) -> int:
    vals = _ints(text, name)
    if len(vals) != 1:
        raise UsageError(f"--{name} takes a single integer")
    return vals[0]


def _s_value(text: str):
    """Integer exponents stay exact; anything else becomes a float."""
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"malformed --s {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyzeta", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=("compute", "verify", "table", "quad", "cache"))
    p.add_argument("target")
    p.add_argument("--output", choices=("json", "csv", "pretty"), default="pretty")
    p.add_argument("--kind")
    p.add_argument("--suite")
    p.add_argument("--target", dest="value_target", choices=("eta", "xi"))
    p.add_argument("--index")
    p.add_argument("--n")
    p.add_argument("--m")
    p.add_argument("--k")
    p.add_argument("--d")
    p.add_argument("--s")
    p.add_argument("--z")
    p.add_argument("--p")
    p.add_argument("--id")
    p.add_argument("--ranges")
    p.add_argument("--max", type=int)
    p.add_argument("--max-m", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int, help="accepted for symmetry; nothing is random")
    return p


# --------------------------------------------------------------------------
# on-disk cache


def _cache_path() -> str | None:
    return os.environ.get(CACHE_ENV) or None


def _digest(rows: list) -> str:
    return hashlib.sha256(json.dumps(rows, sort_keys=True).encode()).hexdigest()


def load_cache(path: str | None = None) -> int:
    """Load cached values; a file whose hash does not match is ignored."""
    from polyzeta.mzv import value_cache

    path = path or _cache_path()
    if not path or not os.path.exists(path):
        return 0
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        rows = doc["rows"]
        if doc.get("schema") != CACHE_SCHEMA or doc.get("sha256") != _digest(rows):
            print(f"polyzeta: ignoring cache {path}: integrity check failed", file=sys.stderr)
            return 0
    except (OSError, ValueError, KeyError) as exc:
        print(f"polyzeta: ignoring cache {path}: {exc}", file=sys.stderr)
        return 0
    return value_cache.load(rows)


def save_cache(path: str | None = None) -> int:
    from polyzeta.mzv import value_cache

    path = path or _cache_path()
    if not path:
        return 0
    rows = value_cache.export()
    doc = {"schema": CACHE_SCHEMA, "sha256": _digest(rows), "rows": rows}
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
    os.replace(tmp, path)
    return len(rows)


# --------------------------------------------------------------------------
# commands


def _params(args) -> dict:
    skip = {"verb", "target", "output"}
    return {k: v for k, v in vars(args).items() if v is not None and k not in skip}


def _eps(args, default: float) -> float:
    eps = args.eps if args.eps is not None else default
    if not eps > 0:
        raise UsageError("--eps must be positive")
    return eps


def _compute(args) -> Report:
    from polyzeta import mzv as mz
    from polyzeta import polybern as pb
    from polyzeta.etaxi import theorem_value

    t = args.target
    rep = Report(f"compute-{t}", _params(args))
    if t == "bernoulli":
        kind = pb.BernoulliKind.parse(args.kind or "B")
        k = _index(args.index)
        ns = parse_range(args.n or "0..10")
        if min(ns) < 0:
            raise UsageError("--n must be >= 0")
        seq = pb.family_numbers(kind, tuple(k), max(ns))
        for n in ns:
            rep.add({"kind": kind.value, "k": list(k), "n": n}, seq[n], None, INFO)
    elif t == "multi-indexed":
        k = _index(args.index)
        m = _ints(args.m, "m")
        d = _one_int(args.d, "d") if args.d is not None else len(k)
        if len(m) != d or any(x < 0 for x in m) or not 1 <= d <= len(k):
            raise UsageError("--m needs d entries >= 0, with 1 <= d <= depth")
        rep.add({"k": list(k), "m": list(m), "d": d},
                pb.multi_indexed(k=tuple(k), m=m, d=d), None, INFO)
    elif t in ("frak", "dirichlet"):
        k = _ints(args.index, "index")
        if any(x < 0 for x in k):
            raise UsageError("entries must be >= 0 (they stand for the negated index)")
        D = pb.frak_B_symbolic(k) if t == "frak" else pb.eta_neg_closed(k)
        if args.s is None:
            rep.add({"k": list(k)}, repr(D), None, INFO, json.dumps(D.to_json()))
        else:
            s = tuple(_s_value(v) for v in args.s.split(","))
            s = s[0] if D.nslots == 1 and len(s) == 1 else s
            mode = "exact-int" if all(isinstance(v, int) for v in
                                      (s if isinstance(s, tuple) else (s,))) else "float"
            rep.add({"k": list(k), "s": args.s}, D.evaluate(s, mode), None, INFO)
    elif t == "finite-mzv":
        k = _index(args.index, signed=False)
        for p in parse_range(args.p or "2..13"):
            if not pb.is_prime(p):
                continue
            rep.add({"p": p, "k": list(k)}, pb.finite_mzv(p, k), None, INFO)
    elif t == "theorem-value":
        if args.value_target is None:
            raise UsageError("--target eta|xi is required")
        k = _index(args.index, signed=False)
        m = _one_int(args.m, "m")
        if m < 1:
            raise UsageError("--m must be >= 1")
        rep.add({"target": args.value_target, "k": list(k), "m": m},
                theorem_value(args.value_target, k, m, _eps(args, 1e-10)), None, INFO)
    elif t in ("mzv", "mzv-star"):
        k = _index(args.index, signed=False)
        fn = mz.mzv if t == "mzv" else mz.mzv_star
        rep.add({"k": list(k)}, fn(k, _eps(args, 1e-10)), None, INFO)
    else:
        raise UsageError(f"unknown compute target {t!r}; choose from {', '.join(COMPUTE)}")
    return rep


def _verify(args) -> Report:
    from polyzeta import etaxi
    from polyzeta import polybern as pb

    t = args.target
    if t == "duality":
        suite = args.suite or "B-neg"
        top = args.max if args.max is not None else 8
        max_m = args.max_m if args.max_m is not None else top
        if top < 0 or max_m < 0:
            raise UsageError("--max must be >= 0")
        rep = pb.duality_suite(suite, top, max_m, args.depth or 1)
    elif t == "sum-formula":
        top = args.max if args.max is not None else 6
        rep = Report("sum-formula", {"max": top})
        for m in range(top + 1):
            for k in range(1, top + 1):
                rep.extend(pb.sum_formula_check(m, k))
    elif t == "congruence":
        rep = Report("congruence", {"p": args.p or "2..13", "weight": args.weight or 4,
                                    "depth": args.depth or 3})
        from polyzeta.indices import compositions
        idx = [c for w in range(1, (args.weight or 4) + 1) for c in compositions(w)
               if len(c) <= (args.depth or 3)]
        for p in parse_range(args.p or "2..13"):
            if pb.is_prime(p):
                for k in idx:
                    pb.congruence_check(p, k, rep)
    elif t == "refinement":
        rep = etaxi.identity_suite(t, max_weight=args.weight or 5, max_m=args.max_m or 3,
                                   eps=_eps(args, 1e-10))
    elif t == "landen":
        zs = args.z.split(",") if args.z else ["1/5", "3/10", "1/2"]
        rep = etaxi.identity_suite(t, max_weight=args.weight or 4, z=zs, eps=_eps(args, 1e-10))
    elif t == "euler-table":
        zs = args.z.split(",") if args.z else ["3/10", "1/2", "7/10"]
        if args.id:
            rep = Report(t, {"id": args.id, "z": zs})
            for z in zs:
                etaxi.euler_connection_check(args.id, z, _eps(args, 1e-11), rep)
        else:
            rep = etaxi.identity_suite(t, z=zs, eps=_eps(args, 1e-11))
    elif t == "xi-zeta-table":
        ms = parse_range(args.m) if args.m else [2, 3]
        if args.id:
            rep = Report(t, {"id": args.id, "m": ms})
            for m in ms:
                etaxi.xi_by_zeta_check(args.id, m, _eps(args, 1e-10), rep)
        else:
            rep = etaxi.identity_suite(t, m=ms, eps=_eps(args, 1e-10))
    elif t in ("ohno", "eta-dual"):
        default = 7 if t == "ohno" else 8
        rep = etaxi.identity_suite(t, max_sum=args.max or default, eps=_eps(args, 1e-10))
    elif t == "le-murakami":
        rep = etaxi.identity_suite(t, max_k=args.max or 7, eps=_eps(args, 1e-10))
    elif t == "quad-consistency":
        from polyzeta.quad import consistency_suite
        rep = consistency_suite(args.tol or 1e-10)
    else:
        raise UsageError(f"unknown verify target {t!r}; choose from {', '.join(VERIFY)}")
    rep.params.setdefault("request", _params(args))
    return rep


def _table(args) -> Report:
    from polyzeta import polybern as pb

    fam = args.target
    if fam not in FAMILIES:
        raise UsageError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
    spec = {"n": "0..6", "k": "-6..0"}
    if args.ranges:
        for part in args.ranges.split(";"):
            if "=" not in part:
                raise UsageError("--ranges takes n=a..b;k=c..d")
            key, val = part.split("=", 1)
            if key.strip() not in spec:
                raise UsageError(f"unknown range {key!r}")
            spec[key.strip()] = val
    ns, ks = parse_range(spec["n"]), parse_range(spec["k"])
    if min(ns) < 0:
        raise UsageError("n must be >= 0")
    rep = Report(f"table-{fam}", {"n": spec["n"], "k": spec["k"]})
    for k in ks:
        seq = pb.family_numbers(fam, (k,), max(ns))
        for n in ns:
            rep.add({"n": n, "k": k}, seq[n], None, INFO)
    return rep


def _quad(args) -> Report:
    from polyzeta import quad as q

    t = args.target
    tol = args.tol or 1e-9
    if not tol > 0:
        raise UsageError("--tol must be positive")
    k = _ints(args.index, "index")
    s = _floats(args.s, "s")
    rep = Report(f"quad-{t}", _params(args))
    if t == "eta":
        res = q.eta_quad(k, s[0], tol)
    elif t == "xi":
        res = q.xi_quad(k, s[0], tol)
    elif t == "xi-tilde":
        res = q.xi_tilde_quad(k, s[0], tol)
    elif t == "eta-multi":
        res = q.eta_neg_multi_quad(k, s, tol)
    else:
        raise UsageError(f"unknown quad target {t!r}; choose from {', '.join(QUAD)}")
    rep.add({"k": list(k), "s": list(s)}, res.value, None, INFO, json.dumps(res.breakdown))
    return rep


def _cache(args) -> Report:
    from polyzeta.mzv import value_cache

    rep = Report(f"cache-{args.target}", {"path": _cache_path()})
    if args.target == "stats":
        rep.add({"entries": len(value_cache)}, len(value_cache), None, INFO)
    elif args.target == "clear":
        value_cache.clear()
        path = _cache_path()
        if path and os.path.exists(path):
            os.remove(path)
        rep.add({"entries": 0}, 0, None, INFO)
    else:
        raise UsageError(f"unknown cache target {args.target!r}; choose from {', '.join(CACHE)}")
    return rep


def _render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.dumps()
    if fmt == "csv":
        return rep.to_csv().rstrip("\n")
    lines = []
    for c in rep.cases:
        j = c.to_json()
        inp = " ".join(f"{k}={json.dumps(v)}" for k, v in j["input"].items())
        lhs = c.lhs if not isinstance(c.lhs, Fraction) else str(c.lhs)
        body = f"{lhs}" if c.rhs is None else f"{lhs} | {c.rhs}"
        lines.append(f"{c.status:<12} {inp}  {body}" + (f"  [{c.note}]" if c.note else ""))
    lines.append(f"summary: {json.dumps(rep.summary())}")
    return "\n".join(lines)


_HANDLERS = {"compute": _compute, "verify": _verify, "table": _table, "quad": _quad,
             "cache": _cache}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    known = {"compute": COMPUTE, "verify": VERIFY, "table": FAMILIES, "quad": QUAD,
             "cache": CACHE}[args.verb]
    if args.target not in known:
        print(f"polyzeta: unknown {args.verb} target {args.target!r}; "
              f"choose from {', '.join(known)}", file=sys.stderr)
        return 2
    load_cache()
    try:
        rep = _HANDLERS[args.verb](args)
    except (UsageError, ValueError) as exc:
        print(f"polyzeta: {exc}", file=sys.stderr)
        return 2
    rep.argv = argv
    print(_render(rep, args.output), file=out)
    if args.verb != "cache":
        save_cache()
    return 1 if any(c.status == FAIL for c in rep.cases) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
