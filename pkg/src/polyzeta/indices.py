"""Index combinatorics: compositions, duals, refinements and the b(k; j) weights."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Index",
    "IndexStats",
    "RunLengthForm",
    "SignedIndex",
    "adjust_last",
    "b_coeff",
    "coarsenings",
    "compositions",
    "dual",
    "dual_runlength",
    "index_stats",
    "parse_index",
    "refinements",
    "weak_compositions",
]


class SignedIndex(tuple):
    """Non-empty tuple of integers of any sign."""

    def __new__(cls, entries: Iterable[int] = ()):
        if isinstance(entries, str):
            entries = _parse_ints(entries)
        vals = tuple(int(e) for e in entries)
        if not vals:
            raise ValueError("an index must have at least one entry")
        cls._validate(vals)
        return super().__new__(cls, vals)

    @staticmethod
    def _validate(vals):
        pass

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def all_nonpositive(self) -> bool:
        return all(e <= 0 for e in self)

    @property
    def all_positive(self) -> bool:
        return all(e >= 1 for e in self)

    def negated(self) -> tuple:
        return tuple(-e for e in self)

    def __str__(self):
        return ",".join(str(e) for e in self)

    def __repr__(self):
        return f"{type(self).__name__}({tuple(self)})"

    def to_json(self) -> list:
        return list(self)


class Index(SignedIndex):
    """Composition (k_1, ..., k_r) with every entry >= 1."""

    @staticmethod
    def _validate(vals):
        if any(v < 1 for v in vals):
            raise ValueError(f"index entries must be >= 1, got {vals}")

    @property
    def admissible(self) -> bool:
        return self[-1] >= 2


def _parse_ints(text: str) -> list:
    parts = [p.strip() for p in text.strip().strip("()").split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"malformed index {text!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"malformed index {text!r}") from None


def parse_index(text: str, signed: bool = False) -> SignedIndex:
    """Parse ``"1,2"`` (or ``"-1,0"`` when ``signed``)."""
    return (SignedIndex if signed else Index)(_parse_ints(text))


class IndexStats(NamedTuple):
    weight: int
    depth: int
    admissible: bool
    n: int


def index_stats(k: Index) -> IndexStats:
    """Weight, depth, admissibility and ``n = weight + 1 - depth``.

    ``n`` is the depth of the dual of ``k`` with its last entry raised by one.
    """
    k = Index(k)
    return IndexStats(k.weight, k.depth, k.admissible, k.weight + 1 - k.depth)


def adjust_last(k: Index, delta: int) -> Index:
    if delta not in (1, -1):
        raise ValueError("delta must be +1 or -1")
    k = Index(k)
    if k[-1] + delta < 1:
        raise ValueError("cannot decrement the last entry below 1")
    return Index(k[:-1] + (k[-1] + delta,))


# --------------------------------------------------------------------------
# duality


def _to_word(k: Sequence[int]) -> str:
    # x0 -> "0", x1 -> "1"; the outermost summation variable comes first
    return "".join("0" * (e - 1) + "1" for e in reversed(k))


def _from_word(word: str) -> Index:
    entries = []
    run = 0
    for ch in word:
        if ch == "0":
            run += 1
        else:
            entries.append(run + 1)
            run = 0
    if run:
        raise ValueError("word does not end in x1")
    return Index(reversed(entries))


def dual(k: Index) -> Index:
    """Dual index via reversal and letter swap of the binary word."""
    k = Index(k)
    if not k.admissible:
        raise ValueError("dual requires admissible index")
    w = _to_word(k)
    swapped = "".join("1" if c == "0" else "0" for c in reversed(w))
    return _from_word(swapped)


@dataclass(frozen=True)
class RunLengthForm:
    """``k = (1^{a_1-1}, b_1+1, ..., 1^{a_h-1}, b_h+1)``."""

    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b) or not self.a:
            raise ValueError("a and b need the same positive length")
        if any(x < 1 for x in self.a) or any(x < 1 for x in self.b[:-1]) or self.b[-1] < 0:
            raise ValueError("run-length parameters out of range")

    @property
    def h(self) -> int:
        return len(self.a)

    @classmethod
    def of(cls, k: Index) -> "RunLengthForm":
        a, b = [], []
        ones = 0
        for e in Index(k):
            if e == 1:
                ones += 1
            else:
                a.append(ones + 1)
                b.append(e - 1)
                ones = 0
        if ones:
            # trailing run of ones closes with b_h = 0
            a.append(ones)
            b.append(0)
        return cls(tuple(a), tuple(b))

    def index(self) -> Index:
        out = []
        for a, b in zip(self.a, self.b):
            out.extend([1] * (a - 1))
            out.append(b + 1)
        return Index(out)


def dual_runlength(k: Index) -> Index:
    """Dual via the run-length closed form (independent of :func:`dual`)."""
    k = Index(k)
    if not k.admissible:
        raise ValueError("dual requires admissible index")
    rl = RunLengthForm.of(k)
    out = []
    for a, b in zip(reversed(rl.a), reversed(rl.b)):
        out.extend([1] * (b - 1))
        out.append(a + 1)
    return Index(out)


# --------------------------------------------------------------------------
# enumeration


def _order_key(k):
    return (len(k), tuple(k))


def compositions(n: int) -> list:
    """All ``2**(n-1)`` compositions of ``n``, by depth then lexicographically."""
    if n < 1:
        raise ValueError("compositions need n >= 1")
    out = []
    for cuts in range(n):
        for pos in combinations(range(1, n), cuts):
            edges = (0,) + pos + (n,)
            out.append(Index(edges[i + 1] - edges[i] for i in range(len(edges) - 1)))
    return sorted(out, key=_order_key)


def refinements(k: Index) -> list:
    """Every ``k'`` with ``k`` obtained from ``k'`` by merging adjacent entries."""
    k = Index(k)
    pieces = [[()]]
    for e in k:
        pieces = [[p + tuple(c) for p in acc for c in compositions(e)]
                  for acc in pieces]
    return sorted((Index(p) for p in pieces[0]), key=_order_key)


def coarsenings(k: Index, admissible_only: bool = False) -> list:
    """Every index reachable by replacing commas of ``k`` with plus signs."""
    k = Index(k)
    r = len(k)
    out = []
    for mask in range(1 << (r - 1)):
        merged = [k[0]]
        for i in range(1, r):
            if mask >> (i - 1) & 1:
                merged[-1] += k[i]
            else:
                merged.append(k[i])
        c = Index(merged)
        if not admissible_only or c.admissible:
            out.append(c)
    return sorted(out, key=lambda c: (-len(c), tuple(c)))


def weak_compositions(total: int, parts: int) -> list:
    """All ``j`` in ``Z_{>=0}^parts`` with ``|j| = total``, reverse-lexicographic."""
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if total < 0:
        return []
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix) + (left,))
            return
        for first in range(left, -1, -1):
            rec(prefix + [first], left - first, slots - 1)

    rec([], total, parts)
    return out


def b_coeff(k: Sequence[int], j: Sequence[int]) -> int:
    """``prod_i C(k_i + j_i - 1, j_i)``."""
    if len(k) != len(j):
        raise ValueError("depth mismatch between k and j")
    out = 1
    for ki, ji in zip(k, j):
        if ji < 0:
            raise ValueError("j entries must be >= 0")
        out *= math.comb(ki + ji - 1, ji)
    return out
