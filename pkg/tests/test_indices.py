import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzeta.indices import (
    Index,
    RunLengthForm,
    SignedIndex,
    adjust_last,
    b_coeff,
    coarsenings,
    compositions,
    dual,
    dual_runlength,
    index_stats,
    parse_index,
    refinements,
    weak_compositions,
)


def admissible_up_to(w):
    return [c for n in range(2, w + 1) for c in compositions(n) if c.admissible]


def word_dual(k):
    """Independent dual: the iterated-integral word (outermost entry first,
    x^{k-1}y per entry), reversed with x and y swapped."""
    word = []
    for e in reversed(k):
        word += ["x"] * (e - 1) + ["y"]
    flipped = ["y" if c == "x" else "x" for c in reversed(word)]
    out, run = [], 0
    for c in flipped:
        run += 1
        if c == "y":
            out.append(run)
            run = 0
    return tuple(reversed(out))


class TestConstruction:
    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Index(())

    def test_positive_required(self):
        with pytest.raises(ValueError):
            Index((1, 0))
        assert SignedIndex((-1, 0)).all_nonpositive

    def test_parse(self):
        assert parse_index("-1,0", signed=True) == (-1, 0)
        assert parse_index(" 1, 2 ") == (1, 2)
        for bad in ("", "1,,2", "a", "0"):
            with pytest.raises(ValueError):
                parse_index(bad)


class TestStats:
    def test_examples(self):
        s = index_stats(Index((2,)))
        assert (s.weight, s.depth, s.admissible, s.n) == (2, 1, True, 2)
        s = index_stats(Index((1, 2)))
        assert (s.weight, s.depth, s.admissible, s.n) == (3, 2, True, 2)
        assert not index_stats(Index((2, 1))).admissible

    def test_n_is_depth_of_dual_of_raised(self):
        for w in range(1, 8):
            for k in compositions(w):
                assert index_stats(k).n == len(dual(adjust_last(k, 1)))


class TestDual:
    def test_examples(self):
        assert dual(Index((3,))) == (1, 2)
        assert dual(Index((2,))) == (2,)
        assert dual(Index((1, 2))) == (3,)

    def test_rejects_non_admissible(self):
        with pytest.raises(ValueError, match="admissible"):
            dual(Index((2, 1)))

    def test_exhaustive_to_weight_10(self):
        for k in admissible_up_to(10):
            d = dual(k)
            assert dual(d) == k
            assert d.weight == k.weight
            assert d.depth + k.depth == k.weight
            assert d == dual_runlength(k) == word_dual(k)

    def test_runlength_round_trip(self):
        for k in admissible_up_to(8):
            assert RunLengthForm.of(k).index() == k


class TestEnumeration:
    def test_compositions(self):
        assert compositions(1) == [(1,)]
        assert compositions(3) == [(3,), (1, 2), (2, 1), (1, 1, 1)]
        assert len(compositions(5)) == 16

    def test_refinements_examples(self):
        assert refinements(Index((2,))) == [(2,), (1, 1)]
        assert refinements(Index((1, 2))) == [(1, 2), (1, 1, 1)]
        assert refinements(Index((3,))) == [(3,), (1, 2), (2, 1), (1, 1, 1)]

    def test_coarsenings_examples(self):
        assert coarsenings(Index((1, 2))) == [(1, 2), (3,)]
        assert coarsenings(Index((1, 2)), admissible_only=True) == [(1, 2), (3,)]
        assert coarsenings(Index((2, 1)), admissible_only=True) == [(3,)]

    def test_counts_and_consistency(self):
        for w in range(1, 9):
            for k in compositions(w):
                refs = refinements(k)
                assert len(refs) == math.prod(2 ** (e - 1) for e in k)
                assert len(coarsenings(k)) == 2 ** (k.depth - 1)
                for c in refs:
                    assert k in coarsenings(c)
                for c in coarsenings(k):
                    assert k in refinements(c)

    def test_weak_compositions(self):
        assert weak_compositions(0, 2) == [(0, 0)]
        assert weak_compositions(1, 2) == [(1, 0), (0, 1)]
        assert len(weak_compositions(2, 3)) == 6

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 7), st.integers(1, 4))
    def test_weak_composition_count(self, total, parts):
        js = weak_compositions(total, parts)
        assert len(js) == math.comb(total + parts - 1, parts - 1)
        assert len(set(js)) == len(js)
        assert all(sum(j) == total and len(j) == parts for j in js)

    def test_adjust_last(self):
        assert adjust_last(Index((1, 2)), 1) == (1, 3)
        assert adjust_last(Index((5,)), 1) == (6,)
        with pytest.raises(ValueError):
            adjust_last(Index((2, 1)), -1)


class TestBCoeff:
    def test_examples(self):
        assert b_coeff((1, 2), (0, 1)) == 2
        assert b_coeff((1, 2), (1, 0)) == 1
        assert b_coeff((3, 1, 4), (0, 0, 0)) == 1

    def test_depth_mismatch(self):
        with pytest.raises(ValueError):
            b_coeff((1, 2), (1,))
