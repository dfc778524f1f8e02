"""Bott-Samelson towers and the bubblesort grid isomorphism."""

import pytest

from schubres.bottsamelson import (
    bbs_iso,
    bs_point_is_valid,
    bs_projection,
    enumerate_bs,
    first_block_chains,
    grid_to_bs,
)
from schubres.biflag import enumerate_shat, standard_frames
from schubres.exactlin import BudgetExceededError
from schubres.permcomb import (
    Permutation,
    ReducedWord,
    all_permutations,
    bubblesort_word,
    length,
)


class TestEnumerateBs:
    def test_empty_word(self):
        word = bubblesort_word(Permutation.identity(3))
        assert list(enumerate_bs(word, 2)) == [()]

    def test_two_letter_word(self):
        word = bubblesort_word(Permutation((2, 3, 1)))
        pts = list(enumerate_bs(word, 2))
        assert len(pts) == 9
        for pt in pts:
            assert bs_point_is_valid(pt, word, 2)

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_single_letter(self, i):
        word = ReducedWord(4, ((i,), (), ()))
        pts = list(enumerate_bs(word, 2))
        assert len(pts) == 3  # lines between F_{i-1} and F_{i+1}
        f, _ = standard_frames(4, 2)
        for (s,) in pts:
            assert s.dim == i

    @pytest.mark.parametrize("p", [2, 3])
    def test_counts_all_s3(self, p):
        for w in all_permutations(3):
            word = bubblesort_word(w)
            assert len(list(enumerate_bs(word, p))) == (p + 1) ** length(w)

    def test_budget_guard(self):
        word = bubblesort_word(Permutation((4, 3, 2, 1)))
        with pytest.raises(BudgetExceededError):
            list(enumerate_bs(word, 3, budget=5))


class TestBsProjection:
    def test_empty_word_gives_standard_flag(self):
        word = bubblesort_word(Permutation.identity(3))
        f, _ = standard_frames(3, 2)
        assert bs_projection((), word, 2) == tuple(f[1:])

    def test_two_letter_word_components(self):
        word = bubblesort_word(Permutation((2, 3, 1)))
        for pt in enumerate_bs(word, 2):
            flag = bs_projection(pt, word, 2)
            assert flag[0] == pt[0] and flag[1] == pt[1]
            assert [s.dim for s in flag] == [1, 2, 3]


class TestGridToBs:
    def test_n2(self):
        w = Permutation((2, 1))
        for pt in enumerate_shat(w, 2):
            (v1,) = grid_to_bs(pt, w)
            assert v1 == pt.cell(1, 2)

    def test_image_is_valid(self):
        w = Permutation((3, 1, 2))
        word = bubblesort_word(w)
        for pt in enumerate_shat(w, 2):
            assert bs_point_is_valid(grid_to_bs(pt, w), word, 2)


class TestBbsIso:
    def test_identity_singletons(self):
        rep = bbs_iso(Permutation.identity(3), 2)
        assert rep.passed
        assert rep.counts["grid_points"] == 1

    def test_all_s3(self):
        for w in all_permutations(3):
            rep = bbs_iso(w, 2)
            assert rep.passed, (w, [c.name for c in rep.checks if not c.passed])

    def test_simple_transposition_gf3(self):
        rep = bbs_iso(Permutation((2, 1, 3)), 3)
        assert rep.passed
        assert rep.counts["grid_points"] == 4
        assert rep.counts["tower_points"] == 4

    def test_first_block_oracle_nonempty(self):
        w = Permutation((3, 1, 2))
        chains = first_block_chains(w, 2)
        # m = 0? w(3) = 2, so m = 1: lines between F_1 and F_3 of dim 2
        assert len(chains) == 3

    @pytest.mark.parametrize("one_line", [(2, 3, 1), (3, 2, 1), (2, 1, 4, 3)])
    def test_first_block_fibers_are_uniform(self, one_line):
        # the projection onto the first block is a fiber bundle on
        # points: every fiber has (p+1)^(l(w)-m) elements
        w = Permutation(one_line)
        word = bubblesort_word(w)
        m = w.n - w(w.n)
        fibers = {}
        for pt in enumerate_bs(word, 2):
            fibers.setdefault(pt[:m], []).append(pt)
        sizes = {len(v) for v in fibers.values()}
        assert sizes == {3 ** (length(w) - m)}
