"""Bioriented flag grids and the flag-manifold Schubert resolution."""

import pytest

from schubres.biflag import (
    enumerate_complete_flags,
    enumerate_flw,
    enumerate_shat,
    grid_count_estimate,
    grid_is_valid,
    project_to_flag,
    reconstruct_grid,
    schubert_flag_points,
    standard_frames,
    verify_flres,
)
from schubres.exactlin import BudgetExceededError, intersect
from schubres.permcomb import Permutation, all_permutations, length


class TestStandardFrames:
    def test_two_dim(self):
        f, g = standard_frames(2, 2)
        assert f[1].basis == ((1, 0),)
        assert g[1].basis == ((0, 1),)

    def test_extremes(self):
        f, g = standard_frames(3, 2)
        assert f[3].dim == 3
        assert g[3].dim == 0
        assert f[0].dim == 0

    def test_complementarity(self):
        f, g = standard_frames(4, 3)
        for i in range(5):
            assert intersect(f[i], g[i]).dim == 0
            assert f[i].dim + g[i].dim == 4


class TestEnumerateFlw:
    def test_identity_gives_complete_flags(self):
        # (q+1)(q^2+q+1) flags for n=3, q=2
        pts = list(enumerate_flw(Permutation.identity(3), 2))
        assert len(pts) == 21
        assert len(list(enumerate_complete_flags(3, 2))) == 21

    def test_transposition_n2(self):
        # two free cells, a line each: the top-right cell and the
        # unpinned bottom-left cell
        pts = list(enumerate_flw(Permutation((2, 1)), 2))
        assert len(pts) == 9
        for pt in pts:
            assert pt.cell(1, 1).dim == 0
            assert pt.cell(1, 2).dim == 1
        # pinning the bottom row leaves the single free line
        assert len(list(enumerate_shat(Permutation((2, 1)), 2))) == 3

    def test_all_points_valid(self):
        w = Permutation((2, 3, 1))
        for pt in enumerate_flw(w, 2):
            assert grid_is_valid(pt, w)

    def test_budget_guard(self):
        with pytest.raises(BudgetExceededError):
            list(enumerate_flw(Permutation.identity(4), 3, budget=10))

    def test_estimate_matches_actual(self):
        for w in all_permutations(3):
            est = grid_count_estimate(w, 2, pinned_last_row=False)
            assert est == len(list(enumerate_flw(w, 2)))


class TestEnumerateShat:
    def test_identity_single_point(self):
        pts = list(enumerate_shat(Permutation.identity(3), 2))
        assert len(pts) == 1

    def test_cycle_nine_points(self):
        pts = list(enumerate_shat(Permutation((2, 3, 1)), 2))
        assert len(pts) == 9

    def test_transposition_gf3(self):
        assert len(list(enumerate_shat(Permutation((2, 1)), 3))) == 4

    def test_bottom_row_pinned(self):
        w = Permutation((3, 1, 2))
        f, _ = standard_frames(3, 2)
        for pt in enumerate_shat(w, 2):
            for q in range(1, 4):
                assert pt.cell(3, q) == f[q]
            assert grid_is_valid(pt, w)

    @pytest.mark.parametrize("p", [2, 3])
    def test_counts_all_s3(self, p):
        for w in all_permutations(3):
            got = len(list(enumerate_shat(w, p)))
            assert got == (p + 1) ** length(w)

    def test_deep_tower_s5_longest_word(self):
        w = Permutation((5, 4, 3, 2, 1))
        assert sum(1 for _ in enumerate_shat(w, 2)) == 3 ** 10


class TestProjection:
    def test_identity_projects_to_standard_flag(self):
        f, _ = standard_frames(3, 2)
        (pt,) = enumerate_shat(Permutation.identity(3), 2)
        assert project_to_flag(pt) == tuple(f[1:])

    def test_projection_dims(self):
        for pt in enumerate_shat(Permutation((2, 3, 1)), 2):
            flag = project_to_flag(pt)
            assert [s.dim for s in flag] == [1, 2, 3]

    def test_transposition_hits_three_lines(self):
        lines = {project_to_flag(pt)[0] for pt in enumerate_shat(Permutation((2, 1)), 2)}
        assert len(lines) == 3


class TestSchubertFlagPoints:
    @pytest.mark.parametrize("p", [2, 3])
    def test_cell_counts_s3(self, p):
        for w in all_permutations(3):
            cells = list(schubert_flag_points(w, p, "cell"))
            assert len(cells) == p ** length(w)

    def test_closed_longest_word_is_everything(self):
        w0 = Permutation((3, 2, 1))
        assert len(list(schubert_flag_points(w0, 2, "closed"))) == 21

    def test_identity_cell_is_standard_flag(self):
        f, _ = standard_frames(3, 2)
        cells = list(schubert_flag_points(Permutation.identity(3), 2, "cell"))
        assert cells == [tuple(f[1:])]

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            list(schubert_flag_points(Permutation.identity(2), 2, "open"))


class TestBruhatGeometry:
    def test_order_matches_point_containment(self):
        # u <= w exactly when u's cell sits inside w's closed locus:
        # the point-level meaning of the rank-matrix comparison
        from schubres.permcomb import bruhat_leq

        perms = list(all_permutations(3))
        cells = {w: set(schubert_flag_points(w, 2, "cell")) for w in perms}
        closed = {w: set(schubert_flag_points(w, 2, "closed")) for w in perms}
        for u in perms:
            for w in perms:
                assert (cells[u] <= closed[w]) == bruhat_leq(u, w)
        # cells partition the full flag manifold
        assert sum(len(c) for c in cells.values()) == 21


class TestVerifyFlres:
    def test_identity_trivial(self):
        rep = verify_flres(Permutation.identity(3), 2)
        assert rep.passed
        assert rep.counts["tower_points"] == 1

    def test_all_s3(self):
        for w in all_permutations(3):
            rep = verify_flres(w, 2)
            assert rep.passed, (w, [c.name for c in rep.checks if not c.passed])

    def test_longest_word_surjective(self):
        rep = verify_flres(Permutation((3, 2, 1)), 2)
        surj = next(c for c in rep.checks if c.name == "image_equals_closed_variety")
        assert surj.passed
        assert rep.counts["closed_points"] == 21

    def test_reconstruction_grid_is_member(self):
        w = Permutation((2, 3, 1))
        for flag in schubert_flag_points(w, 2, "cell"):
            assert grid_is_valid(reconstruct_grid(flag, w), w)

    @pytest.mark.parametrize("one_line", [(2, 3, 1), (3, 1, 2), (3, 2, 1)])
    def test_flag_meets_frame_at_least_grid(self, one_line):
        # every grid point bounds the rank profile of its flag from
        # below, with equality exactly when the intersection is the cell
        from schubres.permcomb import rank_matrix

        w = Permutation(one_line)
        d = rank_matrix(w)
        f, _ = standard_frames(3, 2)
        for pt in enumerate_shat(w, 2):
            flag = project_to_flag(pt)
            for p in range(1, 4):
                for q in range(1, 4):
                    inter = intersect(flag[p - 1], f[q])
                    assert inter.dim >= d[p][q]
                    assert (inter.dim == d[p][q]) == (inter == pt.cell(p, q))
