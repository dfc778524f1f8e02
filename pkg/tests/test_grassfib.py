"""Graph-sum parametrizations of Grassmannian Schubert loci."""

import pytest

from schubres.exactlin import (
    enumerate_subspaces,
    full_space,
    gaussian_binomial,
    span,
    subspace_sum,
    zero_map,
)
from schubres.grassfib import (
    base_point_count,
    hom_rank,
    make_frame,
    moving_complements,
    phi,
    phi_star,
    phi_inputs,
    phi_star_inputs,
    vbeta_points,
    verify_phi,
    verify_phi_star,
    verify_transversal_identity,
    window_line_tuples,
)


def e(i, n):
    return tuple(1 if j == i - 1 else 0 for j in range(n))


class TestMakeFrame:
    def test_default_frame_n4(self):
        cfg = make_frame(4, 2, (2, 4))
        assert cfg.line(1) == span([e(1, 4)], 4, 2)
        assert cfg.complement(1) == span([e(2, 4)], 4, 2)
        assert cfg.line(2) == span([e(3, 4)], 4, 2)
        assert cfg.complement(2) == span([e(4, 4)], 4, 2)
        assert cfg.tail.dim == 0

    def test_nested_spaces(self):
        cfg = make_frame(4, 2, (2, 4))
        assert cfg.nested(1, 1) == span([e(1, 4), e(4, 4)], 4, 2)
        assert cfg.nested(2, 2) == span([e(1, 4), e(3, 4)], 4, 2)

    def test_nested_dims(self):
        cfg = make_frame(5, 2, (1, 3, 5))
        for i in range(1, 4):
            for j in range(1, i + 1):
                want = j + sum(cfg.window(t).dim - 1 for t in range(i + 1, 4))
                assert cfg.nested(j, i).dim == want + cfg.tail.dim

    def test_custom_lines(self):
        line = span([(1, 1, 0, 0)], 4, 2)
        cfg = make_frame(4, 2, (2, 4), (line, span([e(3, 4)], 4, 2)))
        assert cfg.line(1) == line
        assert subspace_sum(cfg.line(1), cfg.complement(1)) == cfg.window(1)

    def test_invalid_line_rejected(self):
        with pytest.raises(ValueError):
            make_frame(4, 2, (2, 4), (span([e(3, 4)], 4, 2), span([e(3, 4)], 4, 2)))

    def test_invalid_beta_rejected(self):
        with pytest.raises(ValueError):
            make_frame(4, 2, (2, 2))
        with pytest.raises(ValueError):
            make_frame(4, 2, (0, 3))


class TestPhi:
    def test_zero_maps_give_line_sum(self):
        cfg = make_frame(4, 2, (2, 4))
        comps = moving_complements(cfg, cfg.lines)
        maps = (zero_map(cfg.line(2), comps[0]),)
        assert phi(cfg, cfg.lines, maps) == subspace_sum(cfg.line(1), cfg.line(2))

    def test_image_in_regular_locus(self):
        cfg = make_frame(4, 2, (2, 4))
        regular = set(vbeta_points(cfg, "open"))
        for lines, maps in phi_inputs(cfg):
            assert phi(cfg, lines, maps) in regular

    @pytest.mark.parametrize("beta", [(2, 4), (1, 3)])
    def test_verify_phi_n4(self, beta):
        rep = verify_phi(make_frame(4, 2, beta))
        assert rep.passed, [c.name for c in rep.checks if not c.passed]

    def test_count_identity_formula(self):
        cfg = make_frame(5, 2, (2, 4))
        rep = verify_phi(cfg)
        assert rep.passed
        assert rep.counts["regular_locus_points"] == base_point_count(cfg) * 2 ** hom_rank(cfg)


class TestPhiStar:
    def test_zero_maps_give_line_sum(self):
        cfg = make_frame(4, 2, (1, 3))
        comps = moving_complements(cfg, cfg.lines)
        t2 = cfg.tail
        t1 = subspace_sum(comps[1], cfg.tail)
        maps = (zero_map(cfg.line(1), t1), zero_map(cfg.line(2), t2))
        assert phi_star(cfg, cfg.lines, maps) == subspace_sum(cfg.line(1), cfg.line(2))

    @pytest.mark.parametrize("beta", [(2, 4), (1, 3)])
    def test_verify_phi_star_n4(self, beta):
        rep = verify_phi_star(make_frame(4, 2, beta))
        assert rep.passed, [c.name for c in rep.checks if not c.passed]

    def test_inputs_cover_conjugate_locus(self):
        cfg = make_frame(4, 2, (1, 3))
        star = set(vbeta_points(cfg, "star_open"))
        got = {phi_star(cfg, lines, maps) for lines, maps in phi_star_inputs(cfg)}
        assert got == star


class TestVbetaPoints:
    def test_closed_everything_for_trailing_beta(self):
        cfg = make_frame(4, 2, (3, 4))
        assert len(list(vbeta_points(cfg, "closed"))) == gaussian_binomial(4, 2, 2)

    @pytest.mark.parametrize(
        "n,beta,p", [(4, (2, 4), 2), (4, (1, 3), 2), (5, (1, 3, 5), 2), (4, (2, 4), 3)]
    )
    def test_cell_counts_are_p_powers(self, n, beta, p):
        cfg = make_frame(n, p, beta)
        cells = list(vbeta_points(cfg, "cell"))
        dim = sum(b - (i + 1) for i, b in enumerate(beta))
        assert len(cells) == p ** dim

    def test_cell_within_open_within_closed(self):
        cfg = make_frame(4, 2, (2, 4))
        cell = set(vbeta_points(cfg, "cell"))
        open_ = set(vbeta_points(cfg, "open"))
        closed = set(vbeta_points(cfg, "closed"))
        assert cell <= open_ <= closed

    def test_bad_mode(self):
        cfg = make_frame(4, 2, (2, 4))
        with pytest.raises(ValueError):
            list(vbeta_points(cfg, "regular"))


class TestTransversal:
    def test_k1_reduces_to_window_lines(self):
        cfg = make_frame(3, 2, (2,))
        open_ = set(vbeta_points(cfg, "open"))
        star = set(vbeta_points(cfg, "star_open"))
        windows = {lines[0] for lines in window_line_tuples(cfg)}
        assert open_ & star == windows

    @pytest.mark.parametrize("beta", [(2, 4), (1, 3)])
    def test_identity_n4(self, beta):
        rep = verify_transversal_identity(make_frame(4, 2, beta))
        assert rep.passed, [c.name for c in rep.checks if not c.passed]

    def test_deep_incidence_excluded(self):
        # a plane inside F_2 meets F_2 in dim 2 > 1, so it sits in the
        # closed locus but not the open one; the star side must reject it
        cfg = make_frame(4, 2, (2, 4))
        f2_plane = cfg.frames[2]
        closed = set(vbeta_points(cfg, "closed"))
        star_closed = set(vbeta_points(cfg, "star_closed"))
        assert f2_plane in closed
        assert f2_plane not in star_closed
