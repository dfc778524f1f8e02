"""Relaxed-incidence chain varieties and their grid resolutions.

The chain variety collects tuples (l_1, ..., l_k), l_i of dimension i
inside the nested space of the first i lines plus the late complements,
subject to l_i ⊆ l_{i+1} + (complement of line i+1).  It compactifies
the space of graph tuples of compressed maps and is singular in general.
Its resolution is a lower-triangular grid of subspaces with strict
inclusions along rows and relaxed inclusions between rows; the diagonal
projection is onto, is one-to-one over an explicit open set, and admits
a deterministic section computed diagonal by diagonal.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from schubres.exactlin import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    LinearMap,
    Subspace,
    contains,
    enumerate_between,
    enumerate_maps,
    enumerate_subspaces,
    gaussian_binomial,
    graph,
    intersect,
    linear_map_from_pairs,
    project,
    span,
    subspace_sum,
    zero_subspace,
)
from schubres.grassfib import FrameConfig
from schubres.report import EnumReport, subspace_witness, timed

GCalPoint = tuple[Subspace, ...]
GHatPoint = tuple[tuple[Subspace, ...], ...]  # row i (1-based) has i entries


def hom_space_dims(cfg: FrameConfig) -> list[int]:
    """Target dimensions of the fixed-line map spaces, per line."""
    return [cfg.complements_suffix(i + 1).dim for i in range(1, cfg.k + 1)]


def fixed_map_tuples(cfg: FrameConfig) -> Iterator[tuple[LinearMap, ...]]:
    """All tuples (A_1..A_k), A_i from line i into the late complements."""
    choices = [
        list(enumerate_maps(cfg.line(i), cfg.complements_suffix(i + 1)))
        for i in range(1, cfg.k + 1)
    ]
    yield from itertools.product(*choices)


def compress_maps(cfg: FrameConfig, maps: tuple[LinearMap, ...]) -> tuple[LinearMap, ...]:
    """Assemble the prefix maps B_i on the sums of the first i lines.

    B_i restricted to line j is A_j with the components in the
    complements of windows j+1..i dropped, so that the graph of B_i
    spans the same space as the graphs of A_1..A_j modulo those
    complements.
    """
    k = cfg.k
    out = []
    for i in range(1, k + 1):
        domain = cfg.lines_prefix(i)
        target = cfg.complements_suffix(i + 1)
        pairs = []
        for j in range(1, i + 1):
            x = cfg.line(j).basis[0]
            y = maps[j - 1].apply(x)
            if j < i:
                drop = span(
                    [v for t in range(j + 1, i + 1) for v in cfg.complement(t).basis],
                    cfg.n,
                    cfg.p,
                )
                y = project(y, target, drop) if drop.dim else y
            pairs.append((x, y))
        out.append(linear_map_from_pairs(domain, target, pairs))
    return tuple(out)


def graph_tuple(cfg: FrameConfig, maps: tuple[LinearMap, ...]) -> GCalPoint:
    """Diagonal of compressed graphs; always a chain-variety point (asserted)."""
    pt = tuple(graph(b) for b in compress_maps(cfg, maps))
    assert gcal_membership(cfg, pt)
    return pt


def gcal_membership(cfg: FrameConfig, pt: GCalPoint) -> bool:
    k = cfg.k
    if len(pt) != k:
        return False
    for i in range(1, k + 1):
        if pt[i - 1].dim != i or not contains(cfg.nested(i, i), pt[i - 1]):
            return False
    for i in range(1, k):
        upper = subspace_sum(pt[i], cfg.complement(i + 1))
        if not contains(upper, pt[i - 1]):
            return False
    return True


def gcal_estimate(cfg: FrameConfig) -> int:
    total = 1
    for i in range(1, cfg.k + 1):
        total *= gaussian_binomial(cfg.nested(i, i).dim, i, cfg.p)
    return total


def enumerate_gcal(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> Iterator[GCalPoint]:
    """Top-down tower enumeration of the chain variety.

    The top space ranges over its full Grassmannian; each lower space is
    a Grassmannian of the computed intersection, so only actual points
    are visited.
    """
    k = cfg.k
    if gcal_estimate(cfg) > budget:
        raise BudgetExceededError(f"chain variety bound exceeds budget {budget}")

    def rec(suffix: tuple[Subspace, ...]) -> Iterator[GCalPoint]:
        i = k - len(suffix)
        if i == 0:
            yield suffix
            return
        if i == k:
            pool = cfg.nested(k, k)
        else:
            pool = intersect(
                subspace_sum(suffix[0], cfg.complement(i + 1)), cfg.nested(i, i)
            )
        for s in enumerate_subspaces(pool, i):
            yield from rec((s,) + suffix)

    yield from rec(())


def ghat_count_formula(cfg: FrameConfig) -> int:
    """Row-by-row product: each grid cell is a projective choice."""
    k, p = cfg.k, cfg.p
    total = 1
    for i in range(1, k + 1):
        c = cfg.window(i + 1).dim - 1 if i < k else cfg.tail.dim
        total *= gaussian_binomial(c + 1, 1, p) ** i
    return total


def enumerate_ghat(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> Iterator[GHatPoint]:
    """All grid points, built from the bottom row upward.

    The bottom row is a chain in the nested spaces; each higher row j-th
    cell sits between its left neighbour and the cell below plus the
    complement of the interleaving line's window.
    """
    k = cfg.k
    if ghat_count_formula(cfg) > budget:
        raise BudgetExceededError(f"grid tower bound exceeds budget {budget}")
    zero = zero_subspace(cfg.n, cfg.p)

    def rec_row(i: int, below: tuple[Subspace, ...], rows_acc) -> Iterator[GHatPoint]:
        def rec_cell(j: int, row: tuple[Subspace, ...]) -> Iterator[GHatPoint]:
            if j > i:
                if i == 1:
                    yield (row,) + rows_acc
                else:
                    yield from rec_row(i - 1, row, (row,) + rows_acc)
                return
            lower = row[j - 2] if j >= 2 else zero
            if i == k:
                upper = cfg.nested(j, k)
            else:
                upper = subspace_sum(below[j - 1], cfg.complement(i + 1))
            for s in enumerate_between(lower, upper, j):
                yield from rec_cell(j + 1, row + (s,))

        yield from rec_cell(1, ())

    yield from rec_row(k, (), ())


def ghat_membership(cfg: FrameConfig, pt: GHatPoint) -> bool:
    k = cfg.k
    if len(pt) != k or any(len(pt[i - 1]) != i for i in range(1, k + 1)):
        return False
    for i in range(1, k + 1):
        for j in range(1, i + 1):
            cell = pt[i - 1][j - 1]
            if cell.dim != j or not contains(cfg.nested(j, i), cell):
                return False
            if j < i and not contains(pt[i - 1][j], cell):
                return False
            if i < k:
                upper = subspace_sum(pt[i][j - 1], cfg.complement(i + 1))
                if not contains(upper, cell):
                    return False
    return True


def pi_diag(pt: GHatPoint) -> GCalPoint:
    """Diagonal extraction; lands in the chain variety."""
    return tuple(pt[i][i] for i in range(len(pt)))


def in_u(cfg: FrameConfig, pt: GCalPoint) -> bool:
    """The open locus: every l_a meets every deeper nested space in the
    expected dimension."""
    for a in range(2, cfg.k + 1):
        for j in range(1, a):
            if intersect(pt[a - 1], cfg.nested(j, a)).dim != j:
                return False
    return True


def u_count_formula(n: int, p: int, beta: tuple[int, ...]) -> int:
    """Independent tower-product count of the open locus of the chain
    variety: level i contributes the regular-locus count of a one-window
    frame of codimension gap c_i (the graph-sum count identity)."""
    k = len(beta)
    total = 1
    for i in range(1, k + 1):
        c = n - beta[-1] if i == k else beta[i] - beta[i - 1] - 1
        total *= ((p ** (c + 1) - 1) // (p - 1)) * p ** ((i - 1) * c)
    return total


def u_dimension_formula(n: int, beta: tuple[int, ...]) -> int:
    """Dimension of the fixed-line map space: k(n-b_k) + sum i(b_{i+1}-b_i-1)."""
    k = len(beta)
    return k * (n - beta[-1]) + sum(
        i * (beta[i] - beta[i - 1] - 1) for i in range(1, k)
    )


def lift_to_ghat(cfg: FrameConfig, pt: GCalPoint) -> GHatPoint:
    """A deterministic section of the diagonal projection.

    Built diagonal by diagonal: each new cell is the intersection of the
    cell above-right with the nested space when that intersection has
    the right dimension, and otherwise the lexicographic completion of
    the projected left cell inside the cell above-right.
    """
    if not gcal_membership(cfg, pt):
        raise ValueError("point is not in the chain variety")
    k = cfg.k
    diags: list[tuple[Subspace, ...]] = [tuple(pt)]
    for c in range(1, k):
        prev = diags[-1]
        new = []
        for idx in range(1, k - c + 1):
            x = prev[idx - 1]                # dimension idx, superscript idx+c-1
            y = prev[idx]                    # dimension idx+1, superscript idx+c
            v_target = cfg.nested(idx, idx + c)
            l_perp = cfg.complement(idx + c)
            new.append(_pair_step(cfg, x, y, v_target, l_perp))
        diags.append(tuple(new))
    grid = tuple(
        tuple(diags[i - j][j - 1] for j in range(1, i + 1)) for i in range(1, k + 1)
    )
    assert ghat_membership(cfg, grid)
    assert pi_diag(grid) == tuple(pt)
    return grid


def _pair_step(
    cfg: FrameConfig, x: Subspace, y: Subspace, v_target: Subspace, l_perp: Subspace
) -> Subspace:
    """One cell of the lift: z ⊆ y with x ⊆ z + l_perp and z ⊆ v_target."""
    inter = intersect(y, v_target)
    assert inter.dim in (x.dim, x.dim + 1)
    if inter.dim == x.dim:
        z = inter
    else:
        proj = span(
            [project(v, v_target, l_perp) for v in x.basis], cfg.n, cfg.p
        )
        assert contains(y, proj)
        rows = list(proj.basis)
        for row in y.basis:
            if len(rows) == x.dim:
                break
            cand = span(rows + [row], cfg.n, cfg.p)
            if cand.dim > len(rows):
                rows = list(cand.basis)
        z = span(rows, cfg.n, cfg.p)
    assert z.dim == x.dim and contains(y, z)
    assert contains(subspace_sum(z, l_perp), x)
    return z


def closed_form_fiber(cfg: FrameConfig, pt: GCalPoint) -> GHatPoint:
    """Over the open locus the fiber is forced: cell (j, i) is the
    diagonal cell i intersected with the nested space (j, i)."""
    k = cfg.k
    return tuple(
        tuple(intersect(pt[i - 1], cfg.nested(j, i)) for j in range(1, i + 1))
        for i in range(1, k + 1)
    )


def psi_tilde(cfg: FrameConfig, pt: GCalPoint) -> tuple[Subspace, ...]:
    """Partial flag with i-th space l_i plus the first i complements."""
    out = []
    for i in range(1, cfg.k + 1):
        s = subspace_sum(pt[i - 1], cfg.complements_prefix(i))
        assert s.dim == cfg.beta[i - 1]
        out.append(s)
    return tuple(out)


def verify_chain_resolution(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> EnumReport:
    """Point-level checks for the grid resolution of the chain variety.

    Surjectivity of the diagonal projection, singleton fibers with the
    closed form over the open locus, section property of the lift, and
    a census of the multi-point fibers off the open locus.
    """
    report = EnumReport(
        "wflag verify",
        {"n": cfg.n, "k": cfg.k, "beta": list(cfg.beta), "field": cfg.p, "budget": budget},
    )
    with timed(report):
        gcal = list(enumerate_gcal(cfg, budget))
        gcal_set = set(gcal)
        fibers: dict[GCalPoint, list[GHatPoint]] = {}
        lands_ok = True
        for ghat_pt in enumerate_ghat(cfg, budget):
            diag = pi_diag(ghat_pt)
            lands_ok = lands_ok and diag in gcal_set
            fibers.setdefault(diag, []).append(ghat_pt)
        report.counts["chain_points"] = len(gcal)
        report.counts["grid_points"] = sum(len(v) for v in fibers.values())
        report.counts["grid_formula"] = ghat_count_formula(cfg)
        report.add("projection_lands_in_chain_variety", lands_ok)
        report.add("projection_onto", set(fibers) == gcal_set)
        report.add(
            "grid_count_matches_row_product",
            report.counts["grid_points"] == report.counts["grid_formula"],
        )

        open_pts = [pt for pt in gcal if in_u(cfg, pt)]
        report.counts["open_locus_points"] = len(open_pts)
        report.counts["open_locus_formula"] = u_count_formula(cfg.n, cfg.p, cfg.beta)
        report.add(
            "open_locus_count_matches_formula",
            len(open_pts) == report.counts["open_locus_formula"],
        )
        singleton_ok = True
        closed_ok = True
        for pt in open_pts:
            fiber = fibers.get(pt, [])
            if len(fiber) != 1:
                singleton_ok = False
            elif fiber[0] != closed_form_fiber(cfg, pt):
                closed_ok = False
        report.add("open_fibers_are_singletons", singleton_ok)
        report.add("open_fibers_match_closed_form", closed_ok)

        section_ok = all(pi_diag(lift_to_ghat(cfg, pt)) == pt for pt in gcal)
        report.add("lift_is_a_section", section_ok)
        lift_in_fiber = all(lift_to_ghat(cfg, pt) in fibers.get(pt, []) for pt in gcal)
        report.add("lift_lands_in_enumerated_grid", lift_in_fiber)

        multi = {pt: len(f) for pt, f in fibers.items() if len(f) > 1}
        report.counts["multi_point_fibers"] = len(multi)
        # a fiber can branch only at a pair (i, i+1) whose interleaving
        # complement is nonzero with later complements left to land in;
        # otherwise every grid cell is a forced intersection
        freedom = any(
            cfg.complement(i + 1).dim and cfg.complements_suffix(i + 2).dim
            for i in range(1, cfg.k)
        )
        if freedom:
            report.add(
                "off_locus_multi_fiber_exists",
                bool(multi),
                witnesses=[subspace_witness(s) for s in next(iter(multi), ())],
            )
        else:
            report.add(
                "off_locus_multi_fiber_exists",
                not multi,
                "no branching pair; projection bijective",
            )
    return report


def verify_embedding_of_map_space(
    cfg: FrameConfig, samples: int = 100, seed: int = 0
) -> EnumReport:
    """Compressed graph tuples land in the open locus of the chain
    variety, distinct tuples landing on distinct points; checked
    exhaustively over GF(2) and on random samples otherwise."""
    report = EnumReport(
        "wflag embed",
        {"n": cfg.n, "k": cfg.k, "beta": list(cfg.beta), "field": cfg.p},
    )
    with timed(report):
        if cfg.p == 2:
            tuples = list(fixed_map_tuples(cfg))
        else:
            rng = random.Random(seed)
            dims = hom_space_dims(cfg)
            tuples = []
            for _ in range(samples):
                maps = []
                for i in range(1, cfg.k + 1):
                    target = cfg.complements_suffix(i + 1)
                    matrix = tuple(
                        tuple(rng.randrange(cfg.p) for _ in range(1))
                        for _ in range(dims[i - 1])
                    )
                    maps.append(LinearMap(cfg.line(i), target, matrix))
                tuples.append(tuple(maps))
        seen: dict[tuple, GCalPoint] = {}
        member_ok = True
        open_ok = True
        nesting_ok = True
        nesting_ok_pairs = True
        for maps in tuples:
            pt = graph_tuple(cfg, maps)
            seen[tuple(m.matrix for m in maps)] = pt
            member_ok = member_ok and gcal_membership(cfg, pt)
            open_ok = open_ok and in_u(cfg, pt)
            for i in range(1, cfg.k):
                upper = subspace_sum(pt[i], cfg.complement(i + 1))
                nesting_ok_pairs = nesting_ok_pairs and contains(upper, pt[i - 1])
            for i in range(1, cfg.k + 1):
                for j in range(1, i):
                    if intersect(pt[i - 1], cfg.nested(j, i)).dim != j:
                        nesting_ok = False
        report.counts["map_tuples"] = len(seen)
        report.counts["distinct_points"] = len(set(seen.values()))
        report.add("graphs_in_chain_variety", member_ok)
        report.add("prefix_graph_nesting", nesting_ok_pairs)
        report.add("graphs_in_open_locus", open_ok)
        report.add("graph_meets_nested_in_dim_j", nesting_ok)
        report.add("tuple_to_point_injective", len(set(seen.values())) == len(seen))
    return report
