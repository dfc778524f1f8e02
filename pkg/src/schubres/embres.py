"""Embedded resolution of a Grassmannian Schubert variety over GF(p).

Chain towers over a partial flag resolve the Schubert variety of that
flag.  Pairing every grid point of the chain-variety resolution with the
chain tower over its induced flag yields a family covering the whole
Grassmannian; the pair-to-top-space map is one-to-one over the graph
chart, and the preimage of the Schubert cell collapses onto the fiber
over one special grid point, whose tower is exactly the chain tower of
the standard flag.
"""

from __future__ import annotations

import itertools
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
    full_space,
    gaussian_binomial,
    graph,
    intersect,
    linear_map_from_pairs,
    project,
    subspace_sum,
    zero_subspace,
)
from schubres.grassfib import FrameConfig
from schubres.report import EnumReport, subspace_witness, timed
from schubres.wflag import (
    GHatPoint,
    enumerate_ghat,
    fixed_map_tuples,
    lift_to_ghat,
    pi_diag,
    psi_tilde,
)

KLChain = tuple[Subspace, ...]


def kl_points(
    flag: tuple[Subspace, ...], p: int, budget: int = DEFAULT_BUDGET
) -> Iterator[KLChain]:
    """Chains L_1 ⊂ ... ⊂ L_k with L_i inside the i-th flag space,
    dim L_i = i: the resolution tower of the flag's Schubert variety."""
    k = len(flag)
    estimate = kl_count_formula(tuple(s.dim for s in flag), p)
    if estimate > budget:
        raise BudgetExceededError(f"chain tower needs {estimate} points")
    n = flag[0].n
    zero = zero_subspace(n, p)

    def rec(chain: KLChain) -> Iterator[KLChain]:
        i = len(chain)
        if i == k:
            yield chain
            return
        lower = chain[-1] if chain else zero
        for s in enumerate_between(lower, flag[i], i + 1):
            yield from rec(chain + (s,))

    yield from rec(())


def kl_count_formula(dims: tuple[int, ...], p: int) -> int:
    """Tower point count from the flag dimensions alone."""
    total = 1
    for i, d in enumerate(dims, start=1):
        total *= gaussian_binomial(d - (i - 1), 1, p)
    return total


def psi_embed(cfg: FrameConfig, maps: tuple[LinearMap, ...]) -> tuple[Subspace, ...]:
    """Flag of the map tuple: i-th space is the sum of the first i graphs
    and the first i complements.  Equals the chain-variety flag of the
    compressed graphs."""
    out = []
    acc = zero_subspace(cfg.n, cfg.p)
    for i in range(1, cfg.k + 1):
        acc = subspace_sum(acc, subspace_sum(graph(maps[i - 1]), cfg.complement(i)))
        assert acc.dim == cfg.beta[i - 1]
        out.append(acc)
    return tuple(out)


def chart_maps(cfg: FrameConfig) -> Iterator[LinearMap]:
    """All maps from the sum of the fixed lines into the sum of all
    complements (tail included): the graph chart of the Grassmannian."""
    domain = cfg.lines_prefix(cfg.k)
    target = cfg.complements_suffix(1)
    yield from enumerate_maps(domain, target)


def in_chart(cfg: FrameConfig, l: Subspace) -> bool:
    """Membership in the graph chart: trivial meet with all complements."""
    return intersect(l, cfg.complements_suffix(1)).dim == 0


def reconstruct_map_tuple(cfg: FrameConfig, t: LinearMap) -> tuple[LinearMap, ...]:
    """Project the restrictions of a chart map onto the late complements."""
    out = []
    for i in range(1, cfg.k + 1):
        x = cfg.line(i).basis[0]
        y = t.apply(x)
        late = cfg.complements_suffix(i + 1)
        early = cfg.complements_prefix(i)
        y_late = project(y, late, early) if early.dim else y
        out.append(linear_map_from_pairs(cfg.line(i), late, [(x, y_late)]))
    return tuple(out)


def special_point(cfg: FrameConfig) -> GHatPoint:
    """The grid point over the all-lines diagonal (all maps zero)."""
    diag = tuple(cfg.lines_prefix(i) for i in range(1, cfg.k + 1))
    return lift_to_ghat(cfg, diag)


def flag_of_grid(cfg: FrameConfig, pt: GHatPoint) -> tuple[Subspace, ...]:
    return psi_tilde(cfg, pi_diag(pt))


def enumerate_embres(
    cfg: FrameConfig, budget: int = DEFAULT_BUDGET
) -> Iterator[tuple[GHatPoint, KLChain]]:
    """All pairs (grid point, chain over its flag)."""
    for pt in enumerate_ghat(cfg, budget):
        flag = flag_of_grid(cfg, pt)
        for chain in kl_points(flag, cfg.p, budget):
            yield pt, chain


def cell_points(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """The Schubert cell cut out by both node families of the frame.

    The lower nodes are the sums of the first i-1 lines and first i
    complements; with default lines these are the standard flag spaces
    one below each beta node.
    """
    k = cfg.k
    total = gaussian_binomial(cfg.n, k, cfg.p)
    if total > budget:
        raise BudgetExceededError(f"Gr_{k} has {total} points, budget {budget}")
    nodes = [cfg.frames[b] for b in cfg.beta]
    lower_nodes = [
        subspace_sum(cfg.lines_prefix(i - 1), cfg.complements_prefix(i))
        for i in range(1, k + 1)
    ]
    for l in enumerate_subspaces(full_space(cfg.n, cfg.p), k):
        if all(
            intersect(l, nodes[i - 1]).dim == i
            and intersect(l, lower_nodes[i - 1]).dim == i - 1
            for i in range(1, k + 1)
        ):
            yield l


def verify_chart_family(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> EnumReport:
    """Every chart graph is hit by exactly one flag of the map-space
    family, with the forced chain; the reconstruction recovers the maps."""
    report = EnumReport(
        "embres chart",
        {"n": cfg.n, "k": cfg.k, "beta": list(cfg.beta), "field": cfg.p, "budget": budget},
    )
    with timed(report):
        tuples = list(fixed_map_tuples(cfg))
        flags = [psi_embed(cfg, maps) for maps in tuples]
        chart_ok = True
        unique_ok = True
        recon_ok = True
        chain_ok = True
        count = 0
        for t in chart_maps(cfg):
            gt = graph(t)
            count += 1
            chart_ok = chart_ok and in_chart(cfg, gt)
            hits = [
                idx
                for idx, flag in enumerate(flags)
                if all(intersect(gt, flag[i]).dim >= i + 1 for i in range(cfg.k))
            ]
            if len(hits) != 1:
                unique_ok = False
                continue
            maps = tuples[hits[0]]
            if tuple(m.matrix for m in reconstruct_map_tuple(cfg, t)) != tuple(
                m.matrix for m in maps
            ):
                recon_ok = False
            flag = flags[hits[0]]
            chain = tuple(intersect(gt, flag[i]) for i in range(cfg.k))
            if chain[-1] != gt or any(
                chain[i].dim != i + 1 for i in range(cfg.k)
            ) or any(not contains(chain[i + 1], chain[i]) for i in range(cfg.k - 1)):
                chain_ok = False
        report.counts["chart_points"] = count
        report.counts["family_flags"] = len(flags)
        report.add("graphs_lie_in_chart", chart_ok)
        report.add("unique_flag_per_chart_point", unique_ok)
        report.add("map_tuple_reconstructed", recon_ok)
        report.add("forced_chain_is_valid", chain_ok)
        report.add("flags_distinct", len(set(flags)) == len(flags))
    return report


def verify_embedded_resolution(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> EnumReport:
    """Point-level checks of the embedded-resolution contract.

    (a) the top-space map hits every Grassmannian point (empirical);
    (b) chart points have exactly one preimage pair;
    (c) preimages of the cell all sit over the special grid point, whose
        fiber is the chain tower of the standard flag and projects onto
        the closed Schubert locus (empirical at this size).
    """
    report = EnumReport(
        "embres verify",
        {"n": cfg.n, "k": cfg.k, "beta": list(cfg.beta), "field": cfg.p, "budget": budget},
    )
    with timed(report):
        o = special_point(cfg)
        standard = tuple(cfg.frames[b] for b in cfg.beta)
        report.add("special_point_flag_is_standard", flag_of_grid(cfg, o) == standard)

        census: dict[Subspace, list[tuple[GHatPoint, KLChain]]] = {}
        fiber_sizes = set()
        per_grid = 0
        grid_points = 0
        incidence_ok = True
        for pt in enumerate_ghat(cfg, budget):
            grid_points += 1
            flag = flag_of_grid(cfg, pt)
            per_grid = 0
            for chain in kl_points(flag, cfg.p, budget):
                per_grid += 1
                census.setdefault(chain[-1], []).append((pt, chain))
                incidence_ok = incidence_ok and all(
                    contains(flag[i], chain[i]) for i in range(cfg.k)
                )
            fiber_sizes.add(per_grid)
        total_pairs = sum(len(v) for v in census.values())
        report.counts["grid_points"] = grid_points
        report.counts["pairs"] = total_pairs
        report.add("chain_count_flag_independent", len(fiber_sizes) == 1)
        report.add(
            "pair_count_is_product",
            total_pairs == grid_points * next(iter(fiber_sizes)),
        )
        report.add("pairs_satisfy_incidence", incidence_ok)

        grass = set(enumerate_subspaces(full_space(cfg.n, cfg.p), cfg.k))
        report.counts["grassmannian_points"] = len(grass)
        report.add(
            "hits_whole_grassmannian",
            set(census) == grass,
            "surjectivity observed at this field size",
            informational=True,
        )

        chart_fail: list = []
        diag_graph_ok = True
        late = [cfg.complements_suffix(i + 1) for i in range(1, cfg.k + 1)]
        for t in chart_maps(cfg):
            gt = graph(t)
            hits = census.get(gt, [])
            if len(hits) != 1:
                chart_fail.append(subspace_witness(gt))
                continue
            # the unique preimage has graph-shaped diagonal cells: each
            # meets the late complements trivially
            diag = pi_diag(hits[0][0])
            if any(intersect(diag[i], late[i]).dim for i in range(cfg.k)):
                diag_graph_ok = False
        report.add("chart_points_have_unique_preimage", not chart_fail, witnesses=chart_fail[:3])
        report.add("chart_preimage_diagonals_are_graphs", diag_graph_ok)

        cell = set(cell_points(cfg, budget))
        report.counts["cell_points"] = len(cell)
        over_o_only = all(
            pt == o for l in cell for (pt, _) in census.get(l, [])
        )
        report.add("cell_preimage_over_special_point", over_o_only)
        cell_in_chart = all(in_chart(cfg, l) for l in cell)
        report.add("cell_inside_chart", cell_in_chart)

        over_o = {chain[-1] for (pt, chain) in itertools.chain(*census.values()) if pt == o}
        standard_tower_tops = {chain[-1] for chain in kl_points(standard, cfg.p, budget)}
        report.add("special_fiber_is_standard_tower", over_o == standard_tower_tops)
        closed = {
            l
            for l in grass
            if all(intersect(l, cfg.frames[b]).dim >= i for i, b in enumerate(cfg.beta, 1))
        }
        report.counts["closed_locus_points"] = len(closed)
        report.add(
            "special_fiber_covers_closed_locus",
            over_o == closed,
            "chain-tower surjectivity observed at this field size",
            informational=True,
        )
    return report
