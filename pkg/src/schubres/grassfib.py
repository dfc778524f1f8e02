"""Graph-sum parametrizations of Grassmannian Schubert cells over GF(p).

For a multi-index beta, the ambient space splits into windows between
consecutive flag nodes.  Fixing one line and one complement per window
yields a frame; summing graphs of linear maps out of moving window lines
parametrizes the regular Schubert variety (maps into earlier-window
complements) and its conjugate (maps into later-window complements plus
the tail of the flag).  Both parametrizations are verified to be
injective with image equal to the rank-filtered point sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from schubres.biflag import Flag, standard_frames
from schubres.exactlin import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    LinearMap,
    Subspace,
    canonical_complement,
    check_field,
    contains,
    enumerate_maps,
    enumerate_subspaces,
    full_space,
    gaussian_binomial,
    graph,
    intersect,
    project,
    project_subspace,
    span,
    subspace_sum,
    unit_vector,
    zero_subspace,
)
from schubres.report import EnumReport, subspace_witness, timed


def check_multi_index(beta: tuple[int, ...], n: int) -> None:
    if not beta or list(beta) != sorted(set(beta)):
        raise ValueError(f"multi-index must be strictly increasing, got {beta}")
    if beta[0] < 1 or beta[-1] > n:
        raise ValueError(f"multi-index {beta} out of range 1..{n}")


@dataclass(frozen=True)
class FrameConfig:
    """The fixed frame data attached to (n, p, beta).

    ``lines[i-1]`` and ``complements[i-1]`` split window i; index k+1 of
    a complement means the tail G^{beta_k}.  ``nested(j, i)`` is the sum
    of the first j lines and the complements past window i.
    """

    n: int
    p: int
    beta: tuple[int, ...]
    frames: Flag                       # F_0 .. F_n
    coframes: Flag                     # G^0 .. G^n
    windows: tuple[Subspace, ...]      # window i = F_{b_i} ∩ G^{b_{i-1}}
    lines: tuple[Subspace, ...]
    complements: tuple[Subspace, ...]  # within the windows
    tail: Subspace                     # G^{beta_k}

    @property
    def k(self) -> int:
        return len(self.beta)

    def window(self, i: int) -> Subspace:
        return self.windows[i - 1]

    def line(self, i: int) -> Subspace:
        return self.lines[i - 1]

    def complement(self, i: int) -> Subspace:
        """Complement of line i in window i; index k+1 gives the tail."""
        if i == self.k + 1:
            return self.tail
        return self.complements[i - 1]

    def lines_prefix(self, i: int) -> Subspace:
        """Sum of lines 1..i."""
        out = zero_subspace(self.n, self.p)
        for j in range(1, i + 1):
            out = subspace_sum(out, self.line(j))
        return out

    def complements_prefix(self, i: int) -> Subspace:
        """Sum of complements 1..i."""
        out = zero_subspace(self.n, self.p)
        for j in range(1, i + 1):
            out = subspace_sum(out, self.complement(j))
        return out

    def complements_suffix(self, i: int) -> Subspace:
        """Sum of complements i..k+1 (the tail included)."""
        out = zero_subspace(self.n, self.p)
        for j in range(i, self.k + 2):
            out = subspace_sum(out, self.complement(j))
        return out

    def nested(self, j: int, i: int) -> Subspace:
        """Sum of lines 1..j and complements i+1..k+1 (for j <= i)."""
        return subspace_sum(self.lines_prefix(j), self.complements_suffix(i + 1))


def make_frame(
    n: int,
    p: int,
    beta: tuple[int, ...],
    line_choices: tuple[Subspace, ...] | None = None,
) -> FrameConfig:
    """Build a frame; default lines are the first unit vector per window."""
    check_field(p)
    beta = tuple(beta)
    check_multi_index(beta, n)
    frames, coframes = standard_frames(n, p)
    k = len(beta)
    windows = tuple(
        intersect(frames[beta[i - 1]], coframes[beta[i - 2] if i >= 2 else 0])
        for i in range(1, k + 1)
    )
    if line_choices is None:
        prev = (0,) + beta
        lines = tuple(span([unit_vector(prev[i - 1], n)], n, p) for i in range(1, k + 1))
    else:
        lines = tuple(line_choices)
        if len(lines) != k:
            raise ValueError(f"need {k} lines, got {len(lines)}")
        for i, line in enumerate(lines, start=1):
            if line.dim != 1 or not contains(windows[i - 1], line):
                raise ValueError(f"line {i} is not a line inside window {i}")
    complements = tuple(
        canonical_complement(lines[i - 1], windows[i - 1]) for i in range(1, k + 1)
    )
    cfg = FrameConfig(
        n, p, beta, frames, coframes, windows, lines, complements, coframes[beta[-1]]
    )
    for i in range(1, k + 1):
        assert subspace_sum(cfg.line(i), cfg.complement(i)) == cfg.window(i)
        assert intersect(cfg.line(i), cfg.complement(i)).dim == 0
    return cfg


def moving_complements(cfg: FrameConfig, lines: tuple[Subspace, ...]) -> tuple[Subspace, ...]:
    """Deterministic complements of moving window lines, tail appended."""
    for i, line in enumerate(lines, start=1):
        if line.dim != 1 or not contains(cfg.window(i), line):
            raise ValueError(f"moving line {i} must be a line in window {i}")
    return tuple(
        canonical_complement(line, cfg.window(i)) for i, line in enumerate(lines, start=1)
    ) + (cfg.tail,)


def _sum_all(spaces: list[Subspace], n: int, p: int) -> Subspace:
    out = zero_subspace(n, p)
    for s in spaces:
        out = subspace_sum(out, s)
    return out


def phi(
    cfg: FrameConfig, lines: tuple[Subspace, ...], maps: tuple[LinearMap, ...]
) -> Subspace:
    """Sum of graphs of maps into earlier-window complements.

    ``maps[i-2]`` sends line i into the sum of the complements of lines
    1..i-1; the first line contributes itself.  The result meets F_{b_i}
    in dimension exactly i for every i (asserted).
    """
    k = cfg.k
    if len(lines) != k or len(maps) != k - 1:
        raise ValueError("need k moving lines and k-1 maps")
    comps = moving_complements(cfg, lines)
    parts = [lines[0]]
    target = comps[0]
    for i in range(2, k + 1):
        a = maps[i - 2]
        if a.domain != lines[i - 1] or a.target != target:
            raise ValueError(f"map {i} has wrong domain or target")
        parts.append(graph(a))
        target = subspace_sum(target, comps[i - 1])
    out = _sum_all(parts, cfg.n, cfg.p)
    assert out.dim == k
    for i in range(1, k + 1):
        assert intersect(out, cfg.frames[cfg.beta[i - 1]]).dim == i
    return out


def phi_star(
    cfg: FrameConfig, lines: tuple[Subspace, ...], maps: tuple[LinearMap, ...]
) -> Subspace:
    """Sum of graphs of maps into later-window complements plus the tail.

    ``maps[i-1]`` sends line i into the sum of the complements of lines
    i+1..k and the tail.  The result meets G^{b_i} in dimension exactly
    k-i, and that intersection is the sum of the later graphs (asserted).
    """
    k = cfg.k
    if len(lines) != k or len(maps) != k:
        raise ValueError("need k moving lines and k maps")
    comps = moving_complements(cfg, lines)
    graphs = []
    for i in range(1, k + 1):
        a = maps[i - 1]
        target = _sum_all(list(comps[i:]), cfg.n, cfg.p)
        if a.domain != lines[i - 1] or a.target != target:
            raise ValueError(f"map {i} has wrong domain or target")
        graphs.append(graph(a))
    out = _sum_all(graphs, cfg.n, cfg.p)
    assert out.dim == k
    for i in range(1, k + 1):
        inter = intersect(out, cfg.coframes[cfg.beta[i - 1]])
        assert inter.dim == k - i
        assert inter == _sum_all(graphs[i:], cfg.n, cfg.p)
    return out


MODES = ("cell", "open", "closed", "star_open", "star_closed")


def vbeta_points(
    cfg: FrameConfig, mode: str, budget: int = DEFAULT_BUDGET
) -> Iterator[Subspace]:
    """Rank-filtered point sets of the Schubert loci in Gr_k(GF(p)^n).

    Brute force over the full Grassmannian: ``closed``/``open`` filter
    dim(L ∩ F_{b_i}) >= i / == i; ``cell`` additionally pins the nodes
    one below each b_i; ``star_*`` use the co-flag G^{b_i} with k-i.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    k = cfg.k
    total = gaussian_binomial(cfg.n, k, cfg.p)
    if total > budget:
        raise BudgetExceededError(f"Gr_{k}(GF({cfg.p})^{cfg.n}) has {total} points")
    full = full_space(cfg.n, cfg.p)
    for l in enumerate_subspaces(full, k):
        if mode == "closed":
            ok = all(
                intersect(l, cfg.frames[cfg.beta[i - 1]]).dim >= i for i in range(1, k + 1)
            )
        elif mode == "open":
            ok = all(
                intersect(l, cfg.frames[cfg.beta[i - 1]]).dim == i for i in range(1, k + 1)
            )
        elif mode == "cell":
            ok = all(
                intersect(l, cfg.frames[cfg.beta[i - 1]]).dim == i
                and intersect(l, cfg.frames[cfg.beta[i - 1] - 1]).dim == i - 1
                for i in range(1, k + 1)
            )
        elif mode == "star_open":
            ok = all(
                intersect(l, cfg.coframes[cfg.beta[i - 1]]).dim == k - i
                for i in range(1, k + 1)
            )
        else:  # star_closed
            ok = all(
                intersect(l, cfg.coframes[cfg.beta[i - 1]]).dim >= k - i
                for i in range(1, k + 1)
            )
        if ok:
            yield l


def window_line_tuples(cfg: FrameConfig) -> Iterator[tuple[Subspace, ...]]:
    """All tuples of moving lines, one per window."""
    choices = [list(enumerate_subspaces(cfg.window(i), 1)) for i in range(1, cfg.k + 1)]
    yield from itertools.product(*choices)


def base_point_count(cfg: FrameConfig) -> int:
    """Number of GF(p) points of the product of window projective spaces."""
    total = 1
    for i in range(1, cfg.k + 1):
        total *= gaussian_binomial(cfg.window(i).dim, 1, cfg.p)
    return total


def hom_rank(cfg: FrameConfig) -> int:
    """Fiber dimension of the graph-sum parametrization of the regular
    locus: sum over i >= 2 of (b_{i-1} - (i-1))."""
    return sum(cfg.beta[i - 2] - (i - 1) for i in range(2, cfg.k + 1))


def hom_star_rank(cfg: FrameConfig) -> int:
    """Fiber dimension of the conjugate parametrization."""
    k = cfg.k
    total = 0
    for i in range(1, k + 1):
        total += sum(cfg.window(j).dim - 1 for j in range(i + 1, k + 1))
        total += cfg.tail.dim
    return total


def phi_inputs(
    cfg: FrameConfig,
) -> Iterator[tuple[tuple[Subspace, ...], tuple[LinearMap, ...]]]:
    for lines in window_line_tuples(cfg):
        comps = moving_complements(cfg, lines)
        targets = []
        acc = zero_subspace(cfg.n, cfg.p)
        for i in range(1, cfg.k):
            acc = subspace_sum(acc, comps[i - 1])
            targets.append(acc)
        map_choices = [
            list(enumerate_maps(lines[i - 1], targets[i - 2])) for i in range(2, cfg.k + 1)
        ]
        for maps in itertools.product(*map_choices):
            yield lines, maps


def phi_star_inputs(
    cfg: FrameConfig,
) -> Iterator[tuple[tuple[Subspace, ...], tuple[LinearMap, ...]]]:
    for lines in window_line_tuples(cfg):
        comps = moving_complements(cfg, lines)
        map_choices = []
        for i in range(1, cfg.k + 1):
            target = _sum_all(list(comps[i:]), cfg.n, cfg.p)
            map_choices.append(list(enumerate_maps(lines[i - 1], target)))
        for maps in itertools.product(*map_choices):
            yield lines, maps


def recover_lines_from_open(cfg: FrameConfig, l: Subspace) -> tuple[Subspace, ...]:
    """The base-point of a regular locus member: project L ∩ F_{b_i}
    into window i along F_{b_{i-1}}."""
    out = []
    for i in range(1, cfg.k + 1):
        inter = intersect(l, cfg.frames[cfg.beta[i - 1]])
        prev = cfg.frames[cfg.beta[i - 2]] if i >= 2 else cfg.frames[0]
        proj = project_subspace(inter, cfg.window(i), prev)
        assert proj.dim == 1
        out.append(proj)
    return tuple(out)


def recover_lines_from_star(cfg: FrameConfig, l: Subspace) -> tuple[Subspace, ...]:
    """The base-point of a conjugate member: project L ∩ G^{b_{i-1}}
    into window i along G^{b_i}."""
    out = []
    for i in range(1, cfg.k + 1):
        prev = cfg.coframes[cfg.beta[i - 2]] if i >= 2 else cfg.coframes[0]
        inter = intersect(l, prev)
        proj = project_subspace(inter, cfg.window(i), cfg.coframes[cfg.beta[i - 1]])
        assert proj.dim == 1
        out.append(proj)
    return tuple(out)


def verify_phi(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> EnumReport:
    """Injectivity, image identity and fiber compatibility of the
    graph-sum parametrization of the regular Schubert locus."""
    report = EnumReport(
        "grass verify-phi",
        {"n": cfg.n, "k": cfg.k, "beta": list(cfg.beta), "field": cfg.p, "budget": budget},
    )
    with timed(report):
        inputs = 0
        image: dict[Subspace, tuple] = {}
        fiber_ok = True
        for lines, maps in phi_inputs(cfg):
            out = phi(cfg, lines, maps)
            inputs += 1
            image[out] = (lines, maps)
            if recover_lines_from_open(cfg, out) != lines:
                fiber_ok = False
        report.counts["inputs"] = inputs
        report.counts["distinct_images"] = len(image)
        report.add("injective", len(image) == inputs)
        report.add("base_point_recovered", fiber_ok)

        open_set = set(vbeta_points(cfg, "open", budget))
        report.counts["regular_locus_points"] = len(open_set)
        report.add(
            "image_equals_regular_locus",
            set(image) == open_set,
            witnesses=[subspace_witness(s) for s in sorted(set(image) ^ open_set)][:3],
        )
        predicted = base_point_count(cfg) * cfg.p ** hom_rank(cfg)
        report.counts["predicted_points"] = predicted
        report.add("count_identity", len(open_set) == predicted)
    return report


def verify_phi_star(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> EnumReport:
    """Same checks for the conjugate parametrization."""
    report = EnumReport(
        "grass verify-phistar",
        {"n": cfg.n, "k": cfg.k, "beta": list(cfg.beta), "field": cfg.p, "budget": budget},
    )
    with timed(report):
        inputs = 0
        image: dict[Subspace, tuple] = {}
        fiber_ok = True
        for lines, maps in phi_star_inputs(cfg):
            out = phi_star(cfg, lines, maps)
            inputs += 1
            image[out] = (lines, maps)
            if recover_lines_from_star(cfg, out) != lines:
                fiber_ok = False
        report.counts["inputs"] = inputs
        report.counts["distinct_images"] = len(image)
        report.add("injective", len(image) == inputs)
        report.add("base_point_recovered", fiber_ok)

        star_set = set(vbeta_points(cfg, "star_open", budget))
        report.counts["conjugate_locus_points"] = len(star_set)
        report.add("image_equals_conjugate_locus", set(image) == star_set)
        predicted = base_point_count(cfg) * cfg.p ** hom_star_rank(cfg)
        report.counts["predicted_points"] = predicted
        report.add("count_identity", len(star_set) == predicted)
    return report


def verify_transversal_identity(cfg: FrameConfig, budget: int = DEFAULT_BUDGET) -> EnumReport:
    """The two loci meet exactly in the window-line sums, and the closed
    loci meet no deeper than the open ones."""
    report = EnumReport(
        "grass verify-transversal",
        {"n": cfg.n, "k": cfg.k, "beta": list(cfg.beta), "field": cfg.p, "budget": budget},
    )
    with timed(report):
        open_set = set(vbeta_points(cfg, "open", budget))
        star_set = set(vbeta_points(cfg, "star_open", budget))
        closed_set = set(vbeta_points(cfg, "closed", budget))
        star_closed_set = set(vbeta_points(cfg, "star_closed", budget))
        base = {_sum_all(list(lines), cfg.n, cfg.p) for lines in window_line_tuples(cfg)}
        report.counts["intersection"] = len(open_set & star_set)
        report.counts["base_points"] = len(base)
        report.add("open_intersection_is_base", open_set & star_set == base)
        report.add(
            "closed_intersection_no_bigger",
            closed_set & star_closed_set == open_set & star_set,
        )
    return report
