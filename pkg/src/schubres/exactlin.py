"""Exact linear algebra over prime fields GF(p).

A subspace of GF(p)^n is stored through its canonical basis: the reduced
row echelon form of any spanning set, zero rows dropped.  Canonical bases
make equality and hashing structural, so subspaces deduplicate in sets
and serve as dictionary keys directly.  All values are immutable and all
operations are pure functions; results are cached and shared freely.

Vectors are tuples of ints reduced mod p; matrices are tuples of row
tuples.  Coordinates are 0-based throughout this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Vec = tuple[int, ...]
Rows = tuple[Vec, ...]

DEFAULT_BUDGET = 10_000_000

MAX_FIELD = 251


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured candidate budget."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_field(p: int) -> None:
    if not is_prime(p) or p > MAX_FIELD:
        raise ValueError(f"field modulus must be a prime <= {MAX_FIELD}, got {p}")


def vec_add(u: Vec, v: Vec, p: int) -> Vec:
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_scale(c: int, v: Vec, p: int) -> Vec:
    return tuple((c * a) % p for a in v)


def rref(rows: Iterable[Sequence[int]], p: int) -> tuple[Rows, tuple[int, ...]]:
    """Reduced row echelon form of a matrix over GF(p).

    Returns the canonical basis of the row space (zero rows dropped)
    together with the strictly increasing pivot column indices.
    """
    mat = [[x % p for x in r] for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pr = next((r for r in range(row, len(mat)) if mat[r][col]), None)
        if pr is None:
            continue
        mat[row], mat[pr] = mat[pr], mat[row]
        inv = pow(mat[row][col], -1, p)
        mat[row] = [(x * inv) % p for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:row]), tuple(pivots)


@dataclass(frozen=True, order=True)
class Subspace:
    """A linear subspace of GF(p)^n in canonical reduced-row-echelon form.

    Two subspaces are equal iff their canonical basis matrices are equal.
    The dataclass ordering sorts same-shape subspaces lexicographically
    on the canonical basis matrix, which fixes every enumeration order
    in this package.
    """

    n: int
    p: int
    basis: Rows
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce_vector(self, v: Vec) -> Vec:
        """Residue of v after eliminating all pivot coordinates."""
        w = [x % self.p for x in v]
        for row, c in zip(self.basis, self.pivots):
            if w[c]:
                f = w[c]
                w = [(a - f * b) % self.p for a, b in zip(w, row)]
        return tuple(w)

    def contains_vector(self, v: Vec) -> bool:
        return not any(self.reduce_vector(v))

    def coords(self, v: Vec) -> Vec | None:
        """Coordinates of v in the canonical basis, or None if v is outside."""
        if not self.contains_vector(v):
            return None
        return tuple(v[c] % self.p for c in self.pivots)

    def vectors(self) -> Iterator[Vec]:
        """All p^dim member vectors (small subspaces only)."""
        zero = (0,) * self.n
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            v = zero
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = vec_add(v, vec_scale(c, row, self.p), self.p)
            yield v


def span(vectors: Iterable[Sequence[int]], n: int, p: int) -> Subspace:
    """Canonical subspace of GF(p)^n spanned by the given vectors."""
    check_field(p)
    vecs = [tuple(v) for v in vectors]
    for v in vecs:
        if len(v) != n:
            raise ValueError(f"vector length {len(v)} != ambient dimension {n}")
    if not vecs:
        return Subspace(n, p, (), ())
    basis, piv = rref(vecs, p)
    return Subspace(n, p, basis, piv)


def zero_subspace(n: int, p: int) -> Subspace:
    check_field(p)
    return Subspace(n, p, (), ())


def full_space(n: int, p: int) -> Subspace:
    return span([unit_vector(i, n) for i in range(n)], n, p)


def unit_vector(i: int, n: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(n))


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.n != b.n or a.p != b.p:
        raise ValueError(
            f"incompatible subspaces: ambient/field ({a.n},{a.p}) vs ({b.n},{b.p})"
        )


@lru_cache(maxsize=None)
def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Canonical form of a + b."""
    _check_compatible(a, b)
    return span(a.basis + b.basis, a.n, a.p)


@lru_cache(maxsize=None)
def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical form of a ∩ b, via row reduction of the doubled matrix."""
    _check_compatible(a, b)
    n = a.n
    zero = (0,) * n
    stacked = [u + u for u in a.basis] + [v + zero for v in b.basis]
    red, _ = rref(stacked, a.p)
    inter_rows = [r[n:] for r in red if not any(r[:n])]
    return span(inter_rows, n, a.p)


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff b is a subspace of a."""
    _check_compatible(a, b)
    if b.dim > a.dim:
        return False
    return all(a.contains_vector(v) for v in b.basis)


@lru_cache(maxsize=None)
def canonical_complement(inner: Subspace, outer: Subspace) -> Subspace:
    """The deterministic complement C with inner ⊕ C = outer.

    C is spanned by the canonical basis rows of ``outer`` whose indices
    are not pivot columns of ``inner`` rewritten in outer-coordinates.
    """
    _check_compatible(inner, outer)
    if not contains(outer, inner):
        raise ValueError("inner is not contained in outer")
    coords = [outer.coords(v) for v in inner.basis]
    if coords:
        _, piv = rref(coords, inner.p)  # type: ignore[arg-type]
        taken = set(piv)
    else:
        taken = set()
    rows = [outer.basis[i] for i in range(outer.dim) if i not in taken]
    return span(rows, outer.n, outer.p)


def solve_coords(rows: Rows, v: Vec, p: int) -> Vec | None:
    """One solution x of sum_i x_i rows[i] = v, or None if inconsistent.

    Free coefficients are set to 0; for independent rows the solution is
    unique.
    """
    m = len(rows)
    n = len(v)
    aug = [[rows[c][r] % p for c in range(m)] + [v[r] % p] for r in range(n)]
    red, piv = rref(aug, p)
    sol = [0] * m
    for row, c in zip(red, piv):
        if c == m:
            return None  # pivot in the augmented column: inconsistent
        sol[c] = row[m]
    return tuple(sol)


def project(v: Vec, onto: Subspace, along: Subspace) -> Vec:
    """Component of v in ``onto`` for the decomposition onto ⊕ along."""
    _check_compatible(onto, along)
    if intersect(onto, along).dim:
        raise ValueError("onto and along do not form a direct sum")
    rows = onto.basis + along.basis
    coeffs = solve_coords(rows, tuple(v), onto.p)
    if coeffs is None:
        raise ValueError("vector outside onto + along")
    out = (0,) * onto.n
    for c, row in zip(coeffs[: onto.dim], onto.basis):
        if c:
            out = vec_add(out, vec_scale(c, row, onto.p), onto.p)
    return out


def project_subspace(s: Subspace, onto: Subspace, along: Subspace) -> Subspace:
    """Image of a subspace under the projection onto ⊕ along -> onto."""
    return span([project(v, onto, along) for v in s.basis], s.n, s.p)


@dataclass(frozen=True)
class LinearMap:
    """A linear map between subspaces in their canonical bases.

    ``matrix`` has target.dim rows and domain.dim columns; column j holds
    the target coordinates of the image of the j-th canonical basis
    vector of the domain.
    """

    domain: Subspace
    target: Subspace
    matrix: Rows

    def __post_init__(self) -> None:
        if len(self.matrix) != self.target.dim:
            raise ValueError("matrix row count != target dimension")
        if any(len(r) != self.domain.dim for r in self.matrix):
            raise ValueError("matrix column count != domain dimension")

    def apply(self, v: Vec) -> Vec:
        c = self.domain.coords(v)
        if c is None:
            raise ValueError("vector outside map domain")
        p = self.domain.p
        out = (0,) * self.domain.n
        for r, row in enumerate(self.matrix):
            coeff = sum(row[j] * c[j] for j in range(len(c))) % p
            if coeff:
                out = vec_add(out, vec_scale(coeff, self.target.basis[r], p), p)
        return out


def zero_map(domain: Subspace, target: Subspace) -> LinearMap:
    _check_compatible(domain, target)
    return LinearMap(domain, target, tuple((0,) * domain.dim for _ in range(target.dim)))


def enumerate_maps(domain: Subspace, target: Subspace) -> Iterator[LinearMap]:
    """All p^(dim target * dim domain) linear maps, in lexicographic matrix order."""
    _check_compatible(domain, target)
    p = domain.p
    rows, cols = target.dim, domain.dim
    for entries in itertools.product(range(p), repeat=rows * cols):
        matrix = tuple(entries[r * cols : (r + 1) * cols] for r in range(rows))
        yield LinearMap(domain, target, matrix)


def linear_map_from_pairs(
    domain: Subspace, target: Subspace, pairs: Sequence[tuple[Vec, Vec]]
) -> LinearMap:
    """Build the map sending x to y for each (x, y) pair.

    The x's must span the domain and the assignment must be linear and
    land in the target; otherwise ValueError.
    """
    _check_compatible(domain, target)
    p = domain.p
    xs = tuple(x for x, _ in pairs)
    cols: list[Vec] = []
    for b in domain.basis:
        c = solve_coords(xs, b, p)
        if c is None:
            raise ValueError("pair inputs do not span the domain")
        y = (0,) * domain.n
        for coeff, (_, yi) in zip(c, pairs):
            if coeff:
                y = vec_add(y, vec_scale(coeff, yi, p), p)
        tc = target.coords(y)
        if tc is None:
            raise ValueError("image vector outside the target")
        cols.append(tc)
    matrix = tuple(tuple(cols[j][r] for j in range(domain.dim)) for r in range(target.dim))
    m = LinearMap(domain, target, matrix)
    for x, y in pairs:  # reject non-linear assignments
        if m.apply(x) != tuple(yi % p for yi in y):
            raise ValueError("assignment is not linear on the given pairs")
    return m


def graph(a: LinearMap) -> Subspace:
    """The graph {v + A v : v in domain} as a canonical subspace.

    Requires domain ∩ target = 0 so that dim graph = dim domain.
    """
    if intersect(a.domain, a.target).dim:
        raise ValueError("graph requires domain ∩ target = 0")
    p = a.domain.p
    rows = [vec_add(b, a.apply(b), p) for b in a.domain.basis]
    g = span(rows, a.domain.n, p)
    assert g.dim == a.domain.dim
    return g


@lru_cache(maxsize=None)
def gaussian_binomial(m: int, j: int, p: int) -> int:
    """Number of j-dimensional subspaces of GF(p)^m."""
    if j < 0 or j > m:
        return 0
    num = den = 1
    for i in range(j):
        num *= p ** (m - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def _subspaces_tuple(v: Subspace, j: int) -> tuple[Subspace, ...]:
    m = v.dim
    if j < 0 or j > m:
        return ()
    if j == 0:
        return (zero_subspace(v.n, v.p),)
    p = v.p
    out = []
    for piv in itertools.combinations(range(m), j):
        pivset = set(piv)
        free = [(r, c) for r in range(j) for c in range(m) if c > piv[r] and c not in pivset]
        for vals in itertools.product(range(p), repeat=len(free)):
            coord = [[0] * m for _ in range(j)]
            for r in range(j):
                coord[r][piv[r]] = 1
            for (r, c), val in zip(free, vals):
                coord[r][c] = val
            rows = []
            for r in range(j):
                w = (0,) * v.n
                for c in range(m):
                    if coord[r][c]:
                        w = vec_add(w, vec_scale(coord[r][c], v.basis[c], p), p)
                rows.append(w)
            out.append(span(rows, v.n, p))
    out.sort()
    return tuple(out)


def enumerate_subspaces(v: Subspace, j: int) -> Iterator[Subspace]:
    """Yield each j-dimensional subspace of v exactly once.

    The order is lexicographic on canonical basis matrices; the count is
    the Gaussian binomial [dim v choose j]_p.
    """
    yield from _subspaces_tuple(v, j)


@lru_cache(maxsize=None)
def _between_tuple(lower: Subspace, upper: Subspace, dim: int) -> tuple[Subspace, ...]:
    if dim < lower.dim or dim > upper.dim or not contains(upper, lower):
        return ()
    comp = canonical_complement(lower, upper)
    out = [subspace_sum(lower, q) for q in _subspaces_tuple(comp, dim - lower.dim)]
    out.sort()
    return tuple(out)


def enumerate_between(lower: Subspace, upper: Subspace, dim: int) -> Iterator[Subspace]:
    """Yield each subspace S with lower ⊆ S ⊆ upper and dim S = dim.

    Empty when lower is not contained in upper or the dimension is
    infeasible.  Count: [dim upper - dim lower choose dim - dim lower]_p.
    """
    yield from _between_tuple(lower, upper, dim)
