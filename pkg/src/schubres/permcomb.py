"""Permutation combinatorics: rank matrices, bubblesort words, incidence data.

Permutations live in S_n with 1-based one-line notation w(1), ..., w(n).
The composition convention is fixed once: right multiplication by the
adjacent transposition s_i swaps positions i and i+1 of the one-line
word, and a reduced word is applied letter by letter, left to right,
starting from the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


@dataclass(frozen=True, order=True)
class Permutation:
    one_line: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.one_line)
        if sorted(self.one_line) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.one_line}")

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))


def all_permutations(n: int) -> Iterator[Permutation]:
    for one_line in itertools.permutations(range(1, n + 1)):
        yield Permutation(one_line)


def length(w: Permutation) -> int:
    """Number of inversions of w."""
    ol = w.one_line
    return sum(1 for i in range(w.n) for j in range(i + 1, w.n) if ol[i] > ol[j])


@lru_cache(maxsize=None)
def rank_matrix(w: Permutation) -> tuple[tuple[int, ...], ...]:
    """The (n+1) x (n+1) table d[p][q] = #{i <= p : w(i) <= q}, 0-row/col zero."""
    n = w.n
    d = [[0] * (n + 1) for _ in range(n + 1)]
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            d[p][q] = d[p - 1][q] + (1 if w(p) <= q else 0)
    return tuple(tuple(row) for row in d)


def jump_points(w: Permutation) -> tuple[int, ...]:
    """For each row p of the rank matrix, the unique column where the
    difference with row p-1 jumps from 0 to 1.  Always equals w(p)."""
    d = rank_matrix(w)
    out = []
    for p in range(1, w.n + 1):
        q = next(q for q in range(1, w.n + 1) if d[p][q] - d[p - 1][q] == 1)
        out.append(q)
    return tuple(out)


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Bruhat order via entrywise rank-matrix comparison: u <= w iff
    d^u(p,q) >= d^w(p,q) everywhere (the identity is the minimum)."""
    if u.n != w.n:
        raise ValueError("permutations of different sizes")
    du, dw = rank_matrix(u), rank_matrix(w)
    return all(
        du[p][q] >= dw[p][q] for p in range(1, u.n + 1) for q in range(1, u.n + 1)
    )


def apply_letter(one_line: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Right multiplication by s_i: swap positions i, i+1 (1-based)."""
    ol = list(one_line)
    ol[i - 1], ol[i] = ol[i], ol[i - 1]
    return tuple(ol)


def word_product(letters: tuple[int, ...], n: int) -> Permutation:
    """Apply the letters left to right to the identity."""
    ol = tuple(range(1, n + 1))
    for i in letters:
        ol = apply_letter(ol, i)
    return Permutation(ol)


@dataclass(frozen=True)
class ReducedWord:
    """A reduced word split into bubblesort blocks t_1, ..., t_{n-1}.

    Block t_s collects the letters that move the value w(n-s+1) into
    position n-s+1; the flattened letter sequence multiplies to w.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(itertools.chain.from_iterable(self.blocks))

    def __len__(self) -> int:
        return sum(len(b) for b in self.blocks)


def bubblesort_word(w: Permutation) -> ReducedWord:
    """The bubblesort reduced word of w.

    Values w(n), w(n-1), ... are bubbled into their final positions by
    right multiplications; the remaining values always stay in
    increasing order, so each block is a run s_a, s_{a+1}, ..., s_{m-1}.
    """
    n = w.n
    cur = list(range(1, n + 1))
    blocks = []
    for m in range(n, 1, -1):
        pos = cur.index(w(m)) + 1
        block = tuple(range(pos, m))
        for i in block:
            cur[i - 1], cur[i] = cur[i], cur[i - 1]
        blocks.append(block)
    assert tuple(cur) == w.one_line
    return ReducedWord(n, tuple(blocks))


def last_occurrence_indices(word: ReducedWord) -> tuple[int | None, ...]:
    """p(i) = 1-based index of the last occurrence of s_i in the word,
    or None when s_i never occurs (the fixed space F_i is used then)."""
    letters = word.letters
    out: list[int | None] = [None] * (word.n - 1)
    for j, d in enumerate(letters, start=1):
        out[d - 1] = j
    return tuple(out)


def cumulative_block_formula(w: Permutation) -> tuple[int, ...]:
    """The closed-form candidate for p(i): the total number of
    transpositions needed to move w(n), ..., w(i+1) into place, i.e. the
    letter count of blocks t_1..t_{n-i}.  Moving w(j) into position j
    costs one transposition per earlier value exceeding it.  Agrees with
    the last occurrence of s_i exactly when block t_{n-i} is nonempty."""
    n = w.n
    out = []
    for i in range(1, n):
        total = sum(
            sum(1 for k in range(1, j) if w(k) > w(j)) for j in range(i + 1, n + 1)
        )
        out.append(total)
    return tuple(out)


@dataclass(frozen=True)
class BSIncidence:
    """Per-letter incidence data for a Bott-Samelson tower.

    For letter j, ``left[j-1]`` / ``right[j-1]`` hold the greatest
    earlier index carrying the letter s_{d_j - 1} / s_{d_j + 1}; None
    means no such index, in which case the fixed spaces F_{d_j - 1} and
    F_{d_j + 1} bound the chosen subspace.
    """

    n: int
    letters: tuple[int, ...]
    left: tuple[int | None, ...]
    right: tuple[int | None, ...]


def bs_incidence(word: ReducedWord) -> BSIncidence:
    letters = word.letters
    left: list[int | None] = []
    right: list[int | None] = []
    for j, d in enumerate(letters, start=1):
        lj = next((i for i in range(j - 1, 0, -1) if letters[i - 1] == d - 1), None)
        rj = next((i for i in range(j - 1, 0, -1) if letters[i - 1] == d + 1), None)
        left.append(lj)
        right.append(rj)
    return BSIncidence(word.n, letters, tuple(left), tuple(right))


def bruhat_interval_oracle(w: Permutation) -> frozenset[Permutation]:
    """Subword oracle for the lower Bruhat interval: the set of products
    of all subwords of one fixed reduced word of w."""
    letters = bubblesort_word(w).letters
    out = set()
    for size in range(len(letters) + 1):
        for subset in itertools.combinations(letters, size):
            out.add(word_product(subset, w.n))
    return frozenset(out)
