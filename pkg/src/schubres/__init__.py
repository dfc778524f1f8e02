"""Exact verification of Schubert-variety resolutions over prime fields.

The package implements, entirely in exact GF(p) arithmetic:

* canonical subspace arithmetic (`exactlin`),
* permutation combinatorics around rank matrices and bubblesort reduced
  words (`permcomb`, `building`),
* bioriented flag grids resolving Schubert varieties of the complete
  flag manifold, and their identification with bubblesort Bott-Samelson
  towers (`biflag`, `bottsamelson`),
* graph-sum parametrizations of Grassmannian Schubert cells
  (`grassfib`),
* relaxed-incidence chain varieties with their grid resolutions
  (`wflag`) and the embedded resolution of a Grassmannian Schubert
  variety built from them (`embres`).

Every geometric statement is checked set-theoretically on GF(p) points
by exhaustive, budget-guarded enumeration; results are collected into
JSON-serializable reports (`report`, `cli`).
"""

__version__ = "0.1.0"
