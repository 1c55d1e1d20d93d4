"""The three boundary-matrix reduction algorithms and persistence extraction.

All three variants (standard, twist, look-ahead) operate on a private copy
of the matrix, share the same addition-cost model, and produce identical
pivot pairings.  Twist clears discovered pivot rows at zero cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .complexes import FilteredComplex
from .f2 import (AdditionCounter, BoundaryMatrix, SparseColumn, add_into,
                 boundary_submatrix, low, rank_f2)

ALGORITHMS = ("standard", "twist", "lookahead")


@dataclass
class ReductionResult:
    reduced: BoundaryMatrix
    pivots: dict[int, int]          # row index i -> column j with low(R_j) = i
    counter: AdditionCounter
    algorithm: str
    cleared: list[int] = field(default_factory=list)
    # (source column, target column, cost) per recorded addition.
    trace: list[tuple[int, int, int]] | None = None


def _result(matrix: BoundaryMatrix, columns: list[SparseColumn],
            pivots: dict[int, int], counter, algorithm, cleared, trace):
    reduced = BoundaryMatrix(columns, list(matrix.row_labels),
                             list(matrix.col_labels),
                             col_dims=matrix.col_dims, full=matrix.full,
                             row_names=matrix.row_names,
                             col_names=matrix.col_names)
    return ReductionResult(reduced, pivots, counter, algorithm,
                           cleared=cleared, trace=trace)


def reduce_standard(matrix: BoundaryMatrix,
                    record_trace: bool = False) -> ReductionResult:
    """Algorithm: left-to-right column reduction until all lows are distinct."""
    columns = matrix.copy_columns()
    dims = matrix.col_dims
    counter = AdditionCounter()
    trace: list[tuple[int, int, int]] | None = [] if record_trace else None
    pivots: dict[int, int] = {}
    for j in range(1, len(columns) + 1):
        col = columns[j - 1]
        while col:
            i = pivots.get(low(col))
            if i is None:
                break
            cost = len(columns[i - 1]) + len(col)
            col = add_into(columns[i - 1], col, counter,
                           dims[j - 1] if dims else None)
            if trace is not None:
                trace.append((i, j, cost))
        columns[j - 1] = col
        if col:
            pivots[low(col)] = j
    return _result(matrix, columns, pivots, counter, "standard", [], trace)


def reduce_twist(matrix: BoundaryMatrix,
                 record_trace: bool = False) -> ReductionResult:
    """Clearing variant: dimensions from the top down, pivot rows zeroed free.

    Within each dimension columns are processed in ascending index order;
    a settled pivot (i, j) clears column i without any addition cost.
    """
    dims = matrix.col_dims
    if dims is None:
        raise ValueError("twist requires per-column dimension information")
    columns = matrix.copy_columns()
    counter = AdditionCounter()
    trace: list[tuple[int, int, int]] | None = [] if record_trace else None
    pivots: dict[int, int] = {}
    cleared: list[int] = []
    maxdim = max(dims, default=0)
    for delta in range(maxdim, 0, -1):
        for j in range(1, len(columns) + 1):
            if dims[j - 1] != delta:
                continue
            col = columns[j - 1]
            while col:
                i = pivots.get(low(col))
                if i is None:
                    break
                cost = len(columns[i - 1]) + len(col)
                col = add_into(columns[i - 1], col, counter, delta)
                if trace is not None:
                    trace.append((i, j, cost))
            columns[j - 1] = col
            if col:
                i = low(col)
                pivots[i] = j
                if matrix.full and columns[i - 1]:
                    columns[i - 1] = []
                    cleared.append(i)
    return _result(matrix, columns, pivots, counter, "twist", cleared, trace)


def reduce_lookahead(matrix: BoundaryMatrix,
                     record_trace: bool = False) -> ReductionResult:
    """Eager variant: a settled pivot row is eliminated from all later columns.

    When column j settles with low i, every later column with a 1 in row i
    receives an addition of column j immediately; by the time a column is
    reached its low is fresh, so no while-loop is needed.
    """
    import bisect

    columns = matrix.copy_columns()
    dims = matrix.col_dims
    counter = AdditionCounter()
    trace: list[tuple[int, int, int]] | None = [] if record_trace else None
    pivots: dict[int, int] = {}
    n = len(columns)
    for j in range(1, n + 1):
        col = columns[j - 1]
        i = low(col)
        if i == 0:
            continue
        pivots[i] = j
        for jp in range(j + 1, n + 1):
            other = columns[jp - 1]
            k = bisect.bisect_left(other, i)
            if k < len(other) and other[k] == i:
                cost = len(col) + len(other)
                columns[jp - 1] = add_into(col, other, counter,
                                           dims[jp - 1] if dims else None)
                if trace is not None:
                    trace.append((j, jp, cost))
    return _result(matrix, columns, pivots, counter, "lookahead", [], trace)


def reduce(matrix: BoundaryMatrix, algorithm: str = "standard",
           record_trace: bool = False) -> ReductionResult:
    if algorithm == "standard":
        return reduce_standard(matrix, record_trace)
    if algorithm == "twist":
        return reduce_twist(matrix, record_trace)
    if algorithm == "lookahead":
        return reduce_lookahead(matrix, record_trace)
    raise ValueError(f"unknown algorithm {algorithm!r}; "
                     f"expected one of {ALGORITHMS}")


# ---------------------------------------------------------------------------
# Persistence pairs and diagrams


@dataclass(frozen=True)
class PersistencePair:
    birth_index: int
    death_index: int | None          # None encodes an infinite death
    birth_level: int
    death_level: float               # math.inf for infinite deaths
    dimension: int

    @property
    def finite(self) -> bool:
        return self.death_index is not None


def extract_pairs(result: ReductionResult,
                  complex: FilteredComplex) -> list[PersistencePair]:
    """Persistence pairs of a full-matrix reduction.

    Finite pair (i, j) for every nonzero reduced column j with low i;
    infinite pair (i, inf) for every zero column i whose row is not a
    pivot row.
    """
    if not result.reduced.full:
        raise ValueError("pairs require full matrix")
    pairs: list[PersistencePair] = []
    cleared = set(result.cleared)
    for i in range(1, len(complex) + 1):
        j = result.pivots.get(i)
        if j is not None:
            pairs.append(PersistencePair(
                i, j, complex.levels[i - 1], float(complex.levels[j - 1]),
                complex.simplices[i - 1].dimension))
        elif not result.reduced.columns[i - 1] or i in cleared:
            pairs.append(PersistencePair(
                i, None, complex.levels[i - 1], math.inf,
                complex.simplices[i - 1].dimension))
    return pairs


@dataclass
class PersistenceDiagram:
    # Per-dimension multisets of (birth_level, death_level), sorted.
    points: dict[int, list[tuple[int, float]]]

    def in_dimension(self, dim: int) -> list[tuple[int, float]]:
        return self.points.get(dim, [])

    def alive_at(self, dim: int, level: int) -> int:
        """Number of dimension-dim classes with birth <= level < death."""
        return sum(1 for b, d in self.points.get(dim, [])
                   if b <= level < d)


def diagram(pairs: list[PersistencePair],
            dimension_filter: int | None = None) -> PersistenceDiagram:
    """Diagram as per-dimension multisets; diagonal points are retained."""
    points: dict[int, list[tuple[int, float]]] = {}
    for p in pairs:
        if dimension_filter is not None and p.dimension != dimension_filter:
            continue
        points.setdefault(p.dimension, []).append((p.birth_level, p.death_level))
    for dim in points:
        points[dim].sort()
    return PersistenceDiagram(points)


def betti_oracle(complex: FilteredComplex, level: int) -> tuple[int, int]:
    """(b0, b1) of the level-restricted complex via Gaussian elimination.

    Independent of the reduction algorithms: b_p is computed from F2 ranks
    of the restricted boundary submatrices.
    """
    sub = complex.prefix_at_level(level)
    counts = sub.count_by_dimension()
    n0 = counts.get(0, 0)
    n1 = counts.get(1, 0)
    r1 = rank_f2(boundary_submatrix(sub, 1)) if n1 else 0
    r2 = rank_f2(boundary_submatrix(sub, 2)) if counts.get(2, 0) else 0
    return n0 - r1, n1 - r1 - r2
