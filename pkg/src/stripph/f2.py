"""Sparse F2 column arithmetic with exact field-addition accounting.

A column is a strictly increasing list of 1-based row indices carrying
entry 1; the empty list is the zero vector.  Adding column u into v costs
nnz(u) + nnz(v) field additions, with sizes taken before the addition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import FilteredComplex

SparseColumn = list[int]


@dataclass
class AdditionCounter:
    column_additions: int = 0
    field_additions: int = 0
    # Field additions attributed to the dimension of the target column,
    # when dimension information is available.
    by_dimension: dict[int, int] = field(default_factory=dict)

    def record(self, cost: int, dim: int | None = None) -> None:
        self.column_additions += 1
        self.field_additions += cost
        if dim is not None:
            self.by_dimension[dim] = self.by_dimension.get(dim, 0) + cost


def low(col: SparseColumn) -> int:
    """Largest row index with entry 1; 0 for the zero column."""
    return col[-1] if col else 0


def add_columns(u: SparseColumn, v: SparseColumn) -> SparseColumn:
    """Symmetric difference of sorted index lists (F2 addition)."""
    out: SparseColumn = []
    i = j = 0
    nu, nv = len(u), len(v)
    while i < nu and j < nv:
        a, b = u[i], v[j]
        if a < b:
            out.append(a)
            i += 1
        elif a > b:
            out.append(b)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(u[i:])
    out.extend(v[j:])
    return out


def add_into(u: SparseColumn, v: SparseColumn, counter: AdditionCounter,
             dim: int | None = None) -> SparseColumn:
    """Add u into v, recording one column addition of cost nnz(u)+nnz(v)."""
    counter.record(len(u) + len(v), dim)
    return add_columns(u, v)


@dataclass
class BoundaryMatrix:
    columns: list[SparseColumn]
    row_labels: list[int]   # simplex indices into the owning complex
    col_labels: list[int]
    col_dims: list[int] | None = None
    full: bool = False
    row_names: list[str] | None = None
    col_names: list[str] | None = None

    @property
    def n_rows(self) -> int:
        return len(self.row_labels)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def copy_columns(self) -> list[SparseColumn]:
        return [list(c) for c in self.columns]


def boundary_matrix(complex: FilteredComplex) -> BoundaryMatrix:
    """Full N x N strictly upper triangular boundary matrix."""
    n = len(complex)
    columns: list[SparseColumn] = []
    for s in complex.simplices:
        if s.dimension == 0:
            columns.append([])
        else:
            columns.append(sorted(complex.index_of(f) for f in s.facets()))
    labels = list(range(1, n + 1))
    return BoundaryMatrix(columns, labels, list(labels),
                          col_dims=complex.dims(), full=True,
                          row_names=list(complex.names) if complex.names else None,
                          col_names=list(complex.names) if complex.names else None)


def boundary_submatrix(complex: FilteredComplex, p: int) -> BoundaryMatrix:
    """Boundary matrix of the map from p-chains to (p-1)-chains.

    Rows are the (p-1)-simplices and columns the p-simplices, both in
    complex order; column entries are 1-based positions into the row list.
    """
    if p < 1 or p > max(complex.dimension, 1):
        raise ValueError(f"dimension {p} out of range for complex of "
                         f"dimension {complex.dimension}")
    rows = [i for i, s in enumerate(complex.simplices, start=1)
            if s.dimension == p - 1]
    cols = [j for j, s in enumerate(complex.simplices, start=1)
            if s.dimension == p]
    local = {idx: r for r, idx in enumerate(rows, start=1)}
    columns = []
    for j in cols:
        s = complex.simplices[j - 1]
        columns.append(sorted(local[complex.index_of(f)] for f in s.facets()))
    names = complex.names
    return BoundaryMatrix(
        columns, rows, cols, col_dims=[p] * len(cols), full=False,
        row_names=[names[i - 1] for i in rows] if names else None,
        col_names=[names[j - 1] for j in cols] if names else None)


def rank_f2(matrix: BoundaryMatrix) -> int:
    """Rank over F2 by Gaussian elimination on bitmask columns."""
    masks = []
    for col in matrix.columns:
        m = 0
        for r in col:
            m |= 1 << (r - 1)
        masks.append(m)
    rank = 0
    pivots: dict[int, int] = {}  # pivot bit length -> mask
    for m in masks:
        while m:
            h = m.bit_length()
            if h in pivots:
                m ^= pivots[h]
            else:
                pivots[h] = m
                rank += 1
                break
    return rank


def dump(matrix: BoundaryMatrix) -> str:
    """Dense 0/1 grid with row/column labels, for eyeball comparison."""
    row_tags = matrix.row_names or [str(i) for i in matrix.row_labels]
    col_tags = matrix.col_names or [str(j) for j in matrix.col_labels]
    width = max([len(t) for t in row_tags + col_tags] + [1])
    lines = [" " * (width + 1) + " ".join(t.rjust(width) for t in col_tags)]
    sets = [set(c) for c in matrix.columns]
    for r, tag in enumerate(row_tags, start=1):
        cells = ["1".rjust(width) if r in s else "0".rjust(width) for s in sets]
        lines.append(tag.rjust(width) + " " + " ".join(cells))
    return "\n".join(lines) + "\n"
