"""Clique-complex filtrations and Vietoris-Rips realization of filtered graphs.

A filtered graph is embedded as unit vectors whose Gram matrix is the
identity plus one tiny off-diagonal entry per edge, chosen so that
distance thresholds between consecutive gap values recover exactly the
edges present at each filtration stage.  The off-diagonal schedule halves
per stage, so the construction is carried out in adaptive-precision
arithmetic: with m stages the working precision is m + 64 bits, keeping
every threshold decision far from roundoff.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp

from .complexes import FilteredComplex, Simplex
from .f2 import boundary_matrix
from .reduction import diagram, extract_pairs, reduce_twist


class RealizationError(Exception):
    pass


class EmbeddingError(RealizationError):
    """Factorization failure: the Gram matrix was not positive definite."""


class DeltaUnderflowError(RealizationError):
    """Too many filtration stages for a safely separated threshold schedule."""

    def __init__(self, m: int, limit: int):
        super().__init__(f"refusing realization with m={m} stages "
                         f"(limit {limit}): gap schedule underflows")
        self.m = m
        self.limit = limit


# Stage-count cap: beyond this the adaptive precision itself becomes
# impractical and the run is refused rather than degraded.
MAX_STAGES = 4096


@dataclass
class FilteredGraph:
    vertices: list[int]
    edges: dict[tuple[int, int], int]   # (u, v) with u < v -> appearance level
    num_levels: int = 0                 # m; 0 means "use max appearing level"

    def __post_init__(self):
        for (u, v), lv in self.edges.items():
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge {(u, v)} not in sorted order")
            if lv < 1:
                raise ValueError(f"edge {(u, v)} has non-positive level {lv}")
        max_level = max(self.edges.values(), default=0)
        if self.num_levels == 0:
            self.num_levels = max_level
        elif self.num_levels < max_level:
            raise ValueError(f"num_levels {self.num_levels} below max "
                             f"appearing level {max_level}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edges_at(self, t: int) -> set[tuple[int, int]]:
        return {e for e, lv in self.edges.items() if lv <= t}


def one_skeleton(complex: FilteredComplex) -> FilteredGraph:
    """Vertices and leveled edges of a filtered complex."""
    vertices = []
    edges = {}
    for s, lv in complex:
        if s.dimension == 0:
            vertices.append(s.vertices[0])
        elif s.dimension == 1:
            edges[s.vertices] = lv
    return FilteredGraph(sorted(vertices), edges)


def compress_levels(graph: FilteredGraph) -> tuple[FilteredGraph, list[int]]:
    """Renumber edge levels to consecutive 1..m preserving order.

    Returns the compressed graph and the map from compressed stage t
    (1-based) back to the original level.
    """
    distinct = sorted(set(graph.edges.values()))
    renumber = {lv: t for t, lv in enumerate(distinct, start=1)}
    edges = {e: renumber[lv] for e, lv in graph.edges.items()}
    return FilteredGraph(list(graph.vertices), edges), distinct


def relabel_vertices(graph: FilteredGraph) -> FilteredGraph:
    """Rename vertices to 1..n in sorted-id order."""
    names = {v: i for i, v in enumerate(sorted(graph.vertices), start=1)}
    edges = {tuple(sorted((names[u], names[v]))): lv
             for (u, v), lv in graph.edges.items()}
    return FilteredGraph(list(range(1, graph.n + 1)), edges)


def clique_complex(graph: FilteredGraph, dim_cap: int = 2) -> FilteredComplex:
    """Filtered clique complex of a filtered graph, up to dimension dim_cap.

    All vertices enter at level 1; each triangle enters at the maximum of
    its edge levels.  Ties are broken by dimension, then lexicographically.
    """
    if dim_cap not in (1, 2):
        raise ValueError(f"dim_cap must be 1 or 2, got {dim_cap}")
    entries: list[tuple[int, int, tuple[int, ...]]] = []
    for v in graph.vertices:
        entries.append((1, 0, (v,)))
    for (u, v), lv in graph.edges.items():
        entries.append((lv, 1, (u, v)))
    if dim_cap >= 2:
        adj: dict[int, set[int]] = {v: set() for v in graph.vertices}
        for (u, v) in graph.edges:
            adj[u].add(v)
            adj[v].add(u)
        for (u, v), lv in graph.edges.items():
            for w in adj[u] & adj[v]:
                if w > v:
                    tlv = max(lv, graph.edges[(u, w)], graph.edges[(v, w)])
                    entries.append((tlv, 2, (u, v, w)))
    entries.sort()
    simplices = [Simplex(verts) for _, _, verts in entries]
    levels = [lv for lv, _, _ in entries]
    return FilteredComplex(simplices, levels)


@dataclass
class FlagReport:
    ok: bool
    counterexample: str | None = None


def flag_check(complex: FilteredComplex) -> FlagReport:
    """Is every level of the complex the clique complex of its 1-skeleton?

    Fails when a 3-clique completes before (or without) its triangle.
    Simplices above dimension 2 are out of scope and ignored.
    """
    edge_level: dict[tuple[int, int], int] = {}
    triangle_level: dict[tuple[int, int, int], int] = {}
    adj: dict[int, set[int]] = {}
    for s, lv in complex:
        if s.dimension == 1:
            u, v = s.vertices
            edge_level[s.vertices] = lv
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        elif s.dimension == 2:
            triangle_level[s.vertices] = lv
    for (u, v), lv in edge_level.items():
        for w in adj.get(u, set()) & adj.get(v, set()):
            if w <= v:
                continue
            formed = max(lv, edge_level[(u, w)], edge_level[(v, w)])
            tlv = triangle_level.get((u, v, w))
            if tlv is None:
                return FlagReport(False,
                                  f"3-clique {(u, v, w)} completes at level "
                                  f"{formed} but has no triangle")
            if tlv != formed:
                return FlagReport(False,
                                  f"triangle {(u, v, w)} at level {tlv} but its "
                                  f"edges complete at level {formed}")
    return FlagReport(True)


# ---------------------------------------------------------------------------
# Gram matrix, embedding, thresholds


def _precision_for(m: int) -> int:
    return max(96, m + 64)


def _mp_deltas(n: int, m: int) -> list:
    eps = mp.one / (n - 1)
    return [eps / mp.mpf(2) ** t for t in range(1, m + 1)]


def gram_matrix(graph: FilteredGraph) -> tuple[np.ndarray, list[float]]:
    """Unit-diagonal Gram matrix with one halving off-diagonal per edge.

    Off-diagonal absolute row sums are at most 1/2, so the matrix is
    positive definite with eigenvalues in [1/2, 3/2].
    """
    n = graph.n
    if n < 2:
        raise ValueError("graph must have at least 2 vertices")
    m = graph.num_levels
    if m > MAX_STAGES:
        raise DeltaUnderflowError(m, MAX_STAGES)
    with mp.workprec(_precision_for(m)):
        deltas = _mp_deltas(n, m)
        order = {v: i for i, v in enumerate(sorted(graph.vertices))}
        K = np.eye(n)
        for (u, v), lv in graph.edges.items():
            K[order[u], order[v]] = K[order[v], order[u]] = float(deltas[lv - 1])
        return K, [float(d) for d in deltas]


def _cholesky(K, n: int):
    """Dense lower-triangular factorization, generic over mp floats."""
    L = [[mp.mpf(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            s = mp.mpf(K[i][j]) - mp.fsum(L[i][k] * L[j][k] for k in range(j))
            if i == j:
                if s <= 0:
                    raise EmbeddingError(
                        f"matrix not positive definite at pivot {i + 1}")
                L[i][i] = mp.sqrt(s)
            else:
                L[i][j] = s / L[j][j]
    return L


def embed(K, precision_bits: int | None = None) -> np.ndarray:
    """Points (one per row, dimension n) whose Gram matrix is K."""
    K = np.asarray(K, dtype=float)
    n = K.shape[0]
    with mp.workprec(precision_bits or 96):
        L = _cholesky(K.tolist(), n)
        return np.array([[float(x) for x in row] for row in L])


def thresholds(deltas: list[float]) -> list[float]:
    """Midpoint radii between consecutive gap values d_t = sqrt(2 - 2 delta_t)."""
    ds, rs = _mp_thresholds([mp.mpf(d) for d in deltas])
    return [float(r) for r in rs]


def _mp_thresholds(deltas):
    for a, b in zip(deltas, deltas[1:]):
        if a <= b:
            raise ValueError("deltas must be strictly decreasing")
    if deltas and deltas[-1] <= 0:
        raise ValueError("deltas must be positive")
    full = list(deltas) + [mp.mpf(0)]
    ds = [mp.sqrt(2 - 2 * d) for d in full]
    # Guard: gaps must stay well above the working-precision resolution.
    floor = mp.mpf(2) ** (-(mp.prec - 40))
    for a, b in zip(ds, ds[1:]):
        if b - a <= floor:
            raise DeltaUnderflowError(len(deltas), MAX_STAGES)
    radii = [(ds[t] + ds[t + 1]) / 2 for t in range(len(deltas))]
    return ds, radii


def _edge_levels_from_points(points, radii_sq) -> dict[tuple[int, int], int]:
    """First stage at which each pair comes within reach; squared compare."""
    n = len(points)
    levels = {}
    for i in range(n):
        for j in range(i + 1, n):
            d2 = mp.fsum((points[i][k] - points[j][k]) ** 2
                         for k in range(len(points[i])))
            for t, r2 in enumerate(radii_sq, start=1):
                if d2 <= r2:
                    levels[(i + 1, j + 1)] = t
                    break
    return levels


def vietoris_rips(points, radii, dim_cap: int = 2) -> FilteredComplex:
    """Vietoris-Rips filtration over an increasing radius schedule.

    Vertices are numbered 1..n in point order; an edge enters at the first
    radius reaching it, a triangle at the max of its edge levels.
    """
    if any(a >= b for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    pts = [[mp.mpf(x) for x in p] for p in points]
    radii_sq = [mp.mpf(r) ** 2 for r in radii]
    edges = _edge_levels_from_points(pts, radii_sq)
    graph = FilteredGraph(list(range(1, len(pts) + 1)), edges,
                          num_levels=max([len(radii)] + list(edges.values())))
    return clique_complex(graph, dim_cap)


# ---------------------------------------------------------------------------
# Full realization pipeline


@dataclass
class PointCloudRealization:
    points: list[list[float]]
    radii: list[float]
    gram: np.ndarray
    deltas: list[float]
    level_map: list[int]            # stage t (1-based) -> original level
    precision_bits: int
    _mp_points: list = field(default_factory=list, repr=False)
    _mp_radii: list = field(default_factory=list, repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.radii)


def realize(graph: FilteredGraph) -> PointCloudRealization:
    """Embed a filtered graph as a point cloud with threshold radii."""
    n = graph.n
    if n < 2:
        raise ValueError("graph must have at least 2 vertices")
    compressed, level_map = compress_levels(graph)
    compressed = relabel_vertices(compressed)
    m = compressed.num_levels
    if m > MAX_STAGES:
        raise DeltaUnderflowError(m, MAX_STAGES)
    prec = _precision_for(m)
    with mp.workprec(prec):
        deltas = _mp_deltas(n, m)
        K = [[mp.mpf(1) if i == j else mp.mpf(0) for j in range(n)]
             for i in range(n)]
        for (u, v), lv in compressed.edges.items():
            K[u - 1][v - 1] = K[v - 1][u - 1] = deltas[lv - 1]
        L = _cholesky(K, n)
        _, radii = _mp_thresholds(deltas)
        gram = np.array([[float(x) for x in row] for row in K])
        return PointCloudRealization(
            points=[[float(x) for x in row] for row in L],
            radii=[float(r) for r in radii],
            gram=gram,
            deltas=[float(d) for d in deltas],
            level_map=level_map,
            precision_bits=prec,
            _mp_points=L,
            _mp_radii=radii,
        )


@dataclass
class RealizationReport:
    n: int
    m: int
    edge_mismatches: list[str] = field(default_factory=list)
    diagram_mismatch: str | None = None

    @property
    def ok(self) -> bool:
        return not self.edge_mismatches and self.diagram_mismatch is None


def verify_realization(graph: FilteredGraph) -> RealizationReport:
    """Round-trip check: embed, re-threshold, and compare with the cliques.

    Per stage t, the distance-threshold edge set must equal the graph's
    edges with level <= t; the degree-1 persistence diagrams of the
    Vietoris-Rips filtration and the clique-complex filtration must agree
    as multisets.  The degree-0 diagram is excluded because a point cloud
    cannot delay vertex appearance.
    """
    compressed, _ = compress_levels(graph)
    compressed = relabel_vertices(compressed)
    realization = realize(graph)
    report = RealizationReport(n=realization.n, m=realization.m)
    with mp.workprec(realization.precision_bits):
        radii_sq = [r ** 2 for r in realization._mp_radii]
        vr_edges = _edge_levels_from_points(realization._mp_points, radii_sq)
        for t in range(1, realization.m + 1):
            expected = compressed.edges_at(t)
            got = {e for e, lv in vr_edges.items() if lv <= t}
            for e in sorted(expected - got):
                report.edge_mismatches.append(
                    f"stage {t}: edge {e} in clique filtration but not in VR")
            for e in sorted(got - expected):
                report.edge_mismatches.append(
                    f"stage {t}: edge {e} in VR but not in clique filtration")
        vr_graph = FilteredGraph(list(range(1, realization.n + 1)), vr_edges,
                                 num_levels=realization.m)
    h1_clique = _h1_multiset(clique_complex(compressed))
    h1_vr = _h1_multiset(clique_complex(vr_graph))
    if h1_clique != h1_vr:
        report.diagram_mismatch = (f"H1 diagrams differ: clique {h1_clique} "
                                   f"vs VR {h1_vr}")
    return report


def _h1_multiset(complex: FilteredComplex) -> list[tuple[int, float]]:
    result = reduce_twist(boundary_matrix(complex))
    pairs = extract_pairs(result, complex)
    return diagram(pairs, dimension_filter=1).in_dimension(1)
