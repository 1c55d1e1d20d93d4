import math
import random

import numpy as np
import pytest

from stripph.complexes import FilteredComplex, Simplex
from stripph.generators import modified_strip, strip
from stripph.realization import (MAX_STAGES, DeltaUnderflowError,
                                 EmbeddingError, FilteredGraph,
                                 clique_complex, compress_levels, embed,
                                 flag_check, gram_matrix, one_skeleton,
                                 realize, relabel_vertices, thresholds,
                                 verify_realization, vietoris_rips)


def random_filtered_graph(rng: random.Random, max_vertices: int = 8,
                          max_levels: int = 4) -> FilteredGraph:
    n = rng.randint(2, max_vertices)
    m = rng.randint(1, max_levels)
    vertices = list(range(1, n + 1))
    edges = {}
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < 0.5:
                edges[(u, v)] = rng.randint(1, m)
    if not edges:
        edges[(1, 2)] = 1
    return FilteredGraph(vertices, edges, num_levels=m)


class TestFilteredGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            FilteredGraph([1], {(1, 1): 1})

    def test_rejects_unsorted_edge(self):
        with pytest.raises(ValueError, match="sorted order"):
            FilteredGraph([1, 2], {(2, 1): 1})

    def test_rejects_nonpositive_level(self):
        with pytest.raises(ValueError, match="non-positive"):
            FilteredGraph([1, 2], {(1, 2): 0})

    def test_num_levels_defaults_to_max(self):
        g = FilteredGraph([1, 2, 3], {(1, 2): 1, (2, 3): 4})
        assert g.num_levels == 4

    def test_num_levels_must_cover_edges(self):
        with pytest.raises(ValueError, match="below max"):
            FilteredGraph([1, 2], {(1, 2): 3}, num_levels=2)

    def test_edges_at(self):
        g = FilteredGraph([1, 2, 3], {(1, 2): 1, (1, 3): 2, (2, 3): 3})
        assert g.edges_at(2) == {(1, 2), (1, 3)}


class TestOneSkeleton:
    def test_strip_two(self):
        g = one_skeleton(strip(2))
        assert g.n == 6
        assert len(g.edges) == 9
        assert g.edges[(3, 5)] == strip(2).levels[
            strip(2).index_of(Simplex((3, 5))) - 1]

    def test_modified_strip(self):
        for n in (1, 3):
            g = one_skeleton(modified_strip(n))
            assert g.n == 4 * n + 2
            assert len(g.edges) == 8 * n + 1


class TestCompressAndRelabel:
    def test_compress(self):
        g = FilteredGraph([1, 2, 3], {(1, 2): 3, (1, 3): 7, (2, 3): 7})
        compressed, level_map = compress_levels(g)
        assert compressed.edges == {(1, 2): 1, (1, 3): 2, (2, 3): 2}
        assert level_map == [3, 7]

    def test_relabel(self):
        g = FilteredGraph([10, 20, 5], {(5, 20): 1, (10, 20): 2})
        r = relabel_vertices(g)
        assert r.vertices == [1, 2, 3]
        assert r.edges == {(1, 3): 1, (2, 3): 2}


class TestCliqueComplex:
    def test_single_triangle(self):
        g = FilteredGraph([1, 2, 3], {(1, 2): 1, (1, 3): 1, (2, 3): 1})
        c = clique_complex(g)
        assert c.simplices[-1] == Simplex((1, 2, 3))
        assert c.levels == [1] * 7

    def test_triangle_enters_at_last_edge(self):
        g = FilteredGraph([1, 2, 3], {(1, 2): 1, (1, 3): 2, (2, 3): 5})
        c = clique_complex(g)
        assert c.levels[c.index_of(Simplex((1, 2, 3))) - 1] == 5

    def test_path_has_no_triangles(self):
        g = FilteredGraph([1, 2, 3], {(1, 2): 1, (2, 3): 1})
        assert clique_complex(g).dimension == 1

    def test_dim_cap_one(self):
        g = FilteredGraph([1, 2, 3], {(1, 2): 1, (1, 3): 1, (2, 3): 1})
        assert clique_complex(g, dim_cap=1).dimension == 1
        with pytest.raises(ValueError, match="dim_cap"):
            clique_complex(g, dim_cap=3)

    def test_is_always_a_valid_flag_filtration(self):
        rng = random.Random(43)
        for _ in range(25):
            g = random_filtered_graph(rng)
            c = clique_complex(g)
            from stripph.complexes import validate
            assert validate(c).ok
            assert flag_check(c).ok

    def test_reconstructs_modified_strip_triangles(self):
        c = modified_strip(2)
        rebuilt = clique_complex(one_skeleton(c))
        by_dim = rebuilt.count_by_dimension()
        assert by_dim == c.count_by_dimension()
        triangles = {s.vertices for s in rebuilt.simplices if s.dimension == 2}
        assert triangles == {s.vertices for s in c.simplices
                             if s.dimension == 2}


class TestFlagCheck:
    def test_families(self):
        for n in (1, 2, 10, 20):
            assert flag_check(modified_strip(n)).ok
            report = flag_check(strip(n))
            assert not report.ok
            assert report.counterexample

    def test_missing_triangle(self):
        c = FilteredComplex(
            [Simplex((1,)), Simplex((2,)), Simplex((3,)),
             Simplex((1, 2)), Simplex((1, 3)), Simplex((2, 3))], [1] * 6)
        report = flag_check(c)
        assert not report.ok
        assert "no triangle" in report.counterexample

    def test_late_triangle(self, triangle_complex):
        report = flag_check(triangle_complex)
        assert not report.ok
        assert "edges complete at level 6" in report.counterexample

    def test_edgeless_ok(self):
        c = FilteredComplex([Simplex((1,)), Simplex((2,))], [1, 1])
        assert flag_check(c).ok


class TestGramMatrix:
    def test_single_edge(self):
        K, deltas = gram_matrix(FilteredGraph([1, 2], {(1, 2): 1}))
        assert np.allclose(K, [[1, 0.5], [0.5, 1]])
        assert deltas == [0.5]

    def test_gershgorin_row_sums(self):
        for n in (2, 4, 8):
            g = one_skeleton(modified_strip(n))
            K, _ = gram_matrix(g)
            off = np.abs(K - np.eye(len(K))).sum(axis=1)
            assert np.all(off <= 0.5 + 1e-12)

    def test_positive_definite(self):
        g = one_skeleton(modified_strip(2))
        K, _ = gram_matrix(g)
        assert np.linalg.eigvalsh(K).min() > 0.49

    def test_requires_two_vertices(self):
        with pytest.raises(ValueError, match="at least 2"):
            gram_matrix(FilteredGraph([1], {}))

    def test_halving_schedule(self):
        g = FilteredGraph([1, 2, 3], {(1, 2): 1, (1, 3): 2, (2, 3): 3})
        _, deltas = gram_matrix(g)
        assert deltas == [0.25, 0.125, 0.0625]


class TestEmbed:
    def test_identity_gives_orthonormal_points(self):
        P = embed(np.eye(3))
        assert np.allclose(P @ P.T, np.eye(3))

    def test_two_points_at_unit_distance(self):
        P = embed(np.array([[1, 0.5], [0.5, 1]]))
        assert math.isclose(np.linalg.norm(P[0] - P[1]), 1.0, rel_tol=1e-12)

    def test_gram_recovery(self):
        g = one_skeleton(modified_strip(2))
        K, _ = gram_matrix(g)
        P = embed(K)
        assert np.allclose(P @ P.T, K, atol=1e-12)

    def test_rejects_indefinite(self):
        with pytest.raises(EmbeddingError, match="not positive definite"):
            embed(np.array([[1.0, 2.0], [2.0, 1.0]]))


class TestThresholds:
    def test_single_stage(self):
        rs = thresholds([0.5])
        assert math.isclose(rs[0], (1 + math.sqrt(2)) / 2, rel_tol=1e-15)

    def test_strictly_increasing_and_below_diameter(self):
        deltas = [0.5 / 2 ** t for t in range(6)]
        rs = thresholds(deltas)
        assert all(a < b for a, b in zip(rs, rs[1:]))
        assert rs[-1] < math.sqrt(2)
        assert rs[0] > math.sqrt(2 - 2 * deltas[0])

    def test_rejects_non_decreasing(self):
        with pytest.raises(ValueError, match="strictly decreasing"):
            thresholds([0.25, 0.25])
        with pytest.raises(ValueError, match="positive"):
            thresholds([0.5, 0.0])


class TestVietorisRips:
    def test_equilateral_triangle(self):
        pts = [[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]]
        c = vietoris_rips(pts, [0.5, 1.5])
        assert c.count_by_dimension() == {0: 3, 1: 3, 2: 1}
        assert c.levels[c.index_of(Simplex((1, 2, 3))) - 1] == 2

    def test_distant_points_never_connect(self):
        c = vietoris_rips([[0, 0], [10, 0]], [0.5, 1.0])
        assert c.count_by_dimension() == {0: 2}

    def test_rejects_unordered_radii(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            vietoris_rips([[0], [1]], [1.0, 0.5])


class TestRealize:
    def test_shape_and_units(self):
        r = realize(one_skeleton(modified_strip(1)))
        assert r.n == 6
        # Nine edges with nine distinct appearance levels.
        assert r.m == 9
        P = np.array(r.points)
        assert np.allclose(np.linalg.norm(P, axis=1), 1.0, atol=1e-10)

    def test_level_map_round_trips(self):
        g = one_skeleton(modified_strip(2))
        r = realize(g)
        assert r.level_map == sorted(set(g.edges.values()))

    def test_distances_match_gram(self):
        g = one_skeleton(modified_strip(2))
        r = realize(g)
        P = np.array(r.points)
        D2 = ((P[:, None, :] - P[None, :, :]) ** 2).sum(axis=2)
        assert np.allclose(D2, 2 - 2 * r.gram, atol=1e-9)

    def test_refuses_too_many_stages(self):
        g = FilteredGraph([1, 2], {(1, 2): 1}, num_levels=MAX_STAGES + 1)
        with pytest.raises(DeltaUnderflowError, match="underflows"):
            gram_matrix(g)
        # realize compresses levels first, so only the distinct appearing
        # levels count toward the cap; a sparse schedule is fine.
        assert realize(FilteredGraph([1, 2], {(1, 2): 7})).m == 1


class TestVerifyRealization:
    def test_families_round_trip(self):
        for n in (1, 2, 4):
            report = verify_realization(one_skeleton(modified_strip(n)))
            assert report.ok, (report.edge_mismatches,
                               report.diagram_mismatch)

    def test_complete_graph(self):
        g = FilteredGraph([1, 2, 3, 4],
                          {e: 1 for e in [(1, 2), (1, 3), (1, 4),
                                          (2, 3), (2, 4), (3, 4)]})
        assert verify_realization(g).ok

    def test_random_graphs_round_trip(self):
        rng = random.Random(47)
        for _ in range(15):
            g = random_filtered_graph(rng)
            report = verify_realization(g)
            assert report.ok, (g.edges, report.edge_mismatches,
                               report.diagram_mismatch)

    def test_strip_skeleton_also_realizes(self):
        # The 1-skeleton is always realizable; only the clique complexes of
        # the stages are compared, so the non-flag family still round-trips
        # at the graph level.
        assert verify_realization(one_skeleton(strip(2))).ok
