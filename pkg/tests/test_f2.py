import random

import pytest
from hypothesis import given, strategies as st

from stripph.complexes import FilteredComplex, Simplex
from stripph.f2 import (AdditionCounter, BoundaryMatrix, add_columns, add_into,
                        boundary_matrix, boundary_submatrix, dump, low,
                        rank_f2)
from stripph.generators import labels, strip

from conftest import random_filtered_complex

sorted_columns = st.lists(st.integers(min_value=1, max_value=30),
                          unique=True, max_size=12).map(sorted)


class TestLow:
    def test_zero_column(self):
        assert low([]) == 0

    def test_examples(self):
        assert low([1, 3]) == 3
        assert low([2, 5, 9]) == 9


class TestAddition:
    def test_symmetric_difference(self):
        counter = AdditionCounter()
        assert add_into([1, 2], [1, 3], counter) == [2, 3]
        assert counter.column_additions == 1
        assert counter.field_additions == 4

    def test_cost_measured_before_addition(self):
        counter = AdditionCounter()
        assert add_into([1, 2, 3], [1, 2, 3], counter) == []
        assert counter.field_additions == 6

    def test_dimension_attribution(self):
        counter = AdditionCounter()
        add_into([1], [2], counter, dim=2)
        add_into([1], [2], counter, dim=1)
        add_into([1], [2], counter, dim=2)
        assert counter.by_dimension == {1: 2, 2: 4}
        assert counter.field_additions == 6

    @given(sorted_columns, sorted_columns)
    def test_commutative(self, u, v):
        assert add_columns(u, v) == add_columns(v, u)

    @given(sorted_columns, sorted_columns)
    def test_involution(self, u, v):
        assert add_columns(u, add_columns(u, v)) == v

    @given(sorted_columns, sorted_columns)
    def test_size_parity_and_order(self, u, v):
        out = add_columns(u, v)
        assert out == sorted(set(u) ^ set(v))
        assert (len(u) + len(v) - len(out)) % 2 == 0


class TestBoundaryMatrix:
    def test_filled_triangle(self, triangle_complex):
        m = boundary_matrix(triangle_complex)
        assert m.full
        assert m.columns == [[], [], [], [1, 2], [1, 3], [2, 3], [4, 5, 6]]
        assert m.col_dims == [0, 0, 0, 1, 1, 1, 2]

    def test_strictly_upper_triangular(self):
        rng = random.Random(11)
        for _ in range(25):
            c = random_filtered_complex(rng)
            m = boundary_matrix(c)
            for j, col in enumerate(m.columns, start=1):
                assert all(i < j for i in col)

    def test_boundary_of_boundary_vanishes(self):
        rng = random.Random(13)
        for _ in range(25):
            c = random_filtered_complex(rng)
            m = boundary_matrix(c)
            for j, s in enumerate(c.simplices):
                if s.dimension != 2:
                    continue
                total = []
                for i in m.columns[j]:
                    total = add_columns(total, m.columns[i - 1])
                assert total == []

    def test_vertices_give_zero_columns(self):
        c = FilteredComplex([Simplex((1,)), Simplex((5,))], [1, 1])
        assert boundary_matrix(c).columns == [[], []]


class TestBoundarySubmatrix:
    def test_degree_two_block_of_strip_two(self):
        m = boundary_submatrix(strip(2), 2)
        assert m.row_names == ["2'", "1'", "0'", "-2*", "-1*", "-2", "-1",
                               "2", "1"]
        assert m.col_names == ["(1)", "(2)", "(-1)", "(-2)"]
        assert m.columns == [[2, 8, 9], [1, 3, 9], [5, 7, 9], [4, 6, 8]]

    def test_degree_one_block_shape(self):
        m = boundary_submatrix(strip(2), 1)
        assert (m.n_rows, m.n_cols) == (6, 9)
        lab = labels(strip(2))
        # Column of edge 1' = (v2, v3): local vertex rows 4 and 5.
        assert m.columns[m.col_labels.index(lab.index("1'"))] == [4, 5]

    def test_local_row_positions(self, triangle_complex):
        m = boundary_submatrix(triangle_complex, 2)
        assert m.columns == [[1, 2, 3]]
        assert m.row_labels == [4, 5, 6]
        assert m.col_labels == [7]

    def test_out_of_range(self, triangle_complex):
        with pytest.raises(ValueError, match="out of range"):
            boundary_submatrix(triangle_complex, 3)
        with pytest.raises(ValueError, match="out of range"):
            boundary_submatrix(triangle_complex, 0)

    def test_empty_block_allowed(self):
        c = FilteredComplex([Simplex((1,))], [1])
        m = boundary_submatrix(c, 1)
        assert m.n_cols == 0


class TestRank:
    def test_zero_matrix(self):
        m = BoundaryMatrix([[], [], []], [1, 2], [1, 2, 3])
        assert rank_f2(m) == 0

    def test_identity(self):
        m = BoundaryMatrix([[1], [2], [3]], [1, 2, 3], [1, 2, 3])
        assert rank_f2(m) == 3

    def test_dependent_columns(self):
        m = BoundaryMatrix([[1, 2], [2, 3], [1, 3]], [1, 2, 3], [1, 2, 3])
        assert rank_f2(m) == 2

    def test_strip_two_degree_two_block(self):
        assert rank_f2(boundary_submatrix(strip(2), 2)) == 4

    def test_against_brute_force(self):
        rng = random.Random(17)
        for _ in range(20):
            cols = [sorted(rng.sample(range(1, 6), rng.randint(0, 4)))
                    for _ in range(4)]
            m = BoundaryMatrix(cols, list(range(1, 6)), list(range(1, 5)))
            # Brute force: rank = log2 of the span size.
            span = {0}
            for col in cols:
                mask = sum(1 << (r - 1) for r in col)
                span |= {s ^ mask for s in span}
            assert 2 ** rank_f2(m) == len(span)


class TestDump:
    def test_labeled_grid(self, triangle_complex):
        m = boundary_submatrix(triangle_complex, 2)
        text = dump(m)
        lines = text.splitlines()
        assert lines[0].split() == ["7"]
        assert [ln.split() for ln in lines[1:]] == [
            ["4", "1"], ["5", "1"], ["6", "1"]]

    def test_named_grid(self):
        text = dump(boundary_submatrix(strip(2), 2))
        assert "(1)" in text.splitlines()[0]
        assert "-2*" in text
