import itertools
import random

import pytest

from stripph.complexes import FilteredComplex, Simplex


@pytest.fixture
def triangle_complex():
    """The filled-triangle filtration worked through in the docs/tests."""
    simplices = [Simplex((1,)), Simplex((2,)), Simplex((3,)),
                 Simplex((1, 2)), Simplex((1, 3)), Simplex((2, 3)),
                 Simplex((1, 2, 3))]
    return FilteredComplex(simplices, list(range(1, 8)))


def random_filtered_complex(rng: random.Random, max_simplices: int = 12,
                            n_vertices: int = 5) -> FilteredComplex:
    """Seeded random valid filtered complex of dimension at most 2.

    Candidates are inserted together with their missing faces (faces
    first), so ordering and closure invariants hold by construction.
    Levels grow by random 0/1 increments, producing occasional ties.
    """
    pool = list(range(1, n_vertices + 1))
    candidates = [tuple(c) for size in (1, 2, 3)
                  for c in itertools.combinations(pool, size)]
    rng.shuffle(candidates)
    present: set[tuple[int, ...]] = set()
    order: list[tuple[int, ...]] = []

    def closure(verts):
        need = []
        for size in range(1, len(verts) + 1):
            for sub in itertools.combinations(verts, size):
                if sub not in present and sub not in need:
                    need.append(sub)
        return need

    for verts in candidates:
        need = closure(verts)
        if len(order) + len(need) > max_simplices:
            continue
        for sub in need:
            present.add(sub)
            order.append(sub)
    levels = []
    level = 1
    for k in range(len(order)):
        if k:
            level += rng.choice((0, 1))
        levels.append(level)
    return FilteredComplex([Simplex(v) for v in order], levels)
