"""Strip and modified-strip worst-case filtered complexes.

The strip family stacks n base triangles on a line with n fins above the
vertical edges; its filtration forces the standard reduction into cubic
work.  The modified family subdivides horizontal and fin edges and splits
each triangle in two, which makes every level a clique complex of its
1-skeleton.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import FilteredComplex, Simplex


@dataclass
class StripLabels:
    """Bijection between construction labels and simplex indices (1-based)."""
    name_to_index: dict[str, int]
    index_to_name: list[str]

    def index(self, name: str) -> int:
        return self.name_to_index[name]

    def name(self, index: int) -> str:
        return self.index_to_name[index - 1]


def _labels_from_names(names: list[str]) -> StripLabels:
    return StripLabels({n: i for i, n in enumerate(names, start=1)}, names)


def _sx(*vertices: int) -> Simplex:
    return Simplex(tuple(sorted(vertices)))


def _horizontal_left(i: int, v) -> int:
    # Left endpoint of the horizontal edge of base triangle i.
    if i >= 3:
        return v(i - 2)
    return v(1) if i == 2 else v(2)


def _star_anchor(i: int, v) -> int:
    # Base vertex of the fin edge -i* (and of the fin midline in Y(n)).
    return v(i - 1) if i >= 2 else v(1)


def strip(n: int) -> FilteredComplex:
    """The strip complex X(n): 2n+2 vertices, 4n+1 edges, 2n triangles.

    Vertices f_1..f_n map to 1..n and v_1..v_{n+2} to n+1..2n+2.  Each
    simplex receives a distinct filtration level equal to its index.
    """
    if n < 1:
        raise ValueError(f"strip size must be >= 1, got {n}")

    def f(i): return i
    def v(i): return n + i

    simplices: list[Simplex] = []
    names: list[str] = []

    def emit(s: Simplex, name: str):
        simplices.append(s)
        names.append(name)

    for i in range(1, n + 1):
        emit(_sx(f(i)), f"f{i}")
    for i in range(1, n + 3):
        emit(_sx(v(i)), f"v{i}")
    # Horizontal base edges n', ..., 1', then 0'.
    for i in range(n, 0, -1):
        emit(_sx(_horizontal_left(i, v), v(i + 2)), f"{i}'")
    emit(_sx(v(n), v(n + 2)), "0'")
    # Fin edges -n*, ..., -1* then -n, ..., -1.
    for i in range(n, 0, -1):
        emit(_sx(f(i), _star_anchor(i, v)), f"-{i}*")
    for i in range(n, 0, -1):
        emit(_sx(f(i), v(i + 1)), f"-{i}")
    # Vertical base edges n, ..., 1.
    for i in range(n, 1, -1):
        emit(_sx(v(i - 1), v(i + 1)), f"{i}")
    emit(_sx(v(1), v(2)), "1")
    # Base triangles (1), ..., (n).
    emit(_sx(v(1), v(2), v(3)), "(1)")
    if n >= 2:
        emit(_sx(v(1), v(2), v(4)), "(2)")
    for i in range(3, n + 1):
        emit(_sx(v(i - 2), v(i), v(i + 2)), f"({i})")
    # Fin triangles (-1), ..., (-n).
    emit(_sx(f(1), v(1), v(2)), "(-1)")
    for i in range(2, n + 1):
        emit(_sx(f(i), v(i - 1), v(i + 1)), f"(-{i})")

    levels = list(range(1, len(simplices) + 1))
    return FilteredComplex(simplices, levels, names)


def modified_strip(n: int) -> FilteredComplex:
    """The modified strip Y(n): 4n+2 vertices, 8n+1 edges, 4n triangles.

    Horizontal edges are subdivided at w_i, fin edges at g_i, and each
    triangle splits into a boxed half [i] and circled half (i) that share
    a filtration level with the dividing midline edge.
    """
    if n < 1:
        raise ValueError(f"strip size must be >= 1, got {n}")

    def f(i): return i
    def g(i): return n + i
    def v(i): return 2 * n + i
    def w(i): return 3 * n + 2 + i

    simplices: list[Simplex] = []
    names: list[str] = []
    levels: list[int] = []
    level = 0

    def emit(s: Simplex, name: str, new_level: bool = True):
        nonlocal level
        if new_level:
            level += 1
        simplices.append(s)
        names.append(name)
        levels.append(level)

    for i in range(1, n + 1):
        emit(_sx(f(i)), f"f{i}")
    for i in range(1, n + 1):
        emit(_sx(g(i)), f"g{i}")
    for i in range(1, n + 3):
        emit(_sx(v(i)), f"v{i}")
    for i in range(1, n + 1):
        emit(_sx(w(i)), f"w{i}")
    # Horizontal half-edges: n'', ..., 1'' then n', ..., 1'.
    for i in range(n, 0, -1):
        emit(_sx(w(i), v(i + 2)), f"{i}''")
    for i in range(n, 0, -1):
        emit(_sx(_horizontal_left(i, v), w(i)), f"{i}'")
    emit(_sx(v(n), v(n + 2)), "0'")
    # Fin star edges -n*, ..., -1*.
    for i in range(n, 0, -1):
        emit(_sx(f(i), _star_anchor(i, v)), f"-{i}*")
    # Fin half-edges: -n'', ..., -1'' then -n', ..., -1'.
    for i in range(n, 0, -1):
        emit(_sx(g(i), v(i + 1)), f"-{i}''")
    for i in range(n, 0, -1):
        emit(_sx(f(i), g(i)), f"-{i}'")
    # Vertical base edges n, ..., 1.
    for i in range(n, 1, -1):
        emit(_sx(v(i - 1), v(i + 1)), f"{i}")
    emit(_sx(v(1), v(2)), "1")
    # Base midlines and split base triangles; each triple shares a level.
    for i in range(1, n + 1):
        emit(_sx(v(i), w(i)), f"e{i}^b")
        emit(_sx(_horizontal_left(i, v), v(i), w(i)), f"[{i}]", new_level=False)
        emit(_sx(v(i), w(i), v(i + 2)), f"({i})", new_level=False)
    # Fin midlines and split fin triangles.
    for i in range(1, n + 1):
        emit(_sx(g(i), _star_anchor(i, v)), f"e{i}^f")
        emit(_sx(f(i), _star_anchor(i, v), g(i)), f"[-{i}]", new_level=False)
        emit(_sx(g(i), _star_anchor(i, v), v(i + 1)), f"(-{i})", new_level=False)

    return FilteredComplex(simplices, levels, names)


def labels(complex: FilteredComplex) -> StripLabels:
    """Label map of a generated complex."""
    if complex.names is None:
        raise ValueError("complex carries no label names")
    return _labels_from_names(complex.names)


def strip_sizes(n: int, variant: str = "strip") -> tuple[int, int, int, int]:
    """(vertices, edges, triangles, total) closed forms."""
    if n < 1:
        raise ValueError(f"strip size must be >= 1, got {n}")
    if variant == "strip":
        return (2 * n + 2, 4 * n + 1, 2 * n, 8 * n + 3)
    if variant == "modified":
        return (4 * n + 2, 8 * n + 1, 4 * n, 16 * n + 3)
    raise ValueError(f"unknown variant {variant!r}")


def predicted_additions_strip(n: int) -> int:
    """Closed-form field-addition predictor for the degree-2 block of X(n).

    A lower-envelope diagnostic: measured counts include intermediate-step
    additions and are usually larger.
    """
    if n < 1:
        raise ValueError(f"strip size must be >= 1, got {n}")
    numerator = n ** 3 + 6 * n ** 2 + 26 * n - 15
    if numerator % 3 != 0:
        raise ArithmeticError(f"predictor numerator {numerator} not divisible by 3")
    return numerator // 3


def predicted_additions_modified(n: int) -> int:
    """Published closed-form predictor for the degree-2 block of Y(n).

    Advisory only; see predicted_additions_modified_components for the sum
    of the derivation's pieces, which differs in the linear term.
    """
    if n < 1:
        raise ValueError(f"strip size must be >= 1, got {n}")
    return (2 * n ** 3 + 9 * n ** 2 + 37 * n - 18) // 3


def predicted_additions_modified_components(n: int) -> int:
    """Sum of the per-stage costs behind the modified-strip predictor.

    12n for forming the split-triangle chains, n^2+5n-6 for the base
    chains, and (2/3)n(n^2+3n+8) for the fins; totals
    (2n^3+9n^2+67n-18)/3, which disagrees with the published closed form.
    """
    if n < 1:
        raise ValueError(f"strip size must be >= 1, got {n}")
    return (2 * n ** 3 + 9 * n ** 2 + 67 * n - 18) // 3
