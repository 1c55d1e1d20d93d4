"""Filtered simplicial complexes: types, validation, and (de)serialization.

Simplices are tuples of strictly increasing non-negative vertex ids.  A
filtered complex is a totally ordered list of simplices (1-based when
indexing into boundary matrices) with a parallel list of positive integer
filtration levels.  Faces must precede cofaces and levels must be
non-decreasing along the order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class ComplexFormatError(ValueError):
    """Raised when parsing a complex from text or JSON fails."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple[int, ...]

    def __post_init__(self):
        v = self.vertices
        if not v:
            raise ValueError("simplex must have at least one vertex")
        if any(a < 0 for a in v):
            raise ValueError(f"vertex ids must be non-negative: {v}")
        if any(v[i] >= v[i + 1] for i in range(len(v) - 1)):
            raise ValueError(f"vertices must be strictly increasing: {v}")

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def facets(self) -> list["Simplex"]:
        """Codimension-1 faces, in ascending order of the deleted vertex."""
        if self.dimension == 0:
            raise ValueError("vertex has no facets")
        v = self.vertices
        return [Simplex(v[:i] + v[i + 1:]) for i in range(len(v))]

    def __repr__(self) -> str:
        return f"Simplex({list(self.vertices)})"


def simplex(*vertices: int) -> Simplex:
    return Simplex(tuple(sorted(vertices)))


@dataclass(eq=False)
class FilteredComplex:
    simplices: list[Simplex]
    levels: list[int]
    # Optional human-readable labels (generator naming maps); not part of
    # structural equality.
    names: list[str] | None = None
    _index: dict[Simplex, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.simplices) != len(self.levels):
            raise ValueError("simplices and levels must have equal length")
        if self.names is not None and len(self.names) != len(self.simplices):
            raise ValueError("names must parallel simplices")
        self._index = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, FilteredComplex):
            return NotImplemented
        return self.simplices == other.simplices and self.levels == other.levels

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self) -> Iterator[tuple[Simplex, int]]:
        return iter(zip(self.simplices, self.levels))

    def index_of(self, s: Simplex) -> int:
        """1-based position of a simplex in the total order."""
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.simplices, start=1)}
        return self._index[s]

    def __contains__(self, s: Simplex) -> bool:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.simplices, start=1)}
        return s in self._index

    @property
    def dimension(self) -> int:
        return max((s.dimension for s in self.simplices), default=-1)

    def count_by_dimension(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for s in self.simplices:
            counts[s.dimension] = counts.get(s.dimension, 0) + 1
        return counts

    def dims(self) -> list[int]:
        return [s.dimension for s in self.simplices]

    def prefix_at_level(self, level: int) -> "FilteredComplex":
        """Subcomplex of simplices with filtration level <= level.

        Because levels are non-decreasing along the order, this is a prefix
        of the simplex list.
        """
        k = 0
        for k, lv in enumerate(self.levels + [level + 1]):
            if lv > level:
                break
        return FilteredComplex(self.simplices[:k], self.levels[:k],
                               self.names[:k] if self.names else None)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(complex: FilteredComplex) -> ValidationReport:
    """Check all FilteredComplex invariants; violations are data, not errors."""
    report = ValidationReport()
    position = {}
    for j, (s, lv) in enumerate(zip(complex.simplices, complex.levels), start=1):
        if s in position:
            report.violations.append(f"duplicate simplex {list(s.vertices)}")
        else:
            position[s] = j
        if lv < 1:
            report.violations.append(
                f"level {lv} of {list(s.vertices)} is not a positive integer")
        if j > 1 and lv < complex.levels[j - 2]:
            report.violations.append(
                f"level decreases at {list(s.vertices)}: {complex.levels[j - 2]} -> {lv}")
        if s.dimension == 0:
            continue
        for face in s.facets():
            if face not in position and face not in complex:
                report.violations.append(
                    f"missing face {list(face.vertices)} of {list(s.vertices)}")
                continue
            i = complex.index_of(face)
            if i >= j:
                report.violations.append(
                    f"face {list(face.vertices)} at index {i} does not precede "
                    f"{list(s.vertices)} at index {j}")
            elif complex.levels[i - 1] > lv:
                report.violations.append(
                    f"face {list(face.vertices)} has level {complex.levels[i - 1]} "
                    f"> level {lv} of {list(s.vertices)}")
    return report


def euler_characteristic(complex: FilteredComplex) -> int:
    chi = 0
    for s in complex.simplices:
        chi += 1 if s.dimension % 2 == 0 else -1
    return chi


# ---------------------------------------------------------------------------
# Text / JSON formats
#
# Text: one simplex per line, "<level> <v1> <v2> ... <vk>", vertices
# ascending, lines in total-order sequence.  '#'-prefixed lines are comments.


def serialize(complex: FilteredComplex, header: str | None = None) -> str:
    lines = []
    if header:
        for h in header.splitlines():
            lines.append(f"# {h}")
    if complex.names is not None:
        lines.append("# labels:")
        for i, name in enumerate(complex.names, start=1):
            lines.append(f"#   {i}: {name}")
    for s, lv in complex:
        lines.append(" ".join([str(lv)] + [str(v) for v in s.vertices]))
    return "\n".join(lines) + "\n"


def parse(text: str) -> FilteredComplex:
    simplices: list[Simplex] = []
    levels: list[int] = []
    source_line: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ComplexFormatError("expected '<level> <v1> ...'", lineno)
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise ComplexFormatError(f"non-integer token in {line!r}", lineno)
        level, verts = values[0], values[1:]
        if level < 1:
            raise ComplexFormatError(f"level must be positive, got {level}", lineno)
        if any(verts[i] >= verts[i + 1] for i in range(len(verts) - 1)):
            raise ComplexFormatError(f"vertices not strictly increasing: {verts}", lineno)
        try:
            simplices.append(Simplex(tuple(verts)))
        except ValueError as exc:
            raise ComplexFormatError(str(exc), lineno)
        levels.append(level)
        source_line.append(lineno)
    complex = FilteredComplex(simplices, levels)
    report = validate(complex)
    if not report.ok:
        # Attribute the first violation to the last simplex line involved.
        raise ComplexFormatError(report.violations[0], source_line[-1] if source_line else None)
    return complex


def to_json(complex: FilteredComplex) -> str:
    items = []
    for i, (s, lv) in enumerate(complex):
        obj = {"level": lv, "vertices": list(s.vertices)}
        if complex.names is not None:
            obj["name"] = complex.names[i]
        items.append(obj)
    return json.dumps(items, indent=None)


def from_json(text: str) -> FilteredComplex:
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexFormatError(f"invalid JSON: {exc}")
    if not isinstance(items, list):
        raise ComplexFormatError("expected a JSON array of simplex objects")
    simplices, levels, names = [], [], []
    has_names = False
    for k, obj in enumerate(items):
        try:
            simplices.append(Simplex(tuple(obj["vertices"])))
            levels.append(int(obj["level"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ComplexFormatError(f"bad simplex object at position {k}: {exc}")
        if "name" in obj:
            has_names = True
        names.append(obj.get("name", ""))
    complex = FilteredComplex(simplices, levels, names if has_names else None)
    report = validate(complex)
    if not report.ok:
        raise ComplexFormatError(report.violations[0])
    return complex
