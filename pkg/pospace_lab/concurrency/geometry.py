"""
Forbidden-box geometric models on a grid.

A model lives in [0,1]^n, discretised into ``resolution`` unit steps per
axis. Boxes are open; an axis a box does not constrain is stored as ``None``
and covers the whole closed range. Vertices are integer tuples.

File format::

    geo <n> <R>
    box <lo_1> <hi_1> ... <lo_n> <hi_n>     (rationals p/q, or '* *' for a free axis)
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence

from pospace_lab.exception import ConstructionError, ModelFormatError
from pospace_lab.logger import GLOBAL_LOGGER as log

Vertex = tuple[int, ...]
Bound = tuple[Fraction, Fraction] | None


@dataclass(frozen=True)
class Box:
    bounds: tuple[Bound, ...]

    def contains_vertex(self, v: Vertex, resolution: int) -> bool:
        """Strictly inside on every constrained axis."""
        for coord, bound in zip(v, self.bounds):
            if bound is not None and not (bound[0] < Fraction(coord, resolution) < bound[1]):
                return False
        return True

    def meets_cell(self, corner: Vertex, resolution: int) -> bool:
        """Whether the open unit cell with lower corner ``corner`` meets the box."""
        for coord, bound in zip(corner, self.bounds):
            if bound is None:
                continue
            lo, hi = Fraction(coord, resolution), Fraction(coord + 1, resolution)
            if not (lo < bound[1] and hi > bound[0]):
                return False
        return True

    def describe(self) -> str:
        return " x ".join("*" if b is None else f"]{b[0]},{b[1]}[" for b in self.bounds)


@dataclass(frozen=True)
class GeoModel:
    dims: int
    resolution: int
    boxes: tuple[Box, ...] = ()
    label: str = "geo"

    def __post_init__(self):
        if self.dims < 1 or self.resolution < 1:
            raise ConstructionError(f"need dims >= 1 and resolution >= 1, got {self.dims}, {self.resolution}")
        for box in self.boxes:
            if len(box.bounds) != self.dims:
                raise ConstructionError(f"box {box.describe()} has the wrong dimension")
            for bound in box.bounds:
                if bound is not None and not (0 <= bound[0] < bound[1] <= 1):
                    raise ConstructionError(f"box {box.describe()} leaves the unit cube")

    @property
    def start(self) -> Vertex:
        return (0,) * self.dims

    @property
    def end(self) -> Vertex:
        return (self.resolution,) * self.dims

    def vertices(self) -> Iterator[Vertex]:
        return product(range(self.resolution + 1), repeat=self.dims)

    def allowed(self, v: Vertex) -> bool:
        return not any(box.contains_vertex(v, self.resolution) for box in self.boxes)

    @cached_property
    def blocked_cells(self) -> frozenset[Vertex]:
        return frozenset(
            c for c in product(range(self.resolution), repeat=self.dims)
            if any(box.meets_cell(c, self.resolution) for box in self.boxes)
        )

    def cell_free(self, corner: Vertex) -> bool:
        return corner not in self.blocked_cells

    def legal_step(self, v: Vertex, axis: int) -> bool:
        """The edge v -> v + e_axis bounds at least one unblocked unit cell."""
        if v[axis] >= self.resolution:
            return False
        choices = [
            (v[j],) if j == axis else tuple(c for c in (v[j] - 1, v[j]) if 0 <= c < self.resolution)
            for j in range(self.dims)
        ]
        return any(self.cell_free(corner) for corner in product(*choices))

    def successors(self, v: Vertex) -> list[Vertex]:
        out = []
        for axis in range(self.dims):
            if self.legal_step(v, axis):
                out.append(v[:axis] + (v[axis] + 1,) + v[axis + 1:])
        return out

    def predecessors(self, v: Vertex) -> list[Vertex]:
        out = []
        for axis in range(self.dims):
            if v[axis] > 0:
                u = v[:axis] + (v[axis] - 1,) + v[axis + 1:]
                if self.legal_step(u, axis):
                    out.append(u)
        return out

    @property
    def steps(self) -> int:
        return self.dims * self.resolution


def refine(m: GeoModel, factor: int) -> GeoModel:
    """Same boxes on a grid ``factor`` times finer."""
    if factor < 1:
        raise ConstructionError(f"refinement factor must be >= 1, got {factor}")
    return GeoModel(m.dims, m.resolution * factor, m.boxes, m.label)


def _reach(m: GeoModel, seed: Vertex, step) -> set[Vertex]:
    seen = {seed}
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        for w in step(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def reachable(m: GeoModel) -> set[Vertex]:
    return _reach(m, m.start, m.successors)


def coreachable(m: GeoModel) -> set[Vertex]:
    return _reach(m, m.end, m.predecessors)


def find_deadlocks(m: GeoModel) -> list[Vertex]:
    """Reachable states other than the end with no legal step."""
    found = sorted(v for v in reachable(m) if v != m.end and not m.successors(v))
    log.info("Deadlock search finished", dims=m.dims, resolution=m.resolution, deadlocks=len(found))
    return found


def find_unreachable(m: GeoModel) -> list[Vertex]:
    seen = reachable(m)
    return [v for v in m.vertices() if m.allowed(v) and v not in seen]


def count_paths(m: GeoModel) -> int:
    """Number of legal monotone paths from start to end, by dynamic programming."""
    ways: dict[Vertex, int] = {m.start: 1}
    for v in sorted(m.vertices(), key=sum):
        here = ways.get(v, 0)
        if not here:
            continue
        for w in m.successors(v):
            ways[w] = ways.get(w, 0) + here
    return ways.get(m.end, 0)


def _rational(token: str, lineno: int, source: str | None) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ModelFormatError(f"not a rational number: {token!r}", lineno, source) from None


def parse_geometry(text: str, source: str | None = None) -> GeoModel:
    header: tuple[int, int] | None = None
    boxes: list[Box] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if header is None:
            if words[0] != "geo" or len(words) != 3 or not (words[1].isdigit() and words[2].isdigit()):
                raise ModelFormatError("expected header 'geo <n> <R>'", lineno, source)
            header = (int(words[1]), int(words[2]))
            continue
        if words[0] != "box" or len(words) != 1 + 2 * header[0]:
            raise ModelFormatError(f"expected 'box' with {2 * header[0]} bounds", lineno, source)
        bounds: list[Bound] = []
        for lo, hi in zip(words[1::2], words[2::2]):
            if lo == hi == "*":
                bounds.append(None)
            else:
                bounds.append((_rational(lo, lineno, source), _rational(hi, lineno, source)))
        boxes.append(Box(tuple(bounds)))
    if header is None:
        raise ModelFormatError("empty geometry file", None, source)
    try:
        return GeoModel(header[0], header[1], tuple(boxes), Path(source).stem if source else "geo")
    except ConstructionError as exc:
        raise ModelFormatError(exc.error_message, None, source) from exc


def load_geometry(path: str | Path) -> GeoModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read geometry file: {exc}", None, str(path)) from exc
    return parse_geometry(text, str(path))


def format_geometry(m: GeoModel) -> str:
    lines = [f"geo {m.dims} {m.resolution}"]
    for box in m.boxes:
        words = []
        for bound in box.bounds:
            words += ["*", "*"] if bound is None else [str(bound[0]), str(bound[1])]
        lines.append("box " + " ".join(words))
    return "\n".join(lines) + "\n"


def boxes_from_cells(cells: Sequence[Vertex], resolution: int) -> tuple[Box, ...]:
    """One open box per unit cell, handy for building test models."""
    return tuple(
        Box(tuple((Fraction(c, resolution), Fraction(c + 1, resolution)) for c in cell)) for cell in cells
    )
