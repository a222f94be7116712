"""Execution paths on a grid model and their classes under elementary swaps."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import networkx as nx

from pospace_lab.concurrency.geometry import GeoModel, Vertex, count_paths
from pospace_lab.exception import ConstructionError
from pospace_lab.logger import GLOBAL_LOGGER as log
from pospace_lab.utils.search_budget import SearchCounter

ExecPath = tuple[Vertex, ...]


def iter_paths(m: GeoModel) -> Iterator[ExecPath]:
    """Legal monotone paths from start to end in lexicographic order."""
    counter = SearchCounter("enumerate_paths")
    trail: list[Vertex] = [m.start]

    def descend(v: Vertex) -> Iterator[ExecPath]:
        counter.tick()
        if v == m.end:
            yield tuple(trail)
            return
        for w in sorted(m.successors(v)):
            trail.append(w)
            yield from descend(w)
            trail.pop()

    yield from descend(m.start)


def enumerate_paths(m: GeoModel) -> list[ExecPath]:
    paths = sorted(iter_paths(m))
    log.info("Execution paths enumerated", dims=m.dims, resolution=m.resolution, paths=len(paths))
    return paths


def swaps(m: GeoModel, path: ExecPath) -> Iterator[ExecPath]:
    """Paths one elementary square move away across an unblocked cell."""
    for i in range(len(path) - 2):
        a, b, c = path[i], path[i + 1], path[i + 2]
        if c != (a[0] + 1, a[1] + 1) or not m.cell_free(a):
            continue
        other = (a[0], a[1] + 1) if b == (a[0] + 1, a[1]) else (a[0] + 1, a[1])
        yield path[: i + 1] + (other,) + path[i + 2:]


@dataclass(frozen=True)
class ScheduleClasses:
    model: GeoModel
    classes: tuple[tuple[ExecPath, ...], ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> tuple[ExecPath, ...]:
        return tuple(members[0] for members in self.classes)

    @cached_property
    def _index(self) -> dict[ExecPath, int]:
        return {p: n for n, members in enumerate(self.classes) for p in members}

    def class_of(self, path: ExecPath) -> int:
        return self._index[path]

    def same_partition(self, other: "ScheduleClasses") -> bool:
        return {frozenset(c) for c in self.classes} == {frozenset(c) for c in other.classes}


def group_paths(m: GeoModel, components) -> ScheduleClasses:
    """Canonical form: members sorted, classes ordered by least member."""
    parts = sorted(tuple(sorted(c)) for c in components)
    return ScheduleClasses(m, tuple(parts))


def classify(m: GeoModel) -> ScheduleClasses:
    if m.dims > 2:
        raise ConstructionError(f"schedule classes are computed for at most 2 processes, got {m.dims}")
    paths = enumerate_paths(m)
    graph = nx.Graph()
    graph.add_nodes_from(paths)
    if m.dims == 2:
        for p in paths:
            for q in swaps(m, p):
                graph.add_edge(p, q)
    result = group_paths(m, nx.connected_components(graph))
    log.info("Schedules classified", paths=len(paths), classes=len(result), dp_count=count_paths(m))
    return result
