"""
Relative dihomotopy on finite models.

Two maps under C are dihomotopic iff they are joined by a fence of
anchor-compatible dimaps, consecutive maps comparable pointwise in the
target's topology preorder. The cylinder and path-object formulations are
searched independently so that the three deciders can be cross-checked.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import networkx as nx

from pospace_lab.constructions.square import Cylinder, cylinder
from pospace_lab.core.enumeration import first_under_map, iter_under_maps
from pospace_lab.core.pospace import Dimap, UnderMap, UnderPospace, under_compose, under_identity
from pospace_lab.exception import MorphismMismatchError
from pospace_lab.fibration.path_object import path_object
from pospace_lab.logger import GLOBAL_LOGGER as log
from pospace_lab.utils.config_loader import load_config


def pointwise_leq(f: UnderMap, g: UnderMap) -> bool:
    rel = f.target.space.top_rel
    return all((a, b) in rel for a, b in zip(f.images, g.images))


@dataclass(frozen=True)
class DimapSpace:
    """All maps source -> target under the anchor, optionally restricted pointwise."""

    source: UnderPospace
    target: UnderPospace
    maps: tuple[UnderMap, ...]
    domains: tuple[tuple[str, tuple[str, ...]], ...] = ()

    @cached_property
    def index(self) -> dict[tuple[str, ...], int]:
        return {m.images: i for i, m in enumerate(self.maps)}

    def position(self, f: UnderMap) -> int:
        try:
            return self.index[f.images]
        except KeyError:
            raise MorphismMismatchError(f"{f!r} is not a point of this dimap space") from None

    def leq(self, f: UnderMap, g: UnderMap) -> bool:
        return pointwise_leq(f, g)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Pairs (i, j), i != j, with maps[i] ⊑ maps[j]."""
        up = self.target.space.top_up
        restricted = dict(self.domains)
        points = self.source.space.points
        found = []
        for i, f in enumerate(self.maps):
            domains = {}
            for x, y in zip(points, f.images):
                allowed = up[y]
                if x in restricted:
                    allowed = tuple(z for z in allowed if z in set(restricted[x]))
                domains[x] = allowed
            for g in iter_under_maps(self.source, self.target, domains=domains, context="dimap_space"):
                j = self.index[g.images]
                if j != i:
                    found.append((i, j))
        return tuple(found)

    @cached_property
    def point_rel(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges) | {(i, i) for i in range(len(self.maps))}

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.maps)))
        graph.add_edges_from(self.edges)
        return graph


def dimap_space(
    source: UnderPospace, target: UnderPospace, domains: Mapping[str, Sequence[str]] | None = None
) -> DimapSpace:
    maps = tuple(iter_under_maps(source, target, domains=domains, context="dimap_space"))
    frozen = tuple(sorted((x, tuple(ys)) for x, ys in (domains or {}).items()))
    return DimapSpace(source, target, maps, frozen)


@dataclass(frozen=True)
class DihomotopyClasses:
    space: DimapSpace
    classes: tuple[tuple[int, ...], ...]

    @cached_property
    def _class_of(self) -> dict[int, int]:
        return {i: n for n, members in enumerate(self.classes) for i in members}

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> tuple[UnderMap, ...]:
        return tuple(self.space.maps[members[0]] for members in self.classes)

    def members(self, n: int) -> tuple[UnderMap, ...]:
        return tuple(self.space.maps[i] for i in self.classes[n])

    def class_of(self, f: UnderMap) -> int:
        return self._class_of[self.space.position(f)]


def partition(space: DimapSpace) -> DihomotopyClasses:
    parts = sorted(tuple(sorted(c)) for c in nx.connected_components(space.graph))
    return DihomotopyClasses(space, tuple(parts))


def classes(source: UnderPospace, target: UnderPospace) -> DihomotopyClasses:
    result = partition(dimap_space(source, target))
    log.info(
        "Dihomotopy classes computed",
        source_points=len(source.space),
        target_points=len(target.space),
        maps=len(result.space.maps),
        classes=len(result),
    )
    return result


@dataclass(frozen=True)
class HomotopyVerdict:
    related: bool
    fence: tuple[UnderMap, ...] = ()

    def __bool__(self) -> bool:
        return self.related

    @property
    def length(self) -> int:
        return max(len(self.fence) - 1, 0)


def _require_parallel(f: UnderMap, g: UnderMap) -> None:
    if f.source != g.source or f.target != g.target:
        raise MorphismMismatchError("dihomotopy compares maps with the same source and target")


def fence_between(space: DimapSpace, f: UnderMap, g: UnderMap) -> HomotopyVerdict:
    i, j = space.position(f), space.position(g)
    try:
        route = nx.shortest_path(space.graph, i, j)
    except nx.NetworkXNoPath:
        return HomotopyVerdict(False)
    return HomotopyVerdict(True, tuple(space.maps[n] for n in route))


def _comparable(f: UnderMap) -> list[UnderMap]:
    """Maps directly above or below f, in canonical order."""
    target = f.target.space
    found = []
    for rel in (target.top_up, target.top_down):
        domains = {x: rel[y] for x, y in zip(f.source.space.points, f.images)}
        for g in iter_under_maps(f.source, f.target, domains=domains, context="fence_search"):
            if g.images != f.images:
                found.append(g)
    return found


def fence_search(f: UnderMap, g: UnderMap) -> HomotopyVerdict:
    """Breadth-first search through comparable maps, starting at f."""
    parent: dict[tuple[str, ...], UnderMap | None] = {f.images: None}
    queue = deque([f])
    while queue:
        h = queue.popleft()
        if h.images == g.images:
            route = [h]
            while parent[route[-1].images] is not None:
                route.append(parent[route[-1].images])
            return HomotopyVerdict(True, tuple(reversed(route)))
        for n in _comparable(h):
            if n.images not in parent:
                parent[n.images] = h
                queue.append(n)
    return HomotopyVerdict(False)


def dihomotopic(f: UnderMap, g: UnderMap) -> HomotopyVerdict:
    _require_parallel(f, g)
    return fence_search(f, g)


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalence: bool
    inverse: UnderMap | None = None

    def __bool__(self) -> bool:
        return self.equivalence


def is_dihomotopy_equivalence(f: UnderMap, candidate: UnderMap | None = None) -> EquivalenceVerdict:
    """Search for g with g ∘ f ≃ id and f ∘ g ≃ id, trying ``candidate`` first."""
    x, y = f.source, f.target
    if candidate is not None:
        back = dihomotopic(under_compose(candidate, f), under_identity(x))
        if back and dihomotopic(under_compose(f, candidate), under_identity(y)):
            return EquivalenceVerdict(True, candidate)
    on_x = partition(dimap_space(x, x))
    on_y = partition(dimap_space(y, y))
    id_x = on_x.class_of(under_identity(x))
    id_y = on_y.class_of(under_identity(y))
    for g in iter_under_maps(y, x, context="is_dihomotopy_equivalence"):
        if on_x.class_of(under_compose(g, f)) == id_x and on_y.class_of(under_compose(f, g)) == id_y:
            log.info("Dihomotopy equivalence found", source_points=len(x.space), target_points=len(y.space))
            return EquivalenceVerdict(True, g)
    return EquivalenceVerdict(False)


# ---------- Cylinder and path formulations ----------


def _end_constraint(cyl: Cylinder, f: UnderMap, g: UnderMap) -> dict[str, str] | None:
    forced: dict[str, str] = {}
    for a in f.source.space.points:
        for t, image in ((cyl.interval.start, f(a)), (cyl.interval.end, g(a))):
            if forced.setdefault(cyl.at(a, t), image) != image:
                return None
    return forced


def cylinder_formulation(f: UnderMap, g: UnderMap, k: int) -> UnderMap | None:
    """A homotopy H: cyl(X, k) -> Y with H i_0 = f and H i_1 = g, if one exists."""
    _require_parallel(f, g)
    cyl = cylinder(f.source, k)
    forced = _end_constraint(cyl, f, g)
    if forced is None:
        return None
    return next(iter_under_maps(cyl.space, f.target, forced, context="cylinder_formulation"), None)


def path_formulation(f: UnderMap, g: UnderMap, k: int) -> UnderMap | None:
    """A map h: X -> P_k(Y) with ev_0 h = f and ev_1 h = g, if one exists."""
    _require_parallel(f, g)
    path = path_object(f.target, k)
    starts: dict[tuple[str, str], list[str]] = {}
    for name in path.space.space.points:
        omega = path.path(name)
        starts.setdefault((omega[0], omega[-1]), []).append(name)
    domains = {a: starts.get((f(a), g(a)), []) for a in f.source.space.points}
    return next(iter_under_maps(f.source, path.space, domains=domains, context="path_formulation"), None)


def _default_bound(f: UnderMap, g: UnderMap) -> int:
    """Shortest fence length when f and g are related, else the configured kmax."""
    verdict = fence_search(f, g)
    if verdict:
        return verdict.length
    return int(load_config()["suites"]["kmax"])


def p_homotopic(f: UnderMap, g: UnderMap, kmax: int | None = None) -> bool:
    """Homotopy through the path object, trying k = 0 .. kmax."""
    _require_parallel(f, g)
    bound = kmax if kmax is not None else _default_bound(f, g)
    return any(path_formulation(f, g, k) is not None for k in range(bound + 1))


def cylinder_homotopic(f: UnderMap, g: UnderMap, kmax: int | None = None) -> bool:
    _require_parallel(f, g)
    bound = kmax if kmax is not None else _default_bound(f, g)
    return any(cylinder_formulation(f, g, k) is not None for k in range(bound + 1))


def fence_to_cylinder(fence: Sequence[UnderMap]) -> tuple[Cylinder, UnderMap]:
    """Transcribe a fence of maps into a homotopy on the cylinder of matching length."""
    if not fence:
        raise MorphismMismatchError("empty fence")
    teeth = [fence[0]]
    for h in fence[1:]:
        current = teeth[-1]
        fits = pointwise_leq(current, h) if len(teeth) % 2 == 1 else pointwise_leq(h, current)
        if not fits:
            teeth.append(current)
        teeth.append(h)
    if len(teeth) % 2 == 0:
        teeth.append(teeth[-1])
    k = (len(teeth) - 1) // 2
    cyl = cylinder(fence[0].source, k)
    image = {}
    for (a, t), name in cyl.cell.items():
        image[name] = teeth[int(t[1:])](a)
    h_cyl = Dimap.from_mapping(cyl.space.space, fence[0].target.space, image)
    return cyl, UnderMap(cyl.space, fence[0].target, h_cyl)


def cylinder_slices(cyl: Cylinder, h_cyl: UnderMap) -> tuple[UnderMap, ...]:
    """The maps H(-, t) for each tooth t."""
    x = cyl.base
    out = []
    for t in cyl.interval.teeth:
        images = tuple(h_cyl(cyl.at(a, t)) for a in x.space.points)
        out.append(UnderMap(x, h_cyl.target, Dimap(x.space, h_cyl.target.space, images)))
    return tuple(out)


def _union_partition(maps: Sequence[UnderMap], related) -> tuple[tuple[int, ...], ...]:
    joined = nx.Graph()
    joined.add_nodes_from(range(len(maps)))
    for i, f in enumerate(maps):
        for j in range(i + 1, len(maps)):
            if nx.has_path(joined, i, j):
                continue
            if related(f, maps[j]):
                joined.add_edge(i, j)
    return tuple(sorted(tuple(sorted(c)) for c in nx.connected_components(joined)))


def cylinder_partition(source: UnderPospace, target: UnderPospace) -> tuple[tuple[int, ...], ...]:
    """Classes generated by one-step cylinder homotopies f ⊑ h ⊒ g."""
    space = dimap_space(source, target)
    return _union_partition(space.maps, lambda f, g: cylinder_formulation(f, g, 1) is not None)


def path_partition(source: UnderPospace, target: UnderPospace) -> tuple[tuple[int, ...], ...]:
    """Classes generated by one-step path-object homotopies."""
    space = dimap_space(source, target)
    return _union_partition(space.maps, lambda f, g: path_formulation(f, g, 1) is not None)


def common_upper_bound(f: UnderMap, g: UnderMap) -> UnderMap | None:
    """A map h with f ⊑ h ⊒ g pointwise, if one exists."""
    _require_parallel(f, g)
    up = f.target.space.top_up
    domains = {}
    for x, a, b in zip(f.source.space.points, f.images, g.images):
        above_b = set(up[b])
        allowed = tuple(z for z in up[a] if z in above_b)
        if not allowed:
            return None
        domains[x] = allowed
    return first_under_map(f.source, f.target, domains=domains, context="common_upper_bound")


def upper_bound_partition(maps: Sequence[UnderMap]) -> tuple[tuple[int, ...], ...]:
    """Classes of ``maps`` generated by shared upper bounds, without enumerating the hom-set.

    Two members are joined when some map lies above both of them; the bound
    itself need not be a member.
    """
    return _union_partition(maps, lambda f, g: common_upper_bound(f, g) is not None)
