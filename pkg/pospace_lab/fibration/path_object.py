"""
Path objects P_k(Y): the points are the continuous maps F_k -> Y, ordered
pointwise for both relations. A path is named ``[y0;y1;...;y2k]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from pospace_lab.constructions.square import Cylinder, cylinder
from pospace_lab.core.enumeration import iter_dimaps
from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    IntervalModel,
    UnderMap,
    UnderPospace,
    interval,
)
from pospace_lab.exception import MorphismMismatchError

Path = tuple[str, ...]


def path_name(omega: Path) -> str:
    return "[" + ";".join(omega) + "]"


@dataclass(frozen=True)
class PathObject:
    base: UnderPospace
    interval: IntervalModel
    space: UnderPospace
    ev0: UnderMap
    ev1: UnderMap
    c: UnderMap
    paths: Mapping[str, Path] = field(compare=False, repr=False)

    @property
    def k(self) -> int:
        return self.interval.k

    def path(self, name: str) -> Path:
        try:
            return self.paths[name]
        except KeyError:
            raise MorphismMismatchError(f"{name!r} is not a path of {self.base.space!r}") from None

    def name(self, omega: Path) -> str:
        key = path_name(tuple(omega))
        if key not in self.paths:
            raise MorphismMismatchError(f"{list(omega)} is not a continuous path")
        return key

    def ev(self, tau: int) -> UnderMap:
        return self.ev0 if tau == 0 else self.ev1


def _pointwise(fence: FinPospace, y: FinPospace, paths: list[Path], up: Mapping[str, tuple[str, ...]]) -> set:
    pairs = set()
    for omega in paths:
        domains = {t: up[omega[i]] for i, t in enumerate(fence.points)}
        for nu in iter_dimaps(fence, y, domains=domains, context="path_object"):
            pairs.add((path_name(omega), path_name(nu.images)))
    return pairs


@lru_cache(maxsize=256)
def path_object(x: UnderPospace, k: int) -> PathObject:
    fence = interval("free", k)
    y = x.space
    paths = [f.images for f in iter_dimaps(fence.space, y, context="path_object")]
    names = {path_name(omega): omega for omega in paths}
    top = _pointwise(fence.space, y, paths, y.top_up)
    dirs = _pointwise(fence.space, y, paths, y.dir_up)
    space = FinPospace(tuple(names), frozenset(top), frozenset(dirs), f"P{k}({y.label or 'Y'})")

    const = {a: path_name((a,) * len(fence.teeth)) for a in y.points}
    xi = Dimap(x.anchor, space, tuple(const[x.xi(c)] for c in x.anchor.points))
    px = UnderPospace(x.anchor, space, xi)
    ev0 = Dimap(space, y, tuple(names[p][0] for p in space.points))
    ev1 = Dimap(space, y, tuple(names[p][-1] for p in space.points))
    c = Dimap(y, space, tuple(const[a] for a in y.points))
    return PathObject(x, fence, px, UnderMap(px, x, ev0), UnderMap(px, x, ev1), UnderMap(x, px, c), names)


def evaluation(path: PathObject, tooth: int) -> UnderMap:
    """ω -> ω(t_i) for the tooth index i."""
    space = path.space.space
    images = tuple(path.path(p)[tooth] for p in space.points)
    return UnderMap(path.space, path.base, Dimap(space, path.base.space, images))


def path_map(u: UnderMap, k: int) -> UnderMap:
    """u^I: P_k(X) -> P_k(Y), ω -> u ∘ ω."""
    source, target = path_object(u.source, k), path_object(u.target, k)
    images = tuple(target.name(tuple(u(a) for a in source.path(p))) for p in source.space.space.points)
    return UnderMap(source.space, target.space, Dimap(source.space.space, target.space.space, images))


def transpose_to_path(h_cyl: UnderMap, cyl: Cylinder) -> UnderMap:
    """H: cyl(X, k) -> Y  gives  h: X -> P_k(Y) with h(x)(t) = H([x, t])."""
    if h_cyl.source != cyl.space:
        raise MorphismMismatchError("map does not start at the given cylinder")
    target = path_object(h_cyl.target, cyl.k)
    x = cyl.base
    images = tuple(target.name(tuple(h_cyl(cyl.at(a, t)) for t in cyl.interval.teeth)) for a in x.space.points)
    return UnderMap(x, target.space, Dimap(x.space, target.space.space, images))


def transpose_to_cylinder(h: UnderMap, path: PathObject) -> UnderMap:
    """h: X -> P_k(Y)  gives  H: cyl(X, k) -> Y with H([x, t]) = h(x)(t)."""
    if h.target != path.space:
        raise MorphismMismatchError("map does not land in the given path object")
    cyl = cylinder(h.source, path.k)
    position = {t: i for i, t in enumerate(path.interval.teeth)}
    image = {name: path.path(h(a))[position[t]] for (a, t), name in cyl.cell.items()}
    return UnderMap(cyl.space, path.base, Dimap.from_mapping(cyl.space.space, path.base.space, image))


def double_path_swap(x: UnderPospace, k: int) -> tuple[PathObject, PathObject, UnderMap]:
    """P_k(P_k(X)) with the interchange T(Ω)(s)(t) = Ω(t)(s)."""
    inner = path_object(x, k)
    outer = path_object(inner.space, k)
    space = outer.space.space
    images = []
    for big in space.points:
        rows = [inner.path(p) for p in outer.path(big)]
        swapped = [inner.name(tuple(row[s] for row in rows)) for s in range(len(rows))]
        images.append(outer.name(tuple(swapped)))
    swap = UnderMap(outer.space, outer.space, Dimap(space, space, tuple(images)))
    return inner, outer, swap
