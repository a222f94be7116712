"""
The relative product X □_C S and the cylinder built from it.

``square_c`` uses the explicit quotient and order formulas; the generic
pushout of ``C <- C × S -> X × S`` is available as ``square_c_via_pushout``
for cross-checking.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from pospace_lab.constructions.limits import least, product, product_name, pushout
from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    IntervalModel,
    UnderMap,
    UnderPospace,
    close_relation,
    discrete,
    initial_object,
    interval,
)
from pospace_lab.exception import ConstructionError, MorphismMismatchError


def _square(x: UnderPospace, s: FinPospace, label: str | None = None) -> tuple[UnderPospace, dict[tuple[str, str], str]]:
    if not s.has_discrete_dir:
        raise ConstructionError(f"{s!r} must carry the discrete order to act as a plain space")
    if not s.points:
        return initial_object(x.anchor), {}

    anchored = set(x.xi.images)
    cell: dict[tuple[str, str], str] = {}
    for a in x.space.points:
        for t in s.points:
            if a in anchored:
                cell[(a, t)] = least(product_name((a, u)) for u in s.points)
            else:
                cell[(a, t)] = product_name((a, t))

    top = close_relation(
        cell.values(),
        ((cell[(a, t)], cell[(b, u)]) for a, b in x.space.top_rel for t, u in s.top_rel),
    )
    between = {
        (a, b)
        for a, b in x.space.dir_rel
        if any(x.space.leq_dir(a, m) and x.space.leq_dir(m, b) for m in anchored)
    }
    dirs = set()
    for a, b in x.space.dir_rel:
        for t in s.points:
            for u in s.points:
                if t == u or (a, b) in between:
                    dirs.add((cell[(a, t)], cell[(b, u)]))

    label = label or f"{x.space.label or 'X'} □ {s.label or 'S'}"
    space = FinPospace(tuple(set(cell.values())), top, frozenset(dirs), label)
    first = s.points[0]
    xi = Dimap(x.anchor, space, tuple(cell[(x.xi(c), first)] for c in x.anchor.points))
    return UnderPospace(x.anchor, space, xi), cell


def square_c(x: UnderPospace, s: FinPospace) -> UnderPospace:
    """X □_C S: X × S with each anchor fibre {ξ(c)} × S collapsed to one point."""
    return _square(x, s)[0]


def square_point(x: UnderPospace, s: FinPospace, a: str, t: str) -> str:
    """Name of the class [a, t] in ``square_c(x, s)``."""
    try:
        return _square(x, s)[1][(a, t)]
    except KeyError:
        raise MorphismMismatchError(f"({a}, {t}) is not a point of X × S") from None


def square_c_via_pushout(x: UnderPospace, s: FinPospace) -> UnderPospace:
    """The same object as the pushout of pr_C and ξ × id_S."""
    if not s.has_discrete_dir:
        raise ConstructionError(f"{s!r} must carry the discrete order to act as a plain space")
    cs = product([x.anchor, s])
    xs = product([x.space, s])
    pr_c = cs.legs[0]
    xi_s = Dimap(
        cs.apex,
        xs.apex,
        tuple(product_name((x.xi(c), t)) for c, t in zip(cs.legs[0].images, cs.legs[1].images)),
    )
    cocone = pushout(pr_c, xi_s)
    return UnderPospace(x.anchor, cocone.apex, cocone.legs[0])


def square_c_map(f: UnderMap, s: FinPospace, u: Dimap | None = None) -> UnderMap:
    """f □ u: [a, t] -> [f(a), u(t)]; ``u`` defaults to the identity of ``s``."""
    s_target = s if u is None else u.target
    source, cell = _square(f.source, s)
    target, target_cell = _square(f.target, s_target)
    image: dict[str, str] = {}
    for (a, t), name in cell.items():
        image[name] = target_cell[(f(a), t if u is None else u(t))]
    if not s.points:
        image = {c: c for c in source.space.points}
    return UnderMap(source, target, Dimap.from_mapping(source.space, target.space, image))


@dataclass(frozen=True)
class Cylinder:
    """X □_C F_k with end inclusions and the projection back to X."""

    base: UnderPospace
    interval: IntervalModel
    space: UnderPospace
    i0: UnderMap
    i1: UnderMap
    r: UnderMap
    cell: Mapping[tuple[str, str], str] = field(compare=False, repr=False)

    @property
    def k(self) -> int:
        return self.interval.k

    def at(self, a: str, t: str) -> str:
        return self.cell[(a, t)]


@lru_cache(maxsize=256)
def cylinder(x: UnderPospace, k: int) -> Cylinder:
    fence = interval("free", k)
    space, cell = _square(x, fence.space, label=f"I{k}({x.space.label or 'X'})")
    i0 = Dimap(x.space, space.space, tuple(cell[(a, fence.start)] for a in x.space.points))
    i1 = Dimap(x.space, space.space, tuple(cell[(a, fence.end)] for a in x.space.points))
    back = {name: a for (a, _), name in cell.items()}
    r = Dimap(space.space, x.space, tuple(back[name] for name in space.space.points))
    return Cylinder(x, fence, space, UnderMap(x, space, i0), UnderMap(x, space, i1), UnderMap(space, x, r), cell)


def cylinder_ends(cyl: Cylinder) -> UnderMap:
    """The inclusion X □_C {0,1} -> cylinder of both ends."""
    ends = discrete(sorted({cyl.interval.start, cyl.interval.end}), label="{0,1}")
    source, cell = _square(cyl.base, ends)
    image = {name: cyl.at(a, t) for (a, t), name in cell.items()}
    return UnderMap(source, cyl.space, Dimap.from_mapping(source.space, cyl.space.space, image))
