"""
Exhaustive dimap search.

Every lifting, homotopy and universal-property decision in the package is
answered by this backtracking enumerator. Points of the source are assigned
in canonical order and candidates are tried in target order, so results come
out in lexicographic order of their image tuples.
"""
from __future__ import annotations

from typing import Iterator, Mapping, Sequence

from pospace_lab.core.pospace import Dimap, FinPospace, UnderMap, UnderPospace
from pospace_lab.exception import AnchorMismatchError
from pospace_lab.utils.search_budget import SearchCounter


def _checks(src: FinPospace) -> list[list[tuple[int, str]]]:
    """For each position i, the earlier positions j related to it, tagged top<, top>, dir< or dir>."""
    pos = src.index
    found: list[dict[tuple[int, str], None]] = [dict() for _ in src.points]
    for rel_name, rel in (("top", src.top_rel), ("dir", src.dir_rel)):
        for a, b in rel:
            if a == b:
                continue
            i, j = pos[a], pos[b]
            if i < j:
                found[j][(i, f"{rel_name}<")] = None
            else:
                found[i][(j, f"{rel_name}>")] = None
    return [sorted(entry) for entry in found]  # type: ignore[misc]


def iter_dimaps(
    src: FinPospace,
    tgt: FinPospace,
    constraint: Mapping[str, str] | None = None,
    *,
    domains: Mapping[str, Sequence[str]] | None = None,
    max_maps: int | None = None,
    injective: bool = False,
    context: str = "enumerate_dimaps",
) -> Iterator[Dimap]:
    """Yield every dimap src -> tgt honouring the fixed values and candidate domains."""
    counter = SearchCounter(context, max_maps)
    points = src.points
    n = len(points)
    constraint = constraint or {}
    candidates: list[list[str]] = []
    for x in points:
        if x in constraint:
            pool = [constraint[x]] if constraint[x] in tgt else []
        elif domains is not None and x in domains:
            allowed = set(domains[x])
            pool = [y for y in tgt.points if y in allowed]
        else:
            pool = list(tgt.points)
        if domains is not None and x in constraint and x in domains:
            pool = [y for y in pool if y in set(domains[x])]
        candidates.append(pool)
    if any(not pool for pool in candidates):
        return

    relations = _checks(src)
    top, dirr = tgt.top_rel, tgt.dir_rel
    images: list[str] = [""] * n
    used: set[str] = set()

    def fits(i: int, y: str) -> bool:
        for j, kind in relations[i]:
            other = images[j]
            if kind == "top<":
                if (other, y) not in top:
                    return False
            elif kind == "top>":
                if (y, other) not in top:
                    return False
            elif kind == "dir<":
                if (other, y) not in dirr:
                    return False
            elif (y, other) not in dirr:
                return False
        return True

    def descend(i: int) -> Iterator[Dimap]:
        if i == n:
            yield Dimap(src, tgt, tuple(images))
            return
        for y in candidates[i]:
            counter.tick()
            if injective and y in used:
                continue
            if fits(i, y):
                images[i] = y
                used.add(y)
                yield from descend(i + 1)
                used.discard(y)

    yield from descend(0)


def enumerate_dimaps(
    src: FinPospace,
    tgt: FinPospace,
    constraint: Mapping[str, str] | None = None,
    *,
    domains: Mapping[str, Sequence[str]] | None = None,
    max_maps: int | None = None,
) -> list[Dimap]:
    return list(iter_dimaps(src, tgt, constraint, domains=domains, max_maps=max_maps))


def anchor_constraint(x: UnderPospace, y: UnderPospace) -> dict[str, str] | None:
    """Fixed values forced by f ∘ ξ = θ, or None when the anchors clash."""
    if x.anchor != y.anchor:
        raise AnchorMismatchError("objects live under different anchors")
    forced: dict[str, str] = {}
    for c in x.anchor.points:
        a, b = x.xi(c), y.xi(c)
        if forced.setdefault(a, b) != b:
            return None
    return forced


def iter_under_maps(
    x: UnderPospace,
    y: UnderPospace,
    constraint: Mapping[str, str] | None = None,
    *,
    domains: Mapping[str, Sequence[str]] | None = None,
    max_maps: int | None = None,
    injective: bool = False,
    context: str = "enumerate_under_maps",
) -> Iterator[UnderMap]:
    forced = anchor_constraint(x, y)
    if forced is None:
        return
    for key, value in (constraint or {}).items():
        if forced.setdefault(key, value) != value:
            return
    for f in iter_dimaps(
        x.space, y.space, forced, domains=domains, max_maps=max_maps, injective=injective, context=context
    ):
        yield UnderMap(x, y, f)


def enumerate_under_maps(
    x: UnderPospace,
    y: UnderPospace,
    constraint: Mapping[str, str] | None = None,
    *,
    domains: Mapping[str, Sequence[str]] | None = None,
    max_maps: int | None = None,
) -> list[UnderMap]:
    return list(iter_under_maps(x, y, constraint, domains=domains, max_maps=max_maps))


def first_under_map(
    x: UnderPospace,
    y: UnderPospace,
    constraint: Mapping[str, str] | None = None,
    *,
    domains: Mapping[str, Sequence[str]] | None = None,
    context: str = "first_under_map",
) -> UnderMap | None:
    return next(iter_under_maps(x, y, constraint, domains=domains, context=context), None)
