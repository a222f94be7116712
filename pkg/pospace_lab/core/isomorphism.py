"""Isomorphism search backing every "≅" check of the constructions."""
from __future__ import annotations

from collections import Counter

from pospace_lab.core.enumeration import iter_dimaps, iter_under_maps
from pospace_lab.core.pospace import Dimap, FinPospace, UnderMap, UnderPospace, is_dimap


def _profile(p: FinPospace) -> tuple:
    top_deg = Counter((len(p.top_up[x]), len(p.top_down[x])) for x in p.points)
    dir_deg = Counter(sum(1 for a, _ in p.dir_rel if a == x) for x in p.points)
    return len(p.points), len(p.top_rel), len(p.dir_rel), sorted(top_deg.items()), sorted(dir_deg.items())


def inverse(f: Dimap) -> Dimap | None:
    """The inverse dimap of a bijective dimap, if the inverse preserves both relations."""
    if not (f.is_injective and f.is_surjective):
        return None
    back = {y: x for x, y in f.as_dict().items()}
    if not is_dimap(back, f.target, f.source):
        return None
    return Dimap(f.target, f.source, tuple(back[y] for y in f.target.points))


def is_isomorphism(f: Dimap | UnderMap) -> bool:
    return inverse(f.f if isinstance(f, UnderMap) else f) is not None


def find_isomorphism(p: FinPospace, q: FinPospace) -> Dimap | None:
    """First isomorphism p -> q in canonical order, or None."""
    if _profile(p) != _profile(q):
        return None
    for f in iter_dimaps(p, q, injective=True, context="find_isomorphism"):
        if inverse(f) is not None:
            return f
    return None


def find_under_isomorphism(x: UnderPospace, y: UnderPospace) -> UnderMap | None:
    if _profile(x.space) != _profile(y.space):
        return None
    for f in iter_under_maps(x, y, injective=True, context="find_under_isomorphism"):
        if inverse(f.f) is not None:
            return f
    return None
