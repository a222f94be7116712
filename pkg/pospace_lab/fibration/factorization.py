"""
Mapping path factorization f = p ∘ j through W = X ×_Y P_k(Y), homotopy over
a base, and the sampled pool of difibrations the suites draw from.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from pospace_lab.constructions.limits import under_pair_into, under_pullback
from pospace_lab.constructions.square import cylinder
from pospace_lab.core.enumeration import iter_under_maps
from pospace_lab.core.pospace import UnderMap, UnderPospace, final_map, under_compose, under_identity
from pospace_lab.exception import MorphismMismatchError
from pospace_lab.fibration.lifting import is_difibration
from pospace_lab.fibration.path_object import path_object
from pospace_lab.fibration.test_family import TestFamily, random_under_map
from pospace_lab.homotopy.engine import dihomotopic, dimap_space, fence_between, is_dihomotopy_equivalence
from pospace_lab.logger import GLOBAL_LOGGER as log


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class FactorizationCertificate:
    f: UnderMap
    i: UnderMap
    r_or_p: UnderMap
    middle: UnderPospace
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def describe(self) -> str:
        parts = [f"{c.name}: {'ok' if c.ok else 'FAILED'}{' (' + c.detail + ')' if c.detail else ''}" for c in self.checks]
        return "; ".join(parts)


@dataclass(frozen=True)
class PathFactorization:
    f: UnderMap
    j: UnderMap
    p: UnderMap
    middle: UnderPospace
    k: int
    pr: UnderMap


def mapping_path_factorization(f: UnderMap, k: int) -> PathFactorization:
    path = path_object(f.target, k)
    w = under_pullback(f, path.ev0)
    j = under_pair_into(w, [under_identity(f.source), under_compose(path.c, f)])
    p = under_compose(path.ev1, w.legs[1])
    return PathFactorization(f, j, p, w.apex, k, w.legs[0])


def certify_path_factorization(fact: PathFactorization, family: TestFamily, kmax: int) -> FactorizationCertificate:
    exact = under_compose(fact.p, fact.j).images == fact.f.images
    equivalence = is_dihomotopy_equivalence(fact.j, candidate=fact.pr)
    fibration = is_difibration(fact.p, family, kmax)
    checks = (
        Check("p∘j = f", exact),
        Check("j is a dihomotopy equivalence", equivalence.equivalence),
        Check("p is a difibration", fibration.passes, fibration.describe()),
    )
    log.info("Mapping path factorization certified", middle_points=len(fact.middle.space), ok=all(c.ok for c in checks))
    return FactorizationCertificate(fact.f, fact.j, fact.p, fact.middle, checks)


def _fibres(f: UnderMap, p: UnderMap) -> dict[str, list[str]]:
    return {
        x: [e for e in p.source.space.points if p(e) == p(f(x))] for x in f.source.space.points
    }


def homotopy_over_base(f: UnderMap, g: UnderMap, p: UnderMap, k: int | None = None) -> bool:
    """f ≃ g over B: a homotopy whose every stage stays in the fibre of p ∘ f.

    With ``k`` the path object P_k(E) is searched for h with ev_0 h = f,
    ev_1 h = g and p^I h = c p f; without it the fibrewise fence is decided.
    """
    if under_compose(p, f).images != under_compose(p, g).images:
        raise MorphismMismatchError("maps do not agree over the base")
    fibres = _fibres(f, p)
    if k is None:
        space = dimap_space(f.source, f.target, domains=fibres)
        return fence_between(space, f, g).related
    path = path_object(f.target, k)
    domains = {}
    for x in f.source.space.points:
        allowed = set(fibres[x])
        domains[x] = [
            name
            for name in path.space.space.points
            if path.path(name)[0] == f(x) and path.path(name)[-1] == g(x) and set(path.path(name)) <= allowed
        ]
    return next(iter_under_maps(f.source, path.space, domains=domains, context="homotopy_over_base"), None) is not None


def over_point_agreement(f: UnderMap, g: UnderMap, kmax: int) -> tuple[bool, bool]:
    """(homotopy over the final object through P_k, fence dihomotopy) for f and g.

    k is the shortest fence length when one exists, else ``kmax``.
    """
    fence = dihomotopic(f, g)
    k = max(fence.length, 1) if fence.related else kmax
    return homotopy_over_base(f, g, final_map(f.target), k), fence.related


def difibration_pool(
    family: TestFamily, kmax: int, seed: int, sample_maps: int, max_points: int = 8
) -> tuple[UnderMap, ...]:
    """Identities, final maps, cylinder projections and mapping-path legs that pass the test."""
    rng = random.Random(seed)
    candidates: list[UnderMap] = []
    for x in family:
        candidates.append(under_identity(x))
        candidates.append(final_map(x))
        if len(x.space) * 3 <= max_points:
            candidates.append(cylinder(x, 1).r)
    members = [m for m in family if len(m.space) > 0]
    for _ in range(sample_maps):
        if not members:
            break
        f = random_under_map(rng, rng.choice(members), rng.choice(members))
        if f is None:
            continue
        fact = mapping_path_factorization(f, 1)
        if len(fact.middle.space) <= max_points:
            candidates.append(fact.p)
    return tuple(p for p in _unique(candidates) if is_difibration(p, family, kmax).passes)


def _unique(maps: Iterable[UnderMap]) -> list[UnderMap]:
    seen, out = set(), []
    for m in maps:
        key = (m.source, m.target, m.images)
        if key not in seen:
            seen.add(key)
            out.append(m)
    return out

