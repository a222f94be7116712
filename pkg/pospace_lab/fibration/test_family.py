"""
Seeded families of small objects under a fixed anchor, the finite stand-in
for "for every object" in lifting definitions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from pospace_lab.constructions.limits import coproduct
from pospace_lab.core.enumeration import anchor_constraint, enumerate_dimaps, iter_dimaps
from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    UnderMap,
    UnderPospace,
    chain,
    initial_object,
    interval,
    require_valid,
    terminal,
)


def random_pospace(rng: random.Random, n: int, prefix: str = "x") -> FinPospace:
    """Random order (edges respect index order) and random topology preorder."""
    pts = [f"{prefix}{i}" for i in range(n)]
    dirs = [(pts[i], pts[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
    top = [(pts[i], pts[j]) for i in range(n) for j in range(n) if i != j and rng.random() < 0.25]
    return require_valid(FinPospace.build(pts, top, dirs, label=f"R{n}"))


def with_anchor(anchor: FinPospace, space: FinPospace, label: str | None = None) -> UnderPospace:
    """anchor ⨿ space with ξ the first coproduct injection."""
    co = coproduct([anchor, space])
    apex = co.apex.with_label(label or space.label)
    return UnderPospace(anchor, apex, Dimap(anchor, apex, co.legs[0].images))


def random_under(rng: random.Random, anchor: FinPospace, n: int, prefix: str = "x") -> UnderPospace:
    """A random pospace with a randomly chosen structure map from the anchor."""
    space = random_pospace(rng, n, prefix)
    if not anchor.points:
        return UnderPospace(anchor, space, Dimap(anchor, space, ()))
    choices = enumerate_dimaps(anchor, space)
    if not choices or rng.random() < 0.5:
        return with_anchor(anchor, space)
    return UnderPospace(anchor, space, rng.choice(choices))


def random_under_map(rng: random.Random, x: UnderPospace, y: UnderPospace, limit: int = 64) -> UnderMap | None:
    """A map chosen uniformly among the first ``limit`` maps in canonical order."""
    forced = anchor_constraint(x, y)
    if forced is None:
        return None
    pool = []
    for f in iter_dimaps(x.space, y.space, forced, context="random_under_map"):
        pool.append(f)
        if len(pool) >= limit:
            break
    return UnderMap(x, y, rng.choice(pool)) if pool else None


@dataclass(frozen=True)
class TestFamily:
    """Canonical members first, then seeded random ones."""

    __test__ = False

    anchor: FinPospace
    members: tuple[UnderPospace, ...]
    seed: int
    max_points: int

    @property
    def label(self) -> str:
        return f"family(size={len(self.members)}, seed={self.seed}, max_points={self.max_points})"

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def restricted(self, max_points: int) -> "TestFamily":
        """Members with at most ``max_points`` points, same seed."""
        small = tuple(m for m in self.members if len(m.space) <= max_points)
        return TestFamily(self.anchor, small, self.seed, max_points)

    @classmethod
    def sample(cls, anchor: FinPospace, size: int, seed: int, max_points: int = 3) -> "TestFamily":
        rng = random.Random(seed)
        canonical = [
            initial_object(anchor),
            with_anchor(anchor, terminal()),
            with_anchor(anchor, chain(2, prefix="z")),
            with_anchor(anchor, interval("free", 1).space),
        ]
        members = canonical[:size]
        while len(members) < size:
            n = rng.randint(1, max_points)
            members.append(random_under(rng, anchor, n, prefix="z"))
        return cls(anchor, tuple(require_member(m) for m in members), seed, max_points)


def require_member(x: UnderPospace) -> UnderPospace:
    require_valid(x.space)
    return x
