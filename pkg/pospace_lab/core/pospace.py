"""
Finite pospaces, dimaps and the under-category (C, <=)-poTop.

A finite pospace carries two relations on one point set: the topology
preorder ``top_rel`` (Alexandrov specialization, ``x ⊑ y``) and the directed
partial order ``dir_rel``. Dimaps are point maps monotone for both.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from pospace_lab.exception import (
    AnchorMismatchError,
    InvalidPospaceError,
    MorphismMismatchError,
)

Relation = frozenset[tuple[str, str]]

_DIGITS = re.compile(r"(\d+)")


def natural_key(name: str) -> tuple:
    """Sort key ordering ``t2`` before ``t10``."""
    return tuple((0, int(chunk)) if chunk.isdigit() else (1, chunk) for chunk in _DIGITS.split(name) if chunk)


def close_relation(points: Iterable[str], pairs: Iterable[tuple[str, str]]) -> Relation:
    """Reflexive-transitive closure of ``pairs`` over ``points``."""
    graph = nx.DiGraph()
    graph.add_nodes_from(points)
    graph.add_edges_from(pairs)
    return frozenset(nx.transitive_closure(graph, reflexive=True).edges())


@dataclass(frozen=True)
class FinPospace:
    points: tuple[str, ...]
    top_rel: Relation
    dir_rel: Relation
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(set(self.points), key=natural_key)))
        object.__setattr__(self, "top_rel", frozenset(self.top_rel))
        object.__setattr__(self, "dir_rel", frozenset(self.dir_rel))

    @classmethod
    def build(
        cls,
        points: Iterable[str],
        top: Iterable[tuple[str, str]] = (),
        dir: Iterable[tuple[str, str]] = (),
        label: str | None = None,
    ) -> "FinPospace":
        """Build from generating pairs; both relations are closed on construction."""
        pts = list(points)
        top, dir = list(top), list(dir)
        known = set(pts)
        stray = [pair for pair in top + dir if pair[0] not in known or pair[1] not in known]
        if stray:
            raise InvalidPospaceError(f"relation mentions unknown points: {stray[:3]}")
        return cls(tuple(pts), close_relation(pts, top), close_relation(pts, dir), label)

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.points, self.top_rel, self.dir_rel))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[str]:
        return iter(self.points)

    def __contains__(self, x: object) -> bool:
        return x in self.index

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.points)}

    @cached_property
    def top_up(self) -> dict[str, tuple[str, ...]]:
        return self._neighbours(self.top_rel, upward=True)

    @cached_property
    def top_down(self) -> dict[str, tuple[str, ...]]:
        return self._neighbours(self.top_rel, upward=False)

    @cached_property
    def dir_up(self) -> dict[str, tuple[str, ...]]:
        return self._neighbours(self.dir_rel, upward=True)

    def _neighbours(self, rel: Relation, upward: bool) -> dict[str, tuple[str, ...]]:
        found: dict[str, list[str]] = {x: [] for x in self.points}
        for a, b in rel:
            if a in found and b in found:
                found[a if upward else b].append(b if upward else a)
        return {x: tuple(sorted(ys, key=self.index.__getitem__)) for x, ys in found.items()}

    def leq_top(self, x: str, y: str) -> bool:
        return (x, y) in self.top_rel

    def leq_dir(self, x: str, y: str) -> bool:
        return (x, y) in self.dir_rel

    @property
    def has_discrete_dir(self) -> bool:
        return all(a == b for a, b in self.dir_rel)

    def with_label(self, label: str | None) -> "FinPospace":
        return FinPospace(self.points, self.top_rel, self.dir_rel, label)

    def with_discrete_dir(self) -> "FinPospace":
        return FinPospace(self.points, self.top_rel, frozenset((x, x) for x in self.points), self.label)

    def subspace(self, keep: Iterable[str], label: str | None = None) -> "FinPospace":
        chosen = set(keep)
        return FinPospace(
            tuple(chosen),
            frozenset(p for p in self.top_rel if p[0] in chosen and p[1] in chosen),
            frozenset(p for p in self.dir_rel if p[0] in chosen and p[1] in chosen),
            label,
        )

    def __repr__(self) -> str:
        name = self.label or "pospace"
        return f"FinPospace({name}, {len(self.points)} points)"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None
    relation: str | None = None
    witness: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"violation {self.axiom} of {self.relation}, witness {self.witness}"


def validate(p: FinPospace) -> ValidationReport:
    """Check the preorder axioms of top_rel and the partial-order axioms of dir_rel."""
    pts = set(p.points)
    for name, rel in (("top_rel", p.top_rel), ("dir_rel", p.dir_rel)):
        for a, b in sorted(rel):
            if a not in pts or b not in pts:
                return ValidationReport(False, "domain", name, (a, b))
        for x in p.points:
            if (x, x) not in rel:
                return ValidationReport(False, "reflexivity", name, (x,))
        succ: dict[str, set[str]] = {x: set() for x in p.points}
        for a, b in rel:
            succ[a].add(b)
        for x in p.points:
            for y in sorted(succ[x], key=natural_key):
                for z in sorted(succ[y], key=natural_key):
                    if z not in succ[x]:
                        return ValidationReport(False, "transitivity", name, (x, y, z))
    for a, b in sorted(p.dir_rel):
        if a != b and (b, a) in p.dir_rel:
            return ValidationReport(False, "antisymmetry", "dir_rel", tuple(sorted((a, b), key=natural_key)))
    return ValidationReport(True)


def require_valid(p: FinPospace) -> FinPospace:
    report = validate(p)
    if not report:
        raise InvalidPospaceError(f"{p!r} is not a pospace: {report.describe()}", report=report)
    return p


@dataclass(frozen=True)
class Dimap:
    source: FinPospace
    target: FinPospace
    images: tuple[str, ...]

    def __call__(self, x: str) -> str:
        try:
            return self.images[self.source.index[x]]
        except KeyError:
            raise MorphismMismatchError(f"{x!r} is not a point of {self.source!r}") from None

    @classmethod
    def from_mapping(
        cls, source: FinPospace, target: FinPospace, mapping: Mapping[str, str], check: bool = True
    ) -> "Dimap":
        missing = [x for x in source.points if x not in mapping]
        if missing:
            raise MorphismMismatchError(f"map is not total, missing {missing[:3]}")
        images = tuple(mapping[x] for x in source.points)
        strays = [y for y in images if y not in target]
        if strays:
            raise MorphismMismatchError(f"images outside target: {strays[:3]}")
        if check and not is_dimap(mapping, source, target):
            raise MorphismMismatchError(f"map {dict(mapping)} is not a dimap {source!r} -> {target!r}")
        return cls(source, target, images)

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.source.points, self.images))

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return set(self.images) == set(self.target.points)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{x}->{y}" for x, y in zip(self.source.points, self.images))
        return f"Dimap({pairs})"


def is_dimap(f: Mapping[str, str] | Dimap, src: FinPospace, tgt: FinPospace) -> bool:
    """True iff ``f`` is total on ``src`` and monotone for both relations."""
    mapping = f.as_dict() if isinstance(f, Dimap) else f
    if set(mapping) != set(src.points):
        raise MorphismMismatchError(f"candidate map domain does not match {src!r}")
    if any(y not in tgt for y in mapping.values()):
        return False
    return all((mapping[a], mapping[b]) in tgt.top_rel for a, b in src.top_rel) and all(
        (mapping[a], mapping[b]) in tgt.dir_rel for a, b in src.dir_rel
    )


def identity(p: FinPospace) -> Dimap:
    return Dimap(p, p, p.points)


def compose(g: Dimap, f: Dimap) -> Dimap:
    """``g ∘ f``."""
    if f.target != g.source:
        raise MorphismMismatchError(f"cannot compose: target {f.target!r} != source {g.source!r}")
    return Dimap(f.source, g.target, tuple(g(y) for y in f.images))


def constant(src: FinPospace, tgt: FinPospace, y: str) -> Dimap:
    if y not in tgt:
        raise MorphismMismatchError(f"{y!r} is not a point of {tgt!r}")
    return Dimap(src, tgt, tuple(y for _ in src.points))


def inclusion(sub: FinPospace, ambient: FinPospace) -> Dimap:
    return Dimap.from_mapping(sub, ambient, {x: x for x in sub.points})


def empty() -> FinPospace:
    return FinPospace((), frozenset(), frozenset(), "∅")


def terminal() -> FinPospace:
    return FinPospace.build(["*"], label="•")


def discrete(points: Iterable[str], label: str | None = None) -> FinPospace:
    return FinPospace.build(points, label=label)


def chain(n: int, prefix: str = "c", topological: bool = True) -> FinPospace:
    """``n`` points ordered c0 < c1 < ...; the topology is the same chain unless disabled."""
    pts = [f"{prefix}{i}" for i in range(n)]
    steps = list(zip(pts, pts[1:]))
    return FinPospace.build(pts, top=steps if topological else (), dir=steps, label=f"chain({n})")


@dataclass(frozen=True)
class IntervalModel:
    """Fence model F_k of I with free (discrete) or directed (total) order."""

    kind: str
    k: int
    space: FinPospace

    @property
    def teeth(self) -> tuple[str, ...]:
        return tuple(f"t{i}" for i in range(2 * self.k + 1))

    @property
    def start(self) -> str:
        return "t0"

    @property
    def end(self) -> str:
        return f"t{2 * self.k}"


def interval(kind: str, k: int) -> IntervalModel:
    if kind not in ("free", "directed"):
        raise ValueError(f"interval kind must be 'free' or 'directed', got {kind!r}")
    if k < 0:
        raise ValueError(f"tooth count must be >= 0, got {k}")
    pts = [f"t{i}" for i in range(2 * k + 1)]
    fence = []
    for i in range(k):
        fence += [(pts[2 * i], pts[2 * i + 1]), (pts[2 * i + 2], pts[2 * i + 1])]
    order = list(zip(pts, pts[1:])) if kind == "directed" else []
    space = FinPospace.build(pts, top=fence, dir=order, label=f"F{k}{'' if kind == 'free' else '^dir'}")
    return IntervalModel(kind, k, space)


def product_relation(factors: Sequence[FinPospace], attr: str) -> set[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Componentwise relation on tuples of points (used by products and path objects)."""
    rels = [getattr(p, attr) for p in factors]
    out = set()
    for combo in cartesian(*[sorted(r) for r in rels]):
        out.add((tuple(a for a, _ in combo), tuple(b for _, b in combo)))
    return out


# ---------- Under-category ----------


@dataclass(frozen=True)
class UnderPospace:
    anchor: FinPospace
    space: FinPospace
    xi: Dimap

    @property
    def points(self) -> tuple[str, ...]:
        return self.space.points

    def __len__(self) -> int:
        return len(self.space)

    @cached_property
    def anchor_constraint(self) -> dict[str, str]:
        return self.xi.as_dict()

    def __repr__(self) -> str:
        return f"UnderPospace({self.space!r} under {self.anchor!r})"


@dataclass(frozen=True)
class UnderMap:
    source: UnderPospace
    target: UnderPospace
    f: Dimap

    def __call__(self, x: str) -> str:
        return self.f(x)

    @property
    def images(self) -> tuple[str, ...]:
        return self.f.images

    def as_dict(self) -> dict[str, str]:
        return self.f.as_dict()

    def __repr__(self) -> str:
        return f"UnderMap({self.f!r})"


def as_under(c: FinPospace, x: FinPospace, xi: Dimap) -> UnderPospace:
    if xi.source != c or xi.target != x:
        raise AnchorMismatchError("structure map must go from the anchor to the space")
    if not is_dimap(xi, c, x):
        raise AnchorMismatchError("structure map is not a dimap")
    return UnderPospace(c, x, xi)


def check_under_map(source: UnderPospace, target: UnderPospace, f: Dimap) -> bool:
    """True iff ``f`` is a dimap between the spaces with f ∘ ξ = θ pointwise."""
    if source.anchor != target.anchor:
        raise AnchorMismatchError("objects live under different anchors")
    if f.source != source.space or f.target != target.space:
        raise MorphismMismatchError("map does not run between the given spaces")
    if not is_dimap(f, source.space, target.space):
        return False
    return all(f(source.xi(c)) == target.xi(c) for c in source.anchor.points)


def under_map(source: UnderPospace, target: UnderPospace, f: Dimap | Mapping[str, str]) -> UnderMap:
    dimap = f if isinstance(f, Dimap) else Dimap.from_mapping(source.space, target.space, f, check=False)
    if not check_under_map(source, target, dimap):
        raise AnchorMismatchError(f"{dimap!r} is not a map under the anchor")
    return UnderMap(source, target, dimap)


def absolute(x: FinPospace) -> UnderPospace:
    """View a pospace as an object under the empty anchor."""
    nothing = empty()
    return UnderPospace(nothing, x, Dimap(nothing, x, ()))


def initial_object(anchor: FinPospace) -> UnderPospace:
    return UnderPospace(anchor, anchor, identity(anchor))


def final_object(anchor: FinPospace) -> UnderPospace:
    point = terminal()
    return UnderPospace(anchor, point, constant(anchor, point, "*"))


def initial_map(x: UnderPospace) -> UnderMap:
    return UnderMap(initial_object(x.anchor), x, x.xi)


def final_map(x: UnderPospace) -> UnderMap:
    fin = final_object(x.anchor)
    return UnderMap(x, fin, constant(x.space, fin.space, "*"))


def under_identity(x: UnderPospace) -> UnderMap:
    return UnderMap(x, x, identity(x.space))


def under_compose(g: UnderMap, f: UnderMap) -> UnderMap:
    if f.target != g.source:
        raise MorphismMismatchError("cannot compose maps under the anchor: middle objects differ")
    return UnderMap(f.source, g.target, compose(g.f, f.f))


def anchored(anchor: FinPospace, space: FinPospace, xi: Mapping[str, str]) -> UnderPospace:
    """Convenience constructor from a point dictionary."""
    return as_under(anchor, space, Dimap.from_mapping(anchor, space, xi, check=False))
