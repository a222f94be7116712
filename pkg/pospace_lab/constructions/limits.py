"""
Finite limits and colimits in poTop and in (C, <=)-poTop.

Products, coproducts and equalizers are formed as for spaces. The
coequalizer follows the three-stage quotient: identify f(x) ~ g(x), preorder
the classes by the image of the order, then collapse mutually related classes.
Point names are deterministic: products ``(a,b)``, coproduct summands
``i:x``, quotient classes by their least member.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Sequence

import networkx as nx

from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    UnderMap,
    UnderPospace,
    close_relation,
    compose,
    natural_key,
)
from pospace_lab.exception import AnchorMismatchError, MorphismMismatchError


def product_name(components: Sequence[str]) -> str:
    return "(" + ",".join(components) + ")"


def summand_name(i: int, x: str) -> str:
    return f"{i}:{x}"


def least(members) -> str:
    return min(members, key=natural_key)


@dataclass(frozen=True)
class QuotientTrace:
    sim_classes: tuple[tuple[str, ...], ...]
    pre_rel: frozenset[tuple[str, str]]
    final_classes: tuple[tuple[str, ...], ...]
    final_order: frozenset[tuple[str, str]]

    def dump(self) -> str:
        lines = ["# quotient trace"]
        lines += [f"sim {' '.join(c)}" for c in self.sim_classes]
        key = lambda pair: (natural_key(pair[0]), natural_key(pair[1]))  # noqa: E731
        lines += [f"pre {a} {b}" for a, b in sorted(self.pre_rel, key=key) if a != b]
        lines += [f"final {' '.join(c)}" for c in self.final_classes]
        lines += [f"order {a} {b}" for a, b in sorted(self.final_order, key=key) if a != b]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Cone:
    apex: FinPospace
    legs: tuple[Dimap, ...]


@dataclass(frozen=True)
class Cocone:
    apex: FinPospace
    legs: tuple[Dimap, ...]
    trace: QuotientTrace | None = None


@dataclass(frozen=True)
class UnderCone:
    apex: UnderPospace
    legs: tuple[UnderMap, ...]


@dataclass(frozen=True)
class UnderCocone:
    apex: UnderPospace
    legs: tuple[UnderMap, ...]
    trace: QuotientTrace | None = None


def _require_parallel(f: Dimap, g: Dimap) -> None:
    if f.source != g.source or f.target != g.target:
        raise MorphismMismatchError("maps are not parallel")


# ---------- Limits ----------


def product(ps: Sequence[FinPospace]) -> Cone:
    if not ps:
        point = FinPospace.build([product_name(())], label="•")
        return Cone(point, ())
    combos = {product_name(combo): combo for combo in cartesian(*[p.points for p in ps])}

    def lifted(attr: str) -> frozenset[tuple[str, str]]:
        rels = [sorted(getattr(p, attr)) for p in ps]
        return frozenset(
            (product_name([a for a, _ in combo]), product_name([b for _, b in combo])) for combo in cartesian(*rels)
        )

    label = " × ".join(p.label or "X" for p in ps)
    apex = FinPospace(tuple(combos), lifted("top_rel"), lifted("dir_rel"), label)
    legs = tuple(Dimap(apex, p, tuple(combos[z][i] for z in apex.points)) for i, p in enumerate(ps))
    return Cone(apex, legs)


def equalizer(f: Dimap, g: Dimap) -> Cone:
    _require_parallel(f, g)
    keep = [x for x in f.source.points if f(x) == g(x)]
    apex = f.source.subspace(keep, label=f"Eq({f.source.label or 'X'})")
    return Cone(apex, (Dimap(apex, f.source, apex.points),))


def pullback(f: Dimap, g: Dimap) -> Cone:
    """X ×_B Y for f: X -> B, g: Y -> B, with legs to X and Y."""
    if f.target != g.target:
        raise MorphismMismatchError("pullback needs a common codomain")
    prod = product([f.source, g.source])
    eq = equalizer(compose(f, prod.legs[0]), compose(g, prod.legs[1]))
    inc = eq.legs[0]
    return Cone(eq.apex, (compose(prod.legs[0], inc), compose(prod.legs[1], inc)))


def pair_into(limit: Cone, maps: Sequence[Dimap]) -> Dimap:
    """The map into a product or pullback with the given components."""
    if not maps:
        raise MorphismMismatchError("pairing needs at least one component")
    source = maps[0].source
    images = []
    for z in source.points:
        name = product_name([m(z) for m in maps])
        if name not in limit.apex:
            raise MorphismMismatchError(f"components of {z!r} do not land in the limit")
        images.append(name)
    return Dimap(source, limit.apex, tuple(images))


# ---------- Colimits ----------


def coproduct(ps: Sequence[FinPospace]) -> Cocone:
    top, dirs, pts = [], [], []
    for i, p in enumerate(ps):
        pts += [summand_name(i, x) for x in p.points]
        top += [(summand_name(i, a), summand_name(i, b)) for a, b in p.top_rel]
        dirs += [(summand_name(i, a), summand_name(i, b)) for a, b in p.dir_rel]
    label = " ⨿ ".join(p.label or "X" for p in ps) or "∅"
    apex = FinPospace(tuple(pts), frozenset(top), frozenset(dirs), label)
    legs = tuple(Dimap(p, apex, tuple(summand_name(i, x) for x in p.points)) for i, p in enumerate(ps))
    return Cocone(apex, legs)


def quotient(
    y: FinPospace, identify: Sequence[tuple[str, str]], label: str | None = None
) -> tuple[FinPospace, Dimap, QuotientTrace]:
    """Pospace quotient of ``y`` by the equivalence generated by ``identify``."""
    # stage 1: equivalence generated by the identifications
    sim = nx.Graph()
    sim.add_nodes_from(y.points)
    sim.add_edges_from(identify)
    sim_classes = sorted((sorted(c, key=natural_key) for c in nx.connected_components(sim)), key=lambda c: natural_key(c[0]))
    sim_of = {x: cls[0] for cls in sim_classes for x in cls}

    # stage 2: reachability over descended order edges
    pre = close_relation([c[0] for c in sim_classes], ((sim_of[a], sim_of[b]) for a, b in y.dir_rel))

    # stage 3: collapse mutually related classes
    graph = nx.DiGraph()
    graph.add_nodes_from(c[0] for c in sim_classes)
    graph.add_edges_from(pre)
    members = {c[0]: c for c in sim_classes}
    final_classes = []
    final_of_sim: dict[str, str] = {}
    for scc in nx.strongly_connected_components(graph):
        pooled = sorted((x for s in scc for x in members[s]), key=natural_key)
        final_classes.append(tuple(pooled))
        for s in scc:
            final_of_sim[s] = pooled[0]
    final_classes.sort(key=lambda c: natural_key(c[0]))
    to_final = {x: final_of_sim[sim_of[x]] for x in y.points}

    names = [c[0] for c in final_classes]
    order = frozenset((final_of_sim[a], final_of_sim[b]) for a, b in pre)
    top = close_relation(names, ((to_final[a], to_final[b]) for a, b in y.top_rel))
    apex = FinPospace(tuple(names), top, close_relation(names, order), label)
    trace = QuotientTrace(
        tuple(tuple(c) for c in sim_classes),
        pre,
        tuple(final_classes),
        apex.dir_rel,
    )
    return apex, Dimap(y, apex, tuple(to_final[x] for x in y.points)), trace


def coequalizer(f: Dimap, g: Dimap) -> tuple[FinPospace, Dimap, QuotientTrace]:
    _require_parallel(f, g)
    label = f"Coeq({f.target.label or 'Y'})"
    return quotient(f.target, [(f(x), g(x)) for x in f.source.points], label)


def pushout(f: Dimap, g: Dimap) -> Cocone:
    """X ⊔_A Y for f: A -> X, g: A -> Y, with legs from X and Y."""
    if f.source != g.source:
        raise MorphismMismatchError("pushout needs a common domain")
    co = coproduct([f.target, g.target])
    apex, q, trace = coequalizer(compose(co.legs[0], f), compose(co.legs[1], g))
    return Cocone(apex, (compose(q, co.legs[0]), compose(q, co.legs[1])), trace)


def copair_from(colimit: Cocone, maps: Sequence[Dimap]) -> Dimap:
    """The map out of a coproduct or pushout induced by maps agreeing on the legs."""
    if len(maps) != len(colimit.legs):
        raise MorphismMismatchError("need one map per leg")
    target = maps[0].target
    image: dict[str, str] = {}
    for leg, m in zip(colimit.legs, maps):
        for x in leg.source.points:
            if image.setdefault(leg(x), m(x)) != m(x):
                raise MorphismMismatchError(f"maps disagree on {leg(x)!r}")
    return Dimap.from_mapping(colimit.apex, target, image)


# ---------- Under-category ----------


def _same_anchor(objs: Sequence[UnderPospace]) -> FinPospace:
    anchors = {o.anchor for o in objs}
    if len(anchors) != 1:
        raise AnchorMismatchError("objects live under different anchors")
    return objs[0].anchor


def under_product(xs: Sequence[UnderPospace]) -> UnderCone:
    anchor = _same_anchor(xs)
    cone = product([x.space for x in xs])
    xi = Dimap(anchor, cone.apex, tuple(product_name([x.xi(c) for x in xs]) for c in anchor.points))
    apex = UnderPospace(anchor, cone.apex, xi)
    return UnderCone(apex, tuple(UnderMap(apex, x, leg) for x, leg in zip(xs, cone.legs)))


def under_pullback(f: UnderMap, g: UnderMap) -> UnderCone:
    anchor = _same_anchor([f.source, g.source, f.target])
    cone = pullback(f.f, g.f)
    xi = Dimap(anchor, cone.apex, tuple(product_name([f.source.xi(c), g.source.xi(c)]) for c in anchor.points))
    apex = UnderPospace(anchor, cone.apex, xi)
    return UnderCone(apex, (UnderMap(apex, f.source, cone.legs[0]), UnderMap(apex, g.source, cone.legs[1])))


def under_pushout(f: UnderMap, g: UnderMap) -> UnderCocone:
    anchor = _same_anchor([f.source, f.target, g.target])
    cocone = pushout(f.f, g.f)
    xi = compose(cocone.legs[0], f.target.xi)
    apex = UnderPospace(anchor, cocone.apex, xi)
    return UnderCocone(
        apex,
        (UnderMap(f.target, apex, cocone.legs[0]), UnderMap(g.target, apex, cocone.legs[1])),
        cocone.trace,
    )


def under_pair_into(limit: UnderCone, maps: Sequence[UnderMap]) -> UnderMap:
    paired = pair_into(Cone(limit.apex.space, tuple(leg.f for leg in limit.legs)), [m.f for m in maps])
    return UnderMap(maps[0].source, limit.apex, paired)


def under_copair_from(colimit: UnderCocone, maps: Sequence[UnderMap]) -> UnderMap:
    out = copair_from(Cocone(colimit.apex.space, tuple(leg.f for leg in colimit.legs)), [m.f for m in maps])
    return UnderMap(colimit.apex, maps[0].target, out)
