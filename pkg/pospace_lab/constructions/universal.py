"""Universal-property checks for finite (co)limit constructions, by mediator search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from pospace_lab.constructions.limits import Cocone, Cone
from pospace_lab.core.enumeration import iter_dimaps
from pospace_lab.core.pospace import Dimap, FinPospace, compose
from pospace_lab.exception import ConstructionError


@dataclass(frozen=True)
class Diagram:
    """Objects plus arrows given as (source index, target index, map)."""

    objects: tuple[FinPospace, ...]
    arrows: tuple[tuple[int, int, Dimap], ...] = ()


@dataclass(frozen=True)
class UniversalResult:
    mediators: tuple[Dimap, ...]

    @property
    def unique(self) -> bool:
        return len(self.mediators) == 1

    @property
    def mediator(self) -> Dimap | None:
        return self.mediators[0] if self.unique else None

    def describe(self) -> str:
        if self.unique:
            return f"unique mediator {self.mediators[0]!r}"
        if not self.mediators:
            return "no mediator"
        return f"{len(self.mediators)} mediators, e.g. {self.mediators[0]!r} and {self.mediators[1]!r}"


def product_diagram(ps: Sequence[FinPospace]) -> Diagram:
    return Diagram(tuple(ps))


coproduct_diagram = product_diagram


def parallel_diagram(f: Dimap, g: Dimap) -> Diagram:
    """X ⇉ Y for equalizers and coequalizers."""
    return Diagram((f.source, f.target), ((0, 1, f), (0, 1, g)))


def pushout_diagram(f: Dimap, g: Dimap) -> Diagram:
    return Diagram((f.source, f.target, g.target), ((0, 1, f), (0, 2, g)))


def pullback_diagram(f: Dimap, g: Dimap) -> Diagram:
    return Diagram((f.source, g.source, f.target), ((0, 2, f), (1, 2, g)))


def cone_commutes(diagram: Diagram, cone: Cone) -> bool:
    if len(cone.legs) != len(diagram.objects):
        return False
    return all(compose(arrow, cone.legs[s]) == cone.legs[t] for s, t, arrow in diagram.arrows)


def cocone_commutes(diagram: Diagram, cocone: Cocone) -> bool:
    if len(cocone.legs) != len(diagram.objects):
        return False
    return all(compose(cocone.legs[t], arrow) == cocone.legs[s] for s, t, arrow in diagram.arrows)


def check_universal(diagram: Diagram, universal: Cone | Cocone, candidate: Cone | Cocone) -> UniversalResult:
    """All mediating dimaps from ``candidate`` to a limit, or from a colimit to ``candidate``.

    The candidate has a leg at every object of the diagram. The legs of a
    limit sit at the first objects (product factors, the domain of a parallel
    pair, both corners of a pullback), those of a colimit at the last ones.
    """
    if isinstance(universal, Cocone):
        if not isinstance(candidate, Cocone) or not cocone_commutes(diagram, candidate):
            raise ConstructionError("candidate cocone does not commute with the diagram")
        pairs = list(zip(universal.legs, candidate.legs[len(diagram.objects) - len(universal.legs):]))
        forced: dict[str, str] = {}
        for leg, other in pairs:
            for x in leg.source.points:
                if forced.setdefault(leg(x), other(x)) != other(x):
                    return UniversalResult(())
        found = tuple(
            m
            for m in iter_dimaps(universal.apex, candidate.apex, forced, context="check_universal")
            if all(compose(m, leg) == other for leg, other in pairs)
        )
        return UniversalResult(found)

    if not isinstance(candidate, Cone) or not cone_commutes(diagram, candidate):
        raise ConstructionError("candidate cone does not commute with the diagram")
    pairs = list(zip(universal.legs, candidate.legs))
    found = tuple(
        m
        for m in iter_dimaps(candidate.apex, universal.apex, context="check_universal")
        if all(compose(leg, m) == other for leg, other in pairs)
    )
    return UniversalResult(found)
