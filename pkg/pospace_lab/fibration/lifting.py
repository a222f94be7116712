"""
Lifting problems and the difibration test.

A square

    A --g--> X
    |a       |f
    B --h--> Y

is solved by a diagonal λ: B -> X with λ a = g and f λ = h. Verdicts are
semi-decisions: they quantify over a TestFamily and interval lengths up to
``kmax`` only, and say so in their description.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from pospace_lab.constructions.square import cylinder
from pospace_lab.core.enumeration import first_under_map, iter_under_maps
from pospace_lab.core.pospace import UnderMap, under_compose
from pospace_lab.exception import AnchorMismatchError, ConstructionError, MorphismMismatchError
from pospace_lab.fibration.test_family import TestFamily
from pospace_lab.logger import GLOBAL_LOGGER as log


@dataclass(frozen=True)
class LiftProblem:
    a: UnderMap
    f: UnderMap
    g: UnderMap
    h: UnderMap

    def __post_init__(self):
        if self.a.source != self.g.source or self.a.target != self.h.source:
            raise MorphismMismatchError("left leg does not match the horizontal maps")
        if self.f.source != self.g.target or self.f.target != self.h.target:
            raise MorphismMismatchError("right leg does not match the horizontal maps")

    def commutes(self) -> bool:
        return under_compose(self.f, self.g).images == under_compose(self.h, self.a).images


@dataclass(frozen=True)
class LiftResult:
    problem: LiftProblem
    lift: UnderMap | None

    @property
    def solved(self) -> bool:
        return self.lift is not None

    def __bool__(self) -> bool:
        return self.solved


def solve_lift(problem: LiftProblem) -> LiftResult:
    """First diagonal in canonical order, or an exhausted result."""
    if not problem.commutes():
        raise ConstructionError("lifting square does not commute")
    forced: dict[str, str] = {}
    for z in problem.a.source.space.points:
        if forced.setdefault(problem.a(z), problem.g(z)) != problem.g(z):
            return LiftResult(problem, None)
    x_points = problem.f.source.space.points
    domains = {b: [x for x in x_points if problem.f(x) == problem.h(b)] for b in problem.h.source.space.points}
    lift = first_under_map(problem.a.target, problem.f.source, forced, domains=domains, context="solve_lift")
    return LiftResult(problem, lift)


def lifting_squares(left: UnderMap, right: UnderMap) -> Iterator[LiftProblem]:
    """Every commuting square with ``left`` on the left and ``right`` on the right."""
    if left.source.anchor != right.source.anchor:
        raise AnchorMismatchError("lifting squares need a common anchor")
    for g in iter_under_maps(left.source, right.source, context="lifting_squares"):
        forced: dict[str, str] = {}
        clash = False
        for z in left.source.space.points:
            if forced.setdefault(left(z), right(g(z))) != right(g(z)):
                clash = True
                break
        if clash:
            continue
        for h in iter_under_maps(left.target, right.target, forced, context="lifting_squares"):
            yield LiftProblem(left, right, g, h)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a lifting-property test over a finite sample."""

    kind: str
    passes: bool
    scope: str
    squares: int
    witness: LiftProblem | None = None

    def __bool__(self) -> bool:
        return self.passes

    def describe(self) -> str:
        if self.passes:
            return f"passes (w.r.t. {self.scope})"
        return f"fails (witness square after {self.squares} squares)"


def lifts_against(left: UnderMap, right: UnderMap) -> tuple[int, LiftProblem | None]:
    """Number of squares examined and the first unliftable one, if any."""
    count = 0
    for problem in lifting_squares(left, right):
        count += 1
        if not solve_lift(problem):
            return count, problem
    return count, None


def is_difibration(p: UnderMap, family: TestFamily, kmax: int) -> Verdict:
    """Right lifting against i_0: Z -> cyl(Z, k) for Z in the family and k <= kmax."""
    scope = f"{family.label}, kmax={kmax}"
    total = 0
    for z in family:
        if z.anchor != p.source.anchor:
            raise AnchorMismatchError("family and map live under different anchors")
        for k in range(kmax + 1):
            count, witness = lifts_against(cylinder(z, k).i0, p)
            total += count
            if witness is not None:
                log.info("Difibration test failed", squares=total, k=k, object_points=len(z.space))
                return Verdict("difibration", False, scope, total, witness)
    log.info("Difibration test passed", squares=total, kmax=kmax, family_size=len(family))
    return Verdict("difibration", True, scope, total)


def has_llp(i: UnderMap, against: Iterable[UnderMap], kind: str, scope: str) -> Verdict:
    """Left lifting of ``i`` against each map in ``against``."""
    total = 0
    for p in against:
        if p.source.anchor != i.source.anchor:
            raise AnchorMismatchError("lifting squares need a common anchor")
        count, witness = lifts_against(i, p)
        total += count
        if witness is not None:
            log.info("Left lifting failed", kind=kind, squares=total)
            return Verdict(kind, False, scope, total, witness)
    log.info("Left lifting passed", kind=kind, squares=total)
    return Verdict(kind, True, scope, total)
