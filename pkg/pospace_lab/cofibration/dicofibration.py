"""
Dicofibrations: left lifting against sampled trivial difibrations.

Also builds the mapping cylinder factorization, the cylinder witness for
X □_C {0,1} -> cyl(X, k), and the finite version of the endpoint inclusion
{0,1} -> I that fails to be a dicofibration.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from pospace_lab.constructions.limits import product, under_copair_from, under_pushout
from pospace_lab.constructions.square import cylinder, cylinder_ends
from pospace_lab.core.enumeration import iter_dimaps, iter_under_maps
from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    UnderMap,
    UnderPospace,
    absolute,
    initial_map,
    interval,
    under_compose,
    under_identity,
)
from pospace_lab.fibration.factorization import (
    Check,
    FactorizationCertificate,
    difibration_pool,
    homotopy_over_base,
    mapping_path_factorization,
)
from pospace_lab.fibration.lifting import LiftProblem, Verdict, has_llp, is_difibration, solve_lift
from pospace_lab.fibration.test_family import TestFamily, random_under_map
from pospace_lab.homotopy.engine import dihomotopic, is_dihomotopy_equivalence
from pospace_lab.logger import GLOBAL_LOGGER as log


def trivial_difibration_pool(
    family: TestFamily, kmax: int, seed: int, sample_maps: int, max_points: int = 8
) -> tuple[UnderMap, ...]:
    """Cylinder projections, mapping-path legs of equivalences and identities, each re-verified."""
    rng = random.Random(seed)
    candidates: list[tuple[UnderMap, UnderMap | None]] = []
    for x in family:
        candidates.append((under_identity(x), under_identity(x)))
        if len(x.space) * 3 <= max_points:
            cyl = cylinder(x, 1)
            candidates.append((cyl.r, cyl.i0))
    members = [m for m in family if len(m.space) > 0]
    for _ in range(sample_maps):
        if not members:
            break
        f = random_under_map(rng, rng.choice(members), rng.choice(members))
        if f is None or not is_dihomotopy_equivalence(f):
            continue
        fact = mapping_path_factorization(f, 1)
        if len(fact.middle.space) <= max_points:
            candidates.append((fact.p, None))

    admitted, seen = [], set()
    for p, hint in candidates:
        key = (p.source, p.target, p.images)
        if key in seen:
            continue
        seen.add(key)
        if is_difibration(p, family, kmax).passes and is_dihomotopy_equivalence(p, hint).equivalence:
            admitted.append(p)
    log.info("Trivial difibration pool built", candidates=len(seen), admitted=len(admitted))
    return tuple(admitted)


def _scope(family: TestFamily, kmax: int, pool: tuple[UnderMap, ...]) -> str:
    return f"{family.label}, kmax={kmax}, pool={len(pool)}"


def is_dicofibration(
    i: UnderMap, family: TestFamily, kmax: int, pool: tuple[UnderMap, ...] | None = None, seed: int = 0
) -> Verdict:
    if pool is None:
        pool = trivial_difibration_pool(family, kmax, seed, sample_maps=4)
    return has_llp(i, pool, "dicofibration", _scope(family, kmax, pool))


def is_trivial_dicofibration_via_fibration_llp(
    i: UnderMap, family: TestFamily, kmax: int, pool: tuple[UnderMap, ...] | None = None, seed: int = 0
) -> Verdict:
    """Left lifting against all sampled difibrations, not only trivial ones."""
    if pool is None:
        pool = difibration_pool(family, kmax, seed, sample_maps=4)
    return has_llp(i, pool, "trivial dicofibration", _scope(family, kmax, pool))


def section_over_base(p: UnderMap) -> UnderMap | None:
    """A section s of p with s ∘ p homotopic to the identity over the base."""
    e, b = p.source, p.target
    fibres = {y: [x for x in e.space.points if p(x) == y] for y in b.space.points}
    for s in iter_under_maps(b, e, domains=fibres, context="section_over_base"):
        if homotopy_over_base(under_compose(s, p), under_identity(e), p):
            return s
    return None


def initial_map_verdict(x: UnderPospace, family: TestFamily, kmax: int, pool: tuple[UnderMap, ...]) -> Verdict:
    """(C, id) -> X lifts against every pooled trivial difibration."""
    return has_llp(initial_map(x), pool, "initial map is a dicofibration", _scope(family, kmax, pool))


@dataclass(frozen=True)
class CylinderWitness:
    ends: Verdict
    retraction: bool
    contraction: bool

    @property
    def passes(self) -> bool:
        return self.ends.passes and self.retraction and self.contraction


def cylinder_cofibration_witness(
    x: UnderPospace, k: int, family: TestFamily, kmax: int, pool: tuple[UnderMap, ...]
) -> CylinderWitness:
    """X □_C {0,1} -> cyl(X, k) lifts against the pool; r is an equivalence with inverse i_0."""
    cyl = cylinder(x, k)
    ends = has_llp(cylinder_ends(cyl), pool, "cylinder ends inclusion", _scope(family, kmax, pool))
    retraction = under_compose(cyl.r, cyl.i0).images == under_identity(x).images
    contraction = dihomotopic(under_compose(cyl.i0, cyl.r), under_identity(cyl.space)).related
    return CylinderWitness(ends, retraction, contraction)


@dataclass(frozen=True)
class CylinderFactorization:
    f: UnderMap
    i: UnderMap
    r: UnderMap
    iota: UnderMap
    middle: UnderPospace
    k: int


def mapping_cylinder(f: UnderMap, k: int) -> CylinderFactorization:
    """Z = cyl(X) ⊔_X Y along i_1 and f; i = f̄ i_0, r = (f r_cyl, id_Y)."""
    cyl = cylinder(f.source, k)
    po = under_pushout(cyl.i1, f)
    i = under_compose(po.legs[0], cyl.i0)
    r = under_copair_from(po, [under_compose(f, cyl.r), under_identity(f.target)])
    return CylinderFactorization(f, i, r, po.legs[1], po.apex, k)


def pair_leg(fact: CylinderFactorization) -> UnderMap:
    """(i, ι): X ⨿_C Y -> Z."""
    co = under_pushout(initial_map(fact.f.source), initial_map(fact.f.target))
    return under_copair_from(co, [fact.i, fact.iota])


def mapping_cylinder_factorization(
    f: UnderMap, k: int, family: TestFamily | None = None, kmax: int = 1, pool: tuple[UnderMap, ...] | None = None
) -> FactorizationCertificate:
    fact = mapping_cylinder(f, k)
    checks = [
        Check("r∘i = f", under_compose(fact.r, fact.i).images == f.images),
        Check("r is a dihomotopy equivalence", is_dihomotopy_equivalence(fact.r, candidate=fact.iota).equivalence),
    ]
    if family is not None:
        verdict = is_dicofibration(fact.i, family, kmax, pool)
        checks.append(Check("i is a dicofibration", verdict.passes, verdict.describe()))
    log.info("Mapping cylinder factorization certified", middle_points=len(fact.middle.space), k=k)
    return FactorizationCertificate(f, fact.i, fact.r, fact.middle, tuple(checks))


# ---------- Endpoint inclusion counterexample ----------


@dataclass(frozen=True)
class EndpointCounterexample:
    n: int
    problem: LiftProblem
    sections: int
    matching: int
    lift_found: bool
    relative: Verdict | None = None

    @property
    def reproduced(self) -> bool:
        return self.matching == 0 and not self.lift_found

    def transcript(self) -> list[str]:
        z = self.problem.f.source.space
        lines = [
            f"directed interval teeth n={self.n}: {len(self.problem.a.target.space)} points",
            f"Z = D×{{t0}} ∪ {{ends}}×F: {len(z)} points",
            f"dimaps λ: D -> Z with r∘λ = id: {self.sections}",
            f"of which λ∘i = j: {self.matching}",
            "verdict: " + ("reproduced" if self.reproduced else "refuted"),
        ]
        if self.relative is not None:
            lines.append(f"relative inclusion under {{0,1}}: {self.relative.describe()}")
        return lines


def endpoint_counterexample(
    n: int, relative_family_size: int = 0, kmax: int = 1, seed: int = 7
) -> EndpointCounterexample:
    """Search for λ: D -> Z with λ i = j and r λ = id; the search is expected to exhaust."""
    d = interval("directed", n)
    f = interval("free", n)
    ends = FinPospace.build(["0", "1"], dir=[("0", "1")], label="{0,1}")
    prod = product([d.space, f.space])
    keep = [
        z
        for z, a, t in zip(prod.apex.points, prod.legs[0].images, prod.legs[1].images)
        if t == f.start or a in (d.start, d.end)
    ]
    z_space = prod.apex.subspace(keep, label="Z")
    position = {z: (a, t) for z, a, t in zip(prod.apex.points, prod.legs[0].images, prod.legs[1].images)}

    named = {position[z]: z for z in keep}
    i = Dimap.from_mapping(ends, d.space, {"0": d.start, "1": d.end})
    j = Dimap.from_mapping(ends, z_space, {"0": named[(d.start, f.end)], "1": named[(d.end, f.end)]})
    r = Dimap(z_space, d.space, tuple(position[z][0] for z in z_space.points))
    dd, zz, cc = absolute(d.space), absolute(z_space), absolute(ends)
    problem = LiftProblem(
        UnderMap(cc, dd, i), UnderMap(zz, dd, r), UnderMap(cc, zz, j), under_identity(dd)
    )

    fibres = {a: [z for z in z_space.points if position[z][0] == a] for a in d.space.points}
    sections = matching = 0
    for lam in iter_dimaps(d.space, z_space, domains=fibres, context="endpoint_counterexample"):
        sections += 1
        if all(lam(i(c)) == j(c) for c in ends.points):
            matching += 1
    lift_found = solve_lift(problem).solved

    relative = None
    if relative_family_size > 0:
        family = TestFamily.sample(ends, relative_family_size, seed, max_points=2)
        pool = trivial_difibration_pool(family, kmax, seed, sample_maps=2)
        relative_d = UnderPospace(ends, d.space, i)
        relative = has_llp(initial_map(relative_d), pool, "relative endpoint inclusion", _scope(family, kmax, pool))
    result = EndpointCounterexample(n, problem, sections, matching, lift_found, relative)
    log.info("Endpoint inclusion search finished", n=n, sections=sections, matching=matching)
    return result
