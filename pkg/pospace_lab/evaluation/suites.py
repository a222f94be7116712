"""
Axiom suites over seeded families.

Each suite samples a TestFamily under an anchor, builds the pools of
difibrations it needs once, runs its labelled checks and returns a
SuiteReport. Every verdict is relative to the family and ``kmax``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, fields
from functools import cached_property
from typing import Any, Callable

from pospace_lab.cofibration.dicofibration import (
    cylinder_cofibration_witness,
    initial_map_verdict,
    is_dicofibration,
    mapping_cylinder,
    mapping_cylinder_factorization,
    pair_leg,
    section_over_base,
)
from pospace_lab.constructions.limits import (
    under_copair_from,
    under_pair_into,
    under_product,
    under_pullback,
    under_pushout,
)
from pospace_lab.constructions.square import cylinder
from pospace_lab.core.enumeration import enumerate_under_maps
from pospace_lab.core.isomorphism import find_under_isomorphism, is_isomorphism
from pospace_lab.core.pospace import (
    FinPospace,
    UnderMap,
    UnderPospace,
    empty,
    final_map,
    final_object,
    initial_map,
    under_compose,
    under_identity,
)
from pospace_lab.evaluation.report import (
    CheckResult,
    SuiteReport,
    adjunction_witness,
    composable_witness,
    equal_witness,
    isomorphism_witness,
    lift_witness,
    over_point_witness,
    partition_witness,
    restrict_pool,
    sampled_family,
    sampled_trivial_pool,
    section_witness,
    verdict_witness,
)
from pospace_lab.fibration.factorization import (
    FactorizationCertificate,
    certify_path_factorization,
    difibration_pool,
    mapping_path_factorization,
    over_point_agreement,
)
from pospace_lab.fibration.lifting import Verdict, has_llp, is_difibration, lifts_against
from pospace_lab.fibration.path_object import (
    double_path_swap,
    path_map,
    path_object,
    transpose_to_cylinder,
    transpose_to_path,
)
from pospace_lab.fibration.test_family import TestFamily, random_under_map
from pospace_lab.homotopy.engine import (
    cylinder_partition,
    is_dihomotopy_equivalence,
    path_partition,
)
from pospace_lab.logger import GLOBAL_LOGGER as log

SUITES = ("p-category", "fibration", "cofibration", "model-category")


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 7
    family_size: int = 12
    kmax: int = 2
    max_points: int = 3
    sample_maps: int = 6
    pool_max_points: int = 8
    path_max_points: int = 2

    @classmethod
    def from_config(cls, config: dict, profile: str | None = None, **overrides) -> "SuiteConfig":
        """``suites`` defaults, then the named ``suite_profiles`` entry, then explicit overrides."""
        known = {f.name for f in fields(cls)}
        values = {k: v for k, v in (config.get("suites") or {}).items() if k in known}
        if profile is not None:
            profiles = config.get("suite_profiles") or {}
            if profile not in profiles:
                raise ValueError(f"unknown suite profile {profile!r}; expected one of {', '.join(sorted(profiles))}")
            values.update({k: v for k, v in profiles[profile].items() if k in known})
        values.update({k: v for k, v in overrides.items() if v is not None and k in known})
        return cls(**values)


class _Run:
    """Shared state of one suite run: family, seeded sampler, pools and the report."""

    def __init__(self, suite: str, anchor: FinPospace, cfg: SuiteConfig):
        self.cfg = cfg
        self.anchor = anchor
        self.family = sampled_family(anchor, self.family_params())
        self.small = self.family.restricted(cfg.path_max_points)
        self.rng = random.Random(cfg.seed)
        self.report = SuiteReport(suite, cfg.seed, f"{self.family.label}, kmax={cfg.kmax}")

    def family_params(self, small: bool = False) -> dict[str, Any]:
        """Parameters of ``family`` (kmax = cfg.kmax) or of ``small`` (kmax = 1)."""
        return {
            "size": self.cfg.family_size,
            "seed": self.cfg.seed,
            "max_points": self.cfg.max_points,
            "kmax": 1 if small else self.cfg.kmax,
            "restrict": self.cfg.path_max_points if small else None,
        }

    def pool_params(self, small: bool = False) -> dict[str, Any]:
        return {
            "size": self.cfg.family_size,
            "seed": self.cfg.seed,
            "max_points": self.cfg.max_points,
            "kmax": self.cfg.kmax,
            "sample_maps": self.cfg.sample_maps,
            "pool_max_points": self.cfg.pool_max_points,
            "restrict": self.cfg.path_max_points if small else None,
        }

    @cached_property
    def difibrations(self) -> tuple[UnderMap, ...]:
        return difibration_pool(self.family, self.cfg.kmax, self.cfg.seed, self.cfg.sample_maps, self.cfg.pool_max_points)

    @cached_property
    def trivial_difibrations(self) -> tuple[UnderMap, ...]:
        return sampled_trivial_pool(self.anchor, self.pool_params())

    def small_pool(self, pool: tuple[UnderMap, ...]) -> tuple[UnderMap, ...]:
        return restrict_pool(pool, self.cfg.path_max_points)

    def maps(self, count: int, members: TestFamily | None = None) -> list[UnderMap]:
        pool = [m for m in (members if members is not None else self.family) if len(m.space) > 0]
        out = []
        for _ in range(count):
            if not pool:
                break
            f = random_under_map(self.rng, self.rng.choice(pool), self.rng.choice(pool))
            if f is not None:
                out.append(f)
        return out

    def maps_into(self, target: UnderPospace, count: int) -> list[UnderMap]:
        pool = [m for m in self.small if len(m.space) > 0]
        out = []
        for _ in range(count):
            if not pool:
                break
            f = random_under_map(self.rng, self.rng.choice(pool), target)
            if f is not None:
                out.append(f)
        return out

    def composable(self, count: int) -> list[tuple[UnderMap, UnderMap]]:
        pool = [m for m in self.small if len(m.space) > 0]
        out = []
        for _ in range(count):
            if not pool:
                break
            x, y, z = (self.rng.choice(pool) for _ in range(3))
            f, g = random_under_map(self.rng, x, y), random_under_map(self.rng, y, z)
            if f is not None and g is not None:
                out.append((f, g))
        return out

    def add(self, label: str, title: str, passed: bool, detail: str = "", witness: dict | None = None) -> None:
        self.report.add(CheckResult(label, title, passed, detail, None if passed else witness))

    def add_verdicts(self, label: str, title: str, verdicts: list[Verdict]) -> None:
        """One result for a list of verdicts; the first failure supplies the witness square."""
        for verdict in verdicts:
            if not verdict.passes:
                witness = lift_witness(verdict.witness) if verdict.witness is not None else None
                self.add(label, title, False, f"{verdict.kind}: {verdict.describe()}", witness)
                return
        self.add(label, title, True, f"{len(verdicts)} verdicts, {sum(v.squares for v in verdicts)} squares")

    def certificate_witness(self, cert: FactorizationCertificate, small: bool) -> dict[str, Any]:
        """Witness for the first failing check of a factorization certificate."""
        failed = next(c.name for c in cert.checks if not c.ok)
        if failed in ("p∘j = f", "r∘i = f"):
            return equal_witness(under_compose(cert.r_or_p, cert.i), cert.f, failed)
        if failed == "j is a dihomotopy equivalence":
            return verdict_witness("equivalence", cert.i)
        if failed == "r is a dihomotopy equivalence":
            return verdict_witness("equivalence", cert.r_or_p)
        if failed == "p is a difibration":
            return verdict_witness("difibration", cert.r_or_p, self.family_params(small))
        return verdict_witness("dicofibration", cert.i, self.family_params(small), self.pool_params(small))


def _two_of_three(run: _Run, label: str) -> None:
    checked = 0
    for f, g in run.composable(run.cfg.sample_maps):
        flags = [bool(is_dihomotopy_equivalence(m)) for m in (f, g, under_compose(g, f))]
        checked += 1
        if sum(flags) == 2:
            run.add(label, "two-of-three for dihomotopy equivalences", False,
                    f"equivalences (f, g, g∘f) = {tuple(flags)}", composable_witness(f, g))
            return
    run.add(label, "two-of-three for dihomotopy equivalences", True, f"{checked} composable pairs")


def _sections(run: _Run, label: str) -> None:
    title = "every sampled trivial difibration has a section"
    for p in run.trivial_difibrations:
        if section_over_base(p) is None:
            run.add(label, title, False, f"no section of a map with {len(p.source.space)} points", section_witness(p))
            return
    run.add(label, title, True, f"{len(run.trivial_difibrations)} trivial difibrations")


def _homotopy_coincidence(run: _Run, label: str) -> None:
    title = "cylinder and path homotopy give the same classes"
    checked = 0
    members = [m for m in run.small if len(m.space) > 0]
    for x in members:
        for y in members:
            checked += 1
            if cylinder_partition(x, y) != path_partition(x, y):
                run.add(label, title, False, f"hom-set {x.space.label} -> {y.space.label}", partition_witness(x, y))
                return
    run.add(label, title, True, f"{checked} hom-sets")


# ---------- P-category ----------


def p_category_suite(cfg: SuiteConfig, anchor: FinPospace | None = None) -> SuiteReport:
    run = _Run("p-category", anchor if anchor is not None else empty(), cfg)
    kmax = cfg.kmax

    # P1
    broken = None
    for x in run.family:
        for k in range(kmax + 1):
            path = path_object(x, k)
            for tau in (0, 1):
                back = under_compose(path.ev(tau), path.c)
                if back.images != under_identity(x).images:
                    broken = (back, under_identity(x), f"ev{tau}∘c = id")
    run.add("P1", "evaluation after constant path is the identity", broken is None,
            f"{len(run.family)} objects, k <= {kmax}",
            equal_witness(*broken) if broken else None)

    # P2
    point = final_object(run.anchor)
    for k in range(kmax + 1):
        if find_under_isomorphism(path_object(point, k).space, point) is None:
            run.add("P2", "path object preserves the final object", False, f"k={k}",
                    isomorphism_witness(path_object(point, k).space, point))
            break
    else:
        run.add("P2", "path object preserves the final object", True, f"k <= {kmax}")

    checked, failure = 0, None
    for p in run.small_pool(run.difibrations):
        for f in run.maps_into(p.target, 2):
            pb = under_pullback(p, f)
            if len(pb.apex.space) > cfg.path_max_points * 2:
                continue
            lifted = under_pullback(path_map(p, 1), path_map(f, 1))
            comparison = under_pair_into(lifted, [path_map(pb.legs[0], 1), path_map(pb.legs[1], 1)])
            checked += 1
            if not is_isomorphism(comparison):
                failure = isomorphism_witness(path_object(pb.apex, 1).space, lifted.apex)
                break
        if failure:
            break
    run.add("P2-pullback", "path object preserves pullbacks along difibrations", failure is None,
            f"{checked} pullbacks", failure)

    verdicts = []
    for p in run.small_pool(run.difibrations):
        for f in run.maps_into(p.target, 1):
            verdicts.append(is_difibration(under_pullback(p, f).legs[1], run.family, kmax))
    run.add_verdicts("P2-base-change", "base change of a difibration is a difibration", verdicts)

    # P3
    verdicts = []
    pool = run.difibrations
    for p in run.small_pool(pool):
        for q in run.small_pool(pool):
            if q.target == p.source:
                verdicts.append(is_difibration(under_compose(p, q), run.family, kmax))
    for x in run.family:
        verdicts.append(is_difibration(under_identity(x), run.family, kmax))
        verdicts.append(is_difibration(final_map(x), run.family, kmax))
    run.add_verdicts("P3", "composites, isomorphisms and final maps are difibrations", verdicts)

    failure, squares = None, 0
    for p in run.small_pool(pool):
        for z in run.small:
            for k in range(1, kmax + 1):
                for end in (cylinder(z, k).i0, cylinder(z, k).i1):
                    count, witness = lifts_against(end, p)
                    squares += count
                    if witness is not None and failure is None:
                        failure = lift_witness(witness)
    run.add("P3-homotopy-lifting", "difibrations lift homotopies from either end", failure is None,
            f"{squares} squares", failure)

    # P4
    verdicts = []
    for p in run.small_pool(pool):
        q = _path_fibration_comparison(p)
        if len(q.target.space) <= cfg.pool_max_points * 4:
            verdicts.append(is_difibration(q, run.small, 1))
    run.add_verdicts("P4", "(ev0, ev1, p^I) is a difibration", verdicts)

    # P5
    broken = None
    for x in run.small:
        inner, outer, swap = double_path_swap(x, 1)
        for tau in (0, 1):
            lhs = under_compose(path_map(inner.ev(tau), 1), swap)
            if lhs.images != outer.ev(tau).images:
                broken = (lhs, outer.ev(tau), f"ev{tau}^I∘T = ev{tau}")
        twice = under_compose(swap, swap)
        if twice.images != under_identity(outer.space).images:
            broken = (twice, under_identity(outer.space), "T∘T = id")
    run.add("P5", "interchange of double paths", broken is None, f"{len(run.small)} objects",
            equal_witness(*broken) if broken else None)

    _adjunction(run)
    log.info("Suite finished", suite="p-category", passed=run.report.passed)
    return run.report


def _path_fibration_comparison(p: UnderMap) -> UnderMap:
    """P(E) -> (E×E) ×_{B×B} P(B), ω -> ((ω(0), ω(1)), p∘ω)."""
    e, b = p.source, p.target
    path_e, path_b = path_object(e, 1), path_object(b, 1)
    ee, bb = under_product([e, e]), under_product([b, b])
    pp = under_pair_into(bb, [under_compose(p, ee.legs[0]), under_compose(p, ee.legs[1])])
    ends_b = under_pair_into(bb, [path_b.ev0, path_b.ev1])
    target = under_pullback(pp, ends_b)
    ends_e = under_pair_into(ee, [path_e.ev0, path_e.ev1])
    return under_pair_into(target, [ends_e, path_map(p, 1)])


def _adjunction(run: _Run) -> None:
    title = "maps out of the cylinder correspond to maps into the path object"
    checked = 0
    for x in run.small:
        for y in run.small:
            cyl, path = cylinder(x, 1), path_object(y, 1)
            left = enumerate_under_maps(cyl.space, y)
            right = enumerate_under_maps(x, path.space)
            checked += 1
            if len(left) != len(right):
                run.add("adjunction", title, False, f"{len(left)} vs {len(right)} maps", adjunction_witness(x, y))
                return
            for h in left:
                back = transpose_to_cylinder(transpose_to_path(h, cyl), path)
                if back.images != h.images:
                    run.add("adjunction", title, False, "transposition does not round-trip",
                            equal_witness(back, h, "transpose round trip"))
                    return
    run.add("adjunction", title, True, f"{checked} pairs")


# ---------- Fibration category ----------


def fibration_category_suite(cfg: SuiteConfig, anchor: FinPospace | None = None) -> SuiteReport:
    run = _Run("fibration", anchor if anchor is not None else empty(), cfg)
    kmax = cfg.kmax

    _two_of_three(run, "F1")

    verdicts = []
    extension_failure, extensions = None, 0
    for p in run.small_pool(run.difibrations):
        for f in run.maps_into(p.target, 2):
            verdicts.append(is_difibration(under_pullback(p, f).legs[1], run.family, kmax))
            if is_dihomotopy_equivalence(f):
                leg = under_pullback(f, p).legs[1]
                extensions += 1
                if not is_dihomotopy_equivalence(leg) and extension_failure is None:
                    extension_failure = verdict_witness("equivalence", leg)
    run.add_verdicts("F2", "base change of a difibration is a difibration", verdicts)
    run.add("F2-extension", "base change of an equivalence along a difibration is an equivalence",
            extension_failure is None, f"{extensions} pullbacks", extension_failure)

    failure, checked = None, 0
    for f in run.maps(cfg.sample_maps, run.small):
        fact = mapping_path_factorization(f, 1)
        if len(fact.middle.space) > cfg.pool_max_points:
            continue
        cert = certify_path_factorization(fact, run.small, 1)
        checked += 1
        if not cert.ok:
            failure = cert
            break
    run.add("F3", "mapping path factorization", failure is None,
            f"{checked} factorizations" if failure is None else failure.describe(),
            run.certificate_witness(failure, small=True) if failure else None)

    _sections(run, "F4")

    title = "path homotopy over the final object agrees with dihomotopy"
    mismatch, checked = None, 0
    for f in run.maps(cfg.sample_maps, run.small):
        for g in enumerate_under_maps(f.source, f.target)[:4]:
            over, plain = over_point_agreement(f, g, kmax)
            checked += 1
            if over != plain and mismatch is None:
                mismatch = over_point_witness(f, g, kmax)
    run.add("homotopy-over-point", title, mismatch is None, f"{checked} pairs", mismatch)

    log.info("Suite finished", suite="fibration", passed=run.report.passed)
    return run.report


# ---------- Cofibration category ----------


def cofibration_category_suite(cfg: SuiteConfig, anchor: FinPospace | None = None) -> SuiteReport:
    run = _Run("cofibration", anchor if anchor is not None else empty(), cfg)
    kmax = cfg.kmax
    pool = run.trivial_difibrations

    verdicts = [is_dicofibration(under_identity(x), run.family, kmax, pool) for x in run.family]
    for f in run.maps(cfg.sample_maps, run.small):
        i = mapping_cylinder(f, 1).i
        verdicts.append(is_dicofibration(under_compose(i, initial_map(f.source)), run.family, kmax, pool))
    run.add_verdicts("C1", "isomorphisms and composites are dicofibrations", verdicts)

    verdicts, equivalences = [], []
    for f in run.maps(cfg.sample_maps, run.small):
        cyl = cylinder(f.source, 1)
        po = under_pushout(cyl.i0, f)
        leg = po.legs[1]
        verdicts.append(is_dicofibration(leg, run.family, kmax, pool))
        equivalences.append((leg, is_dihomotopy_equivalence(leg).equivalence))
    run.add_verdicts("C2", "cobase change of a trivial dicofibration is a dicofibration", verdicts)
    failed = next((leg for leg, ok in equivalences if not ok), None)
    run.add("C2-trivial", "cobase change of a trivial dicofibration is an equivalence", failed is None,
            f"{len(equivalences)} pushouts", verdict_witness("equivalence", failed) if failed else None)

    failure, checked = None, 0
    for f in run.maps(cfg.sample_maps, run.small):
        cert = mapping_cylinder_factorization(f, 1, run.family, kmax, pool)
        checked += 1
        if not cert.ok:
            failure = cert
            break
    run.add("C3", "mapping cylinder factorization", failure is None,
            f"{checked} factorizations" if failure is None else failure.describe(),
            run.certificate_witness(failure, small=False) if failure else None)

    run.add_verdicts("C4", "every object is fibrant",
                     [is_difibration(final_map(x), run.family, kmax) for x in run.family])

    run.add_verdicts("initial-maps", "initial maps are dicofibrations",
                     [initial_map_verdict(x, run.family, kmax, pool) for x in run.family])
    _sections(run, "initial-maps-sections")

    run.add_verdicts("pair-leg", "(i, ι) out of X ⨿ Y is a dicofibration",
                     [is_dicofibration(pair_leg(mapping_cylinder(f, 1)), run.family, kmax, pool)
                      for f in run.maps(cfg.sample_maps, run.small)])

    title = "cylinder end inclusion is a dicofibration with retraction r"
    failure = None
    for x in run.small:
        for k in range(1, kmax + 1):
            witness = cylinder_cofibration_witness(x, k, run.family, kmax, pool)
            if not witness.passes and failure is None:
                detail = f"k={k}: ends {witness.ends.describe()}, retraction {witness.retraction}, contraction {witness.contraction}"
                failure = (detail, lift_witness(witness.ends.witness) if witness.ends.witness else None)
    run.add("cylinder-witness", title, failure is None, failure[0] if failure else f"{len(run.small)} objects",
            failure[1] if failure else None)

    _homotopy_coincidence(run, "homotopy-coincidence")
    log.info("Suite finished", suite="cofibration", passed=run.report.passed)
    return run.report


# ---------- Model category (absolute case) ----------


def _coproduct_of_maps(f: UnderMap) -> tuple[UnderMap, tuple[UnderMap, UnderMap], tuple[UnderMap, UnderMap]]:
    """f ⨿ f together with the retract data (inclusion, fold) on either side."""
    co_x = under_pushout(initial_map(f.source), initial_map(f.source))
    co_y = under_pushout(initial_map(f.target), initial_map(f.target))
    big = under_copair_from(co_x, [under_compose(co_y.legs[0], f), under_compose(co_y.legs[1], f)])
    fold_x = under_copair_from(co_x, [under_identity(f.source), under_identity(f.source)])
    fold_y = under_copair_from(co_y, [under_identity(f.target), under_identity(f.target)])
    return big, (co_x.legs[0], fold_x), (co_y.legs[0], fold_y)


def model_category_suite(cfg: SuiteConfig) -> SuiteReport:
    run = _Run("model-category", empty(), cfg)
    kmax = cfg.kmax
    fib, trivial = run.difibrations, run.trivial_difibrations
    small_params, small_pool_params = run.family_params(small=True), run.pool_params(small=True)

    _two_of_three(run, "two-of-three")

    classes: dict[str, Callable[[UnderMap], bool]] = {
        "equivalence": lambda m: is_dihomotopy_equivalence(m).equivalence,
        "difibration": lambda m: is_difibration(m, run.small, 1).passes,
        "dicofibration": lambda m: is_dicofibration(m, run.small, 1, run.small_pool(trivial)).passes,
    }
    failure, checked = None, 0
    for f in run.maps(cfg.sample_maps, run.small):
        big, (inc_x, fold_x), (inc_y, fold_y) = _coproduct_of_maps(f)
        commutes = (
            under_compose(big, inc_x).images == under_compose(inc_y, f).images
            and under_compose(f, fold_x).images == under_compose(fold_y, big).images
        )
        if not commutes:
            failure = ("retract diagram does not commute", equal_witness(under_compose(big, inc_x), under_compose(inc_y, f), "retract"))
            break
        for name, member in classes.items():
            checked += 1
            if member(big) and not member(f):
                pool = small_pool_params if name == "dicofibration" else None
                failure = (f"{name} not closed under retracts", verdict_witness(name, f, small_params, pool))
                break
        if failure:
            break
    run.add("retract", "the three classes are closed under retracts", failure is None,
            failure[0] if failure else f"{checked} retract checks", failure[1] if failure else None)

    cofibrations = [initial_map(x) for x in run.small] + [
        mapping_cylinder(f, 1).i for f in run.maps(cfg.sample_maps, run.small)
    ]
    scope = f"{run.family.label}, kmax={kmax}"
    run.add_verdicts("lifting-cofibration", "dicofibrations lift against trivial difibrations",
                     [has_llp(i, trivial, "dicofibration vs trivial difibration", scope) for i in cofibrations])
    ends = [cylinder(x, k).i0 for x in run.small for k in range(1, kmax + 1)]
    run.add_verdicts("lifting-fibration", "trivial dicofibrations lift against difibrations",
                     [has_llp(i, run.small_pool(fib), "trivial dicofibration vs difibration", scope) for i in ends])

    failure, checked = None, 0
    for f in run.maps(cfg.sample_maps, run.small):
        cyl = mapping_cylinder(f, 1)
        if len(cyl.middle.space) > cfg.pool_max_points:
            continue
        refined = mapping_path_factorization(cyl.r, 1)
        if len(refined.middle.space) > cfg.pool_max_points:
            continue
        left = under_compose(refined.j, cyl.i)
        checked += 1
        checks = {
            "p∘(j∘i) = f": (
                under_compose(refined.p, left).images == f.images,
                lambda: equal_witness(under_compose(refined.p, left), f, "p∘(j∘i) = f"),
            ),
            "p is a difibration": (
                is_difibration(refined.p, run.small, 1).passes,
                lambda: verdict_witness("difibration", refined.p, small_params),
            ),
            "p is an equivalence": (
                is_dihomotopy_equivalence(refined.p).equivalence,
                lambda: verdict_witness("equivalence", refined.p),
            ),
            "j∘i is a dicofibration": (
                is_dicofibration(left, run.small, 1, run.small_pool(trivial)).passes,
                lambda: verdict_witness("dicofibration", left, small_params, small_pool_params),
            ),
        }
        bad = [name for name, (ok, _) in checks.items() if not ok]
        if bad:
            failure = (", ".join(bad), checks[bad[0]][1]())
            break
    run.add("factorization-cofibration", "dicofibration followed by trivial difibration", failure is None,
            failure[0] if failure else f"{checked} factorizations", failure[1] if failure else None)

    failure, checked = None, 0
    for f in run.maps(cfg.sample_maps, run.small):
        fact = mapping_path_factorization(f, 1)
        if len(fact.middle.space) > cfg.pool_max_points:
            continue
        checked += 1
        cert = certify_path_factorization(fact, run.small, 1)
        cof = is_dicofibration(fact.j, run.small, 1, run.small_pool(trivial))
        if not cert.ok:
            failure = (cert.describe(), run.certificate_witness(cert, small=True))
            break
        if not cof.passes:
            failure = (f"j is a dicofibration: {cof.describe()}", lift_witness(cof.witness))
            break
    run.add("factorization-fibration", "trivial dicofibration followed by difibration", failure is None,
            failure[0] if failure else f"{checked} factorizations", failure[1] if failure else None)

    _homotopy_coincidence(run, "homotopy-coincidence")
    _sections(run, "sections")
    log.info("Suite finished", suite="model-category", passed=run.report.passed)
    return run.report


def run_suite(name: str, cfg: SuiteConfig, anchor: FinPospace | None = None) -> SuiteReport:
    if name == "p-category":
        return p_category_suite(cfg, anchor)
    if name == "fibration":
        return fibration_category_suite(cfg, anchor)
    if name == "cofibration":
        return cofibration_category_suite(cfg, anchor)
    if name == "model-category":
        return model_category_suite(cfg)
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
