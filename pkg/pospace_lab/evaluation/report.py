"""
Suite reports and standalone failure witnesses.

A witness is a JSON document holding every object it mentions in the textual
model format and every map as a point dictionary, plus the name of the check
to re-run. ``replay`` rebuilds the objects and runs that check again.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pospace_lab.cofibration.dicofibration import is_dicofibration, section_over_base, trivial_difibration_pool
from pospace_lab.constructions.square import cylinder
from pospace_lab.core.enumeration import enumerate_under_maps
from pospace_lab.core.isomorphism import find_under_isomorphism
from pospace_lab.core.model_io import format_model, parse_model
from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    UnderMap,
    UnderPospace,
    as_under,
    under_compose,
)
from pospace_lab.exception import ModelFormatError
from pospace_lab.fibration.factorization import over_point_agreement
from pospace_lab.fibration.lifting import LiftProblem, is_difibration, solve_lift
from pospace_lab.fibration.path_object import path_object
from pospace_lab.fibration.test_family import TestFamily
from pospace_lab.homotopy.engine import (
    cylinder_partition,
    is_dihomotopy_equivalence,
    path_partition,
)
from pospace_lab.logger import GLOBAL_LOGGER as log

WITNESS_VERSION = 1


# ---------- Witness encoding ----------


class WitnessWriter:
    """Collects objects and maps under stable names while a witness is assembled."""

    def __init__(self, kind: str):
        self.doc: dict[str, Any] = {"version": WITNESS_VERSION, "check": kind, "objects": {}, "maps": {}}
        self._names: dict[UnderPospace, str] = {}

    def obj(self, x: UnderPospace) -> str:
        if x not in self._names:
            name = f"X{len(self._names)}"
            self._names[x] = name
            self.doc["objects"][name] = {
                "space": format_model(x.space, name=name),
                "anchor": format_model(x.anchor, name="C"),
                "xi": x.xi.as_dict(),
            }
        return self._names[x]

    def map(self, key: str, f: UnderMap) -> "WitnessWriter":
        self.doc["maps"][key] = {"source": self.obj(f.source), "target": self.obj(f.target), "images": f.as_dict()}
        return self

    def set(self, key: str, value: Any) -> "WitnessWriter":
        self.doc[key] = value
        return self


def _read_space(text: str, source: str) -> FinPospace:
    space = parse_model(text, source=source)
    if not isinstance(space, FinPospace):
        raise ModelFormatError("witness objects must be plain model texts", None, source)
    return space


class WitnessReader:
    def __init__(self, doc: dict[str, Any], source: str = "<witness>"):
        if doc.get("version") != WITNESS_VERSION or "check" not in doc:
            raise ModelFormatError("not a witness document", None, source)
        self.doc = doc
        self.source = source
        self._objects: dict[str, UnderPospace] = {}

    @property
    def kind(self) -> str:
        return self.doc["check"]

    def obj(self, name: str) -> UnderPospace:
        if name not in self._objects:
            try:
                entry = self.doc["objects"][name]
            except KeyError:
                raise ModelFormatError(f"witness mentions unknown object {name!r}", None, self.source) from None
            anchor = _read_space(entry["anchor"], self.source)
            space = _read_space(entry["space"], self.source)
            self._objects[name] = as_under(anchor, space, Dimap.from_mapping(anchor, space, entry["xi"]))
        return self._objects[name]

    def map(self, key: str) -> UnderMap:
        try:
            entry = self.doc["maps"][key]
        except KeyError:
            raise ModelFormatError(f"witness has no map {key!r}", None, self.source) from None
        source, target = self.obj(entry["source"]), self.obj(entry["target"])
        return UnderMap(source, target, Dimap.from_mapping(source.space, target.space, entry["images"]))


def load_witness(path: str | Path) -> WitnessReader:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelFormatError(f"cannot read witness: {exc}", None, str(path)) from exc
    return WitnessReader(doc, str(path))


def lift_witness(problem) -> dict[str, Any]:
    w = WitnessWriter("lift")
    for key in ("a", "f", "g", "h"):
        w.map(key, getattr(problem, key))
    return w.doc


def equal_witness(lhs: UnderMap, rhs: UnderMap, law: str) -> dict[str, Any]:
    return WitnessWriter("equal").map("lhs", lhs).map("rhs", rhs).set("law", law).doc


def composable_witness(f: UnderMap, g: UnderMap) -> dict[str, Any]:
    return WitnessWriter("two-of-three").map("f", f).map("g", g).doc


def partition_witness(source: UnderPospace, target: UnderPospace) -> dict[str, Any]:
    w = WitnessWriter("partition")
    return w.set("source", w.obj(source)).set("target", w.obj(target)).doc


def isomorphism_witness(x: UnderPospace, y: UnderPospace) -> dict[str, Any]:
    w = WitnessWriter("isomorphism")
    return w.set("left", w.obj(x)).set("right", w.obj(y)).doc


def adjunction_witness(x: UnderPospace, y: UnderPospace) -> dict[str, Any]:
    w = WitnessWriter("adjunction")
    return w.set("source", w.obj(x)).set("target", w.obj(y)).doc


def over_point_witness(f: UnderMap, g: UnderMap, kmax: int) -> dict[str, Any]:
    return WitnessWriter("over-point").map("f", f).map("g", g).set("kmax", kmax).doc


def section_witness(p: UnderMap) -> dict[str, Any]:
    return WitnessWriter("section").map("p", p).doc


def verdict_witness(
    kind: str, m: UnderMap, family: dict[str, Any] | None = None, pool: dict[str, Any] | None = None
) -> dict[str, Any]:
    """``kind`` is one of difibration, dicofibration or equivalence.

    ``family`` and ``pool`` hold the sampling parameters the failed check
    used (see ``sampled_family`` and ``sampled_trivial_pool``).
    """
    w = WitnessWriter("verdict").map("m", m).set("property", kind)
    if family is not None:
        w.set("family", family)
    if pool is not None:
        w.set("pool", pool)
    return w.doc


# ---------- Sampling parameters ----------


def sampled_family(anchor: FinPospace, params: dict[str, Any]) -> TestFamily:
    """Rebuild a family from its parameters; ``restrict`` keeps only the small members."""
    family = TestFamily.sample(anchor, params["size"], params["seed"], params["max_points"])
    bound = params.get("restrict")
    return family if bound is None else family.restricted(bound)


def restrict_pool(pool: tuple[UnderMap, ...], bound: int | None) -> tuple[UnderMap, ...]:
    if bound is None:
        return tuple(pool)
    return tuple(p for p in pool if len(p.source.space) <= bound and len(p.target.space) <= bound)


def sampled_trivial_pool(anchor: FinPospace, params: dict[str, Any]) -> tuple[UnderMap, ...]:
    family = TestFamily.sample(anchor, params["size"], params["seed"], params["max_points"])
    pool = trivial_difibration_pool(
        family, params["kmax"], params["seed"], params["sample_maps"], params["pool_max_points"]
    )
    return restrict_pool(pool, params.get("restrict"))


# ---------- Replay ----------


@dataclass(frozen=True)
class ReplayOutcome:
    kind: str
    reproduced: bool
    message: str


def replay(reader: WitnessReader) -> ReplayOutcome:
    """Re-run the failed check; ``reproduced`` is True when it fails again."""
    kind = reader.kind
    if kind == "lift":
        problem = LiftProblem(*(reader.map(key) for key in ("a", "f", "g", "h")))
        solved = solve_lift(problem).solved
        return ReplayOutcome(kind, not solved, "lift found" if solved else "no diagonal exists")
    if kind == "equal":
        same = reader.map("lhs").images == reader.map("rhs").images
        return ReplayOutcome(kind, not same, f"{reader.doc.get('law', 'identity')}: {'holds' if same else 'violated'}")
    if kind == "two-of-three":
        f, g = reader.map("f"), reader.map("g")
        flags = [bool(is_dihomotopy_equivalence(m)) for m in (f, g, under_compose(g, f))]
        broken = sum(flags) == 2
        return ReplayOutcome(kind, broken, f"equivalences (f, g, g∘f) = {tuple(flags)}")
    if kind == "partition":
        source, target = reader.obj(reader.doc["source"]), reader.obj(reader.doc["target"])
        cyl, path = cylinder_partition(source, target), path_partition(source, target)
        return ReplayOutcome(kind, cyl != path, f"cylinder classes {len(cyl)}, path classes {len(path)}")
    if kind == "isomorphism":
        found = find_under_isomorphism(reader.obj(reader.doc["left"]), reader.obj(reader.doc["right"]))
        return ReplayOutcome(kind, found is None, "isomorphic" if found is not None else "not isomorphic")
    if kind == "adjunction":
        x, y = reader.obj(reader.doc["source"]), reader.obj(reader.doc["target"])
        left = len(enumerate_under_maps(cylinder(x, 1).space, y))
        right = len(enumerate_under_maps(x, path_object(y, 1).space))
        return ReplayOutcome(kind, left != right, f"{left} maps out of the cylinder, {right} into the path object")
    if kind == "over-point":
        f, g = reader.map("f"), reader.map("g")
        over, plain = over_point_agreement(f, g, reader.doc["kmax"])
        return ReplayOutcome(kind, over != plain, f"over the point: {over}, dihomotopic: {plain}")
    if kind == "section":
        found = section_over_base(reader.map("p")) is not None
        return ReplayOutcome(kind, not found, "section found" if found else "no section over the base")
    if kind == "verdict":
        m = reader.map("m")
        prop = reader.doc["property"]
        if prop == "equivalence":
            found = is_dihomotopy_equivalence(m).equivalence
            return ReplayOutcome(kind, not found, "equivalence" if found else "not an equivalence")
        params = reader.doc["family"]
        family = sampled_family(m.source.anchor, params)
        if prop == "difibration":
            verdict = is_difibration(m, family, params["kmax"])
        else:
            pool = sampled_trivial_pool(m.source.anchor, reader.doc["pool"]) if "pool" in reader.doc else None
            verdict = is_dicofibration(m, family, params["kmax"], pool, seed=params["seed"])
        return ReplayOutcome(kind, not verdict.passes, verdict.describe())
    raise ModelFormatError(f"unknown witness kind {kind!r}", None, reader.source)


# ---------- Suite reports ----------


@dataclass(frozen=True)
class CheckResult:
    label: str
    title: str
    passed: bool
    detail: str = ""
    witness: dict[str, Any] | None = field(default=None, compare=False)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    scope: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, result: CheckResult) -> None:
        log.info("Check finished", suite=self.suite, label=result.label, passed=result.passed)
        self.results.append(result)

    def witness_name(self, result: CheckResult) -> str:
        return f"{self.suite}-{result.label}.witness.json"

    def summary_lines(self) -> list[str]:
        lines = []
        for r in self.results:
            status = "pass" if r.passed else "fail"
            witness = self.witness_name(r) if (not r.passed and r.witness is not None) else "-"
            lines.append(f"{self.suite} {r.label} {status} {witness}")
        return lines

    def render(self) -> str:
        head = [
            f"suite: {self.suite}",
            f"seed: {self.seed}",
            f"scope: {self.scope}",
            "",
        ]
        body = []
        for r in self.results:
            verdict = "PASS" if r.passed else "FAIL"
            body.append(f"[{verdict}] {r.label} {r.title}")
            if r.detail:
                body.append(f"       {r.detail}")
        tail = ["", f"overall: {'PASS' if self.passed else 'FAIL'} ({sum(r.passed for r in self.results)}/{len(self.results)})"]
        return "\n".join(head + body + tail) + "\n"

    def write(self, out_dir: str | Path) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = [out / f"{self.suite}.report.txt", out / f"{self.suite}.summary.txt"]
        written[0].write_text(self.render(), encoding="utf-8")
        written[1].write_text("\n".join(self.summary_lines()) + "\n", encoding="utf-8")
        for r in self.results:
            if not r.passed and r.witness is not None:
                path = out / self.witness_name(r)
                path.write_text(json.dumps(r.witness, indent=2, sort_keys=True) + "\n", encoding="utf-8")
                written.append(path)
        log.info("Suite report written", suite=self.suite, files=len(written), out_dir=str(out))
        return written
