"""
pospace-lab command line.

Exit codes: 0 success, 1 usage or input errors, 2 a check failed (reports
and witnesses are written), 3 the search size guard tripped.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from pospace_lab import __version__
from pospace_lab.cofibration.dicofibration import endpoint_counterexample
from pospace_lab.concurrency.geometry import GeoModel, count_paths, find_deadlocks, find_unreachable, load_geometry
from pospace_lab.concurrency.oracle import oracle_classify
from pospace_lab.concurrency.pv_parser import load_pv, pv_to_boxes
from pospace_lab.concurrency.schedules import classify as classify_schedules
from pospace_lab.concurrency.svg_render import render_svg, write_svg
from pospace_lab.constructions.limits import (
    coequalizer,
    coproduct,
    equalizer,
    product,
    under_pullback,
    under_pushout,
)
from pospace_lab.constructions.square import cylinder, square_c
from pospace_lab.core.model_io import dump_model, format_model, load_map, load_model, load_under
from pospace_lab.core.pospace import FinPospace, UnderPospace, empty
from pospace_lab.evaluation.report import load_witness, replay
from pospace_lab.evaluation.suites import SUITES, SuiteConfig, run_suite
from pospace_lab.exception import (
    AnchorMismatchError,
    ConstructionError,
    InvalidPospaceError,
    ModelFormatError,
    MorphismMismatchError,
    SizeGuardExceeded,
)
from pospace_lab.fibration.path_object import path_object
from pospace_lab.homotopy.engine import classes, fence_between
from pospace_lab.logger import GLOBAL_LOGGER as log
from pospace_lab.utils.config_loader import load_config
from pospace_lab.utils.search_budget import search_limit

EXIT_OK, EXIT_INPUT, EXIT_FAILED, EXIT_GUARD = 0, 1, 2, 3

CONSTRUCTIONS = ("product", "coproduct", "equalizer", "coequalizer", "pushout", "pullback", "square", "cylinder", "path")


@dataclass(frozen=True)
class RunConfig:
    seed: int
    max_maps: int
    out_dir: Path
    suite: SuiteConfig
    resolution: int
    oracle_max_resolution: int
    svg: dict
    relative_family_size: int = 3
    counterexample_kmax: int = 1

    def __post_init__(self):
        bounds = {
            "max_maps": self.max_maps,
            "resolution": self.resolution,
            "family_size": self.suite.family_size,
            "max_points": self.suite.max_points,
            "sample_maps": self.suite.sample_maps,
        }
        for name, value in bounds.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.suite.kmax < 0:
            raise ValueError(f"kmax must be >= 0, got {self.suite.kmax}")

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: dict) -> "RunConfig":
        suite = SuiteConfig.from_config(
            config,
            seed=args.seed,
            profile=getattr(args, "profile", None),
            family_size=getattr(args, "family_size", None),
            kmax=getattr(args, "kmax", None),
        )
        conc = config.get("concurrency", {})
        counter = config.get("counterexample", {})
        relative = getattr(args, "relative", None)
        max_maps = args.max_maps if args.max_maps is not None else config.get("search", {}).get("max_maps", 1_000_000)
        resolution = getattr(args, "resolution", None)
        return cls(
            seed=suite.seed,
            max_maps=int(max_maps),
            out_dir=Path(args.out),
            suite=suite,
            resolution=resolution if resolution is not None else int(conc.get("resolution", 3)),
            oracle_max_resolution=int(conc.get("oracle_max_resolution", 4)),
            svg=dict(config.get("svg", {})),
            relative_family_size=relative if relative is not None else int(counter.get("relative_family_size", 3)),
            counterexample_kmax=int(counter.get("kmax", 1)),
        )


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pospace-lab", description="Finite directed homotopy toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="YAML configuration (default: packaged config.yaml)")
    parser.add_argument("--max-maps", type=int, default=None, help="bound on every exhaustive search")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampled families")
    parser.add_argument("--out", default="reports", help="directory for reports and witnesses")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a limit, colimit, cylinder or path object")
    p.add_argument("operation", choices=CONSTRUCTIONS)
    p.add_argument("inputs", nargs="+", help="model files, or map files for (co)equalizers, pushouts, pullbacks")
    p.add_argument("--k", type=int, default=1, help="tooth count for cylinder and path")
    p.add_argument("--trace", action="store_true", help="print the quotient trace of a colimit")
    p.add_argument("-o", "--output", default=None, help="write the result model to this file")

    p = sub.add_parser("classify", help="dihomotopy classes of maps between two objects")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--witness", action="store_true", help="print a fence from each map to its representative")

    p = sub.add_parser("check-axioms", help="run an axiom suite over a sampled family")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--family-size", type=int, default=None)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--profile", default=None, help="named entry of suite_profiles in the configuration")
    p.add_argument("--anchor", default=None, help="model file of the anchor (default: empty)")

    p = sub.add_parser("analyze-pv", help="schedules of a PV program or geometry file")
    p.add_argument("program", help="PV program, or a geometry file ending in .geo")
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--svg", default=None, help="write a picture of the model")
    p.add_argument("--classes", action="store_true", help="classify schedules")
    p.add_argument("--oracle", action="store_true", help="cross-check classes with the homotopy engine")
    p.add_argument("--deadlocks", action="store_true", help="report deadlocks and unreachable states")

    p = sub.add_parser("counterexample", help="exhaustive search transcripts")
    p.add_argument("which", choices=("endpoint-inclusion",))
    p.add_argument("--n", type=int, default=1, help="teeth of the directed interval")
    p.add_argument(
        "--relative", type=int, default=None, help="family size for the relative check (default from config, 0 skips it)"
    )

    p = sub.add_parser("replay", help="re-run the check stored in a witness file")
    p.add_argument("witness")
    return parser


def _emit(lines: Sequence[str]) -> None:
    sys.stdout.write("".join(line + "\n" for line in lines))


def _show(obj: FinPospace | UnderPospace, output: str | None) -> list[str]:
    if output:
        dump_model(obj, output)
        return [f"written: {output}"]
    lines = format_model(obj).splitlines()
    if isinstance(obj, UnderPospace) and obj.anchor.points:
        lines += ["", *format_model(obj.anchor, name="C").splitlines()]
    return lines


def cmd_construct(args, cfg: RunConfig) -> int:
    op, inputs = args.operation, args.inputs
    trace = None
    if op in ("product", "coproduct"):
        spaces = [_plain(load_model(p)) for p in inputs]
        result = (product if op == "product" else coproduct)(spaces).apex
    elif op in ("equalizer", "coequalizer", "pushout", "pullback"):
        if len(inputs) != 2:
            raise ConstructionError(f"{op} takes exactly two map files")
        f, g = (load_map(p) for p in inputs)
        if op == "equalizer":
            result = equalizer(f.f, g.f).apex
        elif op == "pullback":
            result = under_pullback(f, g).apex
        elif op == "coequalizer":
            result, _, trace = coequalizer(f.f, g.f)
        else:
            cocone = under_pushout(f, g)
            result, trace = cocone.apex, cocone.trace
    elif op == "square":
        if len(inputs) != 2:
            raise ConstructionError("square takes an object and a plain space")
        result = square_c(load_under(inputs[0]), _plain(load_model(inputs[1])))
    else:
        if len(inputs) != 1:
            raise ConstructionError(f"{op} takes exactly one object")
        x = load_under(inputs[0])
        result = cylinder(x, args.k).space if op == "cylinder" else path_object(x, args.k).space
    lines = _show(result, args.output)
    if args.trace and trace is not None:
        lines += ["", *trace.dump().rstrip("\n").splitlines()]
    _emit(lines)
    return EXIT_OK


def _plain(obj: FinPospace | UnderPospace) -> FinPospace:
    return obj.space if isinstance(obj, UnderPospace) else obj


def cmd_classify(args, cfg: RunConfig) -> int:
    source, target = load_under(args.source), load_under(args.target)
    result = classes(source, target)
    lines = [f"{len(result.space.maps)} maps", f"{len(result)} classes"]
    for n, members in enumerate(result.classes):
        rep = result.space.maps[members[0]]
        lines.append(f"class {n}: {len(members)} maps, representative {_pairs(rep.as_dict())}")
        if args.witness:
            for i in members[1:]:
                fence = fence_between(result.space, rep, result.space.maps[i]).fence
                lines.append("  fence " + " ~ ".join(_pairs(h.as_dict()) for h in fence))
    _emit(lines)
    return EXIT_OK


def _pairs(images: dict[str, str]) -> str:
    return "{" + ", ".join(f"{x}->{y}" for x, y in images.items()) + "}"


def cmd_check_axioms(args, cfg: RunConfig) -> int:
    anchor = _plain(load_model(args.anchor)) if args.anchor else empty()
    if args.suite == "model-category" and anchor.points:
        raise ConstructionError("the model-category suite runs over the empty anchor")
    report = run_suite(args.suite, cfg.suite, anchor)
    report.write(cfg.out_dir)
    _emit(report.render().rstrip("\n").splitlines() + [""] + report.summary_lines())
    return EXIT_OK if report.passed else EXIT_FAILED


def _load_for_analysis(path: str, resolution: int | None, default_resolution: int) -> GeoModel:
    if path.endswith(".geo"):
        model = load_geometry(path)
        return replace(model, resolution=resolution) if resolution else model
    return pv_to_boxes(load_pv(path), resolution or default_resolution, Path(path).stem)


def cmd_analyze_pv(args, cfg: RunConfig) -> int:
    model = _load_for_analysis(args.program, args.resolution, cfg.resolution)
    lines = [
        f"model: {model.label}, {model.dims} processes, {len(model.boxes)} forbidden boxes, resolution {model.resolution}",
        f"paths: {count_paths(model)}",
    ]
    schedule_classes = None
    deadlocks: list = []
    if args.classes:
        schedule_classes = classify_schedules(model)
        lines.append(f"{len(schedule_classes)} classes")
        for n, rep in enumerate(schedule_classes.representatives):
            lines.append(f"class {n}: {len(schedule_classes.classes[n])} paths, representative {' '.join(map(_vertex, rep))}")
        if args.oracle:
            oracle = oracle_classify(model, cfg.oracle_max_resolution)
            agree = oracle.same_partition(schedule_classes)
            lines.append(f"oracle: {len(oracle)} classes, {'agrees' if agree else 'DISAGREES'}")
            if not agree:
                _emit(lines)
                return EXIT_FAILED
    if args.deadlocks:
        deadlocks = find_deadlocks(model)
        unreachable = find_unreachable(model)
        lines.append(f"deadlocks: {' '.join(map(_vertex, deadlocks)) or 'none'}")
        lines.append(f"unreachable: {' '.join(map(_vertex, unreachable)) or 'none'}")
    if args.svg:
        svg = cfg.svg
        document = render_svg(
            model, schedule_classes, deadlocks,
            size=int(svg.get("size", 400)), margin=int(svg.get("margin", 20)),
            palette=svg.get("palette") or ("#1f77b4",),
        )
        write_svg(document, args.svg)
        lines.append(f"svg: {args.svg}")
    _emit(lines)
    return EXIT_OK


def _vertex(v) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


def cmd_counterexample(args, cfg: RunConfig) -> int:
    if args.n < 1:
        raise ConstructionError(f"--n must be >= 1, got {args.n}")
    if cfg.relative_family_size < 0:
        raise ConstructionError(f"--relative must be >= 0, got {cfg.relative_family_size}")
    result = endpoint_counterexample(args.n, cfg.relative_family_size, cfg.counterexample_kmax, cfg.seed)
    _emit(result.transcript())
    return EXIT_OK if result.reproduced else EXIT_FAILED


def cmd_replay(args, cfg: RunConfig) -> int:
    outcome = replay(load_witness(args.witness))
    _emit([f"check: {outcome.kind}", outcome.message, "reproduced" if outcome.reproduced else "not reproduced"])
    return EXIT_FAILED if outcome.reproduced else EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "classify": cmd_classify,
    "check-axioms": cmd_check_axioms,
    "analyze-pv": cmd_analyze_pv,
    "counterexample": cmd_counterexample,
    "replay": cmd_replay,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args, load_config(args.config))
    except (ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"pospace-lab: error: {exc}\n")
        return EXIT_INPUT
    try:
        with search_limit(cfg.max_maps):
            return COMMANDS[args.command](args, cfg)
    except SizeGuardExceeded as exc:
        log.error("Size guard exceeded", bound=exc.bound, context=exc.context)
        sys.stderr.write(f"pospace-lab: search exceeds --max-maps {exc.bound} ({exc.context})\n")
        return EXIT_GUARD
    except (ModelFormatError, MorphismMismatchError, AnchorMismatchError, ConstructionError, InvalidPospaceError) as exc:
        sys.stderr.write(f"pospace-lab: error: {exc.error_message}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
