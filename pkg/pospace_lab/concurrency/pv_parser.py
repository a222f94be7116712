"""
PV programs and their forbidden boxes.

One process per line, ``<name>: P(r) ... V(r) ...``; ``#`` starts a comment.
An optional ``resources <r> ...`` line declares the resources; once declared,
any other resource name is an error. Every resource has capacity 1.

A process with m events places event i (1-based) at i/(m+1). The region where
two processes both hold r is a forbidden open box; axes of the other
processes are left unconstrained.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from pospace_lab.concurrency.geometry import Bound, Box, GeoModel
from pospace_lab.exception import ModelFormatError
from pospace_lab.logger import GLOBAL_LOGGER as log

_LINE = re.compile(r"^(?P<name>[A-Za-z_][\w-]*)\s*:\s*(?P<body>.+)$")
_EVENT = re.compile(r"([PV])\(\s*([A-Za-z_]\w*)\s*\)")


@dataclass(frozen=True)
class Process:
    name: str
    events: tuple[tuple[str, str], ...]

    def locks(self) -> list[tuple[str, Fraction, Fraction]]:
        """(resource, acquire, release) coordinates for every P...V interval."""
        m = len(self.events)
        held: dict[str, Fraction] = {}
        out = []
        for i, (op, res) in enumerate(self.events, start=1):
            at = Fraction(i, m + 1)
            if op == "P":
                held[res] = at
            else:
                out.append((res, held.pop(res), at))
        return out


@dataclass(frozen=True)
class PvProgram:
    processes: tuple[Process, ...]
    resources: tuple[str, ...]

    @property
    def dims(self) -> int:
        return len(self.processes)


def parse_pv(text: str, source: str | None = None) -> PvProgram:
    declared: list[str] | None = None
    processes: list[Process] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "resources":
            declared = words[1:]
            continue
        match = _LINE.match(line)
        if not match:
            raise ModelFormatError(f"expected '<name>: P(r) ... V(r)', got {line!r}", lineno, source)
        body = match.group("body")
        events = _EVENT.findall(body)
        if not events or _EVENT.sub("", body).strip():
            raise ModelFormatError(f"unrecognised events in {body!r}", lineno, source)
        held: set[str] = set()
        for op, res in events:
            if declared is not None and res not in declared:
                raise ModelFormatError(f"unknown resource {res!r}", lineno, source)
            if op == "P":
                if res in held:
                    raise ModelFormatError(f"{res!r} acquired twice without release", lineno, source)
                held.add(res)
            elif res not in held:
                raise ModelFormatError(f"V({res}) without matching P({res})", lineno, source)
            else:
                held.remove(res)
        if held:
            raise ModelFormatError(f"unreleased resources: {', '.join(sorted(held))}", lineno, source)
        if any(p.name == match.group("name") for p in processes):
            raise ModelFormatError(f"duplicate process {match.group('name')!r}", lineno, source)
        processes.append(Process(match.group("name"), tuple(events)))
    if not processes:
        raise ModelFormatError("program has no processes", None, source)
    used = sorted({res for p in processes for _, res in p.events})
    return PvProgram(tuple(processes), tuple(declared if declared is not None else used))


def load_pv(path: str | Path) -> PvProgram:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read PV program: {exc}", None, str(path)) from exc
    return parse_pv(text, str(path))


def pv_to_boxes(program: PvProgram, resolution: int, label: str = "pv") -> GeoModel:
    boxes = []
    for (i, p), (j, q) in combinations(enumerate(program.processes), 2):
        for res, lo_p, hi_p in p.locks():
            for other, lo_q, hi_q in q.locks():
                if other != res:
                    continue
                bounds: list[Bound] = [None] * program.dims
                bounds[i] = (lo_p, hi_p)
                bounds[j] = (lo_q, hi_q)
                boxes.append(Box(tuple(bounds)))
    log.info("PV program translated", processes=program.dims, boxes=len(boxes), resolution=resolution)
    return GeoModel(program.dims, resolution, tuple(boxes), label)
