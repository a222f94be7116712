"""
Independent schedule classification through the homotopy engine.

The unblocked part of a 2D grid model becomes a finite pospace whose points
are its cells (allowed vertices, legal edges, free squares): a face lies
below every cell containing it in the topology, and cells are ordered by
their lower and upper corners componentwise. Grid paths become dimaps out of
the directed interval anchored at {0 <= 1}, and dihomotopy classes relative to
the anchor are compared with the swap classes.

Only the path-shaped dimaps are built. Two of them are joined when some
dimap lies above both pointwise; that bound is searched tooth by tooth
inside the cells containing both images, never over the whole hom-set.
"""
from __future__ import annotations

from itertools import product

from pospace_lab.concurrency.geometry import GeoModel, Vertex
from pospace_lab.concurrency.schedules import ExecPath, ScheduleClasses, enumerate_paths, group_paths
from pospace_lab.core.pospace import Dimap, FinPospace, UnderMap, UnderPospace, anchored, interval
from pospace_lab.exception import ConstructionError
from pospace_lab.homotopy.engine import upper_bound_partition
from pospace_lab.logger import GLOBAL_LOGGER as log

Cell = tuple[Vertex, Vertex]


def cell_name(cell: Cell) -> str:
    lo, hi = cell
    dim = sum(h - l for l, h in zip(lo, hi))
    corner = "_".join(str(c) for c in lo)
    if dim == 0:
        return f"v{corner}"
    if dim == 1:
        return f"e{corner}_{'_'.join(str(c) for c in hi)}"
    return f"s{corner}"


def cells(m: GeoModel) -> list[Cell]:
    out: list[Cell] = []
    for v in product(range(m.resolution + 1), repeat=2):
        if m.allowed(v):
            out.append((v, v))
        for axis in range(2):
            if m.legal_step(v, axis):
                out.append((v, v[:axis] + (v[axis] + 1,) + v[axis + 1:]))
        if v[0] < m.resolution and v[1] < m.resolution and m.cell_free(v):
            out.append((v, (v[0] + 1, v[1] + 1)))
    return out


def _leq(a: Vertex, b: Vertex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def face_poset(m: GeoModel) -> FinPospace:
    if m.dims != 2:
        raise ConstructionError(f"the cell oracle handles 2 processes, got {m.dims}")
    cs = cells(m)
    names = [cell_name(c) for c in cs]
    top, dirs = [], []
    for (s_lo, s_hi), s in zip(cs, names):
        for (t_lo, t_hi), t in zip(cs, names):
            if s == t:
                continue
            if _leq(t_lo, s_lo) and _leq(s_hi, t_hi):
                top.append((s, t))
            if _leq(s_lo, t_lo) and _leq(s_hi, t_hi):
                dirs.append((s, t))
    return FinPospace.build(names, top, dirs, label=f"cells({m.label})")


def endpoints() -> FinPospace:
    return FinPospace.build(["0", "1"], dir=[("0", "1")], label="{0,1}")


def path_as_dimap(path: ExecPath, source: UnderPospace, target: UnderPospace) -> UnderMap:
    """t_{2i} -> i-th vertex, t_{2i+1} -> the edge leaving it."""
    images = {}
    for i, v in enumerate(path):
        images[f"t{2 * i}"] = cell_name((v, v))
        if i + 1 < len(path):
            images[f"t{2 * i + 1}"] = cell_name((v, path[i + 1]))
    return UnderMap(source, target, Dimap.from_mapping(source.space, target.space, images))


def oracle_classify(m: GeoModel, max_resolution: int = 4) -> ScheduleClasses:
    if m.resolution > max_resolution:
        raise ConstructionError(f"cell oracle is limited to resolution {max_resolution}, got {m.resolution}")
    complex_ = face_poset(m)
    anchor = endpoints()
    fence = interval("directed", m.steps)
    source = anchored(anchor, fence.space, {"0": fence.start, "1": fence.end})
    target = anchored(anchor, complex_, {"0": cell_name((m.start, m.start)), "1": cell_name((m.end, m.end))})
    paths = enumerate_paths(m)
    if not paths:
        return ScheduleClasses(m, ())
    dimaps = [path_as_dimap(p, source, target) for p in paths]
    parts = upper_bound_partition(dimaps)
    result = group_paths(m, [[paths[i] for i in part] for part in parts])
    log.info("Oracle classification finished", cells=len(complex_), paths=len(paths), classes=len(result))
    return result
