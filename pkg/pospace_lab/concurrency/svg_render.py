"""SVG picture of a 2D model: forbidden boxes, one schedule per class, deadlocks."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

from jinja2 import Environment, PackageLoader, StrictUndefined, select_autoescape

from pospace_lab.concurrency.geometry import GeoModel, Vertex
from pospace_lab.concurrency.schedules import ScheduleClasses
from pospace_lab.exception import ConstructionError

DEFAULT_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_env = Environment(
    loader=PackageLoader("pospace_lab", "templates"),
    autoescape=select_autoescape(["svg", "xml", "j2"]),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
)


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def render_svg(
    m: GeoModel,
    schedule_classes: ScheduleClasses | None = None,
    deadlocks: Sequence[Vertex] = (),
    size: int = 400,
    margin: int = 20,
    palette: Sequence[str] = DEFAULT_PALETTE,
) -> str:
    if m.dims != 2:
        raise ConstructionError(f"only 2-process models can be drawn, got {m.dims}")
    inner = size - 2 * margin

    def px(x: Fraction | float) -> float:
        return margin + float(x) * inner

    def py(y: Fraction | float) -> float:
        return margin + (1 - float(y)) * inner

    def at(v: Vertex) -> tuple[float, float]:
        return px(Fraction(v[0], m.resolution)), py(Fraction(v[1], m.resolution))

    grid = []
    for i in range(1, m.resolution):
        t = Fraction(i, m.resolution)
        grid.append({"x1": _fmt(px(t)), "y1": _fmt(py(0)), "x2": _fmt(px(t)), "y2": _fmt(py(1))})
        grid.append({"x1": _fmt(px(0)), "y1": _fmt(py(t)), "x2": _fmt(px(1)), "y2": _fmt(py(t))})

    boxes = []
    for box in m.boxes:
        (x0, x1), (y0, y1) = (b if b is not None else (Fraction(0), Fraction(1)) for b in box.bounds)
        boxes.append({"x": _fmt(px(x0)), "y": _fmt(py(y1)), "w": _fmt(px(x1) - px(x0)), "h": _fmt(py(y0) - py(y1))})

    paths = []
    for n, rep in enumerate(schedule_classes.representatives if schedule_classes else ()):
        points = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(at, rep))
        paths.append({"index": n, "points": points, "colour": palette[n % len(palette)]})

    dots = [{"x": _fmt(x), "y": _fmt(y)} for x, y in map(at, deadlocks)]
    title = f"{m.label}: resolution {m.resolution}, {len(paths)} classes, {len(dots)} deadlocks"
    return _env.get_template("schedule.svg.j2").render(
        size=size, margin=margin, inner=inner, title=title, grid=grid, boxes=boxes, paths=paths, deadlocks=dots
    )


def write_svg(document: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document, encoding="utf-8")
    return path
