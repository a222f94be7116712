"""
Textual model format, one object per file::

    pospace <name> <n>
    point <id>            (n lines)
    top <a> <b>           (generators of top_rel)
    dir <a> <b>           (generators of dir_rel)
    anchor <file> xi <c>-><x> ...   (optional; makes the object anchored)

Relations are closed reflexively and transitively on load. ``#`` starts a
comment.
"""
from __future__ import annotations

from pathlib import Path
from typing import Callable

from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    UnderMap,
    UnderPospace,
    absolute,
    as_under,
    natural_key,
    require_valid,
    under_map,
)
from pospace_lab.exception import (
    AnchorMismatchError,
    InvalidPospaceError,
    ModelFormatError,
    MorphismMismatchError,
)

AnchorResolver = Callable[[str], FinPospace]


def format_model(obj: FinPospace | UnderPospace, name: str | None = None, anchor_file: str | None = None) -> str:
    space = obj.space if isinstance(obj, UnderPospace) else obj
    title = (name or space.label or "X").replace(" ", "_")
    lines = [f"pospace {title} {len(space)}"]
    lines += [f"point {x}" for x in space.points]
    key = lambda pair: (natural_key(pair[0]), natural_key(pair[1]))  # noqa: E731
    lines += [f"top {a} {b}" for a, b in sorted(space.top_rel, key=key) if a != b]
    lines += [f"dir {a} {b}" for a, b in sorted(space.dir_rel, key=key) if a != b]
    if isinstance(obj, UnderPospace) and obj.anchor.points:
        ref = anchor_file or f"{(obj.anchor.label or 'C').replace(' ', '_')}.pos"
        pairs = " ".join(f"{c}->{obj.xi(c)}" for c in obj.anchor.points)
        lines.append(f"anchor {ref} xi {pairs}")
    return "\n".join(lines) + "\n"


def parse_model(
    text: str, resolve_anchor: AnchorResolver | None = None, source: str | None = None
) -> FinPospace | UnderPospace:
    header: tuple[str, int] | None = None
    points: list[str] = []
    top: list[tuple[str, str]] = []
    dirs: list[tuple[str, str]] = []
    anchor_line: tuple[int, str, list[str]] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        keyword = words[0]
        if header is None:
            if keyword != "pospace" or len(words) != 3 or not words[2].isdigit():
                raise ModelFormatError("expected header 'pospace <name> <n>'", lineno, source)
            header = (words[1], int(words[2]))
        elif keyword == "point" and len(words) == 2:
            if "->" in words[1]:
                raise ModelFormatError(f"point id may not contain '->': {words[1]}", lineno, source)
            points.append(words[1])
        elif keyword in ("top", "dir") and len(words) == 3:
            (top if keyword == "top" else dirs).append((words[1], words[2]))
        elif keyword == "anchor" and len(words) >= 3 and words[2] == "xi":
            anchor_line = (lineno, words[1], words[3:])
        else:
            raise ModelFormatError(f"unrecognised line: {line!r}", lineno, source)

    if header is None:
        raise ModelFormatError("empty model file", None, source)
    name, count = header
    if len(points) != count or len(set(points)) != count:
        raise ModelFormatError(f"header announces {count} distinct points, found {len(set(points))}", 1, source)
    try:
        space = require_valid(FinPospace.build(points, top, dirs, label=name))
    except InvalidPospaceError as exc:
        raise ModelFormatError(exc.error_message, None, source) from exc

    if anchor_line is None:
        return space
    lineno, ref, pairs = anchor_line
    if resolve_anchor is None:
        raise ModelFormatError("anchored model needs an anchor resolver", lineno, source)
    anchor = resolve_anchor(ref)
    xi: dict[str, str] = {}
    for pair in pairs:
        if "->" not in pair:
            raise ModelFormatError(f"malformed xi entry {pair!r}", lineno, source)
        c, x = pair.split("->", 1)
        xi[c] = x
    try:
        return as_under(anchor, space, Dimap.from_mapping(anchor, space, xi))
    except Exception as exc:  # mismatched anchors surface as format errors of this file
        raise ModelFormatError(f"invalid anchor map: {exc}", lineno, source) from exc


def load_model(path: str | Path) -> FinPospace | UnderPospace:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read model file: {exc}", None, str(path)) from exc

    def resolve(ref: str) -> FinPospace:
        loaded = load_model(path.parent / ref)
        return loaded.space if isinstance(loaded, UnderPospace) else loaded

    return parse_model(text, resolve, str(path))


def load_under(path: str | Path) -> UnderPospace:
    loaded = load_model(path)
    return loaded if isinstance(loaded, UnderPospace) else absolute(loaded)


def dump_model(obj: FinPospace | UnderPospace, path: str | Path, name: str | None = None) -> Path:
    """Write ``obj``; an anchored object also gets its anchor written next to it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    anchor_file = None
    if isinstance(obj, UnderPospace) and obj.anchor.points:
        anchor_file = f"{path.stem}.anchor.pos"
        (path.parent / anchor_file).write_text(format_model(obj.anchor, name="C"), encoding="utf-8")
    path.write_text(format_model(obj, name=name, anchor_file=anchor_file), encoding="utf-8")
    return path


def load_map(path: str | Path) -> UnderMap:
    """Map file::

        map <source-file> <target-file>
        <x> <y>               (one line per source point)

    Files are resolved next to the map file; both objects must share an anchor.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read map file: {exc}", None, str(path)) from exc
    header: tuple[str, str] | None = None
    images: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if header is None:
            if words[0] != "map" or len(words) != 3:
                raise ModelFormatError("expected header 'map <source> <target>'", lineno, str(path))
            header = (words[1], words[2])
        elif len(words) == 2:
            if images.setdefault(words[0], words[1]) != words[1]:
                raise ModelFormatError(f"point {words[0]!r} mapped twice", lineno, str(path))
        else:
            raise ModelFormatError(f"unrecognised line: {line!r}", lineno, str(path))
    if header is None:
        raise ModelFormatError("empty map file", None, str(path))
    source, target = (load_under(path.parent / ref) for ref in header)
    try:
        return under_map(source, target, Dimap.from_mapping(source.space, target.space, images))
    except (MorphismMismatchError, AnchorMismatchError) as exc:
        raise ModelFormatError(exc.error_message, None, str(path)) from exc
