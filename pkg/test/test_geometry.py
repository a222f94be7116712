from fractions import Fraction

import pytest

from pospace_lab.concurrency.geometry import (
    Box,
    GeoModel,
    boxes_from_cells,
    count_paths,
    find_deadlocks,
    find_unreachable,
    format_geometry,
    load_geometry,
    parse_geometry,
    reachable,
    refine,
)
from pospace_lab.concurrency.pv_parser import load_pv, pv_to_boxes
from pospace_lab.exception import ConstructionError, ModelFormatError


@pytest.fixture
def mutex(models_dir):
    return pv_to_boxes(load_pv(models_dir / "mutex.pv"), 3)


def test_load_staggered(models_dir):
    model = load_geometry(models_dir / "staggered.geo")
    assert (model.dims, model.resolution, model.label) == (2, 4, "staggered")
    assert model.boxes[0].bounds == ((Fraction(1, 4), Fraction(1, 2)), (Fraction(1, 2), Fraction(3, 4)))
    assert model.blocked_cells == frozenset({(1, 2), (2, 1)})


def test_format_then_parse_keeps_boxes(models_dir):
    model = load_geometry(models_dir / "staggered.geo")
    again = parse_geometry(format_geometry(model), source="staggered.geo")
    assert again == model


def test_free_axis():
    model = parse_geometry("geo 2 2\nbox * * 1/4 3/4\n")
    assert model.boxes[0].bounds[0] is None
    assert model.blocked_cells == frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})
    assert count_paths(model) == 0


@pytest.mark.parametrize(
    "text, message",
    [
        ("geo 2\n", "expected header"),
        ("geo 2 3\nbox 0 1\n", "expected 'box' with 4 bounds"),
        ("geo 2 3\nbox 0 x 0 1\n", "not a rational"),
        ("geo 2 3\nbox 1/2 3/2 0 1\n", "leaves the unit cube"),
        ("# only a comment\n", "empty geometry"),
    ],
)
def test_malformed_geometry(text, message):
    with pytest.raises(ModelFormatError, match=message):
        parse_geometry(text, source="bad.geo")


def test_model_preconditions():
    with pytest.raises(ConstructionError):
        GeoModel(0, 3)
    with pytest.raises(ConstructionError):
        GeoModel(2, 3, (Box(((Fraction(0), Fraction(1)),)),))


def test_mutex_box_blocks_centre_cell(mutex):
    assert mutex.blocked_cells == frozenset({(1, 1)})
    assert mutex.allowed((1, 1))
    # edges along the box border still touch a free cell
    assert mutex.successors((1, 1)) == [(2, 1), (1, 2)]


def test_path_counts(mutex):
    assert count_paths(mutex) == 20
    assert count_paths(GeoModel(2, 1)) == 2
    assert count_paths(GeoModel(1, 3)) == 1


def test_mutex_has_no_deadlock(mutex):
    assert find_deadlocks(mutex) == []
    assert find_unreachable(mutex) == []


def test_crossed_locks_deadlock(models_dir):
    model = pv_to_boxes(load_pv(models_dir / "crossed.pv"), 5)
    assert find_deadlocks(model) == [(2, 2)]
    assert find_unreachable(model) == [(3, 3)]


def test_refine_keeps_boxes(mutex):
    finer = refine(mutex, 2)
    assert finer.resolution == 6
    assert finer.boxes == mutex.boxes
    assert finer.end in reachable(finer)
    with pytest.raises(ConstructionError):
        refine(mutex, 0)


def test_boxes_from_cells():
    model = GeoModel(2, 2, boxes_from_cells([(0, 1)], 2))
    assert model.blocked_cells == frozenset({(0, 1)})
