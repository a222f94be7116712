from fractions import Fraction

import pytest

from pospace_lab.concurrency.pv_parser import load_pv, parse_pv, pv_to_boxes
from pospace_lab.exception import ModelFormatError


def test_mutex_program(models_dir):
    program = load_pv(models_dir / "mutex.pv")
    assert program.dims == 2
    assert program.resources == ("r",)
    assert program.processes[0].locks() == [("r", Fraction(1, 3), Fraction(2, 3))]


def test_mutex_becomes_one_box(models_dir):
    model = pv_to_boxes(load_pv(models_dir / "mutex.pv"), 3)
    assert len(model.boxes) == 1
    assert model.boxes[0].describe() == "]1/3,2/3[ x ]1/3,2/3["


def test_nested_locks_give_two_boxes(models_dir):
    model = pv_to_boxes(load_pv(models_dir / "crossed.pv"), 5)
    assert [b.describe() for b in model.boxes] == [
        "]2/5,3/5[ x ]1/5,4/5[",
        "]1/5,4/5[ x ]2/5,3/5[",
    ]


def test_third_process_axis_is_free():
    program = parse_pv("A: P(r) V(r)\nB: P(r) V(r)\nC: P(r) V(r)\n")
    model = pv_to_boxes(program, 3)
    assert len(model.boxes) == 3
    assert model.boxes[0].bounds[2] is None


def test_single_process_has_no_boxes(models_dir):
    model = pv_to_boxes(load_pv(models_dir / "single.pv"), 3)
    assert model.dims == 1
    assert model.boxes == ()


@pytest.mark.parametrize(
    "text, lineno, message",
    [
        ("A: P(r) V(s)\n", 1, "without matching P"),
        ("resources r\nA: P(x) V(x)\n", 2, "unknown resource"),
        ("A: P(r) V(r)\nA: P(r) V(r)\n", 2, "duplicate process"),
        ("A: P(r) P(r) V(r)\n", 1, "acquired twice"),
        ("\n\nA: P(r)\n", 3, "unreleased"),
        ("A P(r) V(r)\n", 1, "expected"),
    ],
)
def test_malformed_programs(text, lineno, message):
    with pytest.raises(ModelFormatError, match=message) as info:
        parse_pv(text, source="prog.pv")
    assert info.value.line == lineno


def test_empty_program():
    with pytest.raises(ModelFormatError, match="no processes"):
        parse_pv("# nothing here\n")
