import random

import pytest

from pospace_lab.concurrency.geometry import GeoModel, boxes_from_cells, count_paths, load_geometry, refine
from pospace_lab.concurrency.oracle import cell_name, face_poset, oracle_classify
from pospace_lab.concurrency.pv_parser import load_pv, parse_pv, pv_to_boxes
from pospace_lab.concurrency.schedules import classify, enumerate_paths, swaps
from pospace_lab.concurrency.svg_render import render_svg, write_svg
from pospace_lab.exception import ConstructionError


@pytest.fixture
def mutex(models_dir):
    return pv_to_boxes(load_pv(models_dir / "mutex.pv"), 3)


def test_paths_are_sorted_and_complete(mutex):
    paths = enumerate_paths(mutex)
    assert len(paths) == 20
    assert paths == sorted(paths)
    assert all(p[0] == (0, 0) and p[-1] == (3, 3) for p in paths)


def test_mutex_has_two_schedules(mutex):
    result = classify(mutex)
    assert len(result) == 2
    first, second = result.representatives
    assert first[:4] == ((0, 0), (0, 1), (0, 2), (0, 3))
    assert second[:4] == ((0, 0), (0, 1), (1, 1), (2, 1))
    assert result.class_of(first) != result.class_of(second)


def test_swap_needs_free_cell(mutex):
    path = ((0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3))
    moved = list(swaps(mutex, path))
    # the move across cell (1,1) is blocked
    assert ((0, 0), (1, 0), (1, 1), (1, 2), (2, 2), (3, 2), (3, 3)) not in moved
    assert ((0, 0), (0, 1), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3)) in moved


def test_free_grid_has_one_class():
    assert len(classify(GeoModel(2, 3))) == 1
    assert len(classify(GeoModel(2, 1))) == 1


def test_staggered_boxes_give_three_classes(models_dir):
    assert len(classify(load_geometry(models_dir / "staggered.geo"))) == 3


def test_single_process(models_dir):
    model = pv_to_boxes(load_pv(models_dir / "single.pv"), 3)
    assert len(enumerate_paths(model)) == 1
    assert len(classify(model)) == 1


def test_three_processes_are_not_classified():
    model = pv_to_boxes(parse_pv("A: P(r) V(r)\nB: P(r) V(r)\nC: P(r) V(r)\n"), 3)
    with pytest.raises(ConstructionError):
        classify(model)


def test_oracle_agrees_with_swaps(mutex):
    assert oracle_classify(mutex, 4).same_partition(classify(mutex))


def test_oracle_resolution_limit(mutex):
    with pytest.raises(ConstructionError, match="limited to resolution 4"):
        oracle_classify(refine(mutex, 2), 4)


def random_grid(rng: random.Random, resolution: int, most: int = 3) -> GeoModel:
    cells = [(i, j) for i in range(resolution) for j in range(resolution)]
    blocked = sorted(rng.sample(cells, rng.randint(0, most)))
    return GeoModel(2, resolution, boxes_from_cells(blocked, resolution), label=f"cells{blocked}")


@pytest.mark.parametrize("seed", range(32))
def test_oracle_matches_swaps_at_resolution_four(seed):
    model = random_grid(random.Random(seed), 4)
    assert count_paths(model) == len(enumerate_paths(model))
    assert oracle_classify(model, 4).same_partition(classify(model))


def test_oracle_on_empty_grid_at_resolution_four():
    result = oracle_classify(GeoModel(2, 4), 4)
    assert len(result) == 1
    assert len(result.classes[0]) == 70


def test_oracle_splits_around_a_blocked_cell():
    model = GeoModel(2, 4, boxes_from_cells([(1, 1)], 4))
    assert len(oracle_classify(model, 4)) == 2


def test_face_poset_cells(mutex):
    poset = face_poset(mutex)
    assert cell_name(((0, 0), (0, 0))) == "v0_0"
    assert cell_name(((0, 0), (1, 0))) == "e0_0_1_0"
    assert "s0_0" in poset
    assert "s1_1" not in poset
    assert poset.leq_top("e0_0_1_0", "s0_0")
    assert poset.leq_dir("v0_0", "v1_0")


def test_svg_of_mutex(mutex):
    document = render_svg(mutex, classify(mutex))
    assert 'class="forbidden" x="140.00" y="140.00" width="120.00" height="120.00"' in document
    assert document.count('class="schedule"') == 2
    assert "deadlock" not in document.split("</title>", 1)[1]


def test_svg_marks_deadlock(models_dir, tmp_path):
    model = pv_to_boxes(load_pv(models_dir / "crossed.pv"), 5)
    document = render_svg(model, deadlocks=[(2, 2)], palette=["#000000"])
    assert '<circle class="deadlock" cx="164.00" cy="236.00"' in document
    path = write_svg(document, tmp_path / "svg" / "crossed.svg")
    assert path.read_text() == document


def test_svg_needs_two_processes():
    with pytest.raises(ConstructionError):
        render_svg(GeoModel(1, 2))


def test_refinement_keeps_two_classes(mutex):
    finer = refine(mutex, 2)
    assert len(classify(finer)) == 2
