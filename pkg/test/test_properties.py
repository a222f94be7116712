import random
from itertools import product as cartesian

import pytest

from pospace_lab.cli import main
from pospace_lab.concurrency.geometry import GeoModel, boxes_from_cells, count_paths, refine
from pospace_lab.concurrency.pv_parser import parse_pv, pv_to_boxes
from pospace_lab.concurrency.schedules import classify, enumerate_paths
from pospace_lab.constructions.limits import Cocone, coequalizer, coproduct, copair_from, product, pushout
from pospace_lab.constructions.square import cylinder, square_c, square_c_map
from pospace_lab.constructions.universal import check_universal, parallel_diagram, pushout_diagram
from pospace_lab.core.enumeration import enumerate_dimaps, enumerate_under_maps
from pospace_lab.core.isomorphism import find_under_isomorphism
from pospace_lab.core.model_io import format_model, parse_model
from pospace_lab.core.pospace import (
    UnderMap,
    absolute,
    chain,
    compose,
    discrete,
    interval,
    is_dimap,
    under_compose,
    under_identity,
)
from pospace_lab.fibration.path_object import path_object, transpose_to_cylinder, transpose_to_path
from pospace_lab.fibration.test_family import random_pospace, random_under_map
from pospace_lab.homotopy.engine import (
    classes,
    cylinder_homotopic,
    dihomotopic,
    is_dihomotopy_equivalence,
    p_homotopic,
)

SEEDS = range(8)


def _space(rng, most=3, least=1, prefix="x"):
    return random_pospace(rng, rng.randint(least, most), prefix)


def _pick(rng, src, tgt):
    maps = enumerate_dimaps(src, tgt)
    return rng.choice(maps) if maps else None


@pytest.mark.parametrize("seed", range(16))
def test_enumeration_matches_brute_force(seed):
    rng = random.Random(seed)
    src, tgt = _space(rng, 4, 0, "a"), _space(rng, 4, 1, "b")
    found = {m.images for m in enumerate_dimaps(src, tgt)}
    brute = {
        images
        for images in cartesian(tgt.points, repeat=len(src))
        if is_dimap(dict(zip(src.points, images)), src, tgt)
    }
    assert found == brute


@pytest.mark.parametrize("seed", SEEDS)
def test_coequalizer_is_universal(seed):
    rng = random.Random(seed)
    x, y, z = _space(rng, 2, prefix="a"), _space(rng, 3, prefix="b"), _space(rng, 3, prefix="c")
    f, g = _pick(rng, x, y), _pick(rng, x, y)
    apex, q, _ = coequalizer(f, g)
    diagram = parallel_diagram(f, g)
    assert compose(q, f) == compose(q, g)
    for h in enumerate_dimaps(y, z):
        if compose(h, f) != compose(h, g):
            continue
        assert check_universal(diagram, Cocone(apex, (q,)), Cocone(z, (compose(h, f), h))).unique


@pytest.mark.parametrize("seed", SEEDS)
def test_pushout_is_universal(seed):
    rng = random.Random(seed)
    a, x, y = _space(rng, 2, prefix="a"), _space(rng, 2, prefix="b"), _space(rng, 2, prefix="c")
    z = _space(rng, 3, prefix="d")
    f, g = _pick(rng, a, x), _pick(rng, a, y)
    cocone = pushout(f, g)
    diagram = pushout_diagram(f, g)
    for hx in enumerate_dimaps(x, z):
        for hy in enumerate_dimaps(y, z):
            if compose(hx, f) != compose(hy, g):
                continue
            candidate = Cocone(z, (compose(hx, f), hx, hy))
            assert check_universal(diagram, cocone, candidate).unique


@pytest.mark.parametrize("seed", range(16))
def test_model_text_round_trip(seed):
    rng = random.Random(seed)
    space = _space(rng, 6, 0)
    assert parse_model(format_model(space)) == space


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("k", [0, 1, 2])
def test_cylinder_and_path_object_hom_sets_match(seed, k):
    rng = random.Random(seed)
    most = 3 if k < 2 else 2
    x, y = absolute(_space(rng, most, prefix="a")), absolute(_space(rng, most, prefix="b"))
    cyl, path = cylinder(x, k), path_object(y, k)
    out_of_cylinder = enumerate_under_maps(cyl.space, y)
    into_paths = enumerate_under_maps(x, path.space)
    assert len(out_of_cylinder) == len(into_paths)
    for h in out_of_cylinder[:10]:
        assert transpose_to_cylinder(transpose_to_path(h, cyl), path).images == h.images


@pytest.mark.parametrize("seed", SEEDS)
def test_homotopy_formulations_agree(seed):
    rng = random.Random(seed)
    x, y = absolute(_space(rng, 2, prefix="a")), absolute(_space(rng, 3, prefix="b"))
    maps = enumerate_under_maps(x, y)
    for _ in range(6):
        f, g = rng.choice(maps), rng.choice(maps)
        fence = dihomotopic(f, g)
        for k in range(3):
            through_path = p_homotopic(f, g, k)
            assert through_path == cylinder_homotopic(f, g, k)
            if not fence.related:
                assert not through_path
            elif fence.length <= k:
                assert through_path


@pytest.mark.parametrize("seed", SEEDS)
def test_dihomotopy_is_an_equivalence_relation(seed):
    rng = random.Random(seed)
    x, y = absolute(_space(rng, 2, prefix="a")), absolute(_space(rng, 3, prefix="b"))
    result = classes(x, y)
    maps = result.space.maps
    assert sorted(i for members in result.classes for i in members) == list(range(len(maps)))
    for _ in range(12):
        f, g = rng.choice(maps), rng.choice(maps)
        related = dihomotopic(f, g).related
        assert related == dihomotopic(g, f).related
        assert related == (result.class_of(f) == result.class_of(g))
        assert dihomotopic(f, f).related


@pytest.mark.parametrize("seed", SEEDS)
def test_dihomotopy_is_natural_under_composition(seed):
    rng = random.Random(seed)
    w, x = absolute(_space(rng, 2, prefix="a")), absolute(_space(rng, 2, prefix="b"))
    y, z = absolute(_space(rng, 3, prefix="c")), absolute(_space(rng, 2, prefix="d"))
    v, u = random_under_map(rng, w, x), random_under_map(rng, y, z)
    inner, outer = classes(x, y), classes(w, z)
    for n in range(len(inner)):
        images = {outer.class_of(under_compose(u, under_compose(m, v))) for m in inner.members(n)}
        assert len(images) == 1


@pytest.mark.parametrize("seed", range(16))
def test_two_of_three_for_equivalences(seed):
    rng = random.Random(seed)
    x, y, z = (absolute(_space(rng, 3, prefix=p)) for p in "abc")
    f, g = random_under_map(rng, x, y), random_under_map(rng, y, z)
    flags = [bool(is_dihomotopy_equivalence(m)) for m in (f, g, under_compose(g, f))]
    assert sum(flags) != 2


def _doubled(f: UnderMap) -> UnderMap:
    """f ⨿ f, of which f is a retract through the injections and fold maps."""
    cx, cy = coproduct([f.source.space, f.source.space]), coproduct([f.target.space, f.target.space])
    big = copair_from(cx, [compose(cy.legs[0], f.f), compose(cy.legs[1], f.f)])
    return UnderMap(absolute(cx.apex), absolute(cy.apex), big)


@pytest.mark.parametrize("seed", range(12))
def test_equivalences_are_closed_under_retracts(seed):
    rng = random.Random(seed)
    x, y = absolute(_space(rng, 2, prefix="a")), absolute(_space(rng, 2, prefix="b"))
    f = random_under_map(rng, x, y)
    assert bool(is_dihomotopy_equivalence(_doubled(f))) == bool(is_dihomotopy_equivalence(f))


@pytest.mark.parametrize("k", [1, 2])
def test_square_with_fence_is_cylinder_of_square(directed_under_ends, k):
    s = discrete(["u", "v"], label="S")
    fence = interval("free", k).space
    whole = square_c(directed_under_ends, product([s, fence]).apex)
    stepwise = cylinder(square_c(directed_under_ends, s), k).space
    assert find_under_isomorphism(whole, stepwise) is not None


def test_square_with_fence_is_cylinder_of_square_without_anchor():
    x = absolute(chain(2))
    s = discrete(["u", "v"], label="S")
    whole = square_c(x, product([s, interval("free", 1).space]).apex)
    stepwise = cylinder(square_c(x, s), 1).space
    assert find_under_isomorphism(whole, stepwise) is not None


@pytest.mark.parametrize("seed", SEEDS)
def test_square_is_functorial_in_the_object(seed):
    rng = random.Random(seed)
    s = _space(rng, 2, prefix="s").with_discrete_dir()
    x, y, z = (absolute(_space(rng, 2, prefix=p)) for p in "abc")
    f, g = random_under_map(rng, x, y), random_under_map(rng, y, z)
    ident = square_c_map(under_identity(x), s)
    assert ident.images == ident.source.space.points
    composite = under_compose(square_c_map(g, s), square_c_map(f, s))
    assert square_c_map(under_compose(g, f), s).images == composite.images


@pytest.mark.parametrize("seed", SEEDS)
def test_square_is_functorial_in_the_space(seed):
    rng = random.Random(seed)
    x = absolute(_space(rng, 2))
    s, t, r = (_space(rng, 2, prefix=p).with_discrete_dir() for p in "stu")
    u, v = _pick(rng, s, t), _pick(rng, t, r)
    ident = under_identity(x)
    composite = under_compose(square_c_map(ident, t, v), square_c_map(ident, s, u))
    assert square_c_map(ident, s, compose(v, u)).images == composite.images


@pytest.mark.parametrize("seed", SEEDS)
def test_class_count_survives_refinement(seed):
    rng = random.Random(seed)
    cells = [(i, j) for i in range(3) for j in range(3)]
    blocked = sorted(rng.sample(cells, rng.randint(0, 2)))
    coarse = GeoModel(2, 3, boxes_from_cells(blocked, 3), label=f"cells{blocked}")
    fine = refine(coarse, 2)
    assert len(classify(fine)) == len(classify(coarse))


def _random_process(rng: random.Random, name: str) -> str:
    held: list[str] = []
    events: list[str] = []
    for _ in range(rng.randint(1, 4)):
        free = [r for r in ("a", "b") if r not in held]
        if held and (not free or rng.random() < 0.5):
            events.append(f"V({held.pop(rng.randrange(len(held)))})")
        else:
            res = rng.choice(free)
            held.append(res)
            events.append(f"P({res})")
    events += [f"V({res})" for res in reversed(held)]
    return f"{name}: {' '.join(events)}"


@pytest.mark.parametrize("seed", range(12))
def test_path_count_matches_enumeration_on_programs(seed):
    rng = random.Random(seed)
    program = parse_pv("\n".join(_random_process(rng, name) for name in "AB"))
    model = pv_to_boxes(program, 4)
    assert count_paths(model) == len(enumerate_paths(model))


def test_repeated_analysis_is_byte_identical(capsys, models_dir, tmp_path):
    outputs, drawings = [], []
    for _ in range(2):
        svg = tmp_path / "mutex.svg"
        code = main(["analyze-pv", str(models_dir / "mutex.pv"), "--classes", "--oracle", "--deadlocks", "--svg", str(svg)])
        assert code == 0
        outputs.append(capsys.readouterr().out)
        drawings.append(svg.read_bytes())
    assert outputs[0] == outputs[1]
    assert drawings[0] == drawings[1]


def test_repeated_classification_is_byte_identical(capsys, models_dir):
    runs = []
    for _ in range(2):
        assert main(["classify", str(models_dir / "vee.pos"), str(models_dir / "chain.pos"), "--witness"]) == 0
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
