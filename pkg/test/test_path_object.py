from pospace_lab.constructions.square import cylinder
from pospace_lab.core.enumeration import enumerate_under_maps
from pospace_lab.core.isomorphism import find_under_isomorphism
from pospace_lab.core.pospace import final_object, under_compose, under_identity
from pospace_lab.fibration.path_object import (
    double_path_swap,
    evaluation,
    path_map,
    path_name,
    path_object,
    transpose_to_cylinder,
    transpose_to_path,
)


def test_path_count_on_free_fence(free_fence):
    # maps F1 -> F1 monotone for the topology: 9 through t1 plus two constants
    assert len(path_object(free_fence, 1).space) == 11


def test_length_zero_paths_are_points(sierpinski):
    path = path_object(sierpinski, 0)
    assert path.space.points == ("[p]", "[q]")


def test_path_names():
    assert path_name(("p", "q", "q")) == "[p;q;q]"


def test_evaluation_after_constant_is_identity(sierpinski):
    path = path_object(sierpinski, 1)
    for tau in (0, 1):
        assert under_compose(path.ev(tau), path.c).images == under_identity(sierpinski).images


def test_middle_tooth_evaluation(sierpinski):
    path = path_object(sierpinski, 1)
    ev_mid = evaluation(path, 1)
    assert ev_mid(path.name(("p", "q", "p"))) == "q"


def test_paths_are_ordered_pointwise(sierpinski):
    path = path_object(sierpinski, 1)
    space = path.space.space
    assert space.leq_top("[p;p;p]", "[p;q;q]")
    assert not space.leq_top("[q;q;q]", "[p;q;p]")


def test_anchor_goes_to_constant_paths(directed_under_ends):
    path = path_object(directed_under_ends, 1)
    assert path.space.xi.images == ("[t0;t0;t0]", "[t2;t2;t2]")


def test_path_object_of_final_object(ends):
    point = final_object(ends)
    for k in (0, 1, 2):
        assert find_under_isomorphism(path_object(point, k).space, point) is not None


def test_path_map_of_identity(sierpinski):
    ident = path_map(under_identity(sierpinski), 1)
    assert ident.images == ident.source.space.points


def test_transposition_round_trip(sierpinski, vee):
    cyl, path = cylinder(sierpinski, 1), path_object(vee, 1)
    out_of_cylinder = enumerate_under_maps(cyl.space, vee)
    into_paths = enumerate_under_maps(sierpinski, path.space)
    assert len(out_of_cylinder) == len(into_paths)
    for h in out_of_cylinder:
        back = transpose_to_cylinder(transpose_to_path(h, cyl), path)
        assert back.images == h.images


def test_double_path_interchange(sierpinski):
    inner, outer, swap = double_path_swap(sierpinski, 1)
    assert under_compose(swap, swap).images == under_identity(outer.space).images
    for tau in (0, 1):
        assert under_compose(path_map(inner.ev(tau), 1), swap).images == outer.ev(tau).images
