import pytest

from pospace_lab.core.enumeration import enumerate_dimaps, enumerate_under_maps
from pospace_lab.core.isomorphism import find_isomorphism, inverse, is_isomorphism
from pospace_lab.core.pospace import (
    Dimap,
    FinPospace,
    chain,
    compose,
    discrete,
    final_map,
    identity,
    initial_map,
    interval,
    is_dimap,
    terminal,
    under_compose,
    under_identity,
    under_map,
    validate,
)
from pospace_lab.exception import AnchorMismatchError, MorphismMismatchError, SizeGuardExceeded
from pospace_lab.utils.search_budget import search_limit


def test_build_closes_both_relations():
    p = FinPospace.build(["a", "b", "c"], top=[("a", "b"), ("b", "c")], dir=[("a", "b"), ("b", "c")])
    assert ("a", "c") in p.top_rel
    assert ("a", "c") in p.dir_rel
    assert all((x, x) in p.dir_rel for x in p.points)
    assert validate(p)


def test_points_sort_naturally():
    p = discrete(["t10", "t2", "t0"])
    assert p.points == ("t0", "t2", "t10")


def test_validate_reports_antisymmetry_violation():
    loop = frozenset({("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")})
    p = FinPospace(("a", "b"), frozenset({("a", "a"), ("b", "b")}), loop)
    report = validate(p)
    assert not report
    assert report.axiom == "antisymmetry"
    assert report.relation == "dir_rel"


def test_validate_reports_missing_transitivity():
    rel = frozenset({("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")})
    p = FinPospace(("a", "b", "c"), rel, frozenset({("a", "a"), ("b", "b"), ("c", "c")}))
    report = validate(p)
    assert report.axiom == "transitivity"
    assert report.relation == "top_rel"


def test_fence_shapes():
    free, directed = interval("free", 1), interval("directed", 1)
    assert free.space.points == ("t0", "t1", "t2")
    assert ("t0", "t1") in free.space.top_rel and ("t2", "t1") in free.space.top_rel
    assert free.space.has_discrete_dir
    assert ("t0", "t2") in directed.space.dir_rel
    assert directed.end == "t2"


def test_interval_rejects_unknown_kind():
    with pytest.raises(ValueError):
        interval("twisted", 1)


def test_is_dimap_checks_both_relations():
    c = chain(2)
    flipped = {"c0": "c1", "c1": "c0"}
    assert is_dimap({"c0": "c0", "c1": "c1"}, c, c)
    assert not is_dimap(flipped, c, c)


def test_enumeration_counts():
    c = chain(2)
    assert len(enumerate_dimaps(c, c)) == 3
    assert len(enumerate_dimaps(discrete(["u", "v"]), c)) == 4
    assert len(enumerate_dimaps(terminal(), c)) == 2


def test_enumeration_is_lexicographic():
    maps = enumerate_dimaps(chain(2), chain(2))
    assert [m.images for m in maps] == [("c0", "c0"), ("c0", "c1"), ("c1", "c1")]


def test_anchor_pins_endpoints(directed_under_ends):
    maps = enumerate_under_maps(directed_under_ends, directed_under_ends)
    assert [m.images for m in maps] == [("t0", "t1", "t2")]


def test_size_guard_trips():
    with search_limit(1):
        with pytest.raises(SizeGuardExceeded) as info:
            enumerate_dimaps(chain(2), chain(2))
    assert info.value.bound == 1


def test_compose_and_identity():
    c = chain(2)
    up = Dimap.from_mapping(c, c, {"c0": "c1", "c1": "c1"})
    assert compose(up, identity(c)) == up
    with pytest.raises(MorphismMismatchError):
        compose(up, identity(terminal()))


def test_under_map_rejects_broken_anchor(directed_under_ends):
    with pytest.raises(AnchorMismatchError):
        under_map(directed_under_ends, directed_under_ends, {"t0": "t0", "t1": "t1", "t2": "t1"})


def test_initial_and_final_maps(directed_under_ends):
    x = directed_under_ends
    assert initial_map(x).images == ("t0", "t2")
    assert final_map(x).images == ("*", "*", "*")
    assert under_compose(under_identity(x), initial_map(x)).images == initial_map(x).images


def test_isomorphism_search_renames_points():
    p = FinPospace.build(["a", "b"], top=[("a", "b")], dir=[("a", "b")])
    q = FinPospace.build(["u", "v"], top=[("u", "v")], dir=[("u", "v")])
    f = find_isomorphism(p, q)
    assert f is not None and f.images == ("u", "v")
    assert is_isomorphism(f)
    assert find_isomorphism(p, q.with_discrete_dir()) is None


def test_inverse_needs_reflected_order():
    src = discrete(["u", "v"])
    f = Dimap.from_mapping(src, chain(2), {"u": "c0", "v": "c1"})
    assert inverse(f) is None
