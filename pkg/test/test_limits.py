import pytest

from pospace_lab.constructions.limits import (
    Cocone,
    Cone,
    coequalizer,
    coproduct,
    equalizer,
    product,
    pullback,
    pushout,
    quotient,
    under_product,
    under_pushout,
)
from pospace_lab.constructions.universal import (
    check_universal,
    parallel_diagram,
    product_diagram,
    pullback_diagram,
    pushout_diagram,
)
from pospace_lab.core.model_io import load_map
from pospace_lab.core.pospace import Dimap, chain, compose, constant, discrete, identity, initial_map, terminal
from pospace_lab.exception import AnchorMismatchError, ConstructionError, MorphismMismatchError


@pytest.fixture
def maps(models_dir):
    return load_map(models_dir / "collapse.map").f, load_map(models_dir / "pick_a.map").f


def test_product_is_componentwise():
    cone = product([chain(2), discrete(["u", "v"])])
    assert len(cone.apex) == 4
    assert cone.apex.leq_dir("(c0,u)", "(c1,u)")
    assert not cone.apex.leq_dir("(c0,u)", "(c1,v)")
    assert cone.legs[1]("(c1,v)") == "v"


def test_empty_product_is_a_point():
    assert len(product([]).apex) == 1


def test_product_universal_property():
    c, d = chain(2), discrete(["u", "v"])
    cone = product([c, d])
    t = terminal()
    candidate = Cone(t, (constant(t, c, "c1"), constant(t, d, "u")))
    result = check_universal(product_diagram([c, d]), cone, candidate)
    assert result.unique
    assert result.mediator.images == ("(c1,u)",)


def test_coproduct_keeps_summands_apart():
    co = coproduct([chain(2), chain(2)])
    assert co.apex.points == ("0:c0", "0:c1", "1:c0", "1:c1")
    assert not co.apex.leq_top("0:c0", "1:c1")


def test_equalizer_keeps_agreeing_points(maps):
    f, g = maps
    eq = equalizer(f, g)
    assert eq.apex.points == ("a", "c")
    inc = eq.legs[0]
    candidate = Cone(eq.apex, (inc, compose(f, inc)))
    result = check_universal(parallel_diagram(f, g), eq, candidate)
    assert result.unique
    assert result.mediator == identity(eq.apex)


def test_coequalizer_collapses_chain(maps):
    f, g = maps
    apex, q, trace = coequalizer(f, g)
    assert apex.points == ("x",)
    assert q.images == ("x", "x")
    assert trace.sim_classes == (("x", "y"),)
    candidate = Cocone(apex, (compose(q, f), q))
    assert check_universal(parallel_diagram(f, g), Cocone(apex, (q,)), candidate).unique


def test_quotient_collapses_order_cycles():
    c = chain(3)
    apex, q, trace = quotient(c, [("c0", "c2")])
    # c0 ~ c2 makes c0 <= c1 <= c0, so all three points merge
    assert apex.points == ("c0",)
    assert trace.final_classes == (("c0", "c1", "c2"),)
    assert "sim c0 c2" in trace.dump()


def test_quotient_without_identifications_is_identity():
    c = chain(2)
    apex, q, _ = quotient(c, [])
    assert apex == c
    assert q.images == c.points


def test_pullback_points(maps):
    f, g = maps
    cone = pullback(f, g)
    assert cone.apex.points == ("(a,a)", "(b,a)", "(c,b)", "(c,c)")
    assert compose(f, cone.legs[0]) == compose(g, cone.legs[1])
    candidate = Cone(cone.apex, (*cone.legs, compose(f, cone.legs[0])))
    assert check_universal(pullback_diagram(f, g), cone, candidate).unique


def test_pushout_of_collapse_and_pick(maps):
    f, g = maps
    cocone = pushout(f, g)
    assert len(cocone.apex) == 1
    candidate = Cocone(cocone.apex, (compose(cocone.legs[0], f), *cocone.legs))
    assert check_universal(pushout_diagram(f, g), cocone, candidate).unique


def test_pushout_glues_along_point():
    t, c = terminal(), chain(2)
    cocone = pushout(constant(t, c, "c1"), constant(t, c, "c0"))
    # c0 < c1 = c0' < c1'
    assert len(cocone.apex) == 3
    assert cocone.apex.leq_dir(cocone.legs[0]("c0"), cocone.legs[1]("c1"))


def test_universal_check_rejects_non_commuting_cocone(maps):
    f, g = maps
    cocone = pushout(f, g)
    bad = Cocone(f.target, (identity(f.target), identity(g.target)))
    with pytest.raises(ConstructionError):
        check_universal(pushout_diagram(f, g), cocone, bad)


def test_parallel_maps_required():
    c = chain(2)
    with pytest.raises(MorphismMismatchError):
        equalizer(identity(c), identity(terminal()))


def test_under_product_keeps_anchor(directed_under_ends):
    cone = under_product([directed_under_ends, directed_under_ends])
    assert cone.apex.xi.images == ("(t0,t0)", "(t2,t2)")


def test_under_pushout_of_initial_maps_is_relative_coproduct(directed_under_ends):
    x = directed_under_ends
    po = under_pushout(initial_map(x), initial_map(x))
    # two copies of t1 over shared endpoints
    assert len(po.apex) == 4


def test_under_constructions_need_one_anchor(directed_under_ends, vee):
    with pytest.raises(AnchorMismatchError):
        under_product([directed_under_ends, vee])


def test_dimap_from_mapping_rejects_strays():
    with pytest.raises(MorphismMismatchError):
        Dimap.from_mapping(terminal(), chain(2), {"*": "elsewhere"})
