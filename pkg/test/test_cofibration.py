import pytest

from pospace_lab.cofibration.dicofibration import (
    cylinder_cofibration_witness,
    endpoint_counterexample,
    initial_map_verdict,
    mapping_cylinder,
    mapping_cylinder_factorization,
    pair_leg,
    section_over_base,
    trivial_difibration_pool,
)
from pospace_lab.core.pospace import absolute, discrete, empty, final_map, terminal, under_compose, under_identity, under_map
from pospace_lab.fibration.test_family import TestFamily


@pytest.fixture
def point():
    return absolute(terminal())


@pytest.fixture
def pick_q(point, sierpinski):
    return under_map(point, sierpinski, {"*": "q"})


@pytest.fixture
def family():
    return TestFamily.sample(empty(), 3, seed=7, max_points=2)


@pytest.mark.parametrize("n", [1, 2])
def test_endpoint_inclusion_has_no_lift(n):
    result = endpoint_counterexample(n)
    assert result.reproduced
    assert result.matching == 0
    assert not result.lift_found
    assert result.sections > 0


def test_endpoint_transcript():
    lines = endpoint_counterexample(1).transcript()
    assert lines[0] == "directed interval teeth n=1: 3 points"
    assert lines[-1] == "verdict: reproduced"


def test_endpoint_relative_variant_is_reported():
    result = endpoint_counterexample(1, relative_family_size=3, kmax=1)
    assert result.relative is not None
    assert result.relative.passes
    assert result.transcript()[-1].startswith("relative inclusion under {0,1}: ")


def test_mapping_cylinder_factors_f(pick_q):
    fact = mapping_cylinder(pick_q, 1)
    assert under_compose(fact.r, fact.i).images == pick_q.images
    assert under_compose(fact.r, fact.iota).images == under_identity(pick_q.target).images


def test_mapping_cylinder_certificate(pick_q):
    cert = mapping_cylinder_factorization(pick_q, 1)
    assert [c.name for c in cert.checks] == ["r∘i = f", "r is a dihomotopy equivalence"]
    assert cert.checks[0].ok


def test_pair_leg_is_injective(pick_q):
    leg = pair_leg(mapping_cylinder(pick_q, 1))
    # point plus both points of S
    assert len(leg.source.space) == 3
    assert leg.f.is_injective


def test_cylinder_witness_with_empty_pool(sierpinski, family):
    witness = cylinder_cofibration_witness(sierpinski, 1, family, 1, ())
    assert witness.retraction
    assert witness.contraction
    assert witness.passes


def test_trivial_pool_contains_identities(family):
    pool = trivial_difibration_pool(family, 1, seed=7, sample_maps=2)
    keys = {(p.source, p.images) for p in pool}
    for member in family:
        assert (member, under_identity(member).images) in keys


def test_initial_map_lifts_against_identities(vee, family):
    pool = tuple(under_identity(m) for m in family)
    assert initial_map_verdict(vee, family, 1, pool)


def test_section_over_contractible_fibre(free_fence):
    s = section_over_base(final_map(free_fence))
    assert s is not None
    assert len(s.images) == 1


def test_no_section_over_disconnected_fibre():
    two = absolute(discrete(["u", "v"]))
    assert section_over_base(final_map(two)) is None
