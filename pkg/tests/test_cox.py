"""Multigraded coordinate rings, local charts, grading quality checks."""

import pytest

from coxfan import corpus, cox, grading
from coxfan.cox import (
    BaseRingFlags,
    build_cox,
    gamma_is_iso,
    is_positively_graded,
    local_chart,
    strongly_graded_at,
)
from coxfan.grading import classify_subgroup, subgroup_of_whole_group


FIELD_FLAGS = BaseRingFlags(field=True, noetherian=True, reduced=True)


def _cox(name, sub=None):
    g = grading.build_grading(corpus.build(name))
    b = sub(g) if sub else subgroup_of_whole_group(g)
    return build_cox(g, b, FIELD_FLAGS)


def _index_two(g):
    return classify_subgroup(g, [g.class_group.from_coords([2])])


def test_p2_irrelevant_generators():
    c = _cox("p2")
    # complement monomial of each maximal cone is a single variable
    assert sorted(c.irrelevant_generators) == [
        (0, 0, 1),
        (0, 1, 0),
        (1, 0, 0),
    ]
    assert c.restricted_irrelevant_generators == c.irrelevant_generators


def test_p2_restricted_to_index_two():
    c = _cox("p2", _index_two)
    # powers must land in even total degree: all six degree-2 monomials
    assert sorted(c.restricted_irrelevant_generators) == [
        (0, 0, 2),
        (0, 1, 1),
        (0, 2, 0),
        (1, 0, 1),
        (1, 1, 0),
        (2, 0, 0),
    ]
    maximal = c.grading.fan.maximal_cones()
    for m in maximal:
        key = tuple(sorted(m.ray_generators))
        assert c.m_exponents[key] == 2


def test_p1xp1_irrelevant_generators():
    c = _cox("p1xp1")
    # each maximal cone omits one ray per factor: products of two variables
    gens = sorted(c.irrelevant_generators)
    assert all(sum(e) == 2 and max(e) == 1 for e in gens)
    assert len(gens) == 4


def test_p2_m_exponents_whole_group():
    c = _cox("p2")
    maximal = c.grading.fan.maximal_cones()
    for m in maximal:
        key = tuple(sorted(m.ray_generators))
        assert c.m_exponents[key] == 1


def test_p2_local_chart():
    c = _cox("p2")
    fan = c.grading.fan
    sigma = next(
        m
        for m in fan.maximal_cones()
        if sorted(m.ray_generators) == [(0, 1), (1, 0)]
    )
    ch = local_chart(c, sigma)
    assert sorted(ch.degree_zero_generators) == [(0, 1, -1), (1, 0, -1)]
    assert ch.toric_relations == ()


def test_quadric_cone_chart_relation():
    c = _cox("quadric_cone")
    sigma = max(c.grading.fan.maximal_cones(), key=lambda m: m.dim())
    ch = local_chart(c, sigma)
    assert len(ch.degree_zero_generators) == 4
    assert len(ch.toric_relations) == 1
    rel = ch.toric_relations[0]
    assert sorted(rel) == [-1, -1, 1, 1]


def test_chart_rejects_foreign_cone():
    c = _cox("p2")
    from coxfan.polyfan import Cone

    foreign = Cone(ambient_rank=2, ray_generators=((7, 1),))
    with pytest.raises(cox.ConeNotInFan):
        local_chart(c, foreign)


def test_gamma_iso_p2():
    assert gamma_is_iso(_cox("p2"))


def test_gamma_iso_fails_when_rays_span_a_proper_sublattice():
    from coxfan.polyfan import build_fan

    g = grading.build_grading(build_fan(2, [(1, 0)], [[0]]))
    c = build_cox(g, subgroup_of_whole_group(g), FIELD_FLAGS)
    ok, witness = gamma_is_iso(c)
    assert not ok
    # the witness is a lattice direction invisible to every ray
    assert witness is not None and any(witness)


def test_strongly_graded_everywhere_when_small():
    for name in ("p2", "p1xp1"):
        c = _cox(name)
        for m in c.grading.fan.maximal_cones():
            assert strongly_graded_at(c, m), name


def test_strongly_graded_fails_on_weighted_singular_chart():
    c = _cox("p112")
    failures = [
        sorted(m.ray_generators)
        for m in c.grading.fan.maximal_cones()
        if not strongly_graded_at(c, m)
    ]
    assert [(-1, -2), (1, 0)] in failures


def test_positively_graded():
    assert is_positively_graded(_cox("p2"))[0]
    assert is_positively_graded(_cox("p1xp1"))[0]
    assert is_positively_graded(_cox("p112"))[0]
    ok, witness = is_positively_graded(_cox("three_rays"))
    assert not ok and witness is not None


def test_degree_zero_independent_of_subgroup():
    # the chart rings only see degree zero, so shrinking B changes nothing
    c_whole = _cox("p2")
    c_half = _cox("p2", _index_two)
    for m in c_whole.grading.fan.maximal_cones():
        a = sorted(local_chart(c_whole, m).degree_zero_generators)
        b = sorted(local_chart(c_half, m).degree_zero_generators)
        assert a == b
