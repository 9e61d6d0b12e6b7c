"""Subfactor projections, the projection lemma, the zigzag equivalence, and
the butterfly lemma."""

import pytest

from _helpers import intervals_of, subfactors_of
from noether import (
    DomainError,
    GroupForm,
    Interval,
    builtin_group,
    butterfly,
    dualize,
    generated_subgroup,
    interval,
    is_subfactor,
    project,
    project_interval,
    projects_onto,
    subfactor_projection_check,
    theorem_a_equivalence,
)


def z6_fixture(form):
    z6 = form.registered_objects()[0]
    r = lambda elems: form.subgroup_ref(z6, elems)
    return z6, r


def test_project_values(z6_form):
    z6, r = z6_fixture(z6_form)
    x = Interval(r({0, 3}), r(range(6)))
    assert z6_form.elements_of(project(z6_form, r({0}), x)) == frozenset({0, 3})
    assert z6_form.elements_of(project(z6_form, r({0, 2, 4}), x)) == frozenset(range(6))
    whole = Interval(z6_form.bottom(z6), z6_form.top(z6))
    for z in z6_form.subobjects(z6):
        assert project(z6_form, z, whole) == z


def test_project_interval_values(z6_form):
    z6, r = z6_fixture(z6_form)
    y = Interval(r({0}), r({0, 2, 4}))
    assert project_interval(z6_form, y, Interval(r({0, 3}), r(range(6)))) == Interval(
        r({0, 3}), r(range(6))
    )
    assert project_interval(z6_form, y, Interval(r({0}), r(range(6)))) == y
    x = Interval(r({0, 3}), r(range(6)))
    assert project_interval(z6_form, x, x) == x


def test_project_lands_inside_and_is_monotone(d8_form):
    d8 = d8_form.registered_objects()[0]
    refs = d8_form.subobjects(d8)
    for x in intervals_of(d8_form, d8):
        for z in refs:
            p = project(d8_form, z, x)
            assert d8_form.leq(x.lo, p) and d8_form.leq(p, x.hi)
        for z1 in refs:
            for z2 in refs:
                if d8_form.leq(z1, z2):
                    assert d8_form.leq(project(d8_form, z1, x), project(d8_form, z2, x))


def test_interval_constructor_validates(z6_form):
    z6, r = z6_fixture(z6_form)
    interval(z6_form, r({0}), r({0, 3}))
    with pytest.raises(DomainError, match="not an interval"):
        interval(z6_form, r({0, 3}), r({0, 2, 4}))


def test_is_subfactor_examples(z6_form, d8_form):
    z6, r = z6_fixture(z6_form)
    assert is_subfactor(z6_form, Interval(r({0, 3}), r(range(6))))
    d8 = d8_form.registered_objects()[0]
    s = d8_form.subgroup_ref(d8, generated_subgroup(d8, {4}))
    assert not is_subfactor(d8_form, Interval(s, d8_form.top(d8)))
    assert is_subfactor(d8_form, Interval(d8_form.bottom(d8), s))


def test_projects_onto_examples(z6_form):
    z6, r = z6_fixture(z6_form)
    y21 = Interval(r({0}), r({0, 2, 4}))
    assert projects_onto(z6_form, y21, y21)
    x = Interval(r({0, 3}), r(range(6)))
    # [Y2,Y1] projects onto [{0,3}, Z6]: the projection is the whole interval
    assert project_interval(z6_form, y21, x) == x
    assert projects_onto(z6_form, y21, x)
    # the other composition-series step does not: it collapses
    other = Interval(r({0}), r({0, 3}))
    assert project_interval(z6_form, other, x) == Interval(r({0, 3}), r({0, 3}))
    assert not projects_onto(z6_form, other, x)


def test_projection_lemma_requires_subfactor(d8_form):
    d8 = d8_form.registered_objects()[0]
    s = d8_form.subgroup_ref(d8, generated_subgroup(d8, {4}))
    bad = Interval(s, d8_form.top(d8))
    with pytest.raises(DomainError, match="not a subfactor"):
        subfactor_projection_check(d8_form, bad, bad)


@pytest.mark.parametrize("name", ["Z6", "D8"])
def test_projection_lemma_exhaustive(name):
    form = GroupForm([builtin_group(name)])
    g = form.registered_objects()[0]
    intervals = intervals_of(form, g)
    for x in subfactors_of(form, g):
        for y in intervals:
            verdict = subfactor_projection_check(form, x, y)
            assert verdict.projection_identity
            if verdict.y_is_subfactor and verdict.yx_top_conormal:
                assert verdict.yx_is_subfactor
            assert verdict.holds


def test_projection_of_non_subfactor_need_not_be_subfactor(d8_form):
    # the stronger conclusion genuinely needs y to be a subfactor
    d8 = d8_form.registered_objects()[0]
    s = d8_form.subgroup_ref(d8, generated_subgroup(d8, {4}))
    x = Interval(d8_form.bottom(d8), d8_form.top(d8))
    y = Interval(s, d8_form.top(d8))
    verdict = subfactor_projection_check(d8_form, x, y)
    assert verdict.projection_identity and verdict.holds
    assert not verdict.y_is_subfactor
    assert verdict.yx_top_conormal and verdict.yx_is_subfactor is False


def test_projection_lemma_self_application(z6_form):
    z6, r = z6_fixture(z6_form)
    x = Interval(r({0, 3}), r(range(6)))
    verdict = subfactor_projection_check(z6_form, x, x)
    assert verdict.yx == x and verdict.xy == x and verdict.holds


def test_theorem_a_examples(z6_form):
    z6, r = z6_fixture(z6_form)
    x = Interval(r({0, 3}), r(range(6)))
    same = theorem_a_equivalence(z6_form, x, x)
    assert same.consistent and same.zigzag_induces_iso
    a = Interval(r({0}), r({0, 2, 4}))
    b = Interval(r({0}), r({0, 3}))
    verdict = theorem_a_equivalence(z6_form, a, b)
    assert verdict.consistent and not verdict.zigzag_induces_iso
    assert project_interval(z6_form, a, b) == Interval(r({0}), r({0}))


def test_butterfly_degenerate_d8(d8_form):
    d8 = d8_form.registered_objects()[0]
    center = generated_subgroup(d8, {2})
    rot = generated_subgroup(d8, {1})
    v4 = generated_subgroup(d8, {2, 4})
    x = Interval(d8_form.subgroup_ref(d8, center), d8_form.subgroup_ref(d8, rot))
    y = Interval(d8_form.bottom(d8), d8_form.subgroup_ref(d8, v4))
    report = butterfly(d8_form, x, y)
    ctr = d8_form.subgroup_ref(d8, center)
    assert report.yx == Interval(ctr, ctr)
    assert report.xy == Interval(ctr, ctr)
    assert report.mutual_projection == (True, True)
    assert report.iso_witness is not None
    assert report.iso_witness.domain.order == 1  # trivial quotients


def test_butterfly_whole_interval(z6_form):
    z6, r = z6_fixture(z6_form)
    whole = Interval(z6_form.bottom(z6), z6_form.top(z6))
    report = butterfly(z6_form, whole, whole)
    assert report.holds
    assert report.iso_witness == z6_form.identity(report.iso_witness.domain)


def test_butterfly_rejects_non_subfactors(d8_form):
    d8 = d8_form.registered_objects()[0]
    s = d8_form.subgroup_ref(d8, generated_subgroup(d8, {4}))
    with pytest.raises(DomainError):
        butterfly(d8_form, Interval(s, d8_form.top(d8)), Interval(s, d8_form.top(d8)))


def test_butterfly_exhaustive_s3_with_iso_crosscheck():
    from noether import are_isomorphic

    form = GroupForm([builtin_group("S3")])
    g = form.registered_objects()[0]
    for x in subfactors_of(form, g):
        for y in subfactors_of(form, g):
            report = butterfly(form, x, y)
            assert report.mutual_projection == (True, True)
            assert report.subfactors_ok == (True, True)
            witness = report.iso_witness
            assert witness is not None and witness.is_bijective()
            assert are_isomorphic(witness.domain, witness.codomain)


def test_dual_form_exercises_conormality_side_conditions(d8_form):
    dual = dualize(d8_form)
    d8 = d8_form.registered_objects()[0]
    # dual subfactors: [a, b] with b below a in the base order and b normal
    duals = subfactors_of(dual, d8)
    assert duals
    non_conormal_seen = False
    for x in duals:
        for y in duals:
            report = butterfly(dual, x, y)
            assert report.mutual_projection == (True, True)
            if report.conormal_ok != (True, True):
                non_conormal_seen = True
            else:
                assert report.subfactors_ok == (True, True)
                assert report.iso_witness is not None
    # on the dual of D8, conormality genuinely fails for some projections
    assert non_conormal_seen
