"""Zigzag chasing, induced morphisms, and the induction criterion."""

import pytest
from hypothesis import given, strategies as st

from _helpers import enumerate_zigzags, masks_are_functional, relation_masks
from noether import (
    DomainError,
    GroupForm,
    GroupHom,
    Interval,
    Leg,
    Zigzag,
    builtin_group,
    canonical_zigzag,
    chase,
    element_relation,
    generated_subgroup,
    induces_hom,
    induces_iso,
    induction_criterion,
    relation_is_functional,
)
from noether.zigzag import LEFT, RIGHT


def test_empty_zigzag_is_identity_chase(z6_form):
    z6 = z6_form.registered_objects()[0]
    zz = Zigzag.from_legs([], start=z6)
    for x in z6_form.subobjects(z6):
        assert chase(z6_form, zz, x) == x
    assert induces_iso(z6_form, zz)
    induced = induces_hom(z6_form, zz)
    assert induced.witness == z6_form.identity(z6)


def test_from_legs_needs_start_for_empty():
    with pytest.raises(DomainError):
        Zigzag.from_legs([])


def test_leg_endpoints_checked(z6_form):
    z6 = z6_form.registered_objects()[0]
    pi = z6_form.projection_witness(z6_form.subgroup_ref(z6, {0, 3}))
    with pytest.raises(Exception):
        Zigzag((z6, z6), (Leg(pi, RIGHT),))


def test_eq5_zigzag_chases(z6_form):
    z6 = z6_form.registered_objects()[0]
    lo = z6_form.subgroup_ref(z6, {0, 3})
    zz = canonical_zigzag(z6_form, lo, z6_form.top(z6))
    y = z6_form.subgroup_ref(z6, {0, 2, 4})
    fwd = chase(z6_form, zz, y)
    assert fwd == z6_form.top(zz.target)
    back = chase(z6_form, zz, fwd, backward=True)
    # (y meet top) join lo is the whole group
    assert back == z6_form.top(z6)


def test_eq5_roundtrip_formula_exhaustive(d8_form):
    d8 = d8_form.registered_objects()[0]
    for hi in d8_form.subobjects(d8):
        for lo in d8_form.subobjects(d8):
            if not d8_form.relative_normal(lo, hi):
                continue
            zz = canonical_zigzag(d8_form, lo, hi)
            for z in d8_form.subobjects(d8):
                roundtrip = chase(d8_form, zz, chase(d8_form, zz, z), backward=True)
                assert roundtrip == d8_form.join(d8_form.meet(z, hi), lo)


def test_canonical_zigzag_shapes(z6_form, d8_form):
    z6 = z6_form.registered_objects()[0]
    zz = canonical_zigzag(z6_form, z6_form.bottom(z6), z6_form.top(z6))
    assert zz.legs[0].direction == LEFT and zz.legs[1].direction == RIGHT
    assert zz.target.order == 6  # quotient by the trivial subgroup

    zz = canonical_zigzag(z6_form, z6_form.subgroup_ref(z6, {0, 3}), z6_form.top(z6))
    assert zz.target.order == 3

    d8 = d8_form.registered_objects()[0]
    rot = d8_form.subgroup_ref(d8, generated_subgroup(d8, {1}))
    center = d8_form.subgroup_ref(d8, generated_subgroup(d8, {2}))
    zz = canonical_zigzag(d8_form, center, rot)
    assert zz.target.order == 2


def test_canonical_zigzag_rejects_non_subfactor(d8_form):
    d8 = d8_form.registered_objects()[0]
    s = d8_form.subgroup_ref(d8, generated_subgroup(d8, {4}))
    with pytest.raises(DomainError, match="not a subfactor"):
        canonical_zigzag(d8_form, s, d8_form.top(d8))


def test_single_rightward_leg_induces_itself(z6_form):
    z6 = z6_form.registered_objects()[0]
    f = GroupHom(z6, z6, tuple(2 * i % 6 for i in range(6)))
    zz = Zigzag.from_legs([Leg(f, RIGHT)])
    induced = induces_hom(z6_form, zz)
    assert induced is not None and induced.witness == f


def test_butterfly_zigzag_of_incomparable_steps_induces_nothing(z6_form):
    from noether import butterfly_zigzag

    z6 = z6_form.registered_objects()[0]
    x = Interval(z6_form.bottom(z6), z6_form.subgroup_ref(z6, {0, 2, 4}))
    y = Interval(z6_form.bottom(z6), z6_form.subgroup_ref(z6, {0, 3}))
    zz = butterfly_zigzag(z6_form, x, y)
    # backward chase of the top lands at the bottom of X+/X-, not its top
    back = chase(z6_form, zz, z6_form.top(zz.target), backward=True)
    assert back == z6_form.bottom(zz.source)
    assert induces_hom(z6_form, zz) is None
    assert not induces_iso(z6_form, zz)


def test_butterfly_zigzag_of_equal_subfactors_is_identity_iso(z6_form):
    from noether import butterfly_zigzag

    z6 = z6_form.registered_objects()[0]
    x = Interval(z6_form.subgroup_ref(z6, {0, 3}), z6_form.top(z6))
    zz = butterfly_zigzag(z6_form, x, x)
    assert induces_iso(z6_form, zz)
    induced = induces_hom(z6_form, zz)
    assert induced.witness == z6_form.identity(zz.source)


def test_chase_monotone(z6_form):
    z6 = z6_form.registered_objects()[0]
    lo = z6_form.subgroup_ref(z6, {0, 3})
    zz = canonical_zigzag(z6_form, lo, z6_form.top(z6))
    rs = z6_form.subobjects(z6)
    for a in rs:
        for b in rs:
            if z6_form.leq(a, b):
                assert z6_form.leq(chase(z6_form, zz, a), chase(z6_form, zz, b))


def test_element_relation_matches_witness(z6_form):
    z6 = z6_form.registered_objects()[0]
    lo = z6_form.subgroup_ref(z6, {0, 3})
    zz = canonical_zigzag(z6_form, lo, z6_form.top(z6))
    induced = induces_hom(z6_form, zz)
    assert induced is not None
    relation = element_relation(zz)
    assert relation_is_functional(relation, z6.order)
    assert relation == frozenset((a, induced.witness.mapping[a]) for a in range(z6.order))


def test_hit_criterion_matches_relational_composite_small():
    form = GroupForm([builtin_group("Z6"), builtin_group("S3")])
    for g in form.registered_objects():
        for zz in enumerate_zigzags(form, g, 3):
            crit = induction_criterion(form, zz)
            functional = masks_are_functional(relation_masks(zz))
            assert crit == functional
            if crit:
                induced = induces_hom(form, zz)
                assert induced is not None and induced.witness is not None


@given(st.sampled_from(["Z4", "K4", "S3"]))
def test_reverse_is_involution_and_backward_chase(name):
    form = GroupForm([builtin_group(name)])
    g = form.registered_objects()[0]
    top = form.top(g)
    zz = canonical_zigzag(form, form.bottom(g), top)
    assert zz.reverse().reverse() == zz
    for x in form.subobjects(g):
        assert chase(form, zz, x, backward=False) == chase(form, zz.reverse(), x, backward=True)
