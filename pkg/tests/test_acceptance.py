"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line; run with ``pytest -s`` (or ``-v``)
to see them.  Tolerances are exact throughout: every comparison is lattice
or morphism equality, never approximate.
"""

import json
import random
import time

import pytest

from _helpers import (
    acceptance_groups,
    builtins_up_to,
    enumerate_zigzags,
    intervals_of,
    masks_are_functional,
    relation_masks,
    subfactors_of,
)
from noether import (
    GroupForm,
    Interval,
    LatticeForm,
    ValidationError,
    all_subnormal_series,
    are_isomorphic,
    builtin_group,
    butterfly,
    composition_series,
    dualize,
    e1_check,
    coarsest_check,
    induction_criterion,
    load_lattice,
    project_interval,
    projectively_isomorphic,
    projects_onto,
    quotient_type_multiset,
    random_modular_lattice,
    refine_pair,
    series_in_group,
    subfactor_projection_check,
    theorem_a_equivalence,
    validate_series,
    verify_axioms,
    verify_theorems,
)
from noether.cli import main as cli_main

CORPUS_LE12 = builtins_up_to(12)


def _report(number: int, name: str, ok: bool) -> None:
    print(f"ACCEPTANCE {number} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {number} ({name}) failed"


@pytest.fixture(scope="module")
def corpus():
    return GroupForm(acceptance_groups())


@pytest.fixture(scope="module")
def le12():
    return GroupForm(CORPUS_LE12)


def test_criterion_1_axiom_conformance(corpus):
    start = time.perf_counter()
    axioms = verify_axioms(corpus)
    theorems = verify_theorems(corpus)
    elapsed = time.perf_counter() - start
    ok = (
        axioms.passed
        and theorems.passed
        and not [c for c in axioms.checks if c.status == "skipped"]
        and elapsed < 60.0
    )
    _report(1, f"axiom conformance ({elapsed:.1f}s)", ok)


def test_criterion_2_duality(corpus):
    dual = dualize(corpus)
    ok = verify_axioms(dual).passed and verify_theorems(dual).passed
    double = dualize(dual)
    rng = random.Random(1729)
    objects = corpus.registered_objects()
    matches = 0
    for _ in range(1000):
        g = rng.choice(objects)
        refs = corpus.subobjects(g)
        x, y = rng.choice(refs), rng.choice(refs)
        kind = rng.randrange(7)
        if kind == 0:
            same = corpus.leq(x, y) == double.leq(x, y)
        elif kind == 1:
            same = corpus.meet(x, y) == double.meet(x, y)
        elif kind == 2:
            same = corpus.join(x, y) == double.join(x, y)
        elif kind == 3:
            same = corpus.is_normal(x) == double.is_normal(x)
        elif kind == 4:
            same = corpus.is_conormal(x) == double.is_conormal(x)
        elif kind == 5:
            same = corpus.bottom(g) == double.bottom(g) and corpus.top(g) == double.top(g)
        else:
            same = corpus.relative_normal(x, y) == double.relative_normal(x, y)
        matches += same
    ok = ok and matches == 1000
    _report(2, f"duality ({matches}/1000 double-dual matches)", ok)


def test_criterion_3_projection_lemma(le12):
    checked = 0
    ok = True
    for g in le12.registered_objects():
        intervals = intervals_of(le12, g)
        for x in subfactors_of(le12, g):
            for y in intervals:
                verdict = subfactor_projection_check(le12, x, y)
                checked += 1
                ok = ok and verdict.projection_identity
    _report(3, f"subfactor projection lemma ({checked} pairs)", ok)


def test_criterion_4_butterfly(le12):
    checked = 0
    ok = True
    for g in le12.registered_objects():
        for x in subfactors_of(le12, g):
            for y in subfactors_of(le12, g):
                report = butterfly(le12, x, y)
                checked += 1
                good = report.mutual_projection == (True, True)
                good = good and report.conormal_ok == (True, True)
                good = good and report.subfactors_ok == (True, True)
                witness = report.iso_witness
                good = good and witness is not None and witness.is_bijective()
                good = good and are_isomorphic(witness.domain, witness.codomain)
                ok = ok and good
    _report(4, f"butterfly lemma ({checked} subfactor pairs)", ok)


def test_criterion_5_theorem_a(le12):
    checked = 0
    discrepancies = 0
    for g in le12.registered_objects():
        for x in subfactors_of(le12, g):
            for y in subfactors_of(le12, g):
                verdict = theorem_a_equivalence(le12, x, y)
                checked += 1
                discrepancies += not verdict.consistent
    _report(5, f"zigzag-iso equivalence ({checked} pairs, {discrepancies} discrepancies)", discrepancies == 0)


def test_criterion_6_homomorphism_induction():
    corpus8 = [g for g in acceptance_groups() if g.order <= 8]
    form = GroupForm(corpus8)
    total = 0
    agree = 0
    for g in corpus8:
        for zz in enumerate_zigzags(form, g, 4):
            total += 1
            agree += induction_criterion(form, zz) == masks_are_functional(relation_masks(zz))
    _report(6, f"homomorphism induction ({agree}/{total} agreements)", agree == total)


def test_criterion_7_counterexample(capsys):
    form = GroupForm([builtin_group("Z6")])
    z6 = form.registered_objects()[0]
    r = lambda elems: form.subgroup_ref(z6, elems)
    y21 = Interval(r({0}), r({0, 2, 4}))
    ok = project_interval(form, y21, Interval(r({0, 3}), r(range(6)))) == Interval(
        r({0, 3}), r(range(6))
    )
    ok = ok and project_interval(form, y21, Interval(r({0}), r(range(6)))) == y21
    s = series_in_group(form, z6, [range(6), {0}])
    t = series_in_group(form, z6, [range(6), {0, 2, 4}, {0}])
    ok = ok and e1_check(form, s, t, Interval(r({0, 3}), r(range(6))), 0, 1) is False
    report = coarsest_check(form, s, t)
    ok = ok and not report.coarsest and report.witness is not None
    u, v = report.witness
    ok = ok and [sorted(form.elements_of(w)) for w in u.terms] == [[0, 1, 2, 3, 4, 5], [0, 3], [0]]
    ok = ok and [sorted(form.elements_of(w)) for w in v.terms] == [[0, 1, 2, 3, 4, 5], [0, 2, 4], [0]]
    exit_code = cli_main(["counterexample"])
    capsys.readouterr()
    ok = ok and exit_code == 0
    _report(7, "coarsest-refinement counterexample", ok)


def test_criterion_8_refinement_theorem(le12):
    ok = True
    pairs = 0
    for g in le12.registered_objects():
        everything = all_subnormal_series(le12, g)
        for s in everything:
            for t in everything:
                result = refine_pair(le12, s, t)
                pairs += 1
                good = len(result.left.terms) == len(result.right.terms)
                good = good and validate_series(le12, result.left.terms) == result.left
                good = good and validate_series(le12, result.right.terms) == result.right
                good = good and result.left.refines(s) and result.right.refines(t)
                matching = projectively_isomorphic(le12, result.left, result.right)
                good = good and matching is not None
                good = good and quotient_type_multiset(le12, result.left) == quotient_type_multiset(
                    le12, result.right
                )
                for i, j in result.matching.pairs:
                    a = Interval(result.left.terms[i + 1], result.left.terms[i])
                    b = Interval(result.right.terms[j + 1], result.right.terms[j])
                    good = good and projects_onto(le12, a, b) and projects_onto(le12, b, a)
                ok = ok and good
        # Jordan-Hoelder consequence: composition series agree on quotient types
        comps = composition_series(le12, g)
        types = {quotient_type_multiset(le12, s) for s in comps}
        ok = ok and len(types) <= 1
    _report(8, f"refinement theorem ({pairs} series pairs)", ok)


def test_criterion_9_lattice_instance():
    diamond = load_lattice({"name": "diamond", "size": 4, "covers": [[0, 1], [0, 2], [1, 3], [2, 3]]})
    rng = random.Random(20250810)
    lattices = [diamond] + [random_modular_lattice(rng, max_size=12) for _ in range(3)]
    form = LatticeForm(lattices)
    ok = verify_axioms(form).passed and verify_theorems(form).passed
    try:
        load_lattice({"size": 5, "covers": [[0, 1], [1, 2], [2, 4], [0, 3], [3, 4]]})
        rejected = False
        message = ""
    except ValidationError as exc:
        rejected = True
        message = str(exc)
    ok = ok and rejected and "witness triple" in message
    _report(9, "modular lattice instance", ok)
