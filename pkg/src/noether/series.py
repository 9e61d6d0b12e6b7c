"""Subnormal series, the refinement construction, projective isomorphism,
and the coarsest-refinement counterexample machinery.

A subnormal series runs strictly from the top of a fiber down to the bottom
with every step a subfactor.  Refining two series against each other
projects the terms of each into every step interval of the other; after
eliminating duplicates the two results are projectively isomorphic, matched
step by step through the butterfly lemma.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    BudgetError,
    DomainError,
    Form,
    InstanceIntegrityError,
    ProvisoError,
    SubobjectRef,
    UnsupportedInstanceError,
    ValidationError,
)
from .groups import FiniteGroup, GroupForm, cyclic_group, iso_class_label
from .subfactor import (
    Interval,
    contains,
    describe_interval,
    is_subfactor,
    project,
    project_interval,
    projects_onto,
)


@dataclass(frozen=True, slots=True)
class SubnormalSeries:
    """A strictly decreasing chain from fiber top to fiber bottom whose steps
    are subfactors."""

    obj: object
    terms: tuple[SubobjectRef, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def steps(self) -> tuple[Interval, ...]:
        """Step ``i`` as the interval [terms[i+1], terms[i]]."""
        return tuple(Interval(self.terms[i + 1], self.terms[i]) for i in range(len(self.terms) - 1))

    def refines(self, other: "SubnormalSeries") -> bool:
        """Whether this series contains every term of ``other``."""
        return self.obj == other.obj and set(other.terms) <= set(self.terms)


def validate_series(form: Form, terms) -> SubnormalSeries:
    """Check endpoints, strict descent, and the subfactor condition of every
    step; the error names the first offending step."""
    terms = tuple(terms)
    if not terms:
        raise ValidationError("a series needs at least one term")
    obj = terms[0].obj
    for t in terms:
        form._check_ref(t)
        if t.obj != obj:
            raise ValidationError("series terms must live in one fiber")
    if terms[0] != form.top(obj):
        raise ValidationError(f"series must start at the top, got {form.describe_subobject(terms[0])}")
    if terms[-1] != form.bottom(obj):
        raise ValidationError(f"series must end at the bottom, got {form.describe_subobject(terms[-1])}")
    if len(set(terms)) != len(terms):
        raise ValidationError("series terms must be distinct")
    for i in range(len(terms) - 1):
        lo, hi = terms[i + 1], terms[i]
        if lo == hi or not form.leq(lo, hi):
            raise ValidationError(
                f"step {i}: {form.describe_subobject(lo)} is not strictly below {form.describe_subobject(hi)}"
            )
        if not form.relative_normal(lo, hi):
            raise ValidationError(
                f"step {i}: [{form.describe_subobject(lo)}, {form.describe_subobject(hi)}] is not a subfactor"
            )
    return SubnormalSeries(obj, terms)


def series_in_group(form: GroupForm, group: FiniteGroup, element_sets) -> SubnormalSeries:
    """Convenience: a validated series in a group form from raw element sets."""
    return validate_series(form, [form.subgroup_ref(group, s) for s in element_sets])


def all_subnormal_series(form: Form, obj) -> tuple[SubnormalSeries, ...]:
    """Every subnormal series of ``obj``, in depth-first fiber order."""
    bot = form.bottom(obj)
    refs = form.subobjects(obj)
    out: list[SubnormalSeries] = []

    def extend(chain: list[SubobjectRef]) -> None:
        last = chain[-1]
        if last == bot:
            out.append(SubnormalSeries(obj, tuple(chain)))
            return
        for cand in refs:
            if cand != last and form.leq(cand, last) and form.relative_normal(cand, last):
                chain.append(cand)
                extend(chain)
                chain.pop()

    extend([form.top(obj)])
    return tuple(out)


def is_composition_series(form: Form, s: SubnormalSeries) -> bool:
    """Whether no step admits a strictly intermediate subnormal refinement."""
    for step in s.steps():
        for cand in form.subobjects(s.obj):
            if cand in (step.lo, step.hi):
                continue
            if (
                form.leq(step.lo, cand)
                and form.leq(cand, step.hi)
                and form.relative_normal(step.lo, cand)
                and form.relative_normal(cand, step.hi)
            ):
                return False
    return True


def composition_series(form: Form, obj) -> tuple[SubnormalSeries, ...]:
    return tuple(s for s in all_subnormal_series(form, obj) if is_composition_series(form, s))


@dataclass(frozen=True, slots=True)
class ProjectiveIsomorphism:
    """A bijection between the steps of two series; matched steps project
    onto each other."""

    pairs: tuple[tuple[int, int], ...]


def projectively_isomorphic(form: Form, s: SubnormalSeries, t: SubnormalSeries) -> ProjectiveIsomorphism | None:
    """Match every step of ``s`` with the unique step of ``t`` they mutually
    project onto; ``None`` when lengths differ or some step has no match."""
    if s.obj != t.obj:
        raise DomainError("series live on different objects")
    if len(s.terms) != len(t.terms):
        return None
    steps_s, steps_t = s.steps(), t.steps()
    pairs = []
    used = set()
    for i, a in enumerate(steps_s):
        matches = [
            j
            for j, b in enumerate(steps_t)
            if projects_onto(form, a, b) and projects_onto(form, b, a)
        ]
        if len(matches) != 1 or matches[0] in used:
            return None
        used.add(matches[0])
        pairs.append((i, matches[0]))
    return ProjectiveIsomorphism(tuple(pairs))


@dataclass(frozen=True, slots=True)
class RefinementResult:
    """The two refined series, the raw projection chains they came from
    (duplicates still present), and the step matching."""

    left: SubnormalSeries
    right: SubnormalSeries
    raw_left: tuple[SubobjectRef, ...]
    raw_right: tuple[SubobjectRef, ...]
    matching: ProjectiveIsomorphism


def _raw_projections(form: Form, s: SubnormalSeries, t: SubnormalSeries) -> list[SubobjectRef]:
    raw = [s.terms[0]]
    for step in s.steps():
        for j in range(1, len(t.terms)):
            raw.append(project(form, t.terms[j], step))
    return raw


def _dedup(raw) -> tuple[SubobjectRef, ...]:
    out = []
    for term in raw:
        if not out or out[-1] != term:
            out.append(term)
    return tuple(out)


def refine_pair(form: Form, s: SubnormalSeries, t: SubnormalSeries) -> RefinementResult:
    """Refine two series against each other by projecting the terms of each
    into every step of the other.

    Requires every projection except possibly the bottom to be conormal
    (:class:`ProvisoError` otherwise, naming the offender).  The outputs are
    validated subnormal series of equal length and the matching pairs steps
    that project onto each other.
    """
    if s.obj != t.obj:
        raise DomainError("series live on different objects")
    n, m = len(s.terms) - 1, len(t.terms) - 1
    raw_left = _raw_projections(form, s, t)
    raw_right = _raw_projections(form, t, s)
    bot = form.bottom(s.obj)
    for side, raw in (("left", raw_left), ("right", raw_right)):
        for k, term in enumerate(raw):
            if term != bot and not form.is_conormal(term):
                raise ProvisoError(
                    f"{side} projection {k} = {form.describe_subobject(term)} is not conormal"
                )
    try:
        left = validate_series(form, _dedup(raw_left))
        right = validate_series(form, _dedup(raw_right))
    except ValidationError as exc:
        raise InstanceIntegrityError(f"refinement produced an invalid series: {exc}") from exc
    pos_left = {ref: k for k, ref in enumerate(left.terms)}
    pos_right = {ref: k for k, ref in enumerate(right.terms)}
    pairs = []
    for i in range(n):
        for j in range(m):
            upper, lower = raw_left[i * m + j], raw_left[i * m + j + 1]
            if upper == lower:
                continue
            r_upper, r_lower = raw_right[j * n + i], raw_right[j * n + i + 1]
            a, b = Interval(lower, upper), Interval(r_lower, r_upper)
            if r_upper == r_lower or not (
                projects_onto(form, a, b) and projects_onto(form, b, a)
            ):
                raise InstanceIntegrityError(
                    f"butterfly pairing failed at step ({i},{j}): "
                    f"{describe_interval(form, a)} vs {describe_interval(form, b)}"
                )
            pairs.append((pos_left[upper], pos_right[r_upper]))
    matching = ProjectiveIsomorphism(tuple(sorted(pairs)))
    if [p[0] for p in matching.pairs] != list(range(len(left.terms) - 1)) or sorted(
        p[1] for p in matching.pairs
    ) != list(range(len(right.terms) - 1)):
        raise InstanceIntegrityError("refinement matching is not a bijection on steps")
    return RefinementResult(left, right, tuple(raw_left), tuple(raw_right), matching)


def quotient_type_multiset(form: Form, s: SubnormalSeries) -> tuple[str, ...]:
    """Isomorphism-class labels of the step quotients, as a sorted tuple.

    Group instances only: each step [lo, hi] contributes hi/lo, classified by
    brute-force isomorphism search against the built-in catalogue.
    """
    if not isinstance(s.obj, FiniteGroup):
        raise UnsupportedInstanceError("quotient types are defined for group instances only")
    labels = []
    for step in s.steps():
        emb = form.embedding_witness(step.hi)
        inner = form.inverse_image(emb, step.lo)
        proj = form.projection_witness(inner)
        labels.append(iso_class_label(proj.codomain))
    return tuple(sorted(labels))


def e1_check(
    form: Form,
    s: SubnormalSeries,
    t: SubnormalSeries,
    candidate: Interval,
    i: int,
    j: int,
) -> bool:
    """The containment half of the coarsest-refinement claim, instantiated.

    Preconditions: ``candidate`` is a subfactor inside step ``i`` of ``s``
    and some subfactor inside step ``j`` of ``t`` projects onto it.  Returns
    whether ``candidate`` is contained in the projection of step ``j`` into
    step ``i`` -- which the refinement construction would need, and which is
    false in general.
    """
    x_step = Interval(s.terms[i + 1], s.terms[i])
    y_step = Interval(t.terms[j + 1], t.terms[j])
    if not is_subfactor(form, candidate):
        raise DomainError(f"{describe_interval(form, candidate)} is not a subfactor")
    if not contains(form, x_step, candidate):
        raise DomainError(
            f"{describe_interval(form, candidate)} is not inside {describe_interval(form, x_step)}"
        )
    refs = form.subobjects(s.obj)
    witnesses = [
        Interval(lo, hi)
        for lo in refs
        if form.leq(y_step.lo, lo)
        for hi in refs
        if form.leq(lo, hi) and form.leq(hi, y_step.hi)
    ]
    if not any(
        is_subfactor(form, w) and projects_onto(form, w, candidate) for w in witnesses
    ):
        raise DomainError(
            f"nothing inside {describe_interval(form, y_step)} projects onto {describe_interval(form, candidate)}"
        )
    return contains(form, project_interval(form, y_step, x_step), candidate)


@dataclass(frozen=True, slots=True)
class CoarsestReport:
    """Whether the mutual refinement of a series pair is the coarsest
    projectively isomorphic refinement pair; when it is not, ``witness`` is a
    projectively isomorphic refinement pair that does not refine it."""

    refinement: RefinementResult
    coarsest: bool
    witness: tuple[SubnormalSeries, SubnormalSeries] | None


def coarsest_check(form: Form, s: SubnormalSeries, t: SubnormalSeries, *, max_fiber: int = 20) -> CoarsestReport:
    """Exhaustively compare the refinement of ``(s, t)`` against every
    projectively isomorphic pair of refinements of ``s`` and ``t``."""
    if form.fiber_size(s.obj) > max_fiber:
        raise BudgetError(
            f"fiber of {form.describe_object(s.obj)} has {form.fiber_size(s.obj)} subobjects, "
            f"exhaustive chain search is capped at {max_fiber}"
        )
    result = refine_pair(form, s, t)
    everything = all_subnormal_series(form, s.obj)
    refinements_s = [u for u in everything if u.refines(s)]
    refinements_t = [v for v in everything if v.refines(t)]
    for u in refinements_s:
        for v in refinements_t:
            if projectively_isomorphic(form, u, v) is None:
                continue
            if not (u.refines(result.left) and v.refines(result.right)):
                return CoarsestReport(result, False, (u, v))
    return CoarsestReport(result, True, None)


def section4_counterexample() -> dict:
    """Run the full counterexample scenario on the cyclic group of order 6.

    The subgroup fiber is the diamond; the two series Z6 > {0} and
    Z6 > {0,2,4} > {0} refine to the same chain, yet the containment claim
    fails on the subfactor [{0,3}, Z6] and the refinement pair is not the
    coarsest projectively isomorphic one.  Returns a structured report with
    every computed piece.
    """
    form = GroupForm([cyclic_group(6)])
    z6 = form.registered_objects()[0]
    ref = lambda elems: form.subgroup_ref(z6, elems)
    s = validate_series(form, [ref(range(6)), ref({0})])
    t = validate_series(form, [ref(range(6)), ref({0, 2, 4}), ref({0})])
    candidate = Interval(ref({0, 3}), ref(range(6)))
    y21 = Interval(t.terms[2], t.terms[1])
    onto_candidate = project_interval(form, y21, candidate)
    into_step = project_interval(form, y21, Interval(s.terms[1], s.terms[0]))
    e1 = e1_check(form, s, t, candidate, 0, 1)
    coarse = coarsest_check(form, s, t)
    fiber = form.fiber(z6)
    return {
        "form": form,
        "object": z6,
        "fiber": fiber,
        "series_s": s,
        "series_t": t,
        "candidate": candidate,
        "projection_onto_candidate": onto_candidate,
        "projection_into_step": into_step,
        "e1_holds": e1,
        "refinement": coarse.refinement,
        "coarsest": coarse.coarsest,
        "coarsest_witness": coarse.witness,
    }
