"""Isbell's subfactor calculus: projections of subobjects and intervals,
the projection lemma, the zigzag equivalence for mutual projection, and the
butterfly lemma with a constructed isomorphism.

Throughout, an interval ``X = [lo, hi]`` is a pair of subobjects of one
object with ``lo <= hi``; it is a *subfactor* when ``lo`` is normal to
``hi``.  The projection of ``Z`` in ``X`` is ``(Z ^ hi) v lo``, a canonical
way of transporting ``Z`` into the interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .core import DomainError, Form, SubobjectRef
from .zigzag import Zigzag, canonical_zigzag, induces_hom, induces_iso


@dataclass(frozen=True, slots=True)
class Interval:
    """A pair ``[lo, hi]`` of subobjects of one object with ``lo <= hi``."""

    lo: SubobjectRef
    hi: SubobjectRef


def interval(form: Form, lo: SubobjectRef, hi: SubobjectRef) -> Interval:
    """Validated interval constructor."""
    if not form.leq(lo, hi):
        raise DomainError(
            f"not an interval: {form.describe_subobject(lo)} is not below {form.describe_subobject(hi)}"
        )
    return Interval(lo, hi)


def describe_interval(form: Form, x: Interval) -> str:
    return f"[{form.describe_subobject(x.lo)}, {form.describe_subobject(x.hi)}]"


def project(form: Form, z: SubobjectRef, x: Interval) -> SubobjectRef:
    """The projection ``(z ^ x.hi) v x.lo``; lands in ``[x.lo, x.hi]`` and is
    monotone in ``z``."""
    return form.join(form.meet(z, x.hi), x.lo)


def project_interval(form: Form, y: Interval, x: Interval) -> Interval:
    """Componentwise projection of ``y`` in ``x``; an interval inside ``x``."""
    return Interval(project(form, y.lo, x), project(form, y.hi, x))


def contains(form: Form, outer: Interval, inner: Interval) -> bool:
    """Interval containment: ``inner`` lies inside ``outer``."""
    return form.leq(outer.lo, inner.lo) and form.leq(inner.hi, outer.hi)


def is_subfactor(form: Form, x: Interval) -> bool:
    return form.relative_normal(x.lo, x.hi)


def projects_onto(form: Form, y: Interval, x: Interval) -> bool:
    """Whether ``y`` projects onto ``x``, i.e. the projection of ``y`` in
    ``x`` is all of ``x``."""
    return project_interval(form, y, x) == x


@dataclass(frozen=True, slots=True)
class ProjectionLemmaVerdict:
    """Outcome of the subfactor projection lemma on one pair.

    With ``x`` a subfactor, ``(yx)y`` must equal ``xy`` for *any* interval
    ``y``.  The stronger conclusion that ``yx`` is again a subfactor needs
    ``y`` to be a subfactor too (meet-stability of relative normality is
    applied to ``y`` itself) on top of its projected top being conormal;
    both side conditions are recorded rather than assumed.
    """

    x: Interval
    y: Interval
    yx: Interval
    xy: Interval
    projection_identity: bool
    y_is_subfactor: bool
    yx_top_conormal: bool
    yx_is_subfactor: bool | None

    @property
    def holds(self) -> bool:
        if not self.projection_identity:
            return False
        if self.y_is_subfactor and self.yx_top_conormal:
            return self.yx_is_subfactor is True
        return True


def subfactor_projection_check(form: Form, x: Interval, y: Interval) -> ProjectionLemmaVerdict:
    if not is_subfactor(form, x):
        raise DomainError(f"{describe_interval(form, x)} is not a subfactor")
    yx = project_interval(form, y, x)
    xy = project_interval(form, x, y)
    conormal = form.is_conormal(yx.hi)
    return ProjectionLemmaVerdict(
        x=x,
        y=y,
        yx=yx,
        xy=xy,
        projection_identity=project_interval(form, yx, y) == xy,
        y_is_subfactor=is_subfactor(form, y),
        yx_top_conormal=conormal,
        yx_is_subfactor=is_subfactor(form, yx) if conormal else None,
    )


def butterfly_zigzag(form: Form, x: Interval, y: Interval) -> Zigzag:
    """The four-leg zigzag  x.hi/x.lo <- x.hi -> G <- y.hi -> y.hi/y.lo
    between the quotients of two subfactors."""
    left = canonical_zigzag(form, x.lo, x.hi)
    right = canonical_zigzag(form, y.lo, y.hi)
    return left.reverse().concat(right)


@dataclass(frozen=True, slots=True)
class TheoremAVerdict:
    """Both sides of the equivalence: the butterfly zigzag induces an
    isomorphism exactly when the two subfactors project onto each other."""

    x: Interval
    y: Interval
    zigzag: Zigzag
    zigzag_induces_iso: bool
    mutual_projection: bool

    @property
    def consistent(self) -> bool:
        return self.zigzag_induces_iso == self.mutual_projection


def theorem_a_equivalence(form: Form, x: Interval, y: Interval) -> TheoremAVerdict:
    zz = butterfly_zigzag(form, x, y)
    mutual = projects_onto(form, x, y) and projects_onto(form, y, x)
    return TheoremAVerdict(
        x=x,
        y=y,
        zigzag=zz,
        zigzag_induces_iso=induces_iso(form, zz),
        mutual_projection=mutual,
    )


@dataclass(frozen=True, slots=True)
class ButterflyReport:
    """Mutual projections of two subfactors, with the induced isomorphism
    between their quotients when the side conditions hold.

    ``mutual_projection`` records ``(yx)(xy) == xy`` and ``(xy)(yx) == yx``;
    ``conormal_ok`` records conormality of the projected tops.  When both
    tops are conormal, both projected intervals are subfactors and
    ``iso_witness`` is the morphism induced by ``iso_zigzag`` between their
    quotients (instance permitting).  The zigzag is kept for diagnostics
    even when no isomorphism is induced.
    """

    x: Interval
    y: Interval
    yx: Interval
    xy: Interval
    mutual_projection: tuple[bool, bool]
    conormal_ok: tuple[bool, bool]
    subfactors_ok: tuple[bool, bool] | None
    iso_zigzag: Zigzag | None
    iso_witness: Any | None

    @property
    def holds(self) -> bool:
        ok = self.mutual_projection == (True, True)
        if self.conormal_ok == (True, True):
            ok = ok and self.subfactors_ok == (True, True) and self.iso_zigzag is not None
        return ok


def butterfly(form: Form, x: Interval, y: Interval) -> ButterflyReport:
    for z in (x, y):
        if not is_subfactor(form, z):
            raise DomainError(f"{describe_interval(form, z)} is not a subfactor")
    yx = project_interval(form, y, x)
    xy = project_interval(form, x, y)
    mutual = (
        project_interval(form, yx, xy) == xy,
        project_interval(form, xy, yx) == yx,
    )
    conormal = (form.is_conormal(yx.hi), form.is_conormal(xy.hi))
    subfactors = None
    zz = None
    witness = None
    if conormal == (True, True):
        subfactors = (is_subfactor(form, yx), is_subfactor(form, xy))
        if subfactors == (True, True):
            zz = butterfly_zigzag(form, yx, xy)
            if induces_iso(form, zz):
                induced = induces_hom(form, zz)
                witness = induced.witness if induced is not None else None
    return ButterflyReport(
        x=x,
        y=y,
        yx=yx,
        xy=xy,
        mutual_projection=mutual,
        conormal_ok=conormal,
        subfactors_ok=subfactors,
        iso_zigzag=zz,
        iso_witness=witness,
    )
