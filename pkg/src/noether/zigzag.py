"""Zigzag diagrams: chasing, induced morphisms, and the canonical
two-leg zigzag of a subfactor.

A zigzag is a chain of morphisms with possibly alternating directions.  A
rightward leg at position ``i`` is a morphism ``nodes[i] -> nodes[i+1]``, a
leftward leg points the other way.  Chasing a subobject forward applies the
direct image along rightward legs and the inverse image along leftward ones;
chasing backward is chasing forward along the reversed zigzag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .core import (
    DomainError,
    Form,
    InstanceIntegrityError,
    SubobjectRef,
    UnsupportedInstanceError,
    ValidationError,
)

RIGHT = "R"
LEFT = "L"


@dataclass(frozen=True, slots=True)
class Leg:
    """One morphism of a zigzag together with the way it points."""

    morphism: Any
    direction: str

    def __post_init__(self) -> None:
        if self.direction not in (RIGHT, LEFT):
            raise ValidationError(f"leg direction must be {RIGHT!r} or {LEFT!r}, got {self.direction!r}")

    def flipped(self) -> "Leg":
        return Leg(self.morphism, LEFT if self.direction == RIGHT else RIGHT)


@dataclass(frozen=True, slots=True)
class Zigzag:
    nodes: tuple
    legs: tuple[Leg, ...]

    def __post_init__(self) -> None:
        if len(self.nodes) != len(self.legs) + 1 or not self.nodes:
            raise ValidationError("a zigzag on n legs has exactly n+1 nodes")
        for i, leg in enumerate(self.legs):
            src, dst = (self.nodes[i], self.nodes[i + 1]) if leg.direction == RIGHT else (self.nodes[i + 1], self.nodes[i])
            if leg.morphism.domain != src or leg.morphism.codomain != dst:
                raise ValidationError(f"leg {i} does not connect nodes {i} and {i + 1}")

    @staticmethod
    def from_legs(legs, start=None) -> "Zigzag":
        """Assemble a zigzag from legs alone, deriving the node sequence.

        ``start`` is required only for the empty zigzag.
        """
        legs = tuple(legs)
        if not legs:
            if start is None:
                raise DomainError("an empty zigzag needs an explicit node")
            return Zigzag((start,), ())
        first = legs[0]
        nodes = [first.morphism.domain if first.direction == RIGHT else first.morphism.codomain]
        for leg in legs:
            nodes.append(leg.morphism.codomain if leg.direction == RIGHT else leg.morphism.domain)
        return Zigzag(tuple(nodes), legs)

    @property
    def source(self):
        return self.nodes[0]

    @property
    def target(self):
        return self.nodes[-1]

    def reverse(self) -> "Zigzag":
        return Zigzag(self.nodes[::-1], tuple(leg.flipped() for leg in self.legs[::-1]))

    def concat(self, other: "Zigzag") -> "Zigzag":
        if self.target != other.source:
            raise DomainError("zigzags can only be concatenated at a shared node")
        return Zigzag(self.nodes + other.nodes[1:], self.legs + other.legs)


def chase(form: Form, zigzag: Zigzag, x: SubobjectRef, *, backward: bool = False) -> SubobjectRef:
    """Chase ``x`` along ``zigzag``; ``backward`` chases along the reverse."""
    if backward:
        zigzag = zigzag.reverse()
    if x.obj != zigzag.source:
        raise DomainError("chased subobject must live in the fiber of the zigzag's first node")
    cur = x
    for leg in zigzag.legs:
        if leg.direction == RIGHT:
            cur = form.direct_image(leg.morphism, cur)
        else:
            cur = form.inverse_image(leg.morphism, cur)
    return cur


def canonical_zigzag(form: Form, lo: SubobjectRef, hi: SubobjectRef) -> Zigzag:
    """The zigzag  G <-(embed hi)- hi-carrier -(project lo)-> quotient
    attached to a subfactor ``lo`` normal-to ``hi``.

    Chasing forward then backward sends any Z to (Z meet hi) join lo;
    backward chasing identifies the quotient's fiber with the interval
    [lo, hi].
    """
    if not form.relative_normal(lo, hi):
        raise DomainError(
            f"[{form.describe_subobject(lo)}, {form.describe_subobject(hi)}] is not a subfactor"
        )
    emb = form.embedding_witness(hi)
    inner = form.inverse_image(emb, lo)
    proj = form.projection_witness(inner)
    return Zigzag((lo.obj, emb.domain, proj.codomain), (Leg(emb, LEFT), Leg(proj, RIGHT)))


@dataclass(frozen=True, slots=True)
class InducedHom:
    """A zigzag that induces a morphism, with an instance-level witness when
    the instance can exhibit one (element maps for groups, a connection for
    lattices)."""

    zigzag: Zigzag
    witness: Any | None


def induction_criterion(form: Form, zigzag: Zigzag) -> bool:
    """Whether the zigzag induces a morphism: the least subobject chases
    forward to the least subobject, and the largest chases backward to the
    largest."""
    fwd = chase(form, zigzag, form.bottom(zigzag.source))
    if fwd != form.bottom(zigzag.target):
        return False
    bwd = chase(form, zigzag, form.top(zigzag.target), backward=True)
    return bwd == form.top(zigzag.source)


def induces_hom(form: Form, zigzag: Zigzag) -> InducedHom | None:
    """The morphism induced by ``zigzag``, or ``None`` when there is none.

    When the instance exhibits a witness, its image maps are checked against
    chasing; a mismatch means the instance is broken.
    """
    if not induction_criterion(form, zigzag):
        return None
    witness = form.induced_morphism_witness(zigzag)
    if witness is not None:
        _check_witness_matches_chasing(form, zigzag, witness)
    return InducedHom(zigzag, witness)


def _check_witness_matches_chasing(form: Form, zigzag: Zigzag, witness) -> None:
    if witness.domain != zigzag.source or witness.codomain != zigzag.target:
        raise InstanceIntegrityError("induced-morphism witness has the wrong endpoints")
    for x in form.subobjects(zigzag.source):
        if form.direct_image(witness, x) != chase(form, zigzag, x):
            raise InstanceIntegrityError(
                f"witness direct image disagrees with chasing at {form.describe_subobject(x)}"
            )
    for y in form.subobjects(zigzag.target):
        if form.inverse_image(witness, y) != chase(form, zigzag, y, backward=True):
            raise InstanceIntegrityError(
                f"witness inverse image disagrees with backward chasing at {form.describe_subobject(y)}"
            )


def induces_iso(form: Form, zigzag: Zigzag) -> bool:
    """Whether the [0,1] interval at each end chases to the [0,1] interval
    at the other end, i.e. the zigzag induces an isomorphism."""
    src, dst = zigzag.source, zigzag.target
    return (
        chase(form, zigzag, form.bottom(src)) == form.bottom(dst)
        and chase(form, zigzag, form.top(src)) == form.top(dst)
        and chase(form, zigzag, form.bottom(dst), backward=True) == form.bottom(src)
        and chase(form, zigzag, form.top(dst), backward=True) == form.top(src)
    )


def element_relation(zigzag: Zigzag) -> frozenset[tuple[int, int]]:
    """Relational composite of the legs over element carriers.

    Each rightward leg contributes its graph, each leftward leg the opposite
    relation.  Only defined for zigzags whose morphisms carry an element
    ``mapping`` over carriers ``0..order-1`` (the group instance).
    """
    first = zigzag.nodes[0]
    size = getattr(first, "order", None)
    if size is None:
        raise UnsupportedInstanceError("element relations need element-map morphisms")
    successors: list[set[int]] = [{a} for a in range(size)]
    for leg in zigzag.legs:
        mapping = getattr(leg.morphism, "mapping", None)
        if mapping is None:
            raise UnsupportedInstanceError("element relations need element-map morphisms")
        if leg.direction == RIGHT:
            successors = [{mapping[b] for b in cur} for cur in successors]
        else:
            successors = [
                {c for c in range(len(mapping)) if mapping[c] in cur} for cur in successors
            ]
    return frozenset((a, b) for a, cur in enumerate(successors) for b in cur)


def relation_is_functional(relation: frozenset[tuple[int, int]], size: int) -> bool:
    """Whether the relation is single-valued and total on ``0..size-1``."""
    seen: dict[int, int] = {}
    for a, b in relation:
        if a in seen:
            return False
        seen[a] = b
    return len(seen) == size
