"""Core interface for noetherian forms on finitely enumerable instances.

A form bundles objects, morphisms between them, a bounded subobject lattice
(the *fiber*) for every object, a direct/inverse image pair for every
morphism, and normality data backed by explicit witness morphisms.  The
concrete instances (finite groups in :mod:`noether.groups`, finite modular
lattices in :mod:`noether.lattices`) subclass :class:`Form`; everything
downstream -- zigzag chasing, subfactor projections, series refinement, the
axiom verifier -- is written against this interface only and therefore runs
unchanged on any instance, including dualized ones.

Subobjects are referred to by :class:`SubobjectRef`, a (object, fiber index)
pair; equality of subobjects is positional within a fiber, never by witness
identity.  Morphisms are instance-specific value objects exposing ``domain``
and ``codomain`` attributes.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import partial
from typing import Any, NamedTuple


class FormError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FormError):
    """An argument lives outside the structure it must belong to."""


class ValidationError(FormError):
    """Input data violates a structural invariant."""


class InstanceIntegrityError(FormError):
    """An instance broke an axiom it is supposed to satisfy."""


class ProvisoError(FormError):
    """A side condition of a theorem fails on the given input."""


class BudgetError(FormError):
    """An exhaustive search would exceed its configured budget."""


class UnsupportedInstanceError(FormError):
    """The operation requires a different kind of instance."""


@dataclass(frozen=True, slots=True)
class SubobjectRef:
    """A subobject: a position in the fiber of one object.

    Two refs are comparable only when they point into the same fiber.
    """

    obj: Any
    index: int


@dataclass(frozen=True, slots=True)
class Factorization:
    """Image factorization ``f = embedding . iso . projection``."""

    projection_part: Any
    iso_part: Any
    embedding_part: Any

    def parts(self) -> tuple:
        return (self.projection_part, self.iso_part, self.embedding_part)


@dataclass(frozen=True, slots=True)
class NormalityInfo:
    """Normality flags of a subobject plus the witnesses backing them."""

    is_normal: bool
    is_conormal: bool
    projection: Any | None
    embedding: Any | None


class ImagePair(NamedTuple):
    direct: Any
    inverse: Any


class Form(ABC):
    """A noetherian form on a finitely enumerable instance.

    Subclasses implement the index-level fiber hooks (``_leq``, ``_meet``,
    ...), morphism construction (``identity``, ``compose``), the image pair
    (``_direct``, ``_inverse``), the normality oracle with witnesses, and
    image factorization.  Everything else is derived here.

    All values are immutable after construction and every operation is a
    pure function of its inputs; internal caches are fill-once and
    idempotent, so concurrent readers need no coordination.
    """

    def __init__(self) -> None:
        self._user_morphisms: list = []

    # ------------------------------------------------------------------
    # frame

    @property
    @abstractmethod
    def label(self) -> str:
        """Human-readable instance label used in reports."""

    @abstractmethod
    def objects(self) -> tuple:
        """All objects known so far, registered ones first."""

    def registered_objects(self) -> tuple:
        """Objects the instance was constructed with.

        This is the quantification domain for exhaustive checks; objects
        realized on demand (subobject carriers, quotient carriers) are
        reachable through witnesses but are not re-quantified over.
        """
        return self.objects()

    # ------------------------------------------------------------------
    # fibers, index level

    @abstractmethod
    def _fiber_size(self, obj) -> int: ...

    @abstractmethod
    def _leq(self, obj, i: int, j: int) -> bool: ...

    @abstractmethod
    def _meet(self, obj, i: int, j: int) -> int: ...

    @abstractmethod
    def _join(self, obj, i: int, j: int) -> int: ...

    @abstractmethod
    def _bottom(self, obj) -> int: ...

    @abstractmethod
    def _top(self, obj) -> int: ...

    # ------------------------------------------------------------------
    # morphisms

    @abstractmethod
    def identity(self, obj):
        """The identity morphism of ``obj``."""

    @abstractmethod
    def compose(self, f, g):
        """``f`` after ``g``; raises :class:`DomainError` on a mismatch."""

    @abstractmethod
    def _direct(self, f, i: int) -> int: ...

    @abstractmethod
    def _inverse(self, f, j: int) -> int: ...

    # ------------------------------------------------------------------
    # normality structure

    @abstractmethod
    def is_normal(self, x: SubobjectRef) -> bool:
        """Whether ``x`` is the kernel of some morphism."""

    @abstractmethod
    def is_conormal(self, x: SubobjectRef) -> bool:
        """Whether ``x`` is the image of some morphism."""

    @abstractmethod
    def embedding_witness(self, x: SubobjectRef):
        """A morphism into ``x.obj`` with image ``x`` and least kernel."""

    @abstractmethod
    def projection_witness(self, x: SubobjectRef):
        """A morphism out of ``x.obj`` with kernel ``x`` and largest image."""

    @abstractmethod
    def factorize(self, f) -> Factorization:
        """Split ``f`` as projection, then isomorphism, then embedding."""

    # ------------------------------------------------------------------
    # derived, ref level

    def _check_ref(self, x: SubobjectRef) -> SubobjectRef:
        if not isinstance(x, SubobjectRef):
            raise DomainError(f"expected a SubobjectRef, got {x!r}")
        if not 0 <= x.index < self._fiber_size(x.obj):
            raise DomainError(f"subobject index {x.index} out of range for {self.describe_object(x.obj)}")
        return x

    def _same_fiber(self, x: SubobjectRef, y: SubobjectRef) -> None:
        self._check_ref(x)
        self._check_ref(y)
        if x.obj != y.obj:
            raise DomainError(
                f"subobjects live in different fibers: {self.describe_object(x.obj)} vs {self.describe_object(y.obj)}"
            )

    def fiber_size(self, obj) -> int:
        return self._fiber_size(obj)

    def subobject(self, obj, index: int) -> SubobjectRef:
        return self._check_ref(SubobjectRef(obj, index))

    def subobjects(self, obj) -> tuple[SubobjectRef, ...]:
        return tuple(SubobjectRef(obj, i) for i in range(self._fiber_size(obj)))

    def bottom(self, obj) -> SubobjectRef:
        return SubobjectRef(obj, self._bottom(obj))

    def top(self, obj) -> SubobjectRef:
        return SubobjectRef(obj, self._top(obj))

    def leq(self, x: SubobjectRef, y: SubobjectRef) -> bool:
        self._same_fiber(x, y)
        return self._leq(x.obj, x.index, y.index)

    def meet(self, x: SubobjectRef, y: SubobjectRef) -> SubobjectRef:
        self._same_fiber(x, y)
        return SubobjectRef(x.obj, self._meet(x.obj, x.index, y.index))

    def join(self, x: SubobjectRef, y: SubobjectRef) -> SubobjectRef:
        self._same_fiber(x, y)
        return SubobjectRef(x.obj, self._join(x.obj, x.index, y.index))

    def direct_image(self, f, x: SubobjectRef) -> SubobjectRef:
        self._check_ref(x)
        if x.obj != f.domain:
            raise DomainError("direct image argument must live in the fiber of the morphism's domain")
        return SubobjectRef(f.codomain, self._direct(f, x.index))

    def inverse_image(self, f, y: SubobjectRef) -> SubobjectRef:
        self._check_ref(y)
        if y.obj != f.codomain:
            raise DomainError("inverse image argument must live in the fiber of the morphism's codomain")
        return SubobjectRef(f.domain, self._inverse(f, y.index))

    def images(self, f) -> ImagePair:
        """The direct/inverse image maps of ``f`` as callables on refs."""
        return ImagePair(partial(self.direct_image, f), partial(self.inverse_image, f))

    def kernel(self, f) -> SubobjectRef:
        return self.inverse_image(f, self.bottom(f.codomain))

    def image(self, f) -> SubobjectRef:
        return self.direct_image(f, self.top(f.domain))

    def is_embedding(self, f) -> bool:
        return self.kernel(f) == self.bottom(f.domain)

    def is_projection(self, f) -> bool:
        return self.image(f) == self.top(f.codomain)

    def kernel_image(self, f) -> tuple[SubobjectRef, SubobjectRef]:
        return self.kernel(f), self.image(f)

    def relative_normal(self, x: SubobjectRef, y: SubobjectRef) -> bool:
        """Whether ``x`` is normal to ``y``: ``x <= y``, ``y`` conormal, and
        the pullback of ``x`` along the embedding of ``y`` is normal."""
        self._same_fiber(x, y)
        if not self._leq(x.obj, x.index, y.index):
            return False
        if not self.is_conormal(y):
            return False
        emb = self.embedding_witness(y)
        return self.is_normal(self.inverse_image(emb, x))

    def normality(self, x: SubobjectRef) -> NormalityInfo:
        self._check_ref(x)
        normal = self.is_normal(x)
        conormal = self.is_conormal(x)
        return NormalityInfo(
            is_normal=normal,
            is_conormal=conormal,
            projection=self.projection_witness(x) if normal else None,
            embedding=self.embedding_witness(x) if conormal else None,
        )

    def fiber(self, obj) -> "FiberLattice":
        return FiberLattice(self, obj)

    def dualize(self) -> "DualForm":
        return DualForm(self)

    # ------------------------------------------------------------------
    # extension points

    def register_morphism(self, f) -> None:
        """Add a user-supplied morphism to the family quantified over by the
        verifier.  Idempotent."""
        if f not in self._user_morphisms:
            self._user_morphisms.append(f)

    def registered_morphisms(self) -> tuple:
        return tuple(self._user_morphisms)

    def induced_morphism_witness(self, zigzag):
        """A concrete morphism whose image maps agree with chasing along
        ``zigzag``, when the instance can exhibit one.

        Only called once the induction criterion is known to hold.  The
        default can exhibit a witness for the empty zigzag only.
        """
        if not zigzag.legs:
            return self.identity(zigzag.source)
        return None

    def independent_image_oracle(self) -> ImagePair | None:
        """A second, independent implementation of the image maps, used only
        by the verifier.  Returns ``None`` when the instance has none."""
        return None

    # ------------------------------------------------------------------
    # display

    def describe_object(self, obj) -> str:
        return str(getattr(obj, "name", obj))

    def describe_subobject(self, x: SubobjectRef) -> str:
        return f"{self.describe_object(x.obj)}#{x.index}"

    def describe_morphism(self, f) -> str:
        return f"{self.describe_object(f.domain)}->{self.describe_object(f.codomain)}"


class FiberLattice:
    """Bounded-lattice view of the subobject fiber of one object."""

    __slots__ = ("form", "obj")

    def __init__(self, form: Form, obj) -> None:
        form._fiber_size(obj)  # raises DomainError on an unknown handle
        self.form = form
        self.obj = obj

    @property
    def size(self) -> int:
        return self.form._fiber_size(self.obj)

    @property
    def refs(self) -> tuple[SubobjectRef, ...]:
        return self.form.subobjects(self.obj)

    @property
    def bottom(self) -> SubobjectRef:
        return self.form.bottom(self.obj)

    @property
    def top(self) -> SubobjectRef:
        return self.form.top(self.obj)

    def leq(self, x: SubobjectRef, y: SubobjectRef) -> bool:
        return self.form.leq(x, y)

    def meet(self, x: SubobjectRef, y: SubobjectRef) -> SubobjectRef:
        return self.form.meet(x, y)

    def join(self, x: SubobjectRef, y: SubobjectRef) -> SubobjectRef:
        return self.form.join(x, y)

    def covers(self) -> tuple[tuple[SubobjectRef, SubobjectRef], ...]:
        """Cover pairs (x, y) with x strictly below y and nothing between."""
        form, obj = self.form, self.obj
        n = self.size
        out = []
        for i in range(n):
            for j in range(n):
                if i == j or not form._leq(obj, i, j):
                    continue
                if any(
                    k not in (i, j) and form._leq(obj, i, k) and form._leq(obj, k, j)
                    for k in range(n)
                ):
                    continue
                out.append((SubobjectRef(obj, i), SubobjectRef(obj, j)))
        return tuple(out)


@dataclass(frozen=True, slots=True)
class DualMorphism:
    """A morphism of a dualized form: the underlying morphism reversed."""

    base: Any

    @property
    def domain(self):
        return self.base.codomain

    @property
    def codomain(self):
        return self.base.domain


class DualForm(Form):
    """The functorial dual of a form.

    Objects are unchanged; morphisms are reversed, each fiber order is
    reversed (meet and join, bottom and top swap), direct and inverse images
    swap, normal and conormal swap, and embeddings become projections.
    Dualizing twice yields a form that answers every query exactly like the
    original.
    """

    def __init__(self, base: Form) -> None:
        super().__init__()
        self.base = base

    @property
    def label(self) -> str:
        return f"dual({self.base.label})"

    def objects(self) -> tuple:
        return self.base.objects()

    def registered_objects(self) -> tuple:
        return self.base.registered_objects()

    def _fiber_size(self, obj) -> int:
        return self.base._fiber_size(obj)

    def _leq(self, obj, i, j) -> bool:
        return self.base._leq(obj, j, i)

    def _meet(self, obj, i, j) -> int:
        return self.base._join(obj, i, j)

    def _join(self, obj, i, j) -> int:
        return self.base._meet(obj, i, j)

    def _bottom(self, obj) -> int:
        return self.base._top(obj)

    def _top(self, obj) -> int:
        return self.base._bottom(obj)

    def _unwrap(self, f) -> Any:
        if not isinstance(f, DualMorphism):
            raise DomainError(f"expected a morphism of {self.label}, got {f!r}")
        return f.base

    def identity(self, obj):
        return DualMorphism(self.base.identity(obj))

    def compose(self, f, g):
        return DualMorphism(self.base.compose(self._unwrap(g), self._unwrap(f)))

    def _direct(self, f, i) -> int:
        return self.base._inverse(self._unwrap(f), i)

    def _inverse(self, f, j) -> int:
        return self.base._direct(self._unwrap(f), j)

    def is_normal(self, x: SubobjectRef) -> bool:
        return self.base.is_conormal(x)

    def is_conormal(self, x: SubobjectRef) -> bool:
        return self.base.is_normal(x)

    def embedding_witness(self, x: SubobjectRef):
        return DualMorphism(self.base.projection_witness(x))

    def projection_witness(self, x: SubobjectRef):
        return DualMorphism(self.base.embedding_witness(x))

    def factorize(self, f) -> Factorization:
        base = self.base.factorize(self._unwrap(f))
        return Factorization(
            projection_part=DualMorphism(base.embedding_part),
            iso_part=DualMorphism(base.iso_part),
            embedding_part=DualMorphism(base.projection_part),
        )

    def register_morphism(self, f) -> None:
        self.base.register_morphism(self._unwrap(f))

    def registered_morphisms(self) -> tuple:
        return tuple(DualMorphism(m) for m in self.base.registered_morphisms())

    def induced_morphism_witness(self, zigzag):
        # A dual zigzag chases exactly like the base zigzag with every leg's
        # direction flipped; the base morphism inducing the *reverse* of that
        # zigzag has its image maps swapped, which is what a dual witness needs.
        from .zigzag import Leg, Zigzag

        flipped = Zigzag(
            zigzag.nodes,
            tuple(
                Leg(self._unwrap(leg.morphism), "L" if leg.direction == "R" else "R")
                for leg in zigzag.legs
            ),
        )
        witness = self.base.induced_morphism_witness(flipped.reverse())
        return None if witness is None else DualMorphism(witness)

    def independent_image_oracle(self) -> ImagePair | None:
        oracle = self.base.independent_image_oracle()
        if oracle is None:
            return None

        def direct(f, x):
            return oracle.inverse(self._unwrap(f), x)

        def inverse(f, y):
            return oracle.direct(self._unwrap(f), y)

        return ImagePair(direct, inverse)

    def describe_object(self, obj) -> str:
        return self.base.describe_object(obj)

    def describe_subobject(self, x: SubobjectRef) -> str:
        return self.base.describe_subobject(x)

    def describe_morphism(self, f) -> str:
        return f"dual({self.base.describe_morphism(self._unwrap(f))})"


def dualize(form: Form) -> DualForm:
    """Functorial dual of ``form``; ``dualize(dualize(form))`` answers every
    query exactly like ``form``."""
    return form.dualize()
