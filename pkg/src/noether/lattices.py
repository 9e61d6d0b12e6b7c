"""Finite modular lattices with modular connections, and the noetherian form
they carry.

A modular connection is a Galois connection (left adjoint into the codomain,
right adjoint back) satisfying ``right(left(x)) = x v right(bottom)`` and
``left(right(y)) = y ^ left(top)``.  The form of a family of modular
lattices takes each lattice as its own subobject fiber, the adjoints as the
image pair, and flags every element both normal and conormal: embeddings
come from down-intervals ``[bottom, x]``, projections from up-intervals
``[x, top]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from random import Random

from .core import (
    DomainError,
    Factorization,
    Form,
    InstanceIntegrityError,
    SubobjectRef,
    ValidationError,
)

DEFAULT_MAX_SIZE = 64


class FiniteLattice:
    """A finite modular lattice on elements ``0..size-1`` given by its order.

    Construction validates the partial order, the existence of all binary
    meets and joins, and the modular law; modularity failures report a
    witness triple (x, y, z) with x <= z but (x v y) ^ z != x v (y ^ z).
    Equality and hashing use the order relation only.
    """

    __slots__ = ("name", "size", "leq", "meet_table", "join_table", "bottom", "top", "_hash")

    def __init__(self, name: str, leq) -> None:
        leq = tuple(tuple(bool(v) for v in row) for row in leq)
        n = len(leq)
        if n == 0:
            raise ValidationError("a lattice needs at least one element")
        if any(len(row) != n for row in leq):
            raise ValidationError("order relation must be a square matrix")
        for i in range(n):
            if not leq[i][i]:
                raise ValidationError(f"order not reflexive at {i}")
        for i in range(n):
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise ValidationError(f"order not antisymmetric at ({i},{j})")
                if leq[i][j]:
                    for k in range(n):
                        if leq[j][k] and not leq[i][k]:
                            raise ValidationError(f"order not transitive at ({i},{j},{k})")
        meet, join = [], []
        for i in range(n):
            mrow, jrow = [], []
            for j in range(n):
                lower = [k for k in range(n) if leq[k][i] and leq[k][j]]
                glb = [k for k in lower if all(leq[d][k] for d in lower)]
                upper = [k for k in range(n) if leq[i][k] and leq[j][k]]
                lub = [k for k in upper if all(leq[k][d] for d in upper)]
                if not glb:
                    raise ValidationError(f"not a lattice: elements {i} and {j} have no meet")
                if not lub:
                    raise ValidationError(f"not a lattice: elements {i} and {j} have no join")
                mrow.append(glb[0])
                jrow.append(lub[0])
            meet.append(tuple(mrow))
            join.append(tuple(jrow))
        self.name = str(name)
        self.size = n
        self.leq = leq
        self.meet_table = tuple(meet)
        self.join_table = tuple(join)
        bottom = top = 0
        for k in range(n):
            bottom = meet[bottom][k]
            top = join[top][k]
        self.bottom = bottom
        self.top = top
        for x in range(n):
            for z in range(n):
                if not leq[x][z]:
                    continue
                for y in range(n):
                    if meet[join[x][y]][z] != join[x][meet[y][z]]:
                        raise ValidationError(f"not modular: witness triple ({x},{y},{z})")
        self._hash = hash(leq)

    @classmethod
    def from_covers(cls, name: str, size: int, covers) -> "FiniteLattice":
        """Build from a cover relation: pairs (a, b) meaning a is covered by b."""
        leq = [[i == j for j in range(size)] for i in range(size)]
        for pair in covers:
            a, b = int(pair[0]), int(pair[1])
            if not (0 <= a < size and 0 <= b < size) or a == b:
                raise ValidationError(f"bad cover pair ({a},{b})")
            leq[a][b] = True
        changed = True
        while changed:
            changed = False
            for i in range(size):
                for j in range(size):
                    if leq[i][j]:
                        for k in range(size):
                            if leq[j][k] and not leq[i][k]:
                                leq[i][k] = True
                                changed = True
        return cls(name, leq)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteLattice) and self.leq == other.leq

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteLattice({self.name!r}, size={self.size})"


def chain_lattice(n: int) -> FiniteLattice:
    return FiniteLattice(f"C{n}", [[i <= j for j in range(n)] for i in range(n)])


def diamond_m3() -> FiniteLattice:
    """The five-element modular, non-distributive lattice M3."""
    return FiniteLattice.from_covers("M3", 5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def load_lattice(source, *, max_size: int = DEFAULT_MAX_SIZE) -> FiniteLattice:
    """Load a lattice from a dict or JSON file: ``{"size": n, "covers":
    [[a,b], ...]}`` with a covered by b, or ``{"size": n, "leq": [[bool]]}``."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{source}: invalid JSON ({exc})") from exc
    else:
        data = source
    if not isinstance(data, dict) or "size" not in data:
        raise ValidationError("lattice description needs a 'size' field")
    size = int(data["size"])
    if size > max_size:
        raise ValidationError(f"size {size} exceeds the configured maximum {max_size}")
    name = data.get("name", f"L{size}")
    if "covers" in data:
        return FiniteLattice.from_covers(name, size, data["covers"])
    if "leq" in data:
        if len(data["leq"]) != size:
            raise ValidationError("'leq' matrix does not match the declared size")
        return FiniteLattice(name, data["leq"])
    raise ValidationError("lattice description needs 'covers' or 'leq'")


def random_modular_lattice(rng: Random, *, max_size: int = 12) -> FiniteLattice:
    """A random modular lattice: the down-set lattice of a random poset
    (distributive, hence modular), capped at ``max_size`` elements."""
    while True:
        k = rng.randint(2, 4)
        rel = [[i == j for j in range(k)] for i in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                if rng.random() < 0.45:
                    rel[i][j] = True
        for i in range(k):
            for j in range(k):
                if rel[i][j]:
                    for l in range(k):
                        if rel[j][l]:
                            rel[i][l] = True
        downsets = []
        for mask in range(1 << k):
            members = {i for i in range(k) if mask >> i & 1}
            if all(rel[j][i] <= (j in members) for i in members for j in range(k)):
                downsets.append(frozenset(members))
        if len(downsets) > max_size:
            continue
        downsets.sort(key=lambda s: (len(s), tuple(sorted(s))))
        leq = [[a <= b for b in downsets] for a in downsets]
        return FiniteLattice(f"downsets{k}", leq)


@dataclass(frozen=True, slots=True)
class ModularConnection:
    """A modular connection between finite modular lattices: an adjoint pair
    with ``right(left(x)) = x v right(bottom)`` and ``left(right(y)) =
    y ^ left(top)``.  Validated exhaustively on construction."""

    domain: FiniteLattice
    codomain: FiniteLattice
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", tuple(int(v) for v in self.left))
        object.__setattr__(self, "right", tuple(int(v) for v in self.right))
        dom, cod = self.domain, self.codomain
        if len(self.left) != dom.size or len(self.right) != cod.size:
            raise ValidationError("connection maps must cover both lattices")
        if any(not 0 <= v < cod.size for v in self.left) or any(
            not 0 <= v < dom.size for v in self.right
        ):
            raise ValidationError("connection map value out of range")
        for x in range(dom.size):
            for y in range(cod.size):
                if cod.leq[self.left[x]][y] != dom.leq[x][self.right[y]]:
                    raise ValidationError(f"not an adjunction at ({x},{y})")
        k = self.right[cod.bottom]
        for x in range(dom.size):
            if self.right[self.left[x]] != dom.join_table[x][k]:
                raise ValidationError(f"kernel identity fails at {x}")
        im = self.left[dom.top]
        for y in range(cod.size):
            if self.left[self.right[y]] != cod.meet_table[y][im]:
                raise ValidationError(f"image identity fails at {y}")


class LatticeForm(Form):
    """Noetherian form over finite modular lattices with modular connections.

    The fiber of a lattice is the lattice itself; every element is both
    normal and conormal, so every interval of the fiber is a subfactor.
    """

    def __init__(self, lattices) -> None:
        super().__init__()
        self._known: dict[FiniteLattice, FiniteLattice] = {}
        registered = []
        for lat in lattices:
            if not isinstance(lat, FiniteLattice):
                raise DomainError(f"expected a FiniteLattice, got {lat!r}")
            canon = self._adopt(lat)
            if canon not in registered:
                registered.append(canon)
        if not registered:
            raise DomainError("a lattice form needs at least one lattice")
        self._registered = tuple(registered)
        self._intervals: dict[tuple[FiniteLattice, int, int], tuple[FiniteLattice, tuple[int, ...]]] = {}

    def _adopt(self, lat: FiniteLattice) -> FiniteLattice:
        canon = self._known.get(lat)
        if canon is None:
            self._known[lat] = lat
            canon = lat
        return canon

    @property
    def label(self) -> str:
        return "lattice-form(" + ",".join(lat.name for lat in self._registered) + ")"

    def objects(self) -> tuple:
        return tuple(self._known)

    def registered_objects(self) -> tuple:
        return self._registered

    def _check_obj(self, obj) -> FiniteLattice:
        if obj not in self._known:
            raise DomainError(f"unknown object {obj!r}")
        return obj

    def _fiber_size(self, obj) -> int:
        return self._check_obj(obj).size

    def _leq(self, obj, i, j) -> bool:
        return obj.leq[i][j]

    def _meet(self, obj, i, j) -> int:
        return obj.meet_table[i][j]

    def _join(self, obj, i, j) -> int:
        return obj.join_table[i][j]

    def _bottom(self, obj) -> int:
        return self._check_obj(obj).bottom

    def _top(self, obj) -> int:
        return self._check_obj(obj).top

    def identity(self, obj) -> ModularConnection:
        self._check_obj(obj)
        ident = tuple(range(obj.size))
        return ModularConnection(obj, obj, ident, ident)

    def compose(self, f: ModularConnection, g: ModularConnection) -> ModularConnection:
        if not isinstance(f, ModularConnection) or not isinstance(g, ModularConnection):
            raise DomainError("lattice form composes ModularConnection values")
        if g.codomain != f.domain:
            raise DomainError("composition needs matching endpoints")
        return ModularConnection(
            g.domain,
            f.codomain,
            tuple(f.left[v] for v in g.left),
            tuple(g.right[v] for v in f.right),
        )

    def _direct(self, f: ModularConnection, i: int) -> int:
        return f.left[i]

    def _inverse(self, f: ModularConnection, j: int) -> int:
        return f.right[j]

    def is_normal(self, x: SubobjectRef) -> bool:
        self._check_ref(x)
        return True

    def is_conormal(self, x: SubobjectRef) -> bool:
        self._check_ref(x)
        return True

    def _interval_object(self, lat: FiniteLattice, lo: int, hi: int) -> tuple[FiniteLattice, tuple[int, ...]]:
        key = (lat, lo, hi)
        cached = self._intervals.get(key)
        if cached is None:
            elements = tuple(e for e in range(lat.size) if lat.leq[lo][e] and lat.leq[e][hi])
            leq = [[lat.leq[a][b] for b in elements] for a in elements]
            obj = self._adopt(FiniteLattice(f"{lat.name}[{lo},{hi}]", leq))
            cached = (obj, elements)
            self._intervals[key] = cached
        return cached

    def embedding_witness(self, x: SubobjectRef) -> ModularConnection:
        self._check_ref(x)
        lat = x.obj
        obj, elements = self._interval_object(lat, lat.bottom, x.index)
        pos = {e: i for i, e in enumerate(elements)}
        return ModularConnection(
            obj,
            lat,
            elements,
            tuple(pos[lat.meet_table[y][x.index]] for y in range(lat.size)),
        )

    def projection_witness(self, x: SubobjectRef) -> ModularConnection:
        self._check_ref(x)
        lat = x.obj
        obj, elements = self._interval_object(lat, x.index, lat.top)
        pos = {e: i for i, e in enumerate(elements)}
        return ModularConnection(
            lat,
            obj,
            tuple(pos[lat.join_table[y][x.index]] for y in range(lat.size)),
            elements,
        )

    def factorize(self, f: ModularConnection) -> Factorization:
        dom, cod = f.domain, f.codomain
        ker = f.right[cod.bottom]
        im = f.left[dom.top]
        proj = self.projection_witness(SubobjectRef(dom, ker))
        emb = self.embedding_witness(SubobjectRef(cod, im))
        qobj, qelems = self._interval_object(dom, ker, dom.top)
        iobj, ielems = self._interval_object(cod, cod.bottom, im)
        ipos = {e: i for i, e in enumerate(ielems)}
        qpos = {e: i for i, e in enumerate(qelems)}
        iso = ModularConnection(
            qobj,
            iobj,
            tuple(ipos[f.left[e]] for e in qelems),
            tuple(qpos[f.right[e]] for e in ielems),
        )
        return Factorization(projection_part=proj, iso_part=iso, embedding_part=emb)

    def induced_morphism_witness(self, zigzag) -> ModularConnection | None:
        """The connection whose adjoints are forward and backward chasing.

        Precondition: the induction criterion holds, which makes the chase
        tables a valid modular connection.
        """
        from .zigzag import chase

        if not zigzag.legs:
            return self.identity(zigzag.source)
        src, dst = zigzag.source, zigzag.target
        left = tuple(chase(self, zigzag, SubobjectRef(src, i)).index for i in range(src.size))
        right = tuple(
            chase(self, zigzag, SubobjectRef(dst, j), backward=True).index for j in range(dst.size)
        )
        try:
            return ModularConnection(src, dst, left, right)
        except ValidationError as exc:
            raise InstanceIntegrityError(
                f"chase tables of an inducing zigzag are not a modular connection: {exc}"
            ) from exc

    def describe_subobject(self, x: SubobjectRef) -> str:
        return f"{x.obj.name}:{x.index}"

    def describe_morphism(self, f) -> str:
        return f"{f.domain.name}->{f.codomain.name}{list(f.left)}"
