"""Finite groups as Cayley tables, their subgroup lattices, and the
noetherian form of subgroups.

Groups live on carriers ``0..n-1`` with the identity at index 0.  Subgroups
are canonical sorted element sets; two groups compare equal exactly when
their tables do, so carriers realized twice (a subgroup reached along two
different embeddings, a quotient that happens to repeat an existing table)
unify into a single object.

The form built by :class:`GroupForm` is the bifibration of subgroups: the
fiber of a group is its full subgroup lattice, direct images are element-wise
images (closed up defensively), inverse images are preimages, every subgroup
is conormal, and a subgroup is normal exactly when it is closed under
conjugation.  Subgroup carriers and quotient carriers are created on demand
as embedding and projection witnesses.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path

from .core import (
    DomainError,
    Factorization,
    Form,
    ImagePair,
    InstanceIntegrityError,
    SubobjectRef,
    UnsupportedInstanceError,
    ValidationError,
)
from .zigzag import element_relation

DEFAULT_MAX_ORDER = 128


def format_elements(elements) -> str:
    return "{" + ",".join(str(e) for e in sorted(elements)) + "}"


class FiniteGroup:
    """A finite group on carrier ``0..n-1`` given by its Cayley table.

    Construction validates the table completely: identity at index 0, Latin
    square rows and columns, associativity, and inverses; the error message
    names the first violation found.  Equality and hashing use the table
    only -- the name is a display label.
    """

    __slots__ = ("name", "table", "inverse", "_hash")

    def __init__(self, name: str, table) -> None:
        table = tuple(tuple(int(v) for v in row) for row in table)
        n = len(table)
        if n == 0:
            raise ValidationError("a group needs at least the identity element")
        for i, row in enumerate(table):
            if len(row) != n:
                raise ValidationError(f"table is not square: row {i} has {len(row)} entries, expected {n}")
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise ValidationError(f"table entry out of range at ({i},{j}): {v}")
        for i in range(n):
            if table[0][i] != i:
                raise ValidationError(f"identity must be element 0: 0*{i} = {table[0][i]}")
            if table[i][0] != i:
                raise ValidationError(f"identity must be element 0: {i}*0 = {table[i][0]}")
        for i in range(n):
            if len(set(table[i])) != n:
                raise ValidationError(f"not a Latin square: row {i} repeats an entry")
            if len({table[j][i] for j in range(n)}) != n:
                raise ValidationError(f"not a Latin square: column {i} repeats an entry")
        for a in range(n):
            ra = table[a]
            for b in range(n):
                rab = table[ra[b]]
                rb = table[b]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise ValidationError(f"non-associative at triple ({a},{b},{c})")
        inverse = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == 0:
                    inverse[a] = b
                    break
        if any(v is None for v in inverse):
            a = inverse.index(None)
            raise ValidationError(f"element {a} has no inverse")
        self.name = str(name)
        self.table = table
        self.inverse = tuple(inverse)
        self._hash = hash(table)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True, slots=True)
class GroupHom:
    """A group homomorphism as an element map; validated on construction."""

    domain: FiniteGroup
    codomain: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        if len(self.mapping) != self.domain.order:
            raise ValidationError("homomorphism map must cover the whole domain")
        m = self.codomain.order
        if any(not 0 <= v < m for v in self.mapping):
            raise ValidationError("homomorphism map has an out-of-range value")
        if self.mapping[0] != 0:
            raise ValidationError("homomorphism must send identity to identity")
        dt, ct, f = self.domain.table, self.codomain.table, self.mapping
        for a in range(len(f)):
            fa = f[a]
            row = dt[a]
            for b in range(len(f)):
                if f[row[b]] != ct[fa][f[b]]:
                    raise ValidationError(f"not a homomorphism at pair ({a},{b})")

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def image_set(self, elements) -> frozenset[int]:
        return frozenset(self.mapping[a] for a in elements)

    def preimage_set(self, elements) -> frozenset[int]:
        target = frozenset(elements)
        return frozenset(a for a in range(len(self.mapping)) if self.mapping[a] in target)

    def is_bijective(self) -> bool:
        return len(set(self.mapping)) == self.codomain.order == self.domain.order


# ----------------------------------------------------------------------
# subgroup machinery


def generated_subgroup(group: FiniteGroup, seed) -> frozenset[int]:
    """Least subgroup containing ``seed``: the product closure of seed + identity."""
    n = group.order
    members = {0}
    queue = deque()
    for s in seed:
        s = int(s)
        if not 0 <= s < n:
            raise DomainError(f"seed element {s} outside carrier 0..{n - 1}")
        if s not in members:
            members.add(s)
            queue.append(s)
    table = group.table
    worklist = deque(members)
    while worklist:
        a = worklist.popleft()
        for b in tuple(members):
            for c in (table[a][b], table[b][a]):
                if c not in members:
                    members.add(c)
                    worklist.append(c)
    return frozenset(members)


def _subgroup_key(s: frozenset[int]):
    return (len(s), tuple(sorted(s)))


def all_subgroups(group: FiniteGroup) -> tuple[frozenset[int], ...]:
    """Every subgroup, ordered by size then lexicographically.

    Starts from the cyclic subgroups and closes under pairwise join, which
    reaches every subgroup since each one is the join of its cyclic
    subgroups.
    """
    found = {generated_subgroup(group, (a,)) for a in range(group.order)}
    found.add(frozenset({0}))
    while True:
        fresh = []
        items = tuple(found)
        for i, a in enumerate(items):
            for b in items[i + 1 :]:
                if a <= b or b <= a:
                    continue
                j = generated_subgroup(group, a | b)
                if j not in found:
                    fresh.append(j)
        if not fresh:
            break
        found.update(fresh)
    return tuple(sorted(found, key=_subgroup_key))


def is_subgroup(group: FiniteGroup, elements) -> bool:
    elems = frozenset(elements)
    if not elems or 0 not in elems:
        return False
    return all(group.table[a][b] in elems for a in elems for b in elems)


def is_normal_in(group: FiniteGroup, sub, within) -> bool:
    """Whether ``sub`` is closed under conjugation by every element of ``within``."""
    sub = frozenset(sub)
    table, inverse = group.table, group.inverse
    return all(table[table[g][x]][inverse[g]] in sub for g in within for x in sub)


def is_normal_subgroup(group: FiniteGroup, sub) -> bool:
    return is_normal_in(group, sub, range(group.order))


def quotient_group(group: FiniteGroup, normal) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup, cosets labeled by minimal representative,
    together with the canonical surjection."""
    nelems = frozenset(normal)
    if not is_subgroup(group, nelems):
        raise DomainError(f"{format_elements(nelems)} is not a subgroup of {group.name}")
    if not is_normal_subgroup(group, nelems):
        raise DomainError(f"{format_elements(nelems)} is not normal in {group.name}")
    table = group.table
    coset_of = [None] * group.order
    reps = []
    for g in range(group.order):
        if coset_of[g] is None:
            idx = len(reps)
            reps.append(g)
            for x in nelems:
                coset_of[table[g][x]] = idx
    qtable = [[coset_of[table[reps[i]][reps[j]]] for j in range(len(reps))] for i in range(len(reps))]
    quot = FiniteGroup(f"{group.name}/{format_elements(nelems)}", qtable)
    return quot, GroupHom(group, quot, tuple(coset_of))


def subgroup_carrier(group: FiniteGroup, elements) -> tuple[FiniteGroup, GroupHom]:
    """The subgroup realized as a group in its own right (elements relabeled
    in ascending order), together with the inclusion homomorphism."""
    elems = frozenset(elements)
    if not is_subgroup(group, elems):
        raise DomainError(f"{format_elements(elems)} is not a subgroup of {group.name}")
    ordered = sorted(elems)
    pos = {e: i for i, e in enumerate(ordered)}
    table = [[pos[group.table[a][b]] for b in ordered] for a in ordered]
    carrier = FiniteGroup(f"{group.name}{format_elements(elems)}", table)
    return carrier, GroupHom(carrier, group, tuple(ordered))


# ----------------------------------------------------------------------
# built-in families


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be positive")
    return FiniteGroup(f"Z{n}", [[(i + j) % n for j in range(n)] for i in range(n)])


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order: indices 0..m-1 are the
    rotations r^k, indices m..2m-1 the reflections r^k s."""
    if order < 2 or order % 2:
        raise ValidationError("dihedral group order must be even and at least 2")
    m = order // 2

    def mul(a, b):
        ak, af = a % m, a // m
        bk, bf = b % m, b // m
        k = (ak + bk) % m if not af else (ak - bk) % m
        return k + m * (af ^ bf)

    return FiniteGroup(f"D{order}", [[mul(a, b) for b in range(order)] for a in range(order)])


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 4:
        raise ValidationError("built-in symmetric groups cover n = 1..4")
    perms = sorted(product(range(n), repeat=n))
    perms = [p for p in perms if len(set(p)) == n]
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms]
        for p in perms
    ]
    return FiniteGroup(f"S{n}", table)


def quaternion_group() -> FiniteGroup:
    # elements 1, -1, i, -i, j, -j, k, -k encoded as (axis, sign)
    elems = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1)]
    axis_mul = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }

    def mul(a, b):
        (ax, asg), (bx, bsg) = elems[a], elems[b]
        cx, csg = axis_mul[(ax, bx)]
        return elems.index((cx, (asg + bsg + csg) % 2))

    return FiniteGroup("Q8", [[mul(a, b) for b in range(8)] for a in range(8)])


def klein_four_group() -> FiniteGroup:
    g = direct_product(cyclic_group(2), cyclic_group(2))
    return FiniteGroup("K4", g.table)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    n = b.order
    order = a.order * n
    table = [
        [a.table[x // n][y // n] * n + b.table[x % n][y % n] for y in range(order)]
        for x in range(order)
    ]
    return FiniteGroup(f"{a.name}x{b.name}", table)


_BUILTIN_RE = re.compile(r"^([A-Za-z]+)(\d*)$")


def builtin_group(name: str) -> FiniteGroup:
    """Look up a built-in group: Zn (n <= 64), Dn (even order n <= 64),
    Sn (n <= 4), Q8, and K4 (aliases V4, KLEIN4)."""
    key = name.strip()
    m = _BUILTIN_RE.match(key)
    if m:
        family, num = m.group(1).upper(), m.group(2)
        if family in ("K", "V", "KLEIN") and num == "4":
            return klein_four_group()
        if family == "Z" and num and 1 <= int(num) <= 64:
            return cyclic_group(int(num))
        if family == "D" and num and int(num) <= 64:
            return dihedral_group(int(num))
        if family == "S" and num and 1 <= int(num) <= 4:
            return symmetric_group(int(num))
        if family == "Q" and num == "8":
            return quaternion_group()
    raise ValidationError(f"unknown built-in group {name!r}")


def load_group(source, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Load a group from a dict or a JSON file
    ``{"name": str, "order": n, "table": [[int; n]; n]}`` (identity must be 0)."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{source}: invalid JSON ({exc})") from exc
    else:
        data = source
    if not isinstance(data, dict) or "table" not in data:
        raise ValidationError("group description needs a 'table' field")
    table = data["table"]
    declared = data.get("order")
    if declared is not None and declared != len(table):
        raise ValidationError(f"declared order {declared} does not match table size {len(table)}")
    if len(table) > max_order:
        raise ValidationError(f"order {len(table)} exceeds the configured maximum {max_order}")
    return FiniteGroup(data.get("name", f"G{len(table)}"), table)


def resolve_group(ref: str, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Resolve ``builtin:NAME`` or a path to a group JSON file."""
    if ref.startswith("builtin:"):
        g = builtin_group(ref[len("builtin:") :])
        if g.order > max_order:
            raise ValidationError(f"order {g.order} exceeds the configured maximum {max_order}")
        return g
    return load_group(ref, max_order=max_order)


# ----------------------------------------------------------------------
# isomorphism testing


def generating_sequence(group: FiniteGroup) -> tuple[int, ...]:
    """A deterministic generating sequence: repeatedly adjoin the smallest
    element outside the subgroup generated so far."""
    gens: list[int] = []
    closure = {0}
    while len(closure) < group.order:
        x = min(e for e in range(group.order) if e not in closure)
        gens.append(x)
        closure = set(generated_subgroup(group, gens))
    return tuple(gens)


def _bfs_expressions(group: FiniteGroup, gens):
    """Each element expressed as (earlier element) * (generator), BFS order."""
    parent: dict[int, tuple[int, int] | None] = {0: None}
    order = [0]
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for gi, g in enumerate(gens):
            b = group.table[a][g]
            if b not in parent:
                parent[b] = (a, gi)
                order.append(b)
                queue.append(b)
    return order, parent


def find_isomorphism(a: FiniteGroup, b: FiniteGroup) -> tuple[int, ...] | None:
    """A group isomorphism a -> b as an element map, or None.

    Brute force over generator images with matching element orders; intended
    for the small orders this package works at.
    """
    if a.order != b.order:
        return None
    if a.table == b.table:
        return tuple(range(a.order))
    prof_a = sorted(a.element_order(x) for x in range(a.order))
    prof_b = sorted(b.element_order(x) for x in range(b.order))
    if prof_a != prof_b:
        return None
    gens = generating_sequence(a)
    order, parent = _bfs_expressions(a, gens)
    gen_orders = [a.element_order(g) for g in gens]
    candidates = [
        [y for y in range(b.order) if b.element_order(y) == go] for go in gen_orders
    ]
    n = a.order
    for images in product(*candidates):
        mapping = [None] * n
        mapping[0] = 0
        for e in order[1:]:
            pe, gi = parent[e]
            mapping[e] = b.table[mapping[pe]][images[gi]]
        if len(set(mapping)) != n:
            continue
        ta, tb = a.table, b.table
        ok = True
        for x in range(n):
            mx = mapping[x]
            row = ta[x]
            for y in range(n):
                if mapping[row[y]] != tb[mx][mapping[y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(mapping)
    return None


def are_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    return find_isomorphism(a, b) is not None


@lru_cache(maxsize=None)
def _catalogue(max_order: int) -> tuple[FiniteGroup, ...]:
    groups: list[FiniteGroup] = [cyclic_group(n) for n in range(1, max_order + 1)]
    groups.append(klein_four_group())
    groups.append(quaternion_group())
    groups.extend(symmetric_group(n) for n in (3, 4))
    groups.extend(dihedral_group(n) for n in range(6, max_order + 1, 2))
    return tuple(g for g in groups if g.order <= max_order)


@lru_cache(maxsize=None)
def iso_class_label(group: FiniteGroup, max_order: int = 16) -> str:
    """Canonical name of the isomorphism class of ``group`` within the
    built-in catalogue of groups of order <= ``max_order``."""
    for candidate in _catalogue(max_order):
        if are_isomorphic(group, candidate):
            return candidate.name
    raise UnsupportedInstanceError(
        f"group of order {group.order} matches no catalogue entry up to order {max_order}"
    )


def smallest_nonmodular_subgroup_lattice() -> tuple[FiniteGroup, tuple[frozenset, frozenset, frozenset]]:
    """Scan every isomorphism class of groups of order <= 8 for the smallest
    group whose subgroup lattice violates the modular law; returns the group
    and a witness triple (x, y, z) with x <= z but (x v y) ^ z != x v (y ^ z).
    """
    z2 = cyclic_group(2)
    candidates = [
        cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4),
        klein_four_group(), cyclic_group(5), cyclic_group(6), symmetric_group(3),
        cyclic_group(7), cyclic_group(8), direct_product(cyclic_group(4), z2),
        direct_product(direct_product(z2, z2), z2), dihedral_group(8), quaternion_group(),
    ]
    seen: list[FiniteGroup] = []
    for g in sorted(candidates, key=lambda g: (g.order, g.name)):
        if any(are_isomorphic(g, h) for h in seen):
            continue
        seen.append(g)
        subs = all_subgroups(g)
        index = {s: i for i, s in enumerate(subs)}
        join = {}
        for s in subs:
            for t in subs:
                join[(s, t)] = generated_subgroup(g, s | t)
        for x in subs:
            for z in subs:
                if not x <= z:
                    continue
                for y in subs:
                    if index[join[(x, y)] & z] != index[join[(x, frozenset(y & z))]]:
                        return g, (x, y, z)
    raise InstanceIntegrityError("no non-modular subgroup lattice up to order 8")


# ----------------------------------------------------------------------
# the form of subgroups


class _Fiber:
    """Materialized subgroup lattice of one group: canonical enumeration plus
    precomputed order, meet, join, and normality tables."""

    __slots__ = ("subgroups", "index", "leq", "meet", "join", "normal")

    def __init__(self, group: FiniteGroup) -> None:
        subs = all_subgroups(group)
        self.subgroups = subs
        self.index = {s: i for i, s in enumerate(subs)}
        m = len(subs)
        self.leq = tuple(tuple(subs[i] <= subs[j] for j in range(m)) for i in range(m))
        self.meet = tuple(
            tuple(self.index[subs[i] & subs[j]] for j in range(m)) for i in range(m)
        )
        # subgroups are sorted by size, so the first common upper bound is the join
        join = []
        for i in range(m):
            row = []
            for j in range(m):
                row.append(next(k for k in range(m) if self.leq[i][k] and self.leq[j][k]))
            join.append(tuple(row))
        self.join = tuple(join)
        self.normal = tuple(is_normal_subgroup(group, s) for s in subs)


class GroupForm(Form):
    """Noetherian form of subgroups over a family of finite groups."""

    def __init__(self, groups, *, max_order: int = DEFAULT_MAX_ORDER) -> None:
        super().__init__()
        self.max_order = max_order
        self._known: dict[FiniteGroup, FiniteGroup] = {}
        registered = []
        for g in groups:
            if not isinstance(g, FiniteGroup):
                raise DomainError(f"expected a FiniteGroup, got {g!r}")
            if g.order > max_order:
                raise ValidationError(f"order {g.order} exceeds the configured maximum {max_order}")
            canon = self._adopt(g)
            if canon not in registered:
                registered.append(canon)
        if not registered:
            raise DomainError("a group form needs at least one group")
        self._registered = tuple(registered)
        self._fibers: dict[FiniteGroup, _Fiber] = {}
        self._carriers: dict[tuple[FiniteGroup, frozenset], tuple[FiniteGroup, GroupHom]] = {}
        self._quotients: dict[tuple[FiniteGroup, frozenset], tuple[FiniteGroup, GroupHom]] = {}

    def _adopt(self, g: FiniteGroup) -> FiniteGroup:
        canon = self._known.get(g)
        if canon is None:
            self._known[g] = g
            canon = g
        return canon

    @property
    def label(self) -> str:
        return "group-form(" + ",".join(g.name for g in self._registered) + ")"

    def objects(self) -> tuple:
        return tuple(self._known)

    def registered_objects(self) -> tuple:
        return self._registered

    def _fiber(self, obj) -> _Fiber:
        fib = self._fibers.get(obj)
        if fib is None:
            if obj not in self._known:
                raise DomainError(f"unknown object {obj!r}")
            fib = _Fiber(obj)
            self._fibers[obj] = fib
        return fib

    # fiber hooks
    def _fiber_size(self, obj) -> int:
        return len(self._fiber(obj).subgroups)

    def _leq(self, obj, i, j) -> bool:
        return self._fiber(obj).leq[i][j]

    def _meet(self, obj, i, j) -> int:
        return self._fiber(obj).meet[i][j]

    def _join(self, obj, i, j) -> int:
        return self._fiber(obj).join[i][j]

    def _bottom(self, obj) -> int:
        self._fiber(obj)
        return 0

    def _top(self, obj) -> int:
        return len(self._fiber(obj).subgroups) - 1

    # morphisms
    def identity(self, obj) -> GroupHom:
        self._fiber(obj)
        return GroupHom(obj, obj, tuple(range(obj.order)))

    def compose(self, f: GroupHom, g: GroupHom) -> GroupHom:
        if not isinstance(f, GroupHom) or not isinstance(g, GroupHom):
            raise DomainError("group form composes GroupHom values")
        if g.codomain != f.domain:
            raise DomainError("composition needs matching endpoints")
        return GroupHom(g.domain, f.codomain, tuple(f.mapping[v] for v in g.mapping))

    def _direct(self, f: GroupHom, i: int) -> int:
        fib = self._fiber(f.domain)
        target = self._fiber(f.codomain)
        image = generated_subgroup(f.codomain, f.image_set(fib.subgroups[i]))
        return target.index[image]

    def _inverse(self, f: GroupHom, j: int) -> int:
        target = self._fiber(f.codomain)
        fib = self._fiber(f.domain)
        pre = f.preimage_set(target.subgroups[j])
        idx = fib.index.get(pre)
        if idx is None:
            raise InstanceIntegrityError(
                f"preimage {format_elements(pre)} along {self.describe_morphism(f)} is not a subgroup"
            )
        return idx

    # normality oracle
    def is_normal(self, x: SubobjectRef) -> bool:
        self._check_ref(x)
        return self._fiber(x.obj).normal[x.index]

    def is_conormal(self, x: SubobjectRef) -> bool:
        self._check_ref(x)
        return True

    def embedding_witness(self, x: SubobjectRef) -> GroupHom:
        self._check_ref(x)
        elems = self._fiber(x.obj).subgroups[x.index]
        return self._carrier(x.obj, elems)[1]

    def projection_witness(self, x: SubobjectRef) -> GroupHom:
        self._check_ref(x)
        if not self._fiber(x.obj).normal[x.index]:
            raise DomainError(f"{self.describe_subobject(x)} is not normal, no projection exists")
        elems = self._fiber(x.obj).subgroups[x.index]
        return self._quotient(x.obj, elems)[1]

    def _carrier(self, parent: FiniteGroup, elems: frozenset) -> tuple[FiniteGroup, GroupHom]:
        key = (parent, elems)
        cached = self._carriers.get(key)
        if cached is None:
            carrier, hom = subgroup_carrier(parent, elems)
            carrier = self._adopt(carrier)
            cached = (carrier, GroupHom(carrier, parent, hom.mapping))
            self._carriers[key] = cached
        return cached

    def _quotient(self, parent: FiniteGroup, elems: frozenset) -> tuple[FiniteGroup, GroupHom]:
        key = (parent, elems)
        cached = self._quotients.get(key)
        if cached is None:
            quot, hom = quotient_group(parent, elems)
            quot = self._adopt(quot)
            cached = (quot, GroupHom(parent, quot, hom.mapping))
            self._quotients[key] = cached
        return cached

    def factorize(self, f: GroupHom) -> Factorization:
        ker = f.preimage_set({0})
        quot, proj = self._quotient(f.domain, ker)
        image = f.image_set(range(f.domain.order))
        carrier, emb = self._carrier(f.codomain, image)
        pos = {e: i for i, e in enumerate(emb.mapping)}
        mapping = [None] * quot.order
        for g in range(f.domain.order):
            mapping[proj.mapping[g]] = pos[f.mapping[g]]
        iso = GroupHom(quot, carrier, tuple(mapping))
        if not iso.is_bijective():
            raise InstanceIntegrityError(f"factorization middle of {self.describe_morphism(f)} is not bijective")
        return Factorization(projection_part=proj, iso_part=iso, embedding_part=emb)

    # group-instance extras
    def subgroup_ref(self, group: FiniteGroup, elements) -> SubobjectRef:
        """The fiber position of a subgroup given by its element set."""
        fib = self._fiber(group)
        idx = fib.index.get(frozenset(int(e) for e in elements))
        if idx is None:
            raise DomainError(f"{format_elements(elements)} is not a subgroup of {group.name}")
        return SubobjectRef(group, idx)

    def elements_of(self, x: SubobjectRef) -> frozenset[int]:
        self._check_ref(x)
        return self._fiber(x.obj).subgroups[x.index]

    def induced_morphism_witness(self, zigzag) -> GroupHom | None:
        """The relational composite of the legs as a homomorphism.

        Precondition: the induction criterion holds, which forces the
        composite to be single-valued and total.
        """
        if not zigzag.legs:
            return self.identity(zigzag.source)
        mapping = [None] * zigzag.source.order
        for a, b in element_relation(zigzag):
            if mapping[a] is not None and mapping[a] != b:
                raise InstanceIntegrityError("induction criterion held but the relational composite is not single-valued")
            mapping[a] = b
        if any(v is None for v in mapping):
            raise InstanceIntegrityError("induction criterion held but the relational composite is not total")
        return GroupHom(zigzag.source, zigzag.target, tuple(mapping))

    def independent_image_oracle(self) -> ImagePair:
        """Naive image maps computed straight off the Cayley table, used only
        by the verifier as a second opinion."""

        def direct(f: GroupHom, x: SubobjectRef) -> SubobjectRef | None:
            image = f.image_set(self.elements_of(x))
            idx = self._fiber(f.codomain).index.get(image)
            return None if idx is None else SubobjectRef(f.codomain, idx)

        def inverse(f: GroupHom, y: SubobjectRef) -> SubobjectRef | None:
            pre = f.preimage_set(self.elements_of(y))
            idx = self._fiber(f.domain).index.get(pre)
            return None if idx is None else SubobjectRef(f.domain, idx)

        return ImagePair(direct, inverse)

    def product_set(self, x: SubobjectRef, y: SubobjectRef) -> frozenset[int]:
        """The complex product {a*b} of two subgroups of the same group."""
        self._same_fiber(x, y)
        table = x.obj.table
        return frozenset(table[a][b] for a in self.elements_of(x) for b in self.elements_of(y))

    # display
    def describe_subobject(self, x: SubobjectRef) -> str:
        return format_elements(self._fiber(x.obj).subgroups[x.index])

    def describe_morphism(self, f) -> str:
        return f"{f.domain.name}->{f.codomain.name}{list(f.mapping)}"
