"""Brute-force conformance checking of a form instance.

``verify_axioms`` checks the defining axioms of a noetherian form --
adjoint image pairs respecting composition and identities, bounded lattice
fibers with the two image identities, image factorization, closure of
normality under join and conormality under meet, and the validity of every
normality witness.  ``verify_theorems`` checks the derived theorems: the
lattice isomorphism theorem, the restricted and less restricted modular
laws, Frobenius reciprocity under its conormality proviso and its dual
under normality, the two relative-normality lemmas, and the roundtrip law
of the canonical subfactor zigzag.

Quantification over morphisms uses a deterministic family: identities,
all embeddings and projections of subobjects of the registered objects,
their factorization parts, compositions up to length three, and any
user-registered morphisms.  Budgets are counts of checked tuples, not wall
clock, so reports are reproducible; a check that would exceed its budget is
flagged skipped.  Every failure carries a witness re-checkable in
isolation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .core import Form, SubobjectRef
from .groups import GroupForm, format_elements
from .zigzag import canonical_zigzag, chase

DEFAULT_TUPLE_BUDGET = 2_000_000

MORPHISM_FAMILY = (
    "identities, embeddings, projections, factorization parts, "
    "compositions of length <= 3, user-registered morphisms"
)


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    required: bool = True
    tuples_checked: int = 0
    witness: dict | None = None
    note: str | None = None

    def to_jsonable(self) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "required": self.required,
            "tuples_checked": self.tuples_checked,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass
class ConformanceReport:
    instance: str
    suite: str
    morphism_family: str
    checks: list[CheckResult] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.required and c.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def to_jsonable(self, *, include_timing: bool = False) -> dict:
        out = {
            "instance": self.instance,
            "suite": self.suite,
            "morphism_family": self.morphism_family,
            "passed": self.passed,
            "checks": [c.to_jsonable() for c in self.checks],
        }
        if include_timing:
            out["elapsed_seconds"] = self.elapsed_seconds
        return out


class _Scan:
    """Budgeted tuple counter for one check."""

    __slots__ = ("limit", "used", "exhausted")

    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.used = 0
        self.exhausted = False

    def take(self) -> bool:
        if self.used >= self.limit:
            self.exhausted = True
            return False
        self.used += 1
        return True


def _done(name: str, scan: _Scan, witness: dict | None = None, *, required: bool = True) -> CheckResult:
    if witness is not None:
        return CheckResult(name, "fail", required, scan.used, witness)
    if scan.exhausted:
        return CheckResult(
            name, "skipped", required, scan.used, note=f"budget exhausted after {scan.used} tuples"
        )
    return CheckResult(name, "pass", required, scan.used)


def _skip(name: str, note: str, *, required: bool = True) -> CheckResult:
    return CheckResult(name, "skipped", required, 0, note=note)


def _sub(form: Form, x: SubobjectRef) -> dict:
    return {"object": form.describe_object(x.obj), "index": x.index, "desc": form.describe_subobject(x)}


def _mor(form: Form, f) -> dict:
    return {
        "domain": form.describe_object(f.domain),
        "codomain": form.describe_object(f.codomain),
        "desc": form.describe_morphism(f),
    }


# ----------------------------------------------------------------------
# morphism supply


def morphism_supply(form: Form) -> tuple:
    """The deterministic morphism family quantified over by the verifier."""
    pool: dict = {}

    def add(m) -> bool:
        if m in pool:
            return False
        pool[m] = None
        return True

    for obj in form.registered_objects():
        add(form.identity(obj))
    for obj in form.registered_objects():
        for x in form.subobjects(obj):
            if form.is_conormal(x):
                add(form.embedding_witness(x))
            if form.is_normal(x):
                add(form.projection_witness(x))
    for m in form.registered_morphisms():
        add(m)
    for f in tuple(pool):
        for part in form.factorize(f).parts():
            add(part)
    generation = tuple(pool)
    by_codomain: dict = {}
    for f in generation:
        by_codomain.setdefault(f.codomain, []).append(f)
    length2 = []
    for f in generation:
        for g in by_codomain.get(f.domain, ()):
            c = form.compose(f, g)
            if add(c):
                length2.append(c)
    for c in length2:
        for g in by_codomain.get(c.domain, ()):
            add(form.compose(c, g))
    return tuple(pool)


# ----------------------------------------------------------------------
# axiom checks


def _check_fiber_lattice(form: Form, supply, limit: int) -> CheckResult:
    name = "axiom2-lattice"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        bot, top = form.bottom(obj), form.top(obj)
        for x in refs:
            if not scan.take():
                return _done(name, scan)
            if not (form.leq(bot, x) and form.leq(x, top)):
                return _done(name, scan, {"kind": "bounds", "x": _sub(form, x)})
        for x in refs:
            for y in refs:
                if not scan.take():
                    return _done(name, scan)
                if form.meet(x, y) != form.meet(y, x) or form.join(x, y) != form.join(y, x):
                    return _done(name, scan, {"kind": "commutativity", "x": _sub(form, x), "y": _sub(form, y)})
                if form.join(x, form.meet(x, y)) != x or form.meet(x, form.join(x, y)) != x:
                    return _done(name, scan, {"kind": "absorption", "x": _sub(form, x), "y": _sub(form, y)})
                mv = form.meet(x, y)
                jv = form.join(x, y)
                if not (form.leq(mv, x) and form.leq(mv, y) and form.leq(x, jv) and form.leq(y, jv)):
                    return _done(name, scan, {"kind": "bound-order", "x": _sub(form, x), "y": _sub(form, y)})
        for x in refs:
            for y in refs:
                for z in refs:
                    if not scan.take():
                        return _done(name, scan)
                    if form.meet(form.meet(x, y), z) != form.meet(x, form.meet(y, z)) or form.join(
                        form.join(x, y), z
                    ) != form.join(x, form.join(y, z)):
                        return _done(
                            name,
                            scan,
                            {"kind": "associativity", "x": _sub(form, x), "y": _sub(form, y), "z": _sub(form, z)},
                        )
    return _done(name, scan)


def _check_adjunction(form: Form, supply, limit: int) -> CheckResult:
    name = "axiom1-adjunction"
    scan = _Scan(limit)
    for f in supply:
        for x in form.subobjects(f.domain):
            fx = form.direct_image(f, x)
            for y in form.subobjects(f.codomain):
                if not scan.take():
                    return _done(name, scan)
                if form.leq(fx, y) != form.leq(x, form.inverse_image(f, y)):
                    return _done(name, scan, {"f": _mor(form, f), "x": _sub(form, x), "y": _sub(form, y)})
    return _done(name, scan)


def _check_identity_images(form: Form, supply, limit: int) -> CheckResult:
    name = "axiom1-identity"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        ident = form.identity(obj)
        for x in form.subobjects(obj):
            if not scan.take():
                return _done(name, scan)
            if form.direct_image(ident, x) != x or form.inverse_image(ident, x) != x:
                return _done(name, scan, {"x": _sub(form, x)})
    return _done(name, scan)


def _check_functoriality(form: Form, supply, limit: int) -> CheckResult:
    name = "axiom1-functoriality"
    scan = _Scan(limit)
    by_codomain: dict = {}
    for g in supply:
        by_codomain.setdefault(g.codomain, []).append(g)
    for f in supply:
        for g in by_codomain.get(f.domain, ()):
            fg = form.compose(f, g)
            for w in form.subobjects(g.domain):
                if not scan.take():
                    return _done(name, scan)
                if form.direct_image(fg, w) != form.direct_image(f, form.direct_image(g, w)):
                    return _done(
                        name, scan, {"kind": "direct", "f": _mor(form, f), "g": _mor(form, g), "w": _sub(form, w)}
                    )
            for y in form.subobjects(f.codomain):
                if not scan.take():
                    return _done(name, scan)
                if form.inverse_image(fg, y) != form.inverse_image(g, form.inverse_image(f, y)):
                    return _done(
                        name, scan, {"kind": "inverse", "f": _mor(form, f), "g": _mor(form, g), "y": _sub(form, y)}
                    )
    return _done(name, scan)


def _check_image_identities(form: Form, supply, limit: int) -> CheckResult:
    name = "axiom2-image-identities"
    scan = _Scan(limit)
    for f in supply:
        ker, img = form.kernel(f), form.image(f)
        for x in form.subobjects(f.domain):
            if not scan.take():
                return _done(name, scan)
            if form.inverse_image(f, form.direct_image(f, x)) != form.join(x, ker):
                return _done(name, scan, {"kind": "kernel", "f": _mor(form, f), "x": _sub(form, x)})
        for y in form.subobjects(f.codomain):
            if not scan.take():
                return _done(name, scan)
            if form.direct_image(f, form.inverse_image(f, y)) != form.meet(y, img):
                return _done(name, scan, {"kind": "image", "f": _mor(form, f), "y": _sub(form, y)})
    return _done(name, scan)


def _check_factorization(form: Form, supply, limit: int) -> CheckResult:
    name = "axiom3-factorization"
    scan = _Scan(limit)
    for f in supply:
        if not scan.take():
            return _done(name, scan)
        fac = form.factorize(f)
        proj, iso, emb = fac.parts()
        composite = form.compose(emb, form.compose(iso, proj))
        if composite != f:
            return _done(name, scan, {"kind": "composite", "f": _mor(form, f)})
        if not form.is_projection(proj):
            return _done(name, scan, {"kind": "projection-part", "f": _mor(form, f)})
        if not form.is_embedding(emb):
            return _done(name, scan, {"kind": "embedding-part", "f": _mor(form, f)})
        if not (form.is_projection(iso) and form.is_embedding(iso)):
            return _done(name, scan, {"kind": "iso-part", "f": _mor(form, f)})
    return _done(name, scan)


def _check_normality_closure(form: Form, supply, limit: int) -> CheckResult:
    name = "axiom4-closure"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        normal = [x for x in refs if form.is_normal(x)]
        conormal = [x for x in refs if form.is_conormal(x)]
        for x in normal:
            for y in normal:
                if not scan.take():
                    return _done(name, scan)
                if not form.is_normal(form.join(x, y)):
                    return _done(name, scan, {"kind": "join-normal", "x": _sub(form, x), "y": _sub(form, y)})
        for x in conormal:
            for y in conormal:
                if not scan.take():
                    return _done(name, scan)
                if not form.is_conormal(form.meet(x, y)):
                    return _done(name, scan, {"kind": "meet-conormal", "x": _sub(form, x), "y": _sub(form, y)})
    return _done(name, scan)


def _check_witnesses(form: Form, supply, limit: int) -> CheckResult:
    name = "witnesses"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        for x in form.subobjects(obj):
            if not scan.take():
                return _done(name, scan)
            if form.is_conormal(x):
                emb = form.embedding_witness(x)
                if form.image(emb) != x or not form.is_embedding(emb):
                    return _done(name, scan, {"kind": "embedding", "x": _sub(form, x), "witness": _mor(form, emb)})
            if form.is_normal(x):
                proj = form.projection_witness(x)
                if form.kernel(proj) != x or not form.is_projection(proj):
                    return _done(name, scan, {"kind": "projection", "x": _sub(form, x), "witness": _mor(form, proj)})
    return _done(name, scan)


def _check_independent_oracle(form: Form, supply, limit: int) -> CheckResult:
    name = "independent-image-oracle"
    oracle = form.independent_image_oracle()
    if oracle is None:
        return _skip(name, "instance provides no independent oracle")
    scan = _Scan(limit)
    for f in supply:
        for x in form.subobjects(f.domain):
            if not scan.take():
                return _done(name, scan)
            if oracle.direct(f, x) != form.direct_image(f, x):
                return _done(name, scan, {"kind": "direct", "f": _mor(form, f), "x": _sub(form, x)})
        for y in form.subobjects(f.codomain):
            if not scan.take():
                return _done(name, scan)
            if oracle.inverse(f, y) != form.inverse_image(f, y):
                return _done(name, scan, {"kind": "inverse", "f": _mor(form, f), "y": _sub(form, y)})
    return _done(name, scan)


# ----------------------------------------------------------------------
# derived-theorem checks


def _check_lattice_isomorphism(form: Form, supply, limit: int) -> CheckResult:
    name = "lattice-isomorphism"
    scan = _Scan(limit)
    for f in supply:
        ker, img = form.kernel(f), form.image(f)
        upper = [x for x in form.subobjects(f.domain) if form.leq(ker, x)]
        lower = [y for y in form.subobjects(f.codomain) if form.leq(y, img)]
        if len(upper) != len(lower):
            return _done(name, scan, {"kind": "interval-size", "f": _mor(form, f)})
        for x in upper:
            if not scan.take():
                return _done(name, scan)
            if form.inverse_image(f, form.direct_image(f, x)) != x:
                return _done(name, scan, {"kind": "roundtrip-up", "f": _mor(form, f), "x": _sub(form, x)})
        for y in lower:
            if not scan.take():
                return _done(name, scan)
            if form.direct_image(f, form.inverse_image(f, y)) != y:
                return _done(name, scan, {"kind": "roundtrip-down", "f": _mor(form, f), "y": _sub(form, y)})
        for x in upper:
            fx = form.direct_image(f, x)
            for y in upper:
                if not scan.take():
                    return _done(name, scan)
                if form.direct_image(f, form.meet(x, y)) != form.meet(fx, form.direct_image(f, y)):
                    return _done(name, scan, {"kind": "meet", "f": _mor(form, f), "x": _sub(form, x), "y": _sub(form, y)})
                if form.direct_image(f, form.join(x, y)) != form.join(fx, form.direct_image(f, y)):
                    return _done(name, scan, {"kind": "join", "f": _mor(form, f), "x": _sub(form, x), "y": _sub(form, y)})
    return _done(name, scan)


def _modular_witness(form: Form, x, y, z) -> dict:
    return {"x": _sub(form, x), "y": _sub(form, y), "z": _sub(form, z)}


def _check_restricted_modular(form: Form, supply, limit: int) -> CheckResult:
    name = "restricted-modular-law"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        for y in refs:
            y_normal, y_conormal = form.is_normal(y), form.is_conormal(y)
            if not (y_normal or y_conormal):
                continue
            for x in refs:
                for z in refs:
                    if not form.leq(x, z):
                        continue
                    first = y_normal and form.is_conormal(z)
                    second = y_conormal and form.is_normal(x)
                    if not (first or second):
                        continue
                    if not scan.take():
                        return _done(name, scan)
                    if form.meet(form.join(x, y), z) != form.join(x, form.meet(y, z)):
                        return _done(name, scan, _modular_witness(form, x, y, z))
    return _done(name, scan)


def _check_less_restricted_modular(form: Form, supply, limit: int) -> CheckResult:
    name = "less-restricted-modular-law"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        for s in refs:
            for y in refs:
                first_side = form.relative_normal(y, s)
                second_side = form.is_conormal(y) and form.leq(y, s)
                if not (first_side or second_side):
                    continue
                for z in refs:
                    if not form.leq(z, s):
                        continue
                    z_conormal = form.is_conormal(z)
                    for x in refs:
                        if not form.leq(x, z):
                            continue
                        ok_first = first_side and z_conormal
                        ok_second = second_side and form.relative_normal(x, s)
                        if not (ok_first or ok_second):
                            continue
                        if not scan.take():
                            return _done(name, scan)
                        if form.meet(form.join(x, y), z) != form.join(x, form.meet(y, z)):
                            witness = _modular_witness(form, x, y, z)
                            witness["s"] = _sub(form, s)
                            return _done(name, scan, witness)
    return _done(name, scan)


def _check_frobenius_conormal(form: Form, supply, limit: int) -> CheckResult:
    name = "frobenius-conormal"
    scan = _Scan(limit)
    for f in supply:
        conormal = [x for x in form.subobjects(f.domain) if form.is_conormal(x)]
        for y in form.subobjects(f.codomain):
            pre = form.inverse_image(f, y)
            for x in conormal:
                if not scan.take():
                    return _done(name, scan)
                if form.direct_image(f, form.meet(pre, x)) != form.meet(y, form.direct_image(f, x)):
                    return _done(name, scan, {"f": _mor(form, f), "x": _sub(form, x), "y": _sub(form, y)})
    return _done(name, scan)


def _check_frobenius_normal_dual(form: Form, supply, limit: int) -> CheckResult:
    name = "frobenius-normal-dual"
    scan = _Scan(limit)
    for f in supply:
        normal = [y for y in form.subobjects(f.codomain) if form.is_normal(y)]
        for x in form.subobjects(f.domain):
            fx = form.direct_image(f, x)
            for y in normal:
                if not scan.take():
                    return _done(name, scan)
                if form.inverse_image(f, form.join(fx, y)) != form.join(x, form.inverse_image(f, y)):
                    return _done(name, scan, {"f": _mor(form, f), "x": _sub(form, x), "y": _sub(form, y)})
    return _done(name, scan)


def _check_relative_normality_meet(form: Form, supply, limit: int) -> CheckResult:
    name = "relative-normality-meet"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        for w in refs:
            for x in refs:
                if not form.relative_normal(w, x):
                    continue
                for y in refs:
                    if not form.is_conormal(y):
                        continue
                    if not scan.take():
                        return _done(name, scan)
                    if not form.relative_normal(form.meet(w, y), form.meet(x, y)):
                        return _done(name, scan, {"w": _sub(form, w), "x": _sub(form, x), "y": _sub(form, y)})
    return _done(name, scan)


def _check_relative_normality_join(form: Form, supply, limit: int) -> CheckResult:
    name = "relative-normality-join"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        for w in refs:
            for x in refs:
                if not form.relative_normal(w, x):
                    continue
                for y in refs:
                    if not form.relative_normal(y, form.join(x, y)):
                        continue
                    if not scan.take():
                        return _done(name, scan)
                    if not form.relative_normal(form.join(w, y), form.join(x, y)):
                        return _done(name, scan, {"w": _sub(form, w), "x": _sub(form, x), "y": _sub(form, y)})
    return _done(name, scan)


def _check_zigzag_roundtrip(form: Form, supply, limit: int) -> CheckResult:
    name = "zigzag-roundtrip"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        for hi in refs:
            for lo in refs:
                if not form.relative_normal(lo, hi):
                    continue
                zz = canonical_zigzag(form, lo, hi)
                quotient = zz.target
                for z in refs:
                    if not scan.take():
                        return _done(name, scan)
                    roundtrip = chase(form, zz, chase(form, zz, z), backward=True)
                    if roundtrip != form.join(form.meet(z, hi), lo):
                        return _done(
                            name, scan, {"kind": "roundtrip", "lo": _sub(form, lo), "hi": _sub(form, hi), "z": _sub(form, z)}
                        )
                interval = [z for z in refs if form.leq(lo, z) and form.leq(z, hi)]
                seen = set()
                for q in form.subobjects(quotient):
                    if not scan.take():
                        return _done(name, scan)
                    back = chase(form, zz, q, backward=True)
                    if back not in interval or chase(form, zz, back) != q:
                        return _done(
                            name, scan, {"kind": "interval", "lo": _sub(form, lo), "hi": _sub(form, hi), "q": _sub(form, q)}
                        )
                    seen.add(back)
                if len(seen) != len(interval):
                    return _done(name, scan, {"kind": "bijection", "lo": _sub(form, lo), "hi": _sub(form, hi)})
    return _done(name, scan)


def _check_join_is_product(form: Form, supply, limit: int) -> CheckResult:
    name = "join-is-product"
    if not isinstance(form, GroupForm):
        return _skip(name, "group instance only")
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        for x in refs:
            for y in refs:
                if not (form.is_normal(x) or form.is_normal(y)):
                    continue
                if not scan.take():
                    return _done(name, scan)
                if form.product_set(x, y) != form.elements_of(form.join(x, y)):
                    return _done(name, scan, {"x": _sub(form, x), "y": _sub(form, y)})
    return _done(name, scan)


def _check_modular_probe(form: Form, supply, limit: int) -> CheckResult:
    # Diagnostic, not counted: the unrestricted modular law is expected to
    # fail on some group fibers, which is what makes the restricted law
    # genuinely weaker.
    name = "modular-law-probe"
    scan = _Scan(limit)
    for obj in form.registered_objects():
        refs = form.subobjects(obj)
        for x in refs:
            for z in refs:
                if not form.leq(x, z):
                    continue
                for y in refs:
                    if not scan.take():
                        return _done(name, scan, required=False)
                    if form.meet(form.join(x, y), z) != form.join(x, form.meet(y, z)):
                        return CheckResult(
                            name, "fail", False, scan.used, _modular_witness(form, x, y, z)
                        )
    return _done(name, scan, required=False)


_AXIOM_CHECKS = (
    _check_fiber_lattice,
    _check_adjunction,
    _check_identity_images,
    _check_functoriality,
    _check_image_identities,
    _check_factorization,
    _check_normality_closure,
    _check_witnesses,
    _check_independent_oracle,
)

_THEOREM_CHECKS = (
    _check_lattice_isomorphism,
    _check_restricted_modular,
    _check_less_restricted_modular,
    _check_frobenius_conormal,
    _check_frobenius_normal_dual,
    _check_relative_normality_meet,
    _check_relative_normality_join,
    _check_zigzag_roundtrip,
    _check_join_is_product,
    _check_modular_probe,
)


def _run(form: Form, checks, suite: str, budget: int, supply) -> ConformanceReport:
    start = time.perf_counter()
    if supply is None:
        supply = morphism_supply(form)
    report = ConformanceReport(instance=form.label, suite=suite, morphism_family=MORPHISM_FAMILY)
    for check in checks:
        report.checks.append(check(form, supply, budget))
    report.elapsed_seconds = time.perf_counter() - start
    return report


def verify_axioms(form: Form, *, budget: int = DEFAULT_TUPLE_BUDGET, supply=None) -> ConformanceReport:
    """Check the four axioms plus witness validity; see the module docstring."""
    return _run(form, _AXIOM_CHECKS, "axioms", budget, supply)


def verify_theorems(form: Form, *, budget: int = DEFAULT_TUPLE_BUDGET, supply=None) -> ConformanceReport:
    """Check the derived theorems; see the module docstring."""
    return _run(form, _THEOREM_CHECKS, "theorems", budget, supply)
