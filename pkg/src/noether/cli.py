"""Command-line front end.

Commands: ``subgroups`` (fiber listing and DOT Hasse diagram), ``verify``
(axiom and theorem conformance reports), ``butterfly``, ``refine``,
``projiso``, ``chase``, and ``counterexample`` (the end-to-end refutation of
the coarsest-refinement claims on the cyclic group of order 6).

Exit status: 0 on success or an all-pass report, 1 when a check fails, 2 on
usage errors or malformed inputs.  Output is byte-deterministic for fixed
inputs; timing is only included on request.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import (
    BudgetError,
    DomainError,
    FormError,
    InstanceIntegrityError,
    ProvisoError,
    UnsupportedInstanceError,
    ValidationError,
    dualize,
)
from .groups import DEFAULT_MAX_ORDER, FiniteGroup, GroupForm, GroupHom, load_group, resolve_group
from .lattices import LatticeForm, load_lattice
from .series import (
    coarsest_check,
    projectively_isomorphic,
    refine_pair,
    section4_counterexample,
    validate_series,
)
from .subfactor import Interval, butterfly, describe_interval, interval
from .verifier import verify_axioms, verify_theorems
from .zigzag import Leg, Zigzag, chase

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _read_source(text: str):
    """Inline JSON (starts with '{' or '[') or a path to a JSON file."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid inline JSON: {exc}") from exc
    path = Path(text)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ValidationError(f"{text}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{text}: invalid JSON ({exc})") from exc


def _resolve_instance(ref: str, max_order: int):
    """A group ref (builtin:NAME or group file) or a lattice file."""
    if ref.startswith("builtin:"):
        return resolve_group(ref, max_order=max_order)
    data = _read_source(ref)
    if isinstance(data, dict) and "table" in data:
        return load_group(data, max_order=max_order)
    if isinstance(data, dict) and "size" in data:
        return load_lattice(data)
    raise ValidationError(f"{ref}: neither a group file (needs 'table') nor a lattice file (needs 'size')")


def _parse_elements(text: str) -> list[int]:
    stripped = text.strip()
    if stripped.startswith("["):
        data = json.loads(stripped)
        return [int(v) for v in data]
    return [int(v) for v in stripped.split(",") if v.strip() != ""]


def _parse_interval(form: GroupForm, group: FiniteGroup, text: str) -> Interval:
    data = _read_source(text)
    if not isinstance(data, list) or len(data) != 2:
        raise ValidationError("an interval is a JSON pair [[lo elements], [hi elements]]")
    lo = form.subgroup_ref(group, data[0])
    hi = form.subgroup_ref(group, data[1])
    return interval(form, lo, hi)


def _load_series_file(source: str, max_order: int):
    data = _read_source(source)
    if not isinstance(data, dict) or "group" not in data or "terms" not in data:
        raise ValidationError(f"{source}: a series file needs 'group' and 'terms'")
    group_ref = data["group"]
    if isinstance(group_ref, str):
        group = resolve_group(group_ref, max_order=max_order)
    else:
        group = load_group(group_ref, max_order=max_order)
    return group, data["terms"]


def _series_payload(form: GroupForm, series) -> list[list[int]]:
    return [sorted(form.elements_of(t)) for t in series.terms]


# ----------------------------------------------------------------------
# subgroups


def _fiber_dot(form, obj) -> str:
    fiber = form.fiber(obj)
    refs = fiber.refs
    lines = [f'graph "{form.describe_object(obj)}" {{', "  rankdir=BT;"]
    for i, ref in enumerate(refs):
        lines.append(f'  n{i} [label="{form.describe_subobject(ref)}"];')
    for lo, hi in fiber.covers():
        lines.append(f"  n{lo.index} -- n{hi.index};")
    lines.append("}")
    return "\n".join(lines)


def _cmd_subgroups(args) -> int:
    group = resolve_group(args.ref, max_order=args.max_order)
    form = GroupForm([group], max_order=args.max_order)
    obj = form.registered_objects()[0]
    if args.format == "dot":
        print(_fiber_dot(form, obj))
    elif args.format == "json":
        _emit({
            "object": obj.name,
            "order": obj.order,
            "subgroups": [sorted(form.elements_of(r)) for r in form.subobjects(obj)],
        })
    else:
        print(f"{obj.name}: {form.fiber_size(obj)} subgroups")
        for ref in form.subobjects(obj):
            print(f"  {form.describe_subobject(ref)}")
    return 0


# ----------------------------------------------------------------------
# verify


def _cmd_verify(args) -> int:
    instances = [_resolve_instance(ref, args.max_order) for ref in args.refs]
    groups = [g for g in instances if isinstance(g, FiniteGroup)]
    lattices = [l for l in instances if not isinstance(l, FiniteGroup)]
    if groups and lattices:
        raise ValidationError("verify one kind of instance per invocation (groups or lattices)")
    form = GroupForm(groups, max_order=args.max_order) if groups else LatticeForm(lattices)
    if args.dual:
        form = dualize(form)
    axioms = verify_axioms(form, budget=args.budget)
    theorems = verify_theorems(form, budget=args.budget)
    failed = bool(axioms.failures() or theorems.failures())
    if args.format == "text":
        for report in (axioms, theorems):
            print(f"{report.suite} on {report.instance}:")
            for c in report.checks:
                print(f"  {c.name:30s} {c.status}")
        print("result:", "FAIL" if failed else "PASS")
    else:
        _emit({
            "axioms": axioms.to_jsonable(include_timing=args.timings),
            "theorems": theorems.to_jsonable(include_timing=args.timings),
        })
    return CHECK_FAILURE if failed else 0


# ----------------------------------------------------------------------
# butterfly


def _cmd_butterfly(args) -> int:
    group = resolve_group(args.ref, max_order=args.max_order)
    form = GroupForm([group], max_order=args.max_order)
    obj = form.registered_objects()[0]
    x = _parse_interval(form, obj, args.x)
    y = _parse_interval(form, obj, args.y)
    report = butterfly(form, x, y)
    payload = {
        "x": [sorted(form.elements_of(x.lo)), sorted(form.elements_of(x.hi))],
        "y": [sorted(form.elements_of(y.lo)), sorted(form.elements_of(y.hi))],
        "yx": [sorted(form.elements_of(report.yx.lo)), sorted(form.elements_of(report.yx.hi))],
        "xy": [sorted(form.elements_of(report.xy.lo)), sorted(form.elements_of(report.xy.hi))],
        "mutual_projection": list(report.mutual_projection),
        "conormal_ok": list(report.conormal_ok),
        "subfactors_ok": None if report.subfactors_ok is None else list(report.subfactors_ok),
        "iso_witness": None if report.iso_witness is None else form.describe_morphism(report.iso_witness),
        "holds": report.holds,
    }
    if args.format == "text":
        print(f"YX = {describe_interval(form, report.yx)}")
        print(f"XY = {describe_interval(form, report.xy)}")
        print(f"(YX)(XY)=XY and (XY)(YX)=YX: {report.mutual_projection}")
        if report.iso_witness is not None:
            print(f"induced isomorphism: {form.describe_morphism(report.iso_witness)}")
        print("holds:", report.holds)
    else:
        _emit(payload)
    return 0 if report.holds else CHECK_FAILURE


# ----------------------------------------------------------------------
# chase


def _cmd_chase(args) -> int:
    data = _read_source(args.zigzag)
    if not isinstance(data, list) or not data:
        raise ValidationError("a zigzag is a non-empty JSON list of legs {'hom': ..., 'dir': 'L'|'R'}")
    groups: dict = {}

    def _group_of(ref):
        g = resolve_group(ref, max_order=args.max_order) if isinstance(ref, str) else load_group(ref, max_order=args.max_order)
        return groups.setdefault(g, g)

    legs = []
    for entry in data:
        hom = entry.get("hom") if isinstance(entry, dict) else None
        direction = entry.get("dir") if isinstance(entry, dict) else None
        if not isinstance(hom, dict) or direction not in ("L", "R"):
            raise ValidationError("each leg needs 'hom' and 'dir' ('L' or 'R')")
        dom = _group_of(hom["domain"])
        cod = _group_of(hom["codomain"])
        legs.append(Leg(GroupHom(dom, cod, tuple(hom["map"])), direction))
    form = GroupForm(groups, max_order=args.max_order)
    zz = Zigzag.from_legs(legs)
    start_obj = zz.target if args.backward else zz.source
    start = form.subgroup_ref(start_obj, _parse_elements(args.subgroup))
    result = chase(form, zz, start, backward=args.backward)
    if args.format == "json":
        _emit({
            "start": sorted(form.elements_of(start)),
            "result": sorted(form.elements_of(result)),
            "object": result.obj.name,
        })
    else:
        print(f"{form.describe_subobject(start)} chases to {form.describe_subobject(result)} in {result.obj.name}")
    return 0


# ----------------------------------------------------------------------
# refine / projiso


def _load_series_pair(args):
    group_s, terms_s = _load_series_file(args.series_s, args.max_order)
    group_t, terms_t = _load_series_file(args.series_t, args.max_order)
    if group_s != group_t:
        raise ValidationError("the two series must live on the same group")
    form = GroupForm([group_s], max_order=args.max_order)
    obj = form.registered_objects()[0]
    s = validate_series(form, [form.subgroup_ref(obj, t) for t in terms_s])
    t = validate_series(form, [form.subgroup_ref(obj, t) for t in terms_t])
    return form, s, t


def _cmd_refine(args) -> int:
    form, s, t = _load_series_pair(args)
    result = refine_pair(form, s, t)
    payload = {
        "left": _series_payload(form, result.left),
        "right": _series_payload(form, result.right),
        "raw_left": [sorted(form.elements_of(r)) for r in result.raw_left],
        "raw_right": [sorted(form.elements_of(r)) for r in result.raw_right],
        "matching": [list(p) for p in result.matching.pairs],
    }
    if args.format == "text":
        print("left: ", " > ".join(form.describe_subobject(r) for r in result.left.terms))
        print("right:", " > ".join(form.describe_subobject(r) for r in result.right.terms))
        print("matching:", result.matching.pairs)
    else:
        _emit(payload)
    return 0


def _cmd_projiso(args) -> int:
    form, s, t = _load_series_pair(args)
    matching = projectively_isomorphic(form, s, t)
    if args.format == "text":
        if matching is None:
            print("not projectively isomorphic")
        else:
            print("matching:", matching.pairs)
    else:
        _emit({"matching": None if matching is None else [list(p) for p in matching.pairs]})
    return 0 if matching is not None else CHECK_FAILURE


# ----------------------------------------------------------------------
# counterexample


def _cmd_counterexample(args) -> int:
    cx = section4_counterexample()
    form = cx["form"]
    ok = (
        not cx["e1_holds"]
        and not cx["coarsest"]
        and cx["refinement"].left == cx["refinement"].right
        and cx["coarsest_witness"] is not None
    )
    if args.format == "json":
        witness = cx["coarsest_witness"]
        _emit({
            "object": cx["object"].name,
            "fiber": [sorted(form.elements_of(r)) for r in cx["fiber"].refs],
            "series_s": _series_payload(form, cx["series_s"]),
            "series_t": _series_payload(form, cx["series_t"]),
            "candidate": [sorted(form.elements_of(cx["candidate"].lo)), sorted(form.elements_of(cx["candidate"].hi))],
            "projection_onto_candidate": [
                sorted(form.elements_of(cx["projection_onto_candidate"].lo)),
                sorted(form.elements_of(cx["projection_onto_candidate"].hi)),
            ],
            "projection_into_step": [
                sorted(form.elements_of(cx["projection_into_step"].lo)),
                sorted(form.elements_of(cx["projection_into_step"].hi)),
            ],
            "e1_holds": cx["e1_holds"],
            "refined": _series_payload(form, cx["refinement"].left),
            "coarsest": cx["coarsest"],
            "coarsest_witness": None if witness is None else [_series_payload(form, w) for w in witness],
            "reproduced": ok,
        })
    else:
        print("subgroup fiber of Z6 (the diamond):")
        print(_fiber_dot(form, cx["object"]))
        print()
        s_terms = " > ".join(form.describe_subobject(r) for r in cx["series_s"].terms)
        t_terms = " > ".join(form.describe_subobject(r) for r in cx["series_t"].terms)
        print(f"series S: {s_terms}")
        print(f"series T: {t_terms}")
        print()
        print(f"candidate subfactor {describe_interval(form, cx['candidate'])} inside [X1, X0]:")
        print(f"  [Y2,Y1] projects onto it: {describe_interval(form, cx['projection_onto_candidate'])}")
        print(f"  projection of [Y2,Y1] into [X1, X0]: {describe_interval(form, cx['projection_into_step'])}")
        print(f"  containment claim holds: {cx['e1_holds']}  (refuted)")
        print()
        refined = " > ".join(form.describe_subobject(r) for r in cx["refinement"].left.terms)
        print(f"mutual refinement of S and T (both sides): {refined}")
        print(f"coarsest projectively isomorphic pair: {cx['coarsest']}  (refuted)")
        u, v = cx["coarsest_witness"]
        print("  witness pair, projectively isomorphic but not refining it:")
        print("   ", " > ".join(form.describe_subobject(r) for r in u.terms))
        print("   ", " > ".join(form.describe_subobject(r) for r in v.terms))
    return 0 if ok else CHECK_FAILURE


# ----------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noether",
        description="Verification tools for noetherian forms over finite groups and modular lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json", "dot"), default=None)
        p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)

    p = sub.add_parser("subgroups", help="list the subgroup fiber, optionally as a DOT Hasse diagram")
    p.add_argument("ref", help="builtin:NAME or a group JSON file")
    common(p)
    p.set_defaults(func=_cmd_subgroups, default_format="text")

    p = sub.add_parser("verify", help="run the axiom and theorem conformance suites")
    p.add_argument("refs", nargs="+", help="builtin:NAME, group files, or lattice files")
    p.add_argument("--budget", type=int, default=2_000_000, help="tuple budget per check")
    p.add_argument("--dual", action="store_true", help="verify the dualized form")
    p.add_argument("--timings", action="store_true", help="include elapsed seconds in the report")
    common(p)
    p.set_defaults(func=_cmd_verify, default_format="json")

    p = sub.add_parser("butterfly", help="mutual projections and induced isomorphism of two subfactors")
    p.add_argument("ref")
    p.add_argument("--x", required=True, help="interval as [[lo elements],[hi elements]]")
    p.add_argument("--y", required=True, help="interval as [[lo elements],[hi elements]]")
    common(p)
    p.set_defaults(func=_cmd_butterfly, default_format="text")

    p = sub.add_parser("chase", help="chase a subgroup along a zigzag")
    p.add_argument("zigzag", help="JSON list of legs {'hom': {...}, 'dir': 'L'|'R'} (inline or file)")
    p.add_argument("--subgroup", required=True, help="element list, e.g. 0,2,4")
    p.add_argument("--backward", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_chase, default_format="text")

    p = sub.add_parser("refine", help="mutually refine two subnormal series")
    p.add_argument("series_s", help="series file or inline JSON {'group': ..., 'terms': [[...], ...]}")
    p.add_argument("series_t")
    common(p)
    p.set_defaults(func=_cmd_refine, default_format="text")

    p = sub.add_parser("projiso", help="find a projective isomorphism between two series")
    p.add_argument("series_s")
    p.add_argument("series_t")
    common(p)
    p.set_defaults(func=_cmd_projiso, default_format="text")

    p = sub.add_parser("counterexample", help="reproduce the coarsest-refinement refutation on Z6")
    common(p)
    p.set_defaults(func=_cmd_counterexample, default_format="text")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except (ValidationError, DomainError, BudgetError, UnsupportedInstanceError) as exc:
        print(f"noether: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ProvisoError, InstanceIntegrityError) as exc:
        print(f"noether: check failed: {exc}", file=sys.stderr)
        return CHECK_FAILURE
    except FormError as exc:
        print(f"noether: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
