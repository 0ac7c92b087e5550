"""Command-line front end.

Every operation is scriptable: FILE arguments accept either a path to
a saved JSON document or a built-in catalog name, verbs that produce a
datum can pipe it back to disk with --out, and --json switches the
report to a machine-readable form.  Exit codes: 0 success, 1 the
mathematics rejected the data (invariant or verification failure),
2 usage or I/O problems.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .catalog import catalog_get, catalog_list
from .condense import condense, modular_closure
from .cyclo import CycloNum, RootOfUnity
from .doubles import (
    minimal_extension_check,
    rep_category,
    twisted_cyclic_double,
    untwisted_double,
)
from .errors import MtkError, ValidationError
from .fusion import resolve_labels
from .groups import GroupData, builtin_group
from .premodular import (
    PreModularData,
    gauss_sums,
    global_dimension_exact,
    is_modular,
    normalized_ST,
    relative_commutant,
    transparent_objects,
    validate_premodular,
    verlinde_fusion,
)
from .serialize import (
    cyclo_from_json,
    cyclo_to_json,
    load,
    root_to_json,
    save,
    to_document,
)
from .structure import deligne_product, double_commutant_report, factorize


class UsageError(Exception):
    pass


def _load_datum(arg: str) -> PreModularData:
    obj = _load_any(arg)
    if not isinstance(obj, PreModularData):
        raise UsageError(f"{arg} holds group data where category data is needed")
    return obj


def _load_any(arg: str):
    if os.path.exists(arg):
        return load(arg)
    try:
        return catalog_get(arg)
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc


def _load_group(arg: str) -> GroupData:
    if os.path.exists(arg):
        obj = load(arg)
        if not isinstance(obj, GroupData):
            raise UsageError(f"{arg} does not hold group data")
        return obj
    try:
        return builtin_group(arg)
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc


def _labels_arg(value: str) -> list[str]:
    items = [x.strip() for x in value.split(",") if x.strip()]
    if not items:
        raise UsageError("expected a comma-separated label list")
    return items


def fmt_cyclo(x: CycloNum) -> str:
    q = x.as_rational()
    if q is not None:
        return str(q)
    z = x.to_complex()
    if abs(z.imag) < 1e-12:
        return f"{z.real:.8g}"
    return f"{z.real:.8g}{z.imag:+.8g}i"


def fmt_root(r: RootOfUnity) -> str:
    if r.num == 0:
        return "1"
    if 2 * r.num == r.den:
        return "-1"
    return f"exp(2*pi*i*{r.num}/{r.den})"


def _jsonable(x):
    if isinstance(x, CycloNum):
        return cyclo_to_json(x)
    if isinstance(x, RootOfUnity):
        return root_to_json(x)
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(args, report: dict, human: list[str], datum=None) -> None:
    if args.json:
        if datum is not None and not report:
            payload = to_document(datum)
        else:
            payload = _jsonable(report)
            if datum is not None:
                payload["condensed" if "condensed_rank" in report else "datum"] = (
                    to_document(datum)
                )
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in human:
            print(line)
    if args.out:
        if datum is not None:
            save(datum, args.out)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(_jsonable(report), fh, sort_keys=True, indent=2)
                fh.write("\n")


def _describe(data: PreModularData) -> list[str]:
    dims = ", ".join(fmt_cyclo(d) for d in data.dims())
    twists = ", ".join(fmt_root(t) for t in data.twist)
    return [
        f"rank: {data.rank}",
        f"labels: {', '.join(data.ring.labels)}",
        f"dims: {dims}",
        f"twists: {twists}",
        f"dim: {fmt_cyclo(global_dimension_exact(data))}",
    ]


def cmd_verify(args) -> None:
    obj = _load_any(args.file)
    if isinstance(obj, GroupData):
        human = [
            f"group of order {obj.order} with {len(obj.classes)} conjugacy classes",
            "invariants: ok",
        ]
        _emit(args, {"kind": "group", "order": obj.order,
                     "classes": len(obj.classes), "invariants_ok": True}, human)
        return
    violations = validate_premodular(obj.ring, obj.twist, obj.sprime)
    if violations:
        raise ValidationError("invariants violated", tuple(violations))
    modular, cert = is_modular(obj)
    passed = sum(
        bool(cert[k])
        for k in ("sprime_invertible", "trivial_center", "gauss_criterion")
    )
    human = _describe(obj)
    human.append("invariants: ok")
    human.append(f"modular: {'yes' if modular else 'no'} ({passed}/3 criteria)")
    report = {
        "kind": "premodular",
        "rank": obj.rank,
        "labels": list(obj.ring.labels),
        "invariants_ok": True,
        "modular": modular,
        "criteria": {
            "sprime_invertible": cert["sprime_invertible"],
            "trivial_center": cert["trivial_center"],
            "gauss_criterion": cert["gauss_criterion"],
        },
        "center": [obj.label(i) for i in cert["center"]],
    }
    _emit(args, report, human)


def cmd_center(args) -> None:
    data = _load_datum(args.file)
    center = transparent_objects(data)
    labels = [data.label(i) for i in center]
    _emit(args, {"center": labels}, [f"center: {', '.join(labels)}"])


def cmd_commutant(args) -> None:
    data = _load_datum(args.file)
    sub = resolve_labels(data.ring, _labels_arg(args.sub))
    comm = relative_commutant(data, sub)
    labels = [data.label(i) for i in comm]
    _emit(args, {"commutant": labels}, [f"commutant: {', '.join(labels)}"])


def _condense_report(res) -> tuple[dict, list[str]]:
    data = res.input
    cond = res.condensed
    orbits = [[data.label(x) for x in orb] for orb in res.orbit_data.orbits]
    stabs = [[data.label(z) for z in st] for st in res.orbit_data.stabilizers]
    grading = [
        {
            "character": [root_to_json(v) for v in key],
            "labels": [data.label(i) for i in labs],
        }
        for key, labs in res.grading.items()
    ]
    report = {
        "currents": [data.label(z) for z in res.currents.elements],
        "local_part": [data.label(i) for i in res.local_part],
        "orbits": orbits,
        "stabilizers": stabs,
        "grading": grading,
        "grading_full": res.grading_full,
        "embedding_table": {
            k: [[lab, m] for lab, m in v] for k, v in res.embedding_table.items()
        },
        "condensed_rank": cond.rank,
        "condensed_labels": list(cond.ring.labels),
        "condensed_dims": [cyclo_to_json(d) for d in cond.dims()],
        "condensed_twists": [root_to_json(t) for t in cond.twist],
    }
    human = [
        f"currents: {', '.join(report['currents'])}",
        f"local part: {', '.join(report['local_part'])}",
        f"orbits: {'; '.join(','.join(o) for o in orbits)}",
        f"grading full: {res.grading_full}",
        "condensed:",
    ]
    human += ["  " + line for line in _describe(cond)]
    return report, human


def cmd_condense(args) -> None:
    data = _load_datum(args.file)
    currents = _labels_arg(args.currents)
    sz = None
    if args.sz:
        with open(args.sz, encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict) or "sz_matrices" not in doc:
            raise UsageError('sz file must hold {"sz_matrices": {...}}')
        sz = {}
        for key, mat in doc["sz_matrices"].items():
            idx = resolve_labels(data.ring, [key])[0]
            sz[idx] = [
                [cyclo_from_json(x, f"sz_matrices.{key}[{i}][{j}]")
                 for j, x in enumerate(row)]
                for i, row in enumerate(mat)
            ]
    res = condense(data, currents, sz_matrices=sz)
    report, human = _condense_report(res)
    _emit(args, report, human, datum=res.condensed)


def cmd_closure(args) -> None:
    data = _load_datum(args.file)
    res = modular_closure(data)
    report, human = _condense_report(res)
    _emit(args, report, human, datum=res.condensed)


def cmd_grading(args) -> None:
    from .condense import check_symmetric_subcategory, grading_decomposition

    data = _load_datum(args.file)
    currents = check_symmetric_subcategory(data, _labels_arg(args.currents))
    grades, full = grading_decomposition(data, currents)
    report = {
        "grades": [
            {
                "character": [root_to_json(v) for v in key],
                "labels": [data.label(i) for i in labs],
            }
            for key, labs in grades.items()
        ],
        "full": full,
    }
    human = [
        f"grade {tuple(fmt_root(v) for v in key)}: "
        + ", ".join(data.label(i) for i in labs)
        for key, labs in grades.items()
    ]
    human.append(f"grading full: {full}")
    _emit(args, report, human)


def cmd_double(args) -> None:
    if args.p is not None:
        group = _load_group(args.group)
        order = _cyclic_order(group)
        if order is None:
            raise UsageError("--p twists are built on cyclic groups only")
        data = twisted_cyclic_double(order, args.p)
    else:
        data = untwisted_double(_load_group(args.group))
    _emit(args, {}, _describe(data), datum=data)


def _cyclic_order(g: GroupData) -> int | None:
    for x in range(g.order):
        n, cur = 1, x
        while cur != 0:
            cur = g.mult[cur][x]
            n += 1
        if n == g.order:
            return g.order
    return None


def cmd_repcat(args) -> None:
    data = rep_category(_load_group(args.group))
    _emit(args, {}, _describe(data), datum=data)


def cmd_product(args) -> None:
    data = deligne_product(_load_datum(args.a), _load_datum(args.b))
    _emit(args, {}, _describe(data), datum=data)


def cmd_factor(args) -> None:
    rep = factorize(_load_datum(args.file))
    report = {
        "n_factors": len(rep.factors),
        "factors": [to_document(f) for f in rep.factors],
        "pairing": {k: list(v) for k, v in rep.pairing.items()},
        "verified": rep.verified,
    }
    human = [f"prime factors: {len(rep.factors)}"]
    for t, f in enumerate(rep.factors):
        dims = ", ".join(fmt_cyclo(d) for d in f.dims())
        human.append(f"  factor {t}: rank {f.rank}, dims ({dims})")
    _emit(args, report, human)


def cmd_dct(args) -> None:
    rep = double_commutant_report(_load_datum(args.file))
    report = _jsonable(
        {
            "dim": rep["dim"],
            "all_hold": rep["all_hold"],
            "entries": rep["entries"],
            "witnesses": rep["witnesses"],
        }
    )
    human = [f"dim: {fmt_cyclo(rep['dim'])}",
             f"subcategories: {len(rep['entries'])}"]
    for e in rep["entries"]:
        human.append(
            f"  K = {{{', '.join(e['labels'])}}}  K' = {{{', '.join(e['commutant'])}}}"
            f"  K'' = K: {e['bicommutant_equals']}"
            f"  dim identity: {e['dimension_identity']}"
        )
    human.append(f"both clauses hold on all subcategories: {rep['all_hold']}")
    _emit(args, report, human)
    if not rep["all_hold"]:
        raise MtkError("double-commutant clauses failed; see witnesses")


def cmd_verlinde(args) -> None:
    data = _load_datum(args.file)
    m = normalized_ST(data)
    fusion = verlinde_fusion(m)
    human = [
        f"verlinde fusion matches stored fusion ({len(fusion)} nonzero triples)"
    ]
    report = {
        "matches_stored": True,
        "nonzero_triples": len(fusion),
    }
    if all(d == 1 for d in data.dims()):
        invs = _abelian_invariants(data)
        name = " x ".join(f"Z/{d}" for d in invs)
        human.append(f"fusion group: {name}")
        report["fusion_group"] = invs
    _emit(args, report, human)


def _abelian_invariants(data: PreModularData) -> list[int]:
    n = data.rank
    prod = {}
    for i in range(n):
        for j in range(n):
            ks = data.ring.products(i, j)
            prod[(i, j)] = ks[0]

    def power(x: int, m: int) -> int:
        acc = 0
        for _ in range(m):
            acc = prod[(acc, x)]
        return acc

    remaining = n
    primary: list[tuple[int, int]] = []
    p = 2
    m = n
    while m > 1:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts = [1]
            for i in range(1, e + 1):
                counts.append(sum(1 for x in range(n) if power(x, p ** i) == 0))
            ge = [0] * (e + 2)
            for i in range(1, e + 1):
                ratio = counts[i] // counts[i - 1]
                ge[i] = round(_int_log(ratio, p))
            for exp in range(1, e + 1):
                primary += [(p, exp)] * (ge[exp] - ge[exp + 1])
        p += 1
    invariants = []
    primary_by_p: dict[int, list[int]] = {}
    for q, e in primary:
        primary_by_p.setdefault(q, []).append(e)
    for q in primary_by_p:
        primary_by_p[q].sort(reverse=True)
    while any(primary_by_p.values()):
        d = 1
        for q, exps in primary_by_p.items():
            if exps:
                d *= q ** exps.pop(0)
        invariants.append(d)
    del remaining
    return sorted(invariants)


def _int_log(x: int, p: int) -> int:
    e = 0
    while x > 1:
        x //= p
        e += 1
    return e


def cmd_gauss(args) -> None:
    data = _load_datum(args.file)
    delta, dim = gauss_sums(data)
    norm = delta * delta.conjugate()
    report = {
        "gauss_sum": cyclo_to_json(delta),
        "dim": cyclo_to_json(dim),
        "gauss_norm_squared": cyclo_to_json(norm),
        "gauss_criterion": norm == dim,
    }
    human = [
        f"gauss sum: {fmt_cyclo(delta)}",
        f"dim: {fmt_cyclo(dim)}",
        f"|gauss|^2 = dim: {norm == dim}",
    ]
    _emit(args, report, human)


def cmd_catalog(args) -> None:
    if args.action == "list":
        entries = catalog_list()
        report = {
            "entries": [
                {
                    "name": e.name,
                    "note": e.note,
                    "modular": e.modular,
                    "symmetric": e.symmetric,
                }
                for e in entries
            ]
        }
        human = [
            f"{e.name:16s} modular={str(e.modular):5s} symmetric="
            f"{str(e.symmetric):5s} {e.note}"
            for e in entries
        ]
        human.append("zn_anyons:n:p   parametric pointed family")
        _emit(args, report, human)
        return
    if args.name is None:
        raise UsageError("catalog get needs a NAME")
    try:
        data = catalog_get(args.name)
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {}, _describe(data), datum=data)


def cmd_minext(args) -> None:
    data = _load_datum(args.file)
    rep = minimal_extension_check(data, _labels_arg(args.sub))
    report = _jsonable(rep)
    human = [
        f"dim ambient: {fmt_cyclo(rep['dim_ambient'])}",
        f"dim subcategory: {fmt_cyclo(rep['dim_sub'])}",
        f"dim of its center: {fmt_cyclo(rep['dim_center'])}",
        f"product: {fmt_cyclo(rep['product'])}",
        f"minimal extension: {rep['minimal']}",
    ]
    _emit(args, report, human)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtk",
        description="Exact computations with premodular fusion data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, **arguments):
        p = sub.add_parser(name, help=help_text)
        for arg, options in arguments.items():
            p.add_argument(arg, **options)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.add_argument("--out", metavar="PATH",
                       help="write the resulting datum or report to PATH")
        return p

    add("verify", "validate a datum and report modularity",
        file={"metavar": "FILE"})
    add("center", "transparent objects",
        file={"metavar": "FILE"})
    add("commutant", "relative commutant of a label set",
        file={"metavar": "FILE"},
        **{"--sub": {"required": True, "metavar": "i,j,..."}})
    add("condense", "condense by a bosonic current group",
        file={"metavar": "FILE"},
        **{"--currents": {"required": True, "metavar": "i,j,..."},
           "--sz": {"metavar": "FILE", "help": "fixed-point block matrices"}})
    add("closure", "condense by the full transparent subcategory",
        file={"metavar": "FILE"})
    add("grading", "monodromy grading by a current group",
        file={"metavar": "FILE"},
        **{"--currents": {"required": True, "metavar": "i,j,..."}})
    add("double", "double of a finite group",
        **{"--group": {"required": True, "metavar": "NAME|FILE"},
           "--p": {"type": int, "metavar": "P",
                   "help": "twisting parameter for cyclic groups"}})
    add("repcat", "representation category of a finite group",
        **{"--group": {"required": True, "metavar": "NAME|FILE"}})
    add("product", "product of two data",
        a={"metavar": "A"}, b={"metavar": "B"})
    add("factor", "prime factorization of a modular datum",
        file={"metavar": "FILE"})
    add("dct", "double-commutant report over all subcategories",
        file={"metavar": "FILE"})
    add("verlinde", "check fusion against the Verlinde formula",
        file={"metavar": "FILE"})
    add("gauss", "gauss sum and dimension",
        file={"metavar": "FILE"})
    add("catalog", "list built-in data or fetch one entry",
        action={"metavar": "list|get", "choices": ["list", "get"]},
        name={"metavar": "NAME", "nargs": "?"})
    add("minext", "minimal-extension dimension check",
        file={"metavar": "FILE"},
        **{"--sub": {"required": True, "metavar": "i,j,..."}})
    return parser


_COMMANDS = {
    "verify": cmd_verify,
    "center": cmd_center,
    "commutant": cmd_commutant,
    "condense": cmd_condense,
    "closure": cmd_closure,
    "grading": cmd_grading,
    "double": cmd_double,
    "repcat": cmd_repcat,
    "product": cmd_product,
    "factor": cmd_factor,
    "dct": cmd_dct,
    "verlinde": cmd_verlinde,
    "gauss": cmd_gauss,
    "catalog": cmd_catalog,
    "minext": cmd_minext,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MtkError, ValidationError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
