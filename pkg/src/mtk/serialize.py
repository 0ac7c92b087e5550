"""Canonical JSON file format for category and group data.

Files carry {"format_version": 1, "kind": "premodular" | "group",
"payload": ...} with every number exact: cyclotomic entries as
power-basis coefficient lists of reduced rationals, twists as reduced
fractions of a full turn.  Serialization is canonical (sorted keys,
fixed indentation, reduced fractions, arrays in label order), so
saving a loaded file reproduces it byte for byte, and loading runs the
full validation suite before anything is returned.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .cyclo import CycloNum, RootOfUnity
from .errors import ValidationError
from .fusion import fusion_ring
from .groups import GroupData, group_data
from .premodular import PreModularData, premodular

FORMAT_VERSION = 1


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ValidationError(f"{path}: {message}")


def _expect_int(value, path: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), path,
            "expected an integer")
    return value


def _expect_list(value, path: str) -> list:
    _expect(isinstance(value, list), path, "expected a list")
    return value


def _pair(value, path: str) -> Fraction:
    _expect_list(value, path)
    _expect(len(value) == 2, path, "expected a [numerator, denominator] pair")
    num = _expect_int(value[0], f"{path}[0]")
    den = _expect_int(value[1], f"{path}[1]")
    _expect(den > 0, f"{path}[1]", "denominator must be positive")
    frac = Fraction(num, den)
    _expect(frac.numerator == num and frac.denominator == den, path,
            "fraction is not reduced")
    return frac


def cyclo_to_json(c: CycloNum) -> dict:
    return {
        "order": c.order,
        "coeffs": [
            [f.numerator, f.denominator]
            for f in (Fraction(n, c.den) for n in c.nums)
        ],
    }


def cyclo_from_json(obj, path: str) -> CycloNum:
    _expect(isinstance(obj, dict), path, "expected an object")
    _expect(set(obj) == {"order", "coeffs"}, path,
            'expected exactly the keys "order" and "coeffs"')
    order = _expect_int(obj["order"], f"{path}.order")
    _expect(order >= 1, f"{path}.order", "order must be positive")
    coeffs = _expect_list(obj["coeffs"], f"{path}.coeffs")
    fracs = [_pair(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)]
    out = CycloNum(order, fracs)
    _expect(cyclo_to_json(out) == {"order": obj["order"], "coeffs": obj["coeffs"]},
            path, "cyclotomic entry is not in canonical form")
    return out


def root_to_json(r: RootOfUnity) -> list:
    return [r.num, r.den]


def root_from_json(obj, path: str) -> RootOfUnity:
    frac = _pair(obj, path)
    return RootOfUnity(frac.numerator, frac.denominator)


def premodular_to_payload(data: PreModularData) -> dict:
    ring = data.ring
    return {
        "rank": ring.rank,
        "labels": list(ring.labels),
        "dual": list(ring.dual),
        "fusion": [
            [i, j, k, v] for (i, j, k), v in sorted(ring.fusion.items())
        ],
        "cyclotomic_order": data.cyclotomic_order,
        "twist": [root_to_json(t) for t in data.twist],
        "sprime": [[cyclo_to_json(x) for x in row] for row in data.sprime],
    }


def payload_to_premodular(payload, path: str = "payload") -> PreModularData:
    _expect(isinstance(payload, dict), path, "expected an object")
    required = {"rank", "labels", "dual", "fusion", "cyclotomic_order",
                "twist", "sprime"}
    _expect(set(payload) == required, path,
            f"expected exactly the keys {sorted(required)}")
    rank = _expect_int(payload["rank"], f"{path}.rank")
    _expect(rank >= 1, f"{path}.rank", "rank must be positive")
    labels = _expect_list(payload["labels"], f"{path}.labels")
    _expect(len(labels) == rank, f"{path}.labels", f"expected {rank} labels")
    for i, lab in enumerate(labels):
        _expect(isinstance(lab, str), f"{path}.labels[{i}]", "expected a string")
    dual = _expect_list(payload["dual"], f"{path}.dual")
    _expect(len(dual) == rank, f"{path}.dual", f"expected {rank} entries")
    for i, d in enumerate(dual):
        v = _expect_int(d, f"{path}.dual[{i}]")
        _expect(0 <= v < rank, f"{path}.dual[{i}]", "label index out of range")
    fusion = {}
    rows = _expect_list(payload["fusion"], f"{path}.fusion")
    for t, row in enumerate(rows):
        _expect_list(row, f"{path}.fusion[{t}]")
        _expect(len(row) == 4, f"{path}.fusion[{t}]",
                "expected [i, j, k, multiplicity]")
        i, j, k, v = (_expect_int(x, f"{path}.fusion[{t}][{s}]")
                      for s, x in enumerate(row))
        for idx in (i, j, k):
            _expect(0 <= idx < rank, f"{path}.fusion[{t}]",
                    "label index out of range")
        _expect(v > 0, f"{path}.fusion[{t}][3]",
                "multiplicity must be positive")
        _expect((i, j, k) not in fusion, f"{path}.fusion[{t}]",
                "duplicate fusion triple")
        fusion[(i, j, k)] = v
    ring = fusion_ring(labels, dual, fusion)
    twist_rows = _expect_list(payload["twist"], f"{path}.twist")
    _expect(len(twist_rows) == rank, f"{path}.twist", f"expected {rank} entries")
    twist = [root_from_json(r, f"{path}.twist[{i}]")
             for i, r in enumerate(twist_rows)]
    sprime_rows = _expect_list(payload["sprime"], f"{path}.sprime")
    _expect(len(sprime_rows) == rank, f"{path}.sprime", f"expected {rank} rows")
    sprime = []
    for i, row in enumerate(sprime_rows):
        _expect_list(row, f"{path}.sprime[{i}]")
        _expect(len(row) == rank, f"{path}.sprime[{i}]",
                f"expected {rank} entries")
        sprime.append([cyclo_from_json(x, f"{path}.sprime[{i}][{j}]")
                       for j, x in enumerate(row)])
    data = premodular(ring, twist, sprime)
    order = _expect_int(payload["cyclotomic_order"], f"{path}.cyclotomic_order")
    _expect(order == data.cyclotomic_order, f"{path}.cyclotomic_order",
            f"stated order {order} differs from the derived"
            f" {data.cyclotomic_order}")
    return data


def group_to_payload(g: GroupData) -> dict:
    return {
        "order": g.order,
        "mult": [list(row) for row in g.mult],
        "classes": [list(c) for c in g.classes],
        "char_tables": [
            [[cyclo_to_json(x) for x in row] for row in table]
            for table in g.char_tables
        ],
    }


def payload_to_group(payload, path: str = "payload") -> GroupData:
    _expect(isinstance(payload, dict), path, "expected an object")
    required = {"order", "mult", "classes", "char_tables"}
    _expect(set(payload) == required, path,
            f"expected exactly the keys {sorted(required)}")
    order = _expect_int(payload["order"], f"{path}.order")
    _expect(order >= 1, f"{path}.order", "order must be positive")
    mult = _expect_list(payload["mult"], f"{path}.mult")
    _expect(len(mult) == order, f"{path}.mult", f"expected {order} rows")
    for i, row in enumerate(mult):
        _expect_list(row, f"{path}.mult[{i}]")
        _expect(len(row) == order, f"{path}.mult[{i}]",
                f"expected {order} entries")
        for j, v in enumerate(row):
            x = _expect_int(v, f"{path}.mult[{i}][{j}]")
            _expect(0 <= x < order, f"{path}.mult[{i}][{j}]",
                    "element index out of range")
    classes = _expect_list(payload["classes"], f"{path}.classes")
    parsed_classes = []
    for i, c in enumerate(classes):
        _expect_list(c, f"{path}.classes[{i}]")
        parsed_classes.append(
            [_expect_int(x, f"{path}.classes[{i}][{j}]")
             for j, x in enumerate(c)]
        )
    tables = _expect_list(payload["char_tables"], f"{path}.char_tables")
    _expect(len(tables) == len(parsed_classes), f"{path}.char_tables",
            "expected one table per class")
    parsed_tables = []
    for c, table in enumerate(tables):
        _expect_list(table, f"{path}.char_tables[{c}]")
        parsed_tables.append(
            [
                [cyclo_from_json(x, f"{path}.char_tables[{c}][{r}][{s}]")
                 for s, x in enumerate(_expect_list(row, f"{path}.char_tables[{c}][{r}]"))]
                for r, row in enumerate(table)
            ]
        )
    return group_data(mult, parsed_tables, classes=parsed_classes)


def to_document(obj) -> dict:
    if isinstance(obj, PreModularData):
        kind, payload = "premodular", premodular_to_payload(obj)
    elif isinstance(obj, GroupData):
        kind, payload = "group", group_to_payload(obj)
    else:
        raise ValidationError(f"cannot serialize a {type(obj).__name__}")
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": payload}


def from_document(doc):
    _expect(isinstance(doc, dict), "$", "expected a JSON object")
    _expect(set(doc) == {"format_version", "kind", "payload"}, "$",
            'expected exactly the keys "format_version", "kind", "payload"')
    version = _expect_int(doc["format_version"], "$.format_version")
    _expect(version == FORMAT_VERSION, "$.format_version",
            f"unsupported version {version}")
    kind = doc["kind"]
    if kind == "premodular":
        return payload_to_premodular(doc["payload"])
    if kind == "group":
        return payload_to_group(doc["payload"])
    raise ValidationError(f'$.kind: unknown kind {kind!r}')


def dumps(obj) -> str:
    return json.dumps(to_document(obj), sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from exc
    return from_document(doc)


def save(obj, path) -> None:
    text = dumps(obj)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
