"""Finite groups with conjugacy-class and centralizer character data.

Character tables are stored per conjugacy class, for the centralizer
of that class's representative, as full functions on the centralizer's
elements (rows = irreducible characters, columns aligned with the
stored element list).  That is exactly the shape the double
construction consumes.  Tables for cyclic groups and the symmetric
group on three letters are built in; arbitrary groups can be supplied
from files in the same shape.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclo import CycloNum, zeta
from .errors import ValidationError


@dataclass(frozen=True)
class GroupData:
    order: int
    mult: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    centralizers: tuple[tuple[int, ...], ...]
    char_tables: tuple[tuple[tuple[CycloNum, ...], ...], ...]

    def class_rep(self, c: int) -> int:
        return self.classes[c][0]


def _centralizer(mult, g: int) -> tuple[int, ...]:
    n = len(mult)
    return tuple(h for h in range(n) if mult[g][h] == mult[h][g])


def _conjugacy_classes(mult, inverse) -> list[tuple[int, ...]]:
    n = len(mult)
    seen = set()
    classes = []
    for g in range(n):
        if g in seen:
            continue
        orbit = sorted({mult[mult[h][g]][inverse[h]] for h in range(n)})
        classes.append(tuple(orbit))
        seen.update(orbit)
    classes.sort(key=lambda c: (c[0] != 0, len(c), c[0]))
    return classes


def group_data(mult, char_tables=None, classes=None) -> GroupData:
    """Assemble GroupData from a multiplication table, deriving inverses,
    classes, and centralizers; validates all group axioms."""
    mult = tuple(tuple(int(x) for x in row) for row in mult)
    n = len(mult)
    if any(len(row) != n for row in mult):
        raise ValidationError("multiplication table is not square")
    if any(mult[0][g] != g or mult[g][0] != g for g in range(n)):
        raise ValidationError("element 0 is not an identity")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                    raise ValidationError(f"multiplication not associative at ({a},{b},{c})")
    inverse = []
    for g in range(n):
        invs = [h for h in range(n) if mult[g][h] == 0]
        if len(invs) != 1 or mult[invs[0]][g] != 0:
            raise ValidationError(f"element {g} has no unique inverse")
        inverse.append(invs[0])
    inverse = tuple(inverse)
    derived = _conjugacy_classes(mult, inverse)
    if classes is not None:
        classes = tuple(tuple(c) for c in classes)
        if sorted(tuple(sorted(c)) for c in classes) != sorted(derived):
            raise ValidationError("supplied classes do not match the conjugacy classes")
    else:
        classes = tuple(derived)
    if sum(len(c) for c in classes) != n:
        raise ValidationError("class equation fails")
    centralizers = tuple(_centralizer(mult, c[0]) for c in classes)
    for c, z in zip(classes, centralizers):
        if len(c) * len(z) != n:
            raise ValidationError(f"orbit-stabilizer count fails for class {c}")
    if char_tables is None:
        raise ValidationError("centralizer character tables are required")
    char_tables = tuple(
        tuple(tuple(row) for row in table) for table in char_tables
    )
    g = GroupData(n, mult, inverse, classes, centralizers, char_tables)
    report = validate_character_tables(g)
    if report:
        raise ValidationError("character tables invalid", tuple(report))
    return g


def validate_character_tables(g: GroupData) -> list[str]:
    out = []
    for c, (z, table) in enumerate(zip(g.centralizers, g.char_tables)):
        m = len(z)
        if len(table) == 0 or any(len(row) != m for row in table):
            out.append(f"class {c}: table rows must cover all {m} centralizer elements")
            continue
        pos = {el: t for t, el in enumerate(z)}
        if 0 not in pos:
            out.append(f"class {c}: centralizer misses the identity")
            continue
        e = pos[0]
        sum_sq = 0
        for r, row in enumerate(table):
            deg = row[e].as_rational()
            if deg is None or deg.denominator != 1 or deg <= 0:
                out.append(f"class {c}: character {r} has non-positive-integer degree")
                continue
            sum_sq += int(deg) ** 2
        if sum_sq != m:
            out.append(f"class {c}: sum of squared degrees {sum_sq} != |centralizer| {m}")
        for r1 in range(len(table)):
            for r2 in range(len(table)):
                acc = CycloNum.zero()
                for el in z:
                    acc = acc + table[r1][pos[el]] * table[r2][pos[g.inverse[el]]]
                target = m if r1 == r2 else 0
                if acc != target:
                    out.append(f"class {c}: rows {r1},{r2} not orthonormal")
    return out


def cyclic_group(n: int) -> GroupData:
    """Z/n with its n one-dimensional characters on every centralizer."""
    if n < 1:
        raise ValidationError("group order must be positive")
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    table = tuple(
        tuple(zeta(n, j * k) for k in range(n)) for j in range(n)
    )
    char_tables = [table] * n
    return group_data(mult, char_tables)


def symmetric_group_3() -> GroupData:
    """S3 on three letters: elements ordered identity, the two
    3-cycles, then the three transpositions."""
    perms = [
        (0, 1, 2),
        (1, 2, 0),
        (2, 0, 1),
        (1, 0, 2),
        (2, 1, 0),
        (0, 2, 1),
    ]
    index = {p: i for i, p in enumerate(perms)}
    mult = [
        [index[tuple(p[q[x]] for x in range(3))] for q in perms]
        for p in perms
    ]
    one = CycloNum.one()
    two = CycloNum.from_rational(2)
    neg = CycloNum.from_rational(-1)
    zero = CycloNum.zero()
    # classes come out as {e}, {3-cycles}, {transpositions}
    s3_table = (
        (one, one, one, one, one, one),
        (one, one, one, -one, -one, -one),
        (two, neg, neg, zero, zero, zero),
    )
    # centralizer of the 3-cycle at index 1 is {e, 1, 2}, cyclic of order 3
    z3_table = tuple(
        tuple(zeta(3, j * k) for k in range(3)) for j in range(3)
    )
    # centralizer of the transposition at index 3 is {e, 3}
    z2_table = (
        (one, one),
        (one, -one),
    )
    return group_data(mult, [s3_table, z3_table, z2_table])


BUILTIN_GROUPS = {
    "Z1": lambda: cyclic_group(1),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Z5": lambda: cyclic_group(5),
    "Z6": lambda: cyclic_group(6),
    "S3": symmetric_group_3,
}


def builtin_group(name: str) -> GroupData:
    if name in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[name]()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise ValidationError(
        f"unknown group {name!r}; built-ins: {', '.join(sorted(BUILTIN_GROUPS))} or Zn"
    )
