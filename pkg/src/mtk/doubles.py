"""Braided categories built from finite group data.

Three constructions live here: the representation category of a
finite group (a symmetric fusion datum), the untwisted quantum double
of a finite group, and a two-parameter family of twisted doubles of
cyclic groups realized through quadratic forms on cyclic extensions.
A minimality check for extensions of a fixed subcategory rounds out
the module.
"""
from __future__ import annotations

from fractions import Fraction

from .cyclo import CycloNum, RootOfUnity, csum, zeta
from .errors import ConstructionError, MtkError
from .fusion import fusion_ring, resolve_labels
from .groups import GroupData
from .premodular import (
    PreModularData,
    dual_from_fusion,
    fusion_tensor_from_sprime,
    global_dimension_exact,
    is_modular,
    premodular,
    restrict,
    transparent_objects,
)


def rep_category(g: GroupData) -> PreModularData:
    """Representation category of a finite group: trivial twists and
    braiding, fusion from exact character inner products."""
    table = g.char_tables[0]
    if g.centralizers[0] != tuple(range(g.order)):
        raise ConstructionError("class 0 must carry the full group character table")
    k = len(table)
    labels = [f"chi{i}" for i in range(k)]
    degs = [row[0] for row in table]
    inv = g.inverse
    fusion = {}
    for i in range(k):
        for j in range(k):
            for m in range(k):
                acc = csum(
                    table[i][x] * table[j][x] * table[m][inv[x]]
                    for x in range(g.order)
                )
                q = (acc / g.order).as_rational()
                if q is None or q.denominator != 1 or q < 0:
                    raise ConstructionError(
                        f"character product multiplicity ({i},{j},{m}) is not a"
                        " nonnegative integer"
                    )
                if q:
                    fusion[(i, j, m)] = int(q)
    dual = dual_from_fusion(fusion, k)
    ring = fusion_ring(labels, dual, fusion)
    sprime = [[degs[i] * degs[j] for j in range(k)] for i in range(k)]
    twist = [RootOfUnity.one()] * k
    data = premodular(ring, twist, sprime)
    assert data.dims() == degs
    return data


def untwisted_double(g: GroupData) -> PreModularData:
    """Quantum double of a finite group.

    Simple objects are pairs (conjugacy class, irreducible character
    of the representative's centralizer).  Twists are the scalars by
    which class representatives act, and the S-matrix is the standard
    double sum over commuting conjugates.  Fusion is recovered from
    the S-matrix and verified as a premodular datum; the result is
    checked to be modular with global dimension |G| squared.
    """
    n = g.order
    objs = []
    for c, table in enumerate(g.char_tables):
        for r in range(len(table)):
            objs.append((c, r))
    labels = [f"c{c}r{r}" for c, r in objs]
    pos = [
        {el: t for t, el in enumerate(z)} for z in g.centralizers
    ]
    conj = [
        [g.mult[g.mult[h][x]][g.inverse[h]] for h in range(n)]
        for x in range(n)
    ]

    def chi(c: int, r: int, el: int) -> CycloNum:
        return g.char_tables[c][r][pos[c][el]]

    twists = []
    for c, r in objs:
        a = g.class_rep(c)
        deg = chi(c, r, 0)
        t = (chi(c, r, a) / deg).as_root_of_unity()
        if t is None:
            raise ConstructionError(
                f"representative of class {c} does not act by a root of unity"
                f" in character {r}"
            )
        twists.append(t)

    m = len(objs)
    sprime = [[CycloNum.zero()] * m for _ in range(m)]
    for i, (ca, ra) in enumerate(objs):
        a = g.class_rep(ca)
        za = len(g.centralizers[ca])
        for j, (cb, rb) in enumerate(objs):
            if j > i:
                continue
            b = g.class_rep(cb)
            zb = len(g.centralizers[cb])
            acc = CycloNum.zero()
            for h in range(n):
                bc = conj[b][h]
                if g.mult[a][bc] != g.mult[bc][a]:
                    continue
                ac = conj[a][g.inverse[h]]
                acc = acc + chi(ca, ra, bc).conjugate() * chi(cb, rb, ac).conjugate()
            val = acc * Fraction(n, za * zb)
            sprime[i][j] = val
            sprime[j][i] = val

    fusion = fusion_tensor_from_sprime(sprime)
    dual = dual_from_fusion(fusion, m)
    ring = fusion_ring(labels, dual, fusion)
    data = premodular(ring, twists, sprime)
    modular, _ = is_modular(data)
    if not modular:
        raise ConstructionError("double datum failed the modularity checks")
    if global_dimension_exact(data) != n * n:
        raise ConstructionError("double datum has wrong global dimension")
    return data


def _cyclic_extension_fusion(n: int):
    """Group law of the cyclic extension Z/n^2 of Z/n by Z/n in
    coordinates x = a + n*j."""
    r = n * n
    fusion = {}
    for x in range(r):
        for y in range(r):
            fusion[(x, y, (x + y) % r)] = 1
    return fusion


def _split_extension_fusion(n: int):
    r = n * n
    fusion = {}
    for x in range(r):
        for y in range(r):
            a, j = x % n, x // n
            b, k = y % n, y // n
            z = (a + b) % n + n * ((j + k) % n)
            fusion[(x, y, z)] = 1
    return fusion


def twisted_cyclic_double(n: int, p: int) -> PreModularData:
    """Twisted double of the cyclic group of order n with twisting
    parameter p taken mod n.

    For p = 0 this is the untwisted (toric-type) datum on pairs (a, j)
    with twist zeta_n^(a*j).  For p invertible mod n the datum is
    supported on the cyclic extension Z/n^2, carrying the quadratic
    form q(x) = x^2 * p / n^2 as its twist; its fusion group is the
    nonsplit extension.  Intermediate divisors of n are outside this
    family and raise ConstructionError.
    """
    if n < 1:
        raise ConstructionError("group order must be positive")
    p %= n
    r = n * n
    labels = [f"({x % n},{x // n})" for x in range(r)]
    if p == 0:
        twists = [RootOfUnity((x % n) * (x // n), n) for x in range(r)]
        sprime = [
            [
                zeta(n, -((x % n) * (y // n) + (y % n) * (x // n)))
                for y in range(r)
            ]
            for x in range(r)
        ]
        expected = _split_extension_fusion(n)
    elif n == 1 or _gcd(p, n) == 1:
        if n % 2 == 0:
            twists = [RootOfUnity(p * x * x, 2 * r) for x in range(r)]
        else:
            half = (r + 1) // 2
            twists = [RootOfUnity(p * x * x * half, r) for x in range(r)]
        sprime = [[zeta(r, -p * x * y) for y in range(r)] for x in range(r)]
        expected = _cyclic_extension_fusion(n)
    else:
        raise ConstructionError(
            f"twisting parameter {p} shares a proper factor with {n};"
            " only p = 0 or p invertible mod n are supported"
        )
    fusion = fusion_tensor_from_sprime(sprime)
    if fusion != expected:
        raise MtkError("derived fusion does not match the extension group law")
    dual = dual_from_fusion(fusion, r)
    ring = fusion_ring(labels, dual, fusion)
    data = premodular(ring, twists, sprime)
    modular, _ = is_modular(data)
    if not modular:
        raise ConstructionError("twisted double datum failed the modularity checks")
    return data


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def minimal_extension_check(data: PreModularData, sub_labels) -> dict:
    """Check dim(M) >= dim(C) * dim(Z(C)) for a modular M containing
    the fusion subcategory C on the given labels, with Z(C) the
    transparent part of C; reports whether equality holds."""
    modular, _ = is_modular(data)
    if not modular:
        raise MtkError("minimal extension check requires a modular ambient datum")
    sub = restrict(data, resolve_labels(data.ring, sub_labels))
    center = transparent_objects(sub)
    dims = sub.dims()
    dim_sub = csum(d * d for d in dims)
    dim_center = csum(dims[i] * dims[i] for i in center)
    dim_ambient = global_dimension_exact(data)
    product = dim_sub * dim_center
    slack = dim_ambient - product
    if slack.is_zero():
        minimal = True
    else:
        val = slack.to_complex().real
        if val < 1e-9:
            raise MtkError("extension dimension bound violated or ambiguous")
        minimal = False
    return {
        "dim_ambient": dim_ambient,
        "dim_sub": dim_sub,
        "dim_center": dim_center,
        "center_labels": [sub.ring.labels[i] for i in center],
        "product": product,
        "minimal": minimal,
        "slack": slack,
    }
