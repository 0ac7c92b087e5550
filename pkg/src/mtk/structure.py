"""Products, subcategory lattices, commutants, and prime factorization.

The enumeration of fusion subcategories is exhaustive (join-closure of
the single-generator subcategories), which is what makes the
double-commutant report and the factorization search sound at desk
rank; the rank bound keeps the lattice walk honest about its cost.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import MtkError, ValidationError
from .fusion import fusion_ring, fusion_subring_closure
from .limits import max_rank
from .premodular import (
    PreModularData,
    global_dimension_exact,
    is_modular,
    premodular,
    relative_commutant,
    restrict,
)


def deligne_product(a: PreModularData, b: PreModularData) -> PreModularData:
    """Product datum on pairs of labels: fusion numbers, dimensions,
    twists, and S-matrix entries all multiply."""
    ra, rb = a.rank, b.rank
    labels = [
        f"({a.label(i)},{b.label(j)})" for i in range(ra) for j in range(rb)
    ]
    fusion = {}
    for (i1, j1, k1), v1 in a.ring.fusion.items():
        for (i2, j2, k2), v2 in b.ring.fusion.items():
            fusion[(i1 * rb + i2, j1 * rb + j2, k1 * rb + k2)] = v1 * v2
    dual = [
        a.ring.dual[i] * rb + b.ring.dual[j] for i in range(ra) for j in range(rb)
    ]
    ring = fusion_ring(labels, dual, fusion)
    twist = [a.twist[i] * b.twist[j] for i in range(ra) for j in range(rb)]
    sprime = [
        [
            a.sprime[i1][j1] * b.sprime[i2][j2]
            for j1 in range(ra)
            for j2 in range(rb)
        ]
        for i1 in range(ra)
        for i2 in range(rb)
    ]
    out = premodular(ring, twist, sprime)
    if is_modular(out)[0] != (is_modular(a)[0] and is_modular(b)[0]):
        raise MtkError("product modularity disagrees with the factors")
    return out


def enumerate_fusion_subcategories(data: PreModularData, seeds=None) -> list[list[int]]:
    """All fusion-closed label sets containing the unit, as the
    join-closure of the single-generator subcategories.  Data above the
    configured rank bound is rejected unless explicit seeds are given.
    """
    ring = data.ring
    if seeds is None:
        if data.rank > max_rank():
            raise ValidationError(
                f"rank {data.rank} exceeds the enumeration bound {max_rank()};"
                " pass explicit seed label sets"
            )
        found = {tuple(fusion_subring_closure(ring, [i])) for i in range(data.rank)}
        found.add((0,))
    else:
        found = {tuple(fusion_subring_closure(ring, s)) for s in seeds}
        found.add((0,))
    while True:
        new = set(found)
        pairs = sorted(found)
        for x in pairs:
            for y in pairs:
                if x is y:
                    continue
                joined = tuple(fusion_subring_closure(ring, sorted(set(x) | set(y))))
                new.add(joined)
        if new == found:
            break
        found = new
    return [list(s) for s in sorted(found, key=lambda s: (len(s), s))]


def double_commutant_report(data: PreModularData) -> dict:
    """For every enumerated subcategory K of a modular datum: check
    K'' = K and dim K * dim K' = dim, exactly."""
    ok, cert = is_modular(data)
    if not ok:
        raise MtkError("double-commutant report requires modular input")
    dim = global_dimension_exact(data)
    dims = data.dims()
    entries = []
    witnesses = []
    for sub in enumerate_fusion_subcategories(data):
        comm = relative_commutant(data, sub)
        bicomm = relative_commutant(data, comm)
        dim_k = sum_of_squares(dims, sub)
        dim_kp = sum_of_squares(dims, comm)
        holds_bicomm = bicomm == sub
        holds_dim = dim_k * dim_kp == dim
        entries.append(
            {
                "labels": [data.label(i) for i in sub],
                "commutant": [data.label(i) for i in comm],
                "bicommutant": [data.label(i) for i in bicomm],
                "dim_k": dim_k,
                "dim_k_prime": dim_kp,
                "bicommutant_equals": holds_bicomm,
                "dimension_identity": holds_dim,
            }
        )
        if not (holds_bicomm and holds_dim):
            witnesses.append(entries[-1])
    return {
        "dim": dim,
        "entries": entries,
        "all_hold": not witnesses,
        "witnesses": witnesses,
    }


def sum_of_squares(dims, labels):
    from .cyclo import CycloNum

    acc = CycloNum.zero()
    for i in labels:
        acc = acc + dims[i] * dims[i]
    return acc


@dataclass
class FactorizationReport:
    factors: list
    pairing: dict
    verified: bool


def factorize(data: PreModularData) -> FactorizationReport:
    """Split a modular datum into prime factors.

    Finds the smallest proper modular subcategory, takes its commutant
    as the complementary factor, verifies the label pairing
    multiplicatively on dimensions, twists, fusion numbers, and the
    S-matrix, then recurses on both factors.
    """
    ok, _ = is_modular(data)
    if not ok:
        raise MtkError("factorization requires modular input")
    split = _find_modular_split(data)
    if split is None:
        return FactorizationReport(
            factors=[data],
            pairing={data.label(i): (data.label(i),) for i in range(data.rank)},
            verified=True,
        )
    sub_k, sub_l = split
    left = restrict(data, sub_k)
    right = restrict(data, sub_l)
    pairing = _verify_pairing(data, sub_k, sub_l)
    rep_l = factorize(left)
    rep_r = factorize(right)
    factors = rep_l.factors + rep_r.factors
    full_pairing = {}
    for lab, (la, lx) in pairing.items():
        full_pairing[lab] = rep_l.pairing[la] + rep_r.pairing[lx]
    return FactorizationReport(factors=factors, pairing=full_pairing, verified=True)


def _find_modular_split(data: PreModularData):
    for sub in enumerate_fusion_subcategories(data):
        if len(sub) in (1, data.rank):
            continue
        try:
            restricted = restrict(data, sub)
        except ValidationError:
            continue
        if not is_modular(restricted)[0]:
            continue
        comm = relative_commutant(data, sub)
        if not is_modular(restrict(data, comm))[0]:
            raise MtkError(
                f"commutant of modular subcategory {sub} is not modular"
            )
        return sub, comm
    return None


def _verify_pairing(data: PreModularData, sub_k, sub_l) -> dict:
    """Match each label to its unique factor pair and check that every
    piece of structure multiplies."""
    ring = data.ring
    dims = data.dims()
    pair_of = {}
    for i in range(data.rank):
        hits = [
            (a, x)
            for a in sub_k
            for x in sub_l
            if ring.fusion.get((a, x, i), 0)
        ]
        if len(hits) != 1 or ring.fusion[(hits[0][0], hits[0][1], i)] != 1:
            raise MtkError(
                f"label {data.label(i)} does not pair uniquely across the split"
            )
        pair_of[i] = hits[0]
    if len({v for v in pair_of.values()}) != data.rank:
        raise MtkError("pairing across the split is not a bijection")
    for i in range(data.rank):
        a, x = pair_of[i]
        if dims[i] != dims[a] * dims[x]:
            raise MtkError(f"dimension fails to multiply at {data.label(i)}")
        if data.twist[i] != data.twist[a] * data.twist[x]:
            raise MtkError(f"twist fails to multiply at {data.label(i)}")
    for i in range(data.rank):
        a1, x1 = pair_of[i]
        for j in range(data.rank):
            a2, x2 = pair_of[j]
            if data.sprime[i][j] != data.sprime[a1][a2] * data.sprime[x1][x2]:
                raise MtkError(
                    f"S' fails to multiply at ({data.label(i)},{data.label(j)})"
                )
            for k in range(data.rank):
                a3, x3 = pair_of[k]
                n = ring.fusion.get((i, j, k), 0)
                n_split = ring.fusion.get((a1, a2, a3), 0) * ring.fusion.get(
                    (x1, x2, x3), 0
                )
                if n != n_split:
                    raise MtkError(
                        "fusion number fails to multiply at"
                        f" ({data.label(i)},{data.label(j)},{data.label(k)})"
                    )
    return {
        data.label(i): (data.label(a), data.label(x))
        for i, (a, x) in pair_of.items()
    }