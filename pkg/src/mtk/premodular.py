"""Premodular and modular data: twists, statistics characters, and the
exact verification machinery built on them.

All assertions here are exact cyclotomic identities.  Square roots
enter only in normalized_ST; every other check is arranged around the
unnormalized matrix S' (row 0 of which carries the exact dimensions),
so no tolerance policy is needed anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclo import CycloNum, RootOfUnity, csum, normalize_order
from .errors import ConstructionError, MtkError, SqrtNotRepresentableError, ValidationError
from .fusion import FusionRing, fusion_ring, fusion_subring_closure, perron_frobenius_dims, validate_fusion_ring
from .linalg import (
    Matrix,
    conjugate_transpose,
    determinant,
    identity,
    mat_equal,
    mat_mul,
    mat_scale,
    scalar_matrix,
)
from .sqrt import cyclo_sqrt


@dataclass
class PreModularData:
    ring: FusionRing
    twist: tuple[RootOfUnity, ...]
    sprime: list[list[CycloNum]]
    cyclotomic_order: int

    @property
    def rank(self) -> int:
        return self.ring.rank

    def dims(self) -> list[CycloNum]:
        """Exact quantum dimensions, read off row 0 of S'."""
        return list(self.sprime[0])

    def dims_float(self) -> list[float]:
        return [x.to_complex().real for x in self.sprime[0]]

    def label(self, i: int) -> str:
        return self.ring.labels[i]


def common_cyclotomic_order(sprime: Matrix, twist) -> int:
    n = 1
    for row in sprime:
        for x in row:
            n = lcm(n, x.order)
    for w in twist:
        n = lcm(n, normalize_order(w.den))
    return normalize_order(n)


def premodular(ring: FusionRing, twist, sprime: Matrix, validate: bool = True) -> PreModularData:
    data = PreModularData(
        ring=ring,
        twist=tuple(twist),
        sprime=[list(row) for row in sprime],
        cyclotomic_order=common_cyclotomic_order(sprime, twist),
    )
    if validate:
        report = validate_premodular(data)
        if report:
            raise ValidationError("premodular invariants violated", tuple(report))
    return data


def premodular_from_balancing(labels, dual, fusion, twist, exact_dims, validate: bool = True) -> PreModularData:
    """Construct S' from fusion, twists, and exact dimensions via the
    balancing identity S'_ij = w_i^-1 w_j^-1 sum_k N_{dual(i) j}^k w_k d_k."""
    ring = fusion_ring(labels, dual, fusion)
    twist = tuple(twist)
    dims = list(exact_dims)
    r = ring.rank
    tw = [w.to_cyclo() for w in twist]
    sprime = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = CycloNum.zero()
            for k in range(r):
                n = ring.n(ring.dual[i], j, k)
                if n:
                    acc = acc + n * tw[k] * dims[k]
            row.append(acc / (tw[i] * tw[j]))
        sprime.append(row)
    return premodular(ring, twist, sprime, validate=validate)


def validate_premodular(data: PreModularData) -> list[str]:
    """One entry per violated invariant, with a witness; empty means valid."""
    out = validate_fusion_ring(data.ring)
    ring, tw, sp = data.ring, data.twist, data.sprime
    r = ring.rank
    if len(sp) != r or any(len(row) != r for row in sp):
        out.append("sprime is not rank x rank")
        return out
    if len(tw) != r:
        out.append("twist vector has wrong length")
        return out
    for i in range(r):
        for j in range(i + 1, r):
            if sp[i][j] != sp[j][i]:
                out.append(f"sprime not symmetric at ({i},{j})")
    if sp[0][0] != 1:
        out.append("S'_00 != 1")
    dims = sp[0]
    for i in range(r):
        if not dims[i].is_real():
            out.append(f"S'_0{i} is not real")
        elif dims[i].to_complex().real <= 0:
            out.append(f"S'_0{i} is not positive")
    try:
        pf = perron_frobenius_dims(ring)
        for i in range(r):
            if abs(dims[i].to_complex().real - pf.dims[i]) > 1e-8:
                out.append(
                    f"exact dimension {dims[i].to_complex().real} deviates from "
                    f"Perron-Frobenius value {pf.dims[i]} at {i}"
                )
    except MtkError as exc:
        out.append(f"Perron-Frobenius cross-check failed: {exc}")
    d = ring.dual
    for i in range(r):
        for j in range(r):
            if sp[d[i]][j] != sp[i][j].conjugate():
                out.append(f"S'_dual(i) j != conj(S'_ij) at ({i},{j})")
                break
    if tw[0] != RootOfUnity(0, 1):
        out.append("twist of the unit is not 1")
    for i in range(r):
        if tw[d[i]] != tw[i]:
            out.append(f"twist not dual-invariant at {i}")
    twc = [w.to_cyclo() for w in tw]
    for i in range(r):
        for j in range(r):
            acc = CycloNum.zero()
            for k in range(r):
                n = ring.n(d[i], j, k)
                if n:
                    acc = acc + n * twc[k] * dims[k]
            if sp[i][j] * twc[i] * twc[j] != acc:
                out.append(f"balancing identity fails at ({i},{j})")
    return out


# -- Gauss sums and centers -----------------------------------------------


def gauss_sums(data: PreModularData) -> tuple[CycloNum, CycloNum]:
    """(Gauss sum, global dimension): sum d_i^2 w_i^-1 and sum d_i^2."""
    dims = data.dims()
    delta = csum(dims[i] * dims[i] * data.twist[i].inverse().to_cyclo() for i in range(data.rank))
    dim = csum(dims[i] * dims[i] for i in range(data.rank))
    return delta, dim


def global_dimension_exact(data: PreModularData) -> CycloNum:
    return gauss_sums(data)[1]


def transparent_objects(data: PreModularData) -> list[int]:
    """Labels with trivial monodromy against everything: S'_ij = d_i d_j
    for all j.  This set is the center of the braided datum."""
    dims = data.dims()
    out = []
    for i in range(data.rank):
        if all(data.sprime[i][j] == dims[i] * dims[j] for j in range(data.rank)):
            out.append(i)
    return out


def relative_commutant(data: PreModularData, sub: list[int]) -> list[int]:
    """Labels transparent to every member of the fusion-closed set sub."""
    sub = sorted(set(sub))
    if fusion_subring_closure(data.ring, sub) != sub:
        raise ValidationError(f"label set {sub} is not fusion-closed")
    dims = data.dims()
    out = [
        i
        for i in range(data.rank)
        if all(data.sprime[i][j] == dims[i] * dims[j] for j in sub)
    ]
    if fusion_subring_closure(data.ring, out) != out:
        raise MtkError(f"relative commutant {out} is not fusion-closed; data inconsistent")
    return out


def is_modular(data: PreModularData) -> tuple[bool, dict]:
    """Evaluate all three equivalent modularity criteria exactly and
    check that they agree: S' invertible, trivial center, |Gauss|^2 = dim."""
    det = determinant(data.sprime)
    invertible = not det.is_zero()
    center = transparent_objects(data)
    trivial_center = center == [0]
    delta, dim = gauss_sums(data)
    gauss_ok = delta * delta.conjugate() == dim
    verdicts = (invertible, trivial_center, gauss_ok)
    if len(set(verdicts)) != 1:
        raise MtkError(
            "modularity criteria disagree: "
            f"invertible={invertible}, trivial_center={trivial_center}, gauss={gauss_ok}"
        )
    certificate = {
        "sprime_invertible": invertible,
        "determinant": det,
        "trivial_center": trivial_center,
        "center": center,
        "gauss_criterion": gauss_ok,
        "gauss_sum": delta,
        "dim": dim,
    }
    return invertible, certificate


# -- Normalized S, T and the modular group ---------------------------------


@dataclass
class ModularData:
    base: PreModularData
    s: Matrix
    t: Matrix
    charge_conj: Matrix
    cube_root: RootOfUnity

    @property
    def rank(self) -> int:
        return self.base.rank


def charge_conjugation(ring: FusionRing) -> Matrix:
    one, zero = CycloNum.one(), CycloNum.zero()
    return [[one if j == ring.dual[i] else zero for j in range(ring.rank)] for i in range(ring.rank)]


def normalized_ST(data: PreModularData) -> ModularData:
    """Normalized modular pair: S = S'/sqrt(dim), T = t * Diag(w).

    The scalar t is a cube root of Delta/sqrt(dim).  Replacing t by a
    different cube root rescales (ST)^3 by t^3, leaving it unchanged,
    so every cube root satisfies the presentation; the smallest-angle
    root is chosen to make the output deterministic, and the relations
    are still verified exactly before returning.
    """
    ok, _ = is_modular(data)
    if not ok:
        raise ValidationError("normalized S and T require modular data")
    delta, dim = gauss_sums(data)
    try:
        sqrt_dim = cyclo_sqrt(dim)
    except SqrtNotRepresentableError as exc:
        raise SqrtNotRepresentableError(
            f"square root of the global dimension {dim!r} not found in the "
            f"bounded field enlargement; {exc}"
        ) from exc
    s = mat_scale(data.sprime, sqrt_dim.inverse())
    u = (delta / sqrt_dim).as_root_of_unity()
    if u is None:
        raise ConstructionError("Delta/sqrt(dim) is not a root of unity; data inconsistent")
    candidates = sorted(
        (RootOfUnity(u.num + j * u.den, 3 * u.den) for j in range(3)),
        key=lambda r: (r.den, r.num),
    )
    c = charge_conjugation(data.ring)
    s2 = mat_mul(s, s)
    if not mat_equal(s2, c):
        raise ConstructionError("S^2 != C for modular input; data inconsistent")
    for t_scalar in candidates:
        tc = t_scalar.to_cyclo()
        t = scalar_matrix(data.rank, CycloNum.zero())
        for i in range(data.rank):
            t[i][i] = tc * data.twist[i].to_cyclo()
        st = mat_mul(s, t)
        st3 = mat_mul(mat_mul(st, st), st)
        if mat_equal(st3, c):
            m = ModularData(base=data, s=s, t=t, charge_conj=c, cube_root=t_scalar)
            report = sl2z_representation(m)[2]
            if not all(report.values()):
                raise MtkError(f"modular relations failed after construction: {report}")
            return m
    raise ConstructionError("no cube root of Delta/|Delta| satisfies (ST)^3 = S^2")


def sl2z_representation(m: ModularData) -> tuple[Matrix, Matrix, dict]:
    """Exact check of the modular-group presentation on (S, T)."""
    s, t, c = m.s, m.t, m.charge_conj
    n = m.rank
    s2 = mat_mul(s, s)
    st = mat_mul(s, t)
    st3 = mat_mul(mat_mul(st, st), st)
    report = {
        "s_unitary": mat_equal(mat_mul(s, conjugate_transpose(s)), identity(n)),
        "t_unitary_diagonal": all(
            (t[i][j].is_zero() if i != j else t[i][i] * t[i][i].conjugate() == 1)
            for i in range(n)
            for j in range(n)
        ),
        "s2_equals_st3": mat_equal(s2, st3),
        "s2_equals_c": mat_equal(s2, c),
        "s4_identity": mat_equal(mat_mul(s2, s2), identity(n)),
        "tc_equals_ct": mat_equal(mat_mul(t, c), mat_mul(c, t)),
        "c2_identity": mat_equal(mat_mul(c, c), identity(n)),
    }
    return s, t, report


# -- Verlinde fusion ---------------------------------------------------------


def fusion_tensor_from_sprime(sprime: Matrix) -> dict[tuple[int, int, int], int]:
    """Fusion coefficients from an invertible S' via the Verlinde
    relation, using the unnormalized form
    N_ij^k = (1/dim) sum_m S'_im S'_jm conj(S'_km) / S'_0m,
    which avoids square roots.  Every entry is asserted to be a
    nonnegative integer."""
    r = len(sprime)
    dims = sprime[0]
    dim = csum(d * d for d in dims)
    inv0 = [dims[m].inverse() for m in range(r)]
    conj_rows = [[x.conjugate() for x in row] for row in sprime]
    fusion: dict[tuple[int, int, int], int] = {}
    for i in range(r):
        for j in range(r):
            prod = [sprime[i][m] * sprime[j][m] * inv0[m] for m in range(r)]
            for k in range(r):
                acc = csum(prod[m] * conj_rows[k][m] for m in range(r)) / dim
                q = acc.as_rational()
                if q is None or q.denominator != 1 or q < 0:
                    raise ConstructionError(
                        f"Verlinde number at ({i},{j},{k}) is not a nonnegative "
                        f"integer: {acc!r}"
                    )
                if q:
                    fusion[(i, j, k)] = int(q)
    return fusion


def verlinde_fusion(m: ModularData) -> dict[tuple[int, int, int], int]:
    """Verlinde tensor from S, asserted equal to the stored fusion."""
    fusion = fusion_tensor_from_sprime(m.base.sprime)
    if fusion != m.base.ring.fusion:
        diff = set(fusion.items()) ^ set(m.base.ring.fusion.items())
        raise MtkError(f"Verlinde tensor deviates from stored fusion at {sorted(diff)[:3]}")
    return fusion


def dual_from_fusion(fusion: dict[tuple[int, int, int], int], rank: int) -> list[int]:
    dual = [-1] * rank
    for i in range(rank):
        hits = [j for j in range(rank) if fusion.get((i, j, 0), 0)]
        if len(hits) != 1 or fusion.get((i, hits[0], 0)) != 1:
            raise ConstructionError(f"label {i} has no unique conjugate")
        dual[i] = hits[0]
    return dual


# -- Restriction -------------------------------------------------------------


def restrict(data: PreModularData, sub: list[int], validate: bool = True) -> PreModularData:
    """Full premodular subdatum on a fusion-closed label set."""
    sub = sorted(set(sub))
    if 0 not in sub:
        raise ValidationError("restriction must contain the unit")
    if fusion_subring_closure(data.ring, sub) != sub:
        raise ValidationError(f"label set {sub} is not fusion-closed")
    pos = {lab: t for t, lab in enumerate(sub)}
    ring = data.ring
    fusion = {
        (pos[i], pos[j], pos[k]): v
        for (i, j, k), v in ring.fusion.items()
        if i in pos and j in pos and k in pos
    }
    new_ring = fusion_ring(
        [ring.labels[i] for i in sub],
        [pos[ring.dual[i]] for i in sub],
        fusion,
    )
    sprime = [[data.sprime[i][j] for j in sub] for i in sub]
    twist = tuple(data.twist[i] for i in sub)
    return premodular(new_ring, twist, sprime, validate=validate)
