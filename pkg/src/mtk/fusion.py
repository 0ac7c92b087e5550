"""Fusion rings: labels, duals, fusion coefficients, dimension theory.

The unit object is always stored at index 0, so normalizations that
divide by row 0 stay index-stable.  Fusion coefficients are kept
sparse as {(i, j, k): N}; dense numpy views are built on demand for
the brute-force axiom checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import MtkError, ValidationError


@dataclass(frozen=True)
class FusionRing:
    rank: int
    labels: tuple[str, ...]
    dual: tuple[int, ...]
    fusion: dict[tuple[int, int, int], int] = field(compare=False)

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError("rank must be at least 1")
        if len(self.labels) != self.rank or len(self.dual) != self.rank:
            raise ValidationError("labels and dual must have one entry per simple object")
        clean = {k: int(v) for k, v in self.fusion.items() if v}
        object.__setattr__(self, "fusion", clean)

    def n(self, i: int, j: int, k: int) -> int:
        return self.fusion.get((i, j, k), 0)

    def tensor(self) -> np.ndarray:
        t = np.zeros((self.rank, self.rank, self.rank), dtype=np.int64)
        for (i, j, k), v in self.fusion.items():
            t[i, j, k] = v
        return t

    def fusion_matrix(self, i: int) -> np.ndarray:
        m = np.zeros((self.rank, self.rank), dtype=np.int64)
        for (a, j, k), v in self.fusion.items():
            if a == i:
                m[j, k] = v
        return m

    def products(self, i: int, j: int) -> list[int]:
        return [k for k in range(self.rank) if self.n(i, j, k)]


def fusion_ring(labels, dual, fusion) -> FusionRing:
    """Build and fully validate a fusion ring."""
    ring = FusionRing(len(list(labels)), tuple(str(s) for s in labels), tuple(dual), dict(fusion))
    report = validate_fusion_ring(ring)
    if report:
        raise ValidationError("fusion ring axioms violated", tuple(report))
    return ring


def group_fusion_ring(order: int, add, labels=None, neg=None) -> FusionRing:
    """Pointed fusion ring of a finite abelian group given by an addition
    function on indices 0..order-1."""
    neg = neg or (lambda a: next(b for b in range(order) if add(a, b) == 0))
    fusion = {(i, j, add(i, j)): 1 for i in range(order) for j in range(order)}
    labels = labels or [str(i) for i in range(order)]
    return fusion_ring(labels, [neg(i) for i in range(order)], fusion)


def validate_fusion_ring(ring: FusionRing) -> list[str]:
    """Check every fusion-ring axiom; one entry per violation with a
    witness, empty when the ring is valid."""
    r = ring.rank
    out: list[str] = []
    t = ring.tensor()
    if (t < 0).any():
        i, j, k = np.argwhere(t < 0)[0]
        out.append(f"negative fusion coefficient at ({i},{j},{k})")
    eye = np.eye(r, dtype=np.int64)
    if not np.array_equal(t[0], eye):
        out.append("unit law fails on the left: N_0j^k != delta_jk")
    if not np.array_equal(t[:, 0, :], eye):
        out.append("unit law fails on the right: N_i0^k != delta_ik")
    d = ring.dual
    if sorted(d) != list(range(r)):
        out.append("dual is not a permutation")
        return out
    if d[0] != 0:
        out.append("dual(0) != 0")
    if any(d[d[i]] != i for i in range(r)):
        i = next(i for i in range(r) if d[d[i]] != i)
        out.append(f"dual is not an involution at {i}")
    conj = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        conj[i, d[i]] = 1
    if not np.array_equal(t[:, :, 0], conj):
        bad = np.argwhere(t[:, :, 0] != conj)[0]
        out.append(f"conjugate law fails: N_ij^0 != delta(j, dual(i)) at ({bad[0]},{bad[1]})")
    lhs = np.einsum("ijm,mkl->ijkl", t, t)
    rhs = np.einsum("jkm,iml->ijkl", t, t)
    if not np.array_equal(lhs, rhs):
        w = np.argwhere(lhs != rhs)[0]
        out.append(f"associativity fails at (i,j,k,l)=({w[0]},{w[1]},{w[2]},{w[3]})")
    contra = t[np.ix_(d, d, d)].transpose(1, 0, 2)
    if not np.array_equal(t, contra):
        w = np.argwhere(t != contra)[0]
        out.append(f"contragredient symmetry fails at ({w[0]},{w[1]},{w[2]})")
    return out


@dataclass
class DimensionVector:
    dims: list[float]
    exact_flags: list[bool]


def perron_frobenius_dims(ring: FusionRing, tol: float = 1e-12, max_iter: int = 100_000) -> DimensionVector:
    """Largest eigenvalue of each fusion matrix by power iteration.

    Iterates on N_i + 1 so that periodic matrices (pointed categories)
    converge too; the shift is subtracted from the estimate.
    """
    dims = []
    for i in range(ring.rank):
        m = ring.fusion_matrix(i).astype(float) + np.eye(ring.rank)
        v = np.ones(ring.rank) / math.sqrt(ring.rank)
        prev = 0.0
        for _ in range(max_iter):
            w = m @ v
            lam = float(v @ w)
            v = w / np.linalg.norm(w)
            if abs(lam - prev) <= tol * max(1.0, abs(lam)):
                break
            prev = lam
        else:
            raise MtkError(f"power iteration did not converge for label {i}")
        dims.append(lam - 1.0)
    vec = DimensionVector(dims, [False] * ring.rank)
    t = ring.tensor()
    for i in range(ring.rank):
        for j in range(ring.rank):
            lhs = dims[i] * dims[j]
            rhs = float(t[i, j] @ np.asarray(dims))
            if abs(lhs - rhs) >= 1e-8:
                raise MtkError(
                    f"dimension multiplicativity off at ({i},{j}): {lhs} vs {rhs}"
                )
    return vec


def global_dimension(d: DimensionVector) -> float:
    return float(sum(x * x for x in d.dims))


def check_dimension_quantization(d: DimensionVector, n_max: int = 10_000) -> list[dict]:
    """For sub-2 dimensions, locate the nearest 2cos(pi/n) and flag
    entries with no admissible n within 1e-6."""
    out = []
    for i, x in enumerate(d.dims):
        if x >= 2.0:
            continue
        best_n, best_delta = None, float("inf")
        guess = math.pi / math.acos(min(max(x / 2.0, -1.0), 1.0)) if x < 2.0 else None
        candidates = set()
        if guess and guess > 0:
            for c in (math.floor(guess) - 1, math.floor(guess), math.ceil(guess), math.ceil(guess) + 1):
                if 3 <= c <= n_max:
                    candidates.add(c)
        candidates.add(3)
        for n in sorted(candidates):
            delta = abs(x - 2.0 * math.cos(math.pi / n))
            if delta < best_delta:
                best_n, best_delta = n, delta
        out.append(
            {
                "index": i,
                "value": x,
                "nearest_n": best_n,
                "delta": best_delta,
                "flagged": best_delta >= 1e-6,
            }
        )
    return out


def resolve_labels(ring: FusionRing, items) -> list[int]:
    """Map a mixed list of label strings and integer indices to indices."""
    out = []
    for it in items:
        if isinstance(it, int) and not isinstance(it, bool):
            if not 0 <= it < ring.rank:
                raise ValidationError(f"label index {it} out of range")
            out.append(it)
            continue
        name = str(it)
        if name in ring.labels:
            out.append(ring.labels.index(name))
        elif name.isdigit() and int(name) < ring.rank:
            out.append(int(name))
        else:
            raise ValidationError(f"unknown label {name!r}")
    return out


def fusion_subring_closure(ring: FusionRing, seed) -> list[int]:
    """Smallest label set containing the unit and the seed, closed under
    duals and fusion products."""
    current = {0} | set(seed)
    while True:
        new = set(current)
        for i in current:
            new.add(ring.dual[i])
        for i in current:
            for j in current:
                new.update(ring.products(i, j))
        if new == current:
            return sorted(current)
        current = new
