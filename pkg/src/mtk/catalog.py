"""Built-in reference data.

Every entry is rebuilt on each request and passes the full premodular
validation suite on the way out, so callers always receive a verified
copy.  Fixed entries are listed in ENTRIES; the parametric family
``zn_anyons:n:p`` (pointed data on Z/n with quadratic twists) is
resolved at lookup time.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cyclo import CycloNum, RootOfUnity, zeta
from .doubles import rep_category, untwisted_double
from .errors import ValidationError
from .fusion import fusion_ring, group_fusion_ring
from .groups import cyclic_group, symmetric_group_3
from .premodular import PreModularData, premodular, premodular_from_balancing


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    note: str
    build: Callable[[], PreModularData]
    modular: bool
    symmetric: bool


def trivial_category() -> PreModularData:
    ring = group_fusion_ring(1, lambda a, b: 0, labels=["1"])
    return premodular(ring, [RootOfUnity.one()], [[CycloNum.one()]])


def zn_anyons(n: int, p: int) -> PreModularData:
    """Pointed datum on Z/n with twist the quadratic form p*a^2 (in
    halves when n is even); braiding follows from the balancing
    identity."""
    if n < 1:
        raise ValidationError("zn_anyons needs a positive cyclic order")
    ring = group_fusion_ring(n, lambda a, b: (a + b) % n)
    if n % 2 == 1:
        twist = [RootOfUnity(p * a * a, n) for a in range(n)]
        sprime = [[zeta(n, -2 * p * a * b) for b in range(n)] for a in range(n)]
    else:
        twist = [RootOfUnity(p * a * a, 2 * n) for a in range(n)]
        sprime = [[zeta(n, -p * a * b) for b in range(n)] for a in range(n)]
    return premodular(ring, twist, sprime)


def ising_category() -> PreModularData:
    root2 = zeta(8) + zeta(8, -1)
    return premodular_from_balancing(
        labels=["1", "psi", "sigma"],
        dual=[0, 1, 2],
        fusion={
            (0, 0, 0): 1, (0, 1, 1): 1, (0, 2, 2): 1,
            (1, 0, 1): 1, (1, 1, 0): 1, (1, 2, 2): 1,
            (2, 0, 2): 1, (2, 1, 2): 1, (2, 2, 0): 1, (2, 2, 1): 1,
        },
        twist=[RootOfUnity.one(), RootOfUnity(1, 2), RootOfUnity(1, 16)],
        exact_dims=[CycloNum.one(), CycloNum.one(), root2],
    )


def fib_category() -> PreModularData:
    phi = -(zeta(5, 2) + zeta(5, 3))
    one = CycloNum.one()
    ring = fusion_ring(
        ["1", "tau"],
        [0, 1],
        {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1, (1, 1, 1): 1},
    )
    sprime = [[one, phi], [phi, -one]]
    twist = [RootOfUnity.one(), RootOfUnity(2, 5)]
    return premodular(ring, twist, sprime)


def su2_level(k: int) -> PreModularData:
    """Level-k truncated spin data: rank k+1, S-matrix of sine ratios
    written exactly in the 2(k+2)-th cyclotomic field."""
    if not 1 <= k <= 4:
        raise ValidationError("levels 1 through 4 are built in")
    m = k + 2
    labels = [str(a) for a in range(k + 1)]
    fusion = {}
    for a in range(k + 1):
        for b in range(k + 1):
            for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2):
                fusion[(a, b, c)] = 1
    ring = fusion_ring(labels, list(range(k + 1)), fusion)

    def sine(j: int) -> CycloNum:
        return zeta(2 * m, j) - zeta(2 * m, -j)

    unit = sine(1)
    sprime = [
        [sine((a + 1) * (b + 1)) / unit for b in range(k + 1)]
        for a in range(k + 1)
    ]
    twist = [RootOfUnity(a * (a + 2), 4 * m) for a in range(k + 1)]
    return premodular(ring, twist, sprime)


ENTRIES: tuple[CatalogEntry, ...] = (
    CatalogEntry("trivial", "rank-1 unit datum", trivial_category, True, True),
    CatalogEntry("semion", "Z/2 pointed, twist i on the generator",
                 lambda: zn_anyons(2, 1), True, False),
    CatalogEntry("ising", "rank 3, d = (1,1,sqrt2), sigma twist a 16th root",
                 ising_category, True, False),
    CatalogEntry("fib", "rank 2 with golden-ratio dimension",
                 fib_category, True, False),
    CatalogEntry("su2_1", "level 1 spin data (semion-type)",
                 lambda: su2_level(1), True, False),
    CatalogEntry("su2_2", "level 2 spin data (ising-type fusion)",
                 lambda: su2_level(2), True, False),
    CatalogEntry("su2_3", "level 3 spin data (fib x semion type)",
                 lambda: su2_level(3), True, False),
    CatalogEntry("su2_4", "level 4 spin data; current group {0,4}",
                 lambda: su2_level(4), True, False),
    CatalogEntry("zn_anyons:3:1", "Z/3 pointed anyons",
                 lambda: zn_anyons(3, 1), True, False),
    CatalogEntry("zn_anyons:4:1", "Z/4 pointed anyons",
                 lambda: zn_anyons(4, 1), True, False),
    CatalogEntry("toric", "double of Z/2",
                 lambda: untwisted_double(cyclic_group(2)), True, False),
    CatalogEntry("d_s3", "double of the symmetric group on 3 letters",
                 lambda: untwisted_double(symmetric_group_3()), True, False),
    CatalogEntry("rep_z2", "representations of Z/2 (symmetric)",
                 lambda: rep_category(cyclic_group(2)), False, True),
    CatalogEntry("rep_s3", "representations of S3 (symmetric)",
                 lambda: rep_category(symmetric_group_3()), False, True),
)

MODULAR_NAMES = tuple(e.name for e in ENTRIES if e.modular)
SYMMETRIC_NAMES = tuple(e.name for e in ENTRIES if e.symmetric)
ALL_NAMES = tuple(e.name for e in ENTRIES)


def catalog_list() -> list[CatalogEntry]:
    return list(ENTRIES)


def catalog_get(name: str) -> PreModularData:
    for entry in ENTRIES:
        if entry.name == name:
            return entry.build()
    if name.startswith("zn_anyons:"):
        parts = name.split(":")
        if len(parts) == 3 and parts[1].isdigit() and parts[2].lstrip("-").isdigit():
            return zn_anyons(int(parts[1]), int(parts[2]))
        raise ValidationError(
            f"malformed parametric name {name!r}; expected zn_anyons:n:p"
        )
    raise ValidationError(
        f"unknown catalog name {name!r}; available: "
        + ", ".join(ALL_NAMES)
        + ", zn_anyons:n:p"
    )
