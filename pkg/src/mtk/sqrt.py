"""Exact square roots inside cyclotomic fields.

Given an exact value d, search for x with x*x = d in Q(zeta_M) where M
runs over k*n for k in {1, 2, 3, 4, 6, 8, 12, 24} and n is the field
order of d.  Within each field the search is a Galois descent: if x
exists then every automorphism fixing d multiplies x by a sign, so x
is a fixed-field element times an explicit character resolvent.  Each
branch strictly enlarges the subgroup known to fix the answer, so the
recursion terminates, and every returned value is verified by squaring.

The base case (no sign character left to split off) is solved in
closed form when the remaining fixed field has degree 1 or 2 over the
rationals.  Higher-degree base fields are reported as not
representable; none of the shipped constructions reach that case.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, isqrt

from .cyclo import CycloNum, normalize_order, zeta
from .errors import SqrtNotRepresentableError
from .limits import max_cyclo_order

ORDER_MULTIPLIERS = (1, 2, 3, 4, 6, 8, 12, 24)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact nonnegative square root of a rational, or None."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _units(m: int) -> tuple[int, ...]:
    return tuple(a for a in range(1, m) if gcd(a, m) == 1)


def _subgroup_quadratic_characters(h_elems: tuple[int, ...], m: int) -> list[dict[int, int]]:
    """All homomorphisms H -> {+1, -1} for H a subgroup of (Z/m)^*.

    Returned in a deterministic order with the trivial character first.
    """
    squares = sorted({(a * a) % m for a in h_elems})
    span = set(squares)
    basis: list[int] = []
    for h in sorted(h_elems):
        if h not in span:
            basis.append(h)
            span |= {(s * h) % m for s in span}
    chars: list[dict[int, int]] = []
    for signs in itertools.product((1, -1), repeat=len(basis)):
        char = {s: 1 for s in squares}
        for b, eps in zip(basis, signs):
            for x, v in list(char.items()):
                char[(x * b) % m] = v * eps
        chars.append(char)
    return chars


def _resolvent(char: dict[int, int], m: int) -> CycloNum | None:
    """First nonzero sum_{a in H} char(a) * zeta_m^(k*a) over k >= 1."""
    for k in range(1, m):
        total = CycloNum.zero()
        for a, eps in char.items():
            term = zeta(m, k * a)
            total = total + (term if eps == 1 else -term)
        if not total.is_zero():
            return total
    return None


def _sqrt_in_degree_two_field(d: CycloNum, conj: CycloNum) -> CycloNum | None:
    """Square root of d inside the quadratic field it generates.

    conj is the image of d under the nontrivial automorphism of that
    field.  Uses trace and norm: a root x satisfies x^2 - tr(x) x +
    nm(x) = 0 with nm(x)^2 = nm(d) and tr(x)^2 = tr(d) +/- 2 nm(x),
    both rational, so x = (d + nm(x)) / tr(x).
    """
    trace = (d + conj).as_rational()
    norm = (d * conj).as_rational()
    if trace is None or norm is None:
        return None
    s = rational_sqrt(norm)
    if s is None:
        return None
    for signed in (s, -s):
        r2 = trace + 2 * signed
        r = rational_sqrt(r2)
        if r is None or r == 0:
            continue
        x = (d + signed) / r
        if x * x == d:
            return x
    return None


def _descend(d: CycloNum, fixed: frozenset[int], m: int, units: tuple[int, ...]) -> CycloNum | None:
    """Find x in Q(zeta_m) with x^2 = d and sigma_a(x) = x for a in fixed."""
    stab = tuple(a for a in units if d.galois(a) == d)
    if not fixed.issubset(stab):
        return None
    stab_set = frozenset(stab)
    for char in _subgroup_quadratic_characters(stab, m):
        if any(char[a] != 1 for a in fixed):
            continue
        if all(v == 1 for v in char.values()):
            degree = len(units) // len(stab)
            if degree == 1:
                q = d.as_rational()
                if q is None:
                    continue
                r = rational_sqrt(q)
                if r is not None:
                    return CycloNum.from_rational(r)
                continue
            if degree == 2:
                rep = next(a for a in units if a not in stab_set)
                x = _sqrt_in_degree_two_field(d, d.galois(rep))
                if x is not None:
                    return x
                continue
            continue
        y = _resolvent(char, m)
        if y is None:
            continue
        reduced = d / (y * y)
        inner = _descend(reduced, stab_set, m, units)
        if inner is not None:
            x = inner * y
            if x * x == d:
                return x
    return None


def _canonical_root(x: CycloNum) -> CycloNum:
    """Pick the root whose complex image lies in the right half plane,
    breaking the pure-imaginary tie toward positive imaginary part."""
    z = x.to_complex()
    if z.real > 1e-9:
        return x
    if z.real < -1e-9:
        return -x
    return x if z.imag >= 0 else -x


def _squarefree_part(n: int) -> int:
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                out *= p
        p += 1
    return out * n


def candidate_orders(n: int, rational: Fraction | None = None) -> list[int]:
    """Field orders searched for a root, ascending.

    Multiples k*n for bounded k; a rational input additionally
    contributes the conductor of sqrt(r), which divides four times the
    squarefree part of numerator times denominator.
    """
    cap = max_cyclo_order()
    seen: set[int] = set()
    for k in ORDER_MULTIPLIERS:
        m = normalize_order(k * n)
        if m <= cap:
            seen.add(m)
    if rational is not None and rational != 0:
        sf = _squarefree_part(rational.numerator * rational.denominator)
        for m in (normalize_order(sf), normalize_order(4 * sf)):
            if m <= cap:
                seen.add(m)
    return sorted(seen)


def try_cyclo_sqrt(d: CycloNum) -> CycloNum | None:
    """Exact square root of d, searching fields of order k * order(d)
    for k in ORDER_MULTIPLIERS; None when no root is found."""
    if d.is_zero():
        return CycloNum.zero()
    q = d.as_rational()
    if q is not None:
        r = rational_sqrt(q)
        if r is not None:
            return CycloNum.from_rational(r)
    for m in candidate_orders(d.order, q):
        if m == 1:
            continue
        if m % d.order != 0:
            continue
        dm = d.embed(m)
        x = _descend(dm, frozenset({1}), m, _units(m))
        if x is not None:
            return _canonical_root(x)
    return None


def cyclo_sqrt(d: CycloNum) -> CycloNum:
    """Exact square root, or SqrtNotRepresentableError with the orders
    that were searched."""
    x = try_cyclo_sqrt(d)
    if x is None:
        raise SqrtNotRepresentableError(
            f"no square root of {d!r} found in cyclotomic fields of order "
            f"{candidate_orders(d.order, d.as_rational())}"
        )
    return x
