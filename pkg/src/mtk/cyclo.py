"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Values are represented in the power basis 1, z, ..., z^(phi(n)-1) of
Q(zeta_n), where z = exp(2*pi*i/n), with integer coefficients over a
single positive denominator.  Reduction modulo the n-th cyclotomic
polynomial keeps representations canonical within a fixed field, and
mixed-order arithmetic embeds both operands into Q(zeta_lcm).

Field orders are normalized so that n is 1 or satisfies n >= 3 and
n != 2 (mod 4); every cyclotomic field has a unique such order since
Q(zeta_{2m}) = Q(zeta_m) for odd m.

Rational scalars throughout the package are `fractions.Fraction`.
"""
from __future__ import annotations

import cmath
import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import MtkError, OrderOverflowError
from .limits import max_cyclo_order

Rational = Fraction


def normalize_order(n: int) -> int:
    """Canonical order of the cyclotomic field generated by zeta_n."""
    if n < 1:
        raise ValueError(f"field order must be positive, got {n}")
    if n % 2 == 0 and (n // 2) % 2 == 1:
        n //= 2
    return 1 if n <= 2 else n


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (low-to-high coefficients), den monic."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * max(len(num) - dn, 1)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low-to-high; monic of degree phi(n).

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d,
    which stays in integer arithmetic throughout.
    """
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise MtkError(f"cyclotomic division left a remainder at n={n}, d={d}")
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e expresses zeta_n^e in the power basis, for e up to
    max(n-1, 2*phi-2); this covers both embeddings and products."""
    cpoly = cyclotomic_polynomial(n)
    phi = len(cpoly) - 1
    top_exp = max(n - 1, 2 * phi - 2)
    rows: list[list[int]] = []
    for e in range(top_exp + 1):
        if e < phi:
            row = [0] * phi
            row[e] = 1
        else:
            prev = rows[e - 1]
            carry = prev[phi - 1]
            row = [0] * phi
            for i in range(1, phi):
                row[i] = prev[i - 1]
            if carry:
                for i in range(phi):
                    row[i] -= carry * cpoly[i]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def _check_order(n: int) -> None:
    cap = max_cyclo_order()
    if n > cap:
        raise OrderOverflowError(
            f"cyclotomic order {n} exceeds the configured bound {cap} "
            "(set MTK_MAX_CYCLO_ORDER to raise it)"
        )


def _embed_vector(nums: tuple[int, ...], n_from: int, n_to: int) -> list[int]:
    """Re-express a coefficient vector in the basis of a larger field.

    Both orders must be normalized with n_from dividing n_to.
    """
    if n_from == n_to:
        return list(nums)
    rows = _reduction_rows(n_to)
    phi_to = len(rows[0])
    step = n_to // n_from
    out = [0] * phi_to
    for e, c in enumerate(nums):
        if c:
            row = rows[e * step]
            for i in range(phi_to):
                out[i] += c * row[i]
    return out


class CycloNum:
    """An exact element of a cyclotomic field.

    Immutable; arithmetic returns fresh values.  Instances are
    unhashable because equal values may be stored over different
    field orders.
    """

    __slots__ = ("order", "nums", "den")

    def __init__(self, order: int, coeffs, den: int = 1):
        order = int(order)
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = list(coeffs)
        if len(coeffs) != euler_phi(order):
            raise ValueError(
                f"expected {euler_phi(order)} coefficients for order {order}, got {len(coeffs)}"
            )
        if any(isinstance(c, Fraction) for c in coeffs) or den != 1:
            fracs = [Fraction(c) / den for c in coeffs]
            common = 1
            for f in fracs:
                common = lcm(common, f.denominator)
            ints = [f.numerator * (common // f.denominator) for f in fracs]
            den = common
        else:
            ints = [int(c) for c in coeffs]
        norm = normalize_order(order)
        if norm == order:
            o, ns, d = _normalize_parts(order, ints, den)
        else:
            acc = _ZERO
            for e, c in enumerate(ints):
                if c:
                    acc = acc + zeta(order, e) * Fraction(c, den)
            o, ns, d = acc.order, acc.nums, acc.den
        self.order = o
        self.nums = ns
        self.den = d

    # -- construction helpers -------------------------------------------

    @classmethod
    def _raw(cls, order: int, nums: tuple[int, ...], den: int) -> "CycloNum":
        obj = object.__new__(cls)
        obj.order = order
        obj.nums = nums
        obj.den = den
        return obj

    @classmethod
    def _make(cls, order: int, nums, den: int) -> "CycloNum":
        return cls._raw(*_normalize_parts(order, list(nums), den))

    @classmethod
    def from_rational(cls, value) -> "CycloNum":
        q = Fraction(value)
        return cls._raw(*_normalize_parts(1, [q.numerator], q.denominator))

    @classmethod
    def zero(cls) -> "CycloNum":
        return _ZERO

    @classmethod
    def one(cls) -> "CycloNum":
        return _ONE

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.order == 1 and self.nums[0] == 0

    def is_rational(self) -> bool:
        return self.order == 1

    def as_rational(self) -> Fraction | None:
        if self.order == 1:
            return Fraction(self.nums[0], self.den)
        return None

    def is_real(self) -> bool:
        return self.conjugate() == self

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(other)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        n = _common_order(self.order, b.order)
        av = _embed_vector(self.nums, self.order, n)
        bv = _embed_vector(b.nums, b.order, n)
        nums = [x * b.den + y * self.den for x, y in zip(av, bv)]
        return CycloNum._make(n, nums, self.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.order, tuple(-c for c in self.nums), self.den)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        n = _common_order(self.order, b.order)
        av = _embed_vector(self.nums, self.order, n)
        bv = _embed_vector(b.nums, b.order, n)
        phi = len(av)
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(av):
            if x:
                for j, y in enumerate(bv):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi] + [0] * (phi - len(conv[:phi]))
        rows = None
        for e in range(phi, len(conv)):
            c = conv[e]
            if c:
                if rows is None:
                    rows = _reduction_rows(n)
                row = rows[e]
                for i in range(phi):
                    out[i] += c * row[i]
        return CycloNum._make(n, out, self.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic value")
        if self.order == 1:
            return CycloNum._make(1, [self.den], self.nums[0])
        apoly = [Fraction(c, self.den) for c in self.nums]
        mpoly = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        inv = _poly_modular_inverse(apoly, mpoly)
        inv += [Fraction(0)] * (len(self.nums) - len(inv))
        return _from_fraction_vector(self.order, inv[: len(self.nums)])

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = _ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    # -- Galois action ----------------------------------------------------

    def galois(self, k: int) -> "CycloNum":
        """Apply the field automorphism zeta -> zeta^k; k must be coprime
        to the order."""
        n = self.order
        if n == 1:
            return self
        k %= n
        if gcd(k, n) != 1:
            raise ValueError(f"galois exponent {k} is not invertible mod {n}")
        rows = _reduction_rows(n)
        phi = len(self.nums)
        out = [0] * phi
        for e, c in enumerate(self.nums):
            if c:
                row = rows[(e * k) % n]
                for i in range(phi):
                    out[i] += c * row[i]
        return CycloNum._make(n, out, self.den)

    def conjugate(self) -> "CycloNum":
        if self.order == 1:
            return self
        return self.galois(self.order - 1)

    def real_part(self) -> "CycloNum":
        return (self + self.conjugate()) * Fraction(1, 2)

    def norm_squared(self) -> "CycloNum":
        return self * self.conjugate()

    # -- conversions -------------------------------------------------------

    def embed(self, new_order: int) -> "CycloNum":
        """Same value re-expressed over a larger field order."""
        if new_order < 1:
            raise ValueError("order must be positive")
        if new_order % self.order != 0:
            raise ValueError(
                f"cannot embed from order {self.order} into non-multiple {new_order}"
            )
        target = normalize_order(new_order)
        _check_order(target)
        if target == self.order:
            return self
        vec = _embed_vector(self.nums, self.order, target)
        return CycloNum._make(target, vec, self.den)

    def to_complex(self) -> complex:
        n = self.order
        total = 0j
        for e, c in enumerate(self.nums):
            if c:
                total += c * cmath.exp(2j * cmath.pi * e / n)
        return total / self.den

    def as_root_of_unity(self) -> "RootOfUnity | None":
        """Return this value as a root of unity, or None.

        The roots of unity in Q(zeta_n) form the cyclic group of order
        n for 4 | n and of order 2n for odd n, so membership is a
        finite exact check.  A float argument estimate is tried first
        and confirmed exactly before the full scan.
        """
        n = self.order
        group = n if n % 4 == 0 else 2 * n
        z = self.to_complex()
        if abs(abs(z) - 1.0) > 1e-6:
            return None
        guess = round(cmath.phase(z) * group / (2 * cmath.pi)) % group
        cand = RootOfUnity(guess, group)
        if self == cand.to_cyclo():
            return cand
        for j in range(group):
            cand = RootOfUnity(j, group)
            if self == cand.to_cyclo():
                return cand
        return None

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        if self.order == b.order:
            return self.nums == b.nums and self.den == b.den
        n = _common_order(self.order, b.order)
        return (
            _embed_vector(self.nums, self.order, n) == _embed_vector(b.nums, b.order, n)
            and self.den == b.den
        )

    __hash__ = None

    def __repr__(self):
        if self.order == 1:
            q = Fraction(self.nums[0], self.den)
            return f"CycloNum({q.numerator}/{q.denominator})" if q.denominator != 1 else f"CycloNum({q.numerator})"
        terms = []
        for e, c in enumerate(self.nums):
            if c:
                if e == 0:
                    terms.append(f"{c}")
                elif e == 1:
                    terms.append(f"{c}*z")
                else:
                    terms.append(f"{c}*z^{e}")
        body = " + ".join(terms).replace("+ -", "- ")
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"CycloNum[z=zeta_{self.order}]({body})"


def _normalize_parts(order: int, nums: list[int], den: int) -> tuple[int, tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        den = -den
        nums = [-c for c in nums]
    if all(c == 0 for c in nums[1:]):
        head = nums[0]
        if head == 0:
            return (1, (0,), 1)
        g = gcd(head, den)
        return (1, (head // g,), den // g)
    g = den
    for c in nums:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        nums = [c // g for c in nums]
        den //= g
    return (order, tuple(nums), den)


def _common_order(a: int, b: int) -> int:
    if a == b:
        return a
    n = lcm(a, b)
    _check_order(n)
    return n


def _from_fraction_vector(order: int, fracs: list[Fraction]) -> CycloNum:
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    nums = [f.numerator * (den // f.denominator) for f in fracs]
    return CycloNum._make(order, nums, den)


def _poly_deg(p: list[Fraction]) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return -1


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    dd = _poly_deg(den)
    lead = den[dd]
    quot = [Fraction(0)] * max(len(num) - dd, 1)
    for i in range(len(num) - 1, dd - 1, -1):
        if num[i]:
            c = num[i] / lead
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    while len(num) > 1 and not num[-1]:
        num.pop()
    return quot, num


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_modular_inverse(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Extended Euclid: u with u*a = 1 (mod m); a invertible since m is
    a cyclotomic polynomial and a is a nonzero element of lower degree."""
    r0, r1 = list(m), list(a)
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while _poly_deg(r1) >= 0:
        q, r = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _poly_sub_frac(t0, _poly_mul_frac(q, t1))
    if _poly_deg(r0) != 0:
        raise MtkError("element is not invertible modulo the cyclotomic polynomial")
    c = r0[0]
    u = [x / c for x in t0]
    _, rem = _poly_divmod_frac(u, m)
    return rem


_ZERO = CycloNum._raw(1, (0,), 1)
_ONE = CycloNum._raw(1, (1,), 1)


def zeta(n: int, k: int = 1) -> CycloNum:
    """The root of unity exp(2*pi*i*k/n) as an exact value."""
    if n < 1:
        raise ValueError("order must be positive")
    k %= n
    g = gcd(k, n)
    num, den = k // g, n // g
    norm = normalize_order(den)
    _check_order(norm)
    if den <= 2:
        return _ONE if den == 1 else CycloNum._raw(1, (-1,), 1)
    if den == norm:
        rows = _reduction_rows(den)
        return CycloNum._make(den, list(rows[num]), 1)
    # den = 2m with m odd: zeta_{2m} = -zeta_m^((m+1)/2)
    m = den // 2
    e = (num * ((m + 1) // 2)) % m
    base = zeta(m, e)
    return base if num % 2 == 0 else -base


def csum(values) -> CycloNum:
    total = _ZERO
    for v in values:
        total = total + v
    return total


def cprod(values) -> CycloNum:
    total = _ONE
    for v in values:
        total = total * v
    return total


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2*pi*i*num/den) with 0 <= num < den and gcd(num, den) = 1."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise ValueError("zero denominator")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    @property
    def order(self) -> int:
        """Multiplicative order; den, since num/den is reduced."""
        return self.den

    def to_cyclo(self) -> CycloNum:
        return zeta(self.den, self.num)

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.num / self.den)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        q = Fraction(self.num, self.den) + Fraction(other.num, other.den)
        return RootOfUnity(q.numerator, q.denominator)

    def __pow__(self, k: int) -> "RootOfUnity":
        q = Fraction(self.num * k, self.den)
        return RootOfUnity(q.numerator, q.denominator)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.num, self.den)

    conjugate = inverse

    @staticmethod
    def one() -> "RootOfUnity":
        return RootOfUnity(0, 1)
