"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi-1) reduced modulo the
N-th cyclotomic polynomial. Internally the rational coefficients share one
positive common denominator so that the hot paths (add, mul) run on plain
Python ints; the public ``coeffs`` view is a tuple of reduced Fractions.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class OrderMismatchError(ValueError):
    """Raised when two field elements of different cyclotomic order meet."""


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _polydiv_monic(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials (ascending coefficients), den monic
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dq]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _polydiv_monic(poly, list(_cyclotomic(d)))
    return tuple(poly)


def cyclotomic_poly(n: int) -> list[int]:
    """Return the n-th cyclotomic polynomial as ascending integer coefficients."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic order must be a positive integer, got {n!r}")
    return list(_cyclotomic(n))


def totient(n: int) -> int:
    return len(_cyclotomic(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows give z^(phi+j) in the power basis, for j = 0 .. phi-2."""
    phi_poly = _cyclotomic(n)
    deg = len(phi_poly) - 1
    # z^deg = -(phi_poly[0] + ... + phi_poly[deg-1] z^(deg-1))
    row = tuple(-c for c in phi_poly[:deg])
    table = [row]
    for _ in range(max(deg - 2, 0)):
        prev = table[-1]
        top = prev[-1]
        nxt = [0] + list(prev[:-1])
        if top:
            nxt = [a + top * b for a, b in zip(nxt, row)]
        table.append(tuple(nxt))
    return tuple(table)


def _reduce(n: int, prod: list[int]) -> list[int]:
    deg = len(_cyclotomic(n)) - 1
    out = prod[:deg]
    if len(prod) > deg:
        table = _reduction_table(n)
        for j, c in enumerate(prod[deg:]):
            if c:
                for i, t in enumerate(table[j]):
                    if t:
                        out[i] += c * t
    return out


class CycNum:
    """An exact element of Q(zeta_N)."""

    __slots__ = ("_order", "_num", "_den", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Scalar] = ()) -> None:
        deg = totient(order)
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > deg:
            # accept unreduced polynomials in z and reduce them mod Phi_N
            den = math.lcm(*(f.denominator for f in fr))
            nums = _reduce_high(order, [int(f * den) for f in fr])
        else:
            fr += [Fraction(0)] * (deg - len(fr))
            den = math.lcm(*(f.denominator for f in fr)) if fr else 1
            nums = [int(f * den) for f in fr]
        self._set(order, nums, den)

    def _set(self, order: int, nums: list[int], den: int) -> None:
        g = math.gcd(den, *nums)
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        self._order = order
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, order: int, nums: list[int], den: int) -> CycNum:
        obj = cls.__new__(cls)
        obj._set(order, nums, den)
        return obj

    @classmethod
    def zero(cls, order: int) -> CycNum:
        return cls._raw(order, [0] * totient(order), 1)

    @classmethod
    def one(cls, order: int) -> CycNum:
        return cls.from_scalar(order, 1)

    @classmethod
    def from_scalar(cls, order: int, value: Scalar) -> CycNum:
        v = Fraction(value)
        nums = [0] * totient(order)
        nums[0] = v.numerator
        return cls._raw(order, nums, v.denominator)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _coerce(self, other: object) -> CycNum:
        if isinstance(other, CycNum):
            if other._order != self._order:
                raise OrderMismatchError(
                    f"cyclotomic orders differ: {self._order} vs {other._order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_scalar(self._order, other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycNum):
            return (
                self._order == other._order
                and self._den == other._den
                and self._num == other._num
            )
        if isinstance(other, (int, Fraction)):
            return self == CycNum.from_scalar(self._order, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._order, self._num, self._den))
        return self._hash

    def __add__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self._den == o._den:
            return CycNum._raw(
                self._order, [a + b for a, b in zip(self._num, o._num)], self._den
            )
        d1, d2 = self._den, o._den
        return CycNum._raw(
            self._order, [a * d2 + b * d1 for a, b in zip(self._num, o._num)], d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum._raw(self._order, [-a for a in self._num], self._den)

    def __sub__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._num, o._num
        deg = len(a)
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycNum._raw(self._order, _reduce(self._order, prod), self._den * o._den)

    __rmul__ = __mul__

    def inv(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycNum.from_scalar(self._order, 1 / self.coeffs[0])
        s = _poly_inverse_mod([Fraction(x) for x in self._num], self._order)
        return CycNum(self._order, [c * self._den for c in s])

    def __truediv__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int) -> CycNum:
        if e < 0:
            return self.inv() ** (-e)
        result = CycNum.one(self._order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def to_complex(self) -> complex:
        """Floating-point embedding z -> exp(2 pi i / N). Display only."""
        z = cmath.exp(2j * math.pi / self._order)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def to_json(self) -> dict:
        return {
            "order": self._order,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> CycNum:
        order = int(obj["order"])
        coeffs = [Fraction(int(p), int(q)) for p, q in obj["coeffs"]]
        if len(coeffs) != totient(order):
            raise ValueError(
                f"expected {totient(order)} coefficients for order {order}, got {len(coeffs)}"
            )
        return cls(order, coeffs)

    def __repr__(self) -> str:
        return f"CycNum({self._order}, {str(self)!r})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    ]
    return _poly_trim([Fraction(x) for x in out])


def _poly_inverse_mod(p: list[Fraction], order: int) -> list[Fraction]:
    # extended Euclid: find s with s*p = 1 mod Phi_N
    m = [Fraction(c) for c in _cyclotomic(order)]
    r0, r1 = m, _poly_trim(list(p))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


@lru_cache(maxsize=4096)
def zeta_pow(order: int, e: int) -> CycNum:
    """zeta_N ** e in reduced form."""
    e %= order
    deg = totient(order)
    poly = [0] * max(e + 1, deg)
    poly[e] = 1
    if e >= deg:
        # reduce x^e iteratively; e < order so this stays small
        poly = _reduce_high(order, poly)
    return CycNum._raw(order, poly[:deg], 1)


def _reduce_high(order: int, poly: list[int]) -> list[int]:
    phi_poly = _cyclotomic(order)
    deg = len(phi_poly) - 1
    poly = list(poly)
    for top in range(len(poly) - 1, deg - 1, -1):
        c = poly[top]
        if c:
            poly[top] = 0
            for i in range(deg):
                poly[top - deg + i] -= c * phi_poly[i]
    return poly[:deg]


def cyc_add(x: CycNum, y: CycNum) -> CycNum:
    return x + y


def cyc_sub(x: CycNum, y: CycNum) -> CycNum:
    return x - y


def cyc_mul(x: CycNum, y: CycNum) -> CycNum:
    return x * y


def cyc_inv(x: CycNum) -> CycNum:
    return x.inv()
