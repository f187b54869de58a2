"""Scalar values: exact integers/rationals, exact roots of unity, exact
cyclotomic sums, and complex floats.

A :class:`CycloSum` is an element ``sum(c_j * zeta_N**j)`` of Q(zeta_N) kept
as a coefficient vector.  Equality reduces both sides modulo the cyclotomic
polynomial Phi_N, so comparisons are exact.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        out[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return out


@dataclass(frozen=True)
class RootOfUnity:
    """``coeff * exp(2*pi*i*exponent/order)``."""

    order: int
    exponent: int
    coeff: int | Fraction = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("root of unity order must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def normalized(self) -> RootOfUnity:
        """Smallest order representing the same value."""
        g = math.gcd(self.order, self.exponent)
        return RootOfUnity(self.order // g, self.exponent // g, self.coeff)

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            n = _lcm(self.order, other.order)
            e = self.exponent * (n // self.order) + other.exponent * (n // other.order)
            return RootOfUnity(n, e, self.coeff * other.coeff)
        if isinstance(other, Rational):
            return RootOfUnity(self.order, self.exponent, self.coeff * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return RootOfUnity(self.order, self.exponent, -self.coeff)

    def conjugate(self) -> RootOfUnity:
        return RootOfUnity(self.order, -self.exponent, self.coeff)

    def __complex__(self):
        if self.exponent == 0:
            return complex(float(self.coeff))
        if 2 * self.exponent == self.order:
            return complex(-float(self.coeff))
        if 4 * self.exponent == self.order:
            return complex(0.0, float(self.coeff))
        if 4 * self.exponent == 3 * self.order:
            return complex(0.0, -float(self.coeff))
        return float(self.coeff) * cmath.exp(2j * math.pi * self.exponent / self.order)

    def rational_value(self):
        """The value as int/Fraction when it is real rational, else None."""
        r = self.normalized()
        if r.order == 1:
            return r.coeff
        if r.order == 2:
            return -r.coeff
        return None

    def to_cyclo(self) -> CycloSum:
        return CycloSum.from_terms(self.order, {self.exponent: self.coeff})

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.to_cyclo() == other.to_cyclo()
        if isinstance(other, (int, Fraction, CycloSum)):
            return self.to_cyclo() == other
        return NotImplemented

    def __hash__(self):
        n = self.normalized()
        return hash((n.order, n.exponent, n.coeff))

    def __str__(self):
        r = self.rational_value()
        if r is not None:
            return str(r)
        n = self.normalized()
        base = f"z{n.order}^{n.exponent}"
        return base if n.coeff == 1 else f"{n.coeff}*{base}"


class CycloSum:
    """Exact element of Q(zeta_N) held as ``sum(c[j] * zeta_N**j)``."""

    __slots__ = ("order", "coeffs", "_reduced")

    def __init__(self, order: int, coeffs=None):
        self.order = order
        self.coeffs = list(coeffs) if coeffs is not None else [0] * order
        if len(self.coeffs) != order:
            raise ValueError("coefficient vector length must equal the order")
        self._reduced = None

    @classmethod
    def from_terms(cls, order: int, terms: dict) -> CycloSum:
        out = cls(order)
        for e, c in terms.items():
            out.coeffs[e % order] += c
        return out

    @classmethod
    def from_rational(cls, value) -> CycloSum:
        return cls(1, [value])

    def lift(self, order: int) -> CycloSum:
        if order % self.order:
            raise ValueError("can only lift to a multiple of the order")
        k = order // self.order
        out = CycloSum(order)
        for j, c in enumerate(self.coeffs):
            out.coeffs[j * k] = c
        return out

    def reduced(self) -> tuple:
        """Canonical coefficients modulo Phi_N (length phi(N))."""
        if self._reduced is None:
            phi = cyclotomic_poly(self.order)
            a = list(self.coeffs)
            d = len(phi) - 1
            for k in range(len(a) - 1, d - 1, -1):
                c = a[k]
                if c:
                    # phi is monic
                    for i, y in enumerate(phi):
                        a[k - d + i] -= c * y
            self._reduced = tuple(a[:d])
        return self._reduced

    def _common(self, other: CycloSum):
        n = _lcm(self.order, other.order)
        return self.lift(n), other.lift(n)

    @staticmethod
    def _coerce(other):
        if isinstance(other, CycloSum):
            return other
        if isinstance(other, RootOfUnity):
            return other.to_cyclo()
        if isinstance(other, (int, Fraction)):
            return CycloSum.from_rational(other)
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a.reduced() == b.reduced()

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return CycloSum(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloSum(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloSum(self.order, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        n = a.order
        out = [0] * n
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[(i + j) % n] += x * y
        return CycloSum(n, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def rational_value(self):
        """int/Fraction when the element is rational, else None."""
        r = self.reduced()
        if any(r[1:]):
            return None
        return r[0] if r else 0

    def __complex__(self):
        total = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                total += complex(RootOfUnity(self.order, j, c))
        return total

    def __str__(self):
        r = self.rational_value()
        if r is not None:
            return str(r)
        parts = [f"{c}*z{self.order}^{j}" for j, c in enumerate(self.reduced()) if c]
        return "+".join(parts)

    def __repr__(self):
        return f"CycloSum({self.order}, {self.reduced()})"


def to_complex(value) -> complex:
    return complex(value)


def exact_value(value):
    """Rational value of an exact scalar, or None if it is not a rational number."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, (RootOfUnity, CycloSum)):
        return value.rational_value()
    return None


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction, RootOfUnity, CycloSum))


def exact_equal(a, b) -> bool:
    """Exact equality between exact scalars of any kind."""
    return CycloSum._coerce(a) == CycloSum._coerce(b)
