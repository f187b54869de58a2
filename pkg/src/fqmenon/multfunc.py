"""Arithmetical functions on A = F_q[T].

Functions are unit-invariant: they are evaluated on the monic associate of
their argument.  Exact integer/rational arithmetic is used throughout; the
k-dimensional totient has a brute-force counter and the product formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .budget import check_budget
from .polyring import Poly, PolyError, abs_value, divisors, factorize
from .residue import ring_of


def moebius(h: Poly) -> int:
    if h.is_zero():
        raise PolyError("mu(0) is undefined")
    fac = factorize(h)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return (-1) ** len(fac.factors)


def euler_phi(h: Poly) -> int:
    if h.is_zero():
        raise PolyError("phi(0) is undefined")
    out = 1
    for p, e in factorize(h).factors:
        a = abs_value(p)
        out *= a ** (e - 1) * (a - 1)
    return out


def alternating_factor(abs_p: int, k: int) -> Fraction:
    """1 - 1/(|P|-1) + 1/(|P|-1)^2 - ... + (-1)^(k-1)/(|P|-1)^(k-1); empty sum for k = 0."""
    r = Fraction(-1, abs_p - 1)
    return sum((r**j for j in range(k)), Fraction(0))


def phi_k_formula(h: Poly, k: int) -> int:
    """phi(H)^k times the product over primes P | H of the alternating factor."""
    return phi_k_two_arg_formula(h, h, k)


def phi_k_two_arg_formula(h: Poly, m: Poly, k: int) -> int:
    if k < 1:
        raise ValueError("k must be a positive integer")
    if h.is_zero() or h.deg < 1:
        raise PolyError("phi_k needs deg H >= 1")
    if not m.divides(h):
        raise PolyError(f"{m} does not divide {h}")
    value = Fraction(euler_phi(h)) ** k
    for p in factorize(m).primes():
        value *= alternating_factor(abs_value(p), k)
    if value.denominator != 1:
        raise ArithmeticError(f"phi_k closed form is not integral: {value}")
    return int(value)


def _tuple_count(h: Poly, m: Poly, k: int, budget=None) -> int:
    # k-tuples of residues mod H: product coprime to H, sum coprime to M
    if k < 1:
        raise ValueError("k must be a positive integer")
    if h.is_zero() or h.deg < 1:
        raise PolyError("phi_k needs deg H >= 1")
    if not m.divides(h):
        raise PolyError(f"{m} does not divide {h}")
    ring = ring_of(h)
    check_budget(ring.size**k, budget)
    sum_ok = ring_of(m).unit_mask[ring.reduce_to(m)]
    unit = ring.unit_mask
    # running product/sum over the first k-1 coordinates, starting from the empty tuple
    prods = np.array([1])
    sums = np.array([0])
    for _ in range(k - 1):
        prods = ring.mul[prods].ravel()
        sums = ring.add[sums].ravel()
    total = 0
    for x in range(ring.size):
        total += int(np.count_nonzero(unit[ring.mul[prods, x]] & sum_ok[ring.add[sums, x]]))
    return total


def phi_k_brute(h: Poly, k: int, budget=None) -> int:
    """Count k-tuples mod H with product and sum both coprime to H."""
    return _tuple_count(h, h.monic(), k, budget)


def phi_k_two_arg_brute(h: Poly, m: Poly, k: int, budget=None) -> int:
    """Count k-tuples mod H with product coprime to H and sum coprime to M."""
    return _tuple_count(h, m.monic(), k, budget)


def phi_k_recursion(h: Poly, m: Poly, k: int, inner=None) -> Fraction:
    """phi(H) * sum_{D | M} mu(D)/phi(D) * phi_{k-1}(H, D).

    ``inner(H, D, k-1)`` supplies the lower-level values (brute force by default).
    """
    if k < 2:
        raise ValueError("the recursion needs k >= 2")
    inner = inner or phi_k_two_arg_brute
    total = Fraction(0)
    for d in divisors(m):
        mu = moebius(d)
        if mu:
            total += Fraction(mu, euler_phi(d)) * inner(h, d, k - 1)
    return euler_phi(h) * total


# --- arithmetical functions --------------------------------------------------

@dataclass(frozen=True)
class ArithFunc:
    name: str
    fn: Callable[[Poly], object]
    integral: bool = True  # values are integers or rationals

    def __call__(self, a: Poly):
        if a.is_zero():
            raise PolyError(f"{self.name}(0) is undefined")
        return self.fn(a.monic())


def _tau(a: Poly) -> int:
    out = 1
    for _, e in factorize(a).factors:
        out *= e + 1
    return out


def _abs_power(s):
    if isinstance(s, float):
        return ArithFunc(f"abs_s:{s}", lambda a: float(abs_value(a)) ** s, integral=False)
    if s >= 0:
        return ArithFunc(f"abs_s:{s}", lambda a: abs_value(a) ** s)
    return ArithFunc(f"abs_s:{s}", lambda a: Fraction(1, abs_value(a) ** -s))


ONE = ArithFunc("one", lambda a: 1)
ABS = ArithFunc("abs", abs_value)
TAU = ArithFunc("tau", _tau)
MU = ArithFunc("mu", moebius)
PHI = ArithFunc("phi", euler_phi)
INDICATOR_UNIT = ArithFunc("indicator_unit", lambda a: int(a.deg == 0))


def builtin_functions(s=2) -> dict[str, ArithFunc]:
    lib = {f.name: f for f in (ONE, ABS, TAU, MU, PHI, INDICATOR_UNIT)}
    f = _abs_power(s)
    lib["abs_s"] = f
    lib[f.name] = f
    return lib


def get_function(name: str) -> ArithFunc:
    """Look up ``one | abs | abs_s:<s> | tau | mu | phi | indicator_unit``."""
    m = re.fullmatch(r"abs_s:(-?\d+(?:\.\d+)?)", name.strip())
    if m:
        text = m.group(1)
        return _abs_power(float(text) if "." in text else int(text))
    lib = builtin_functions()
    if name not in lib or name == "abs_s":
        raise KeyError(f"unknown arithmetical function {name!r}")
    return lib[name]


def dirichlet_convolution(f: ArithFunc, g: ArithFunc, h: Poly):
    """(f * g)(H) = sum over monic D | H of f(D) g(H/D)."""
    if h.is_zero():
        raise PolyError("convolution at 0 is undefined")
    h = h.monic()
    return sum((f(d) * g(h // d) for d in divisors(h)), 0)


def convolve(f: ArithFunc, g: ArithFunc) -> ArithFunc:
    return ArithFunc(f"({f.name}*{g.name})", lambda a: dirichlet_convolution(f, g, a),
                     integral=f.integral and g.integral)
