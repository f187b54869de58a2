"""Dirichlet characters modulo H and additive characters E(W, H).

The unit group (A/H)^x is decomposed greedily, one Sylow subgroup at a time:
pick an element of maximal order modulo what is already generated, then
correct it by an element of the generated part so that its order does not
shrink.  A full discrete-log table is kept; characters are exponent vectors
against the chosen generators and evaluate to exact roots of unity.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .budget import check_budget
from .polyring import Poly, PolyError, crt_solve, factorize, residues
from .residue import ring_of
from .scalar import CycloSum, RootOfUnity


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class UnitGroup:
    """(A/H)^x as a direct product of cyclic groups with a discrete-log table."""

    def __init__(self, h: Poly, budget=None):
        h = h.monic()
        self.modulus = h
        self.ring = ring = ring_of(h)
        self.order = len(ring.unit_indices)
        check_budget(self.order**2, budget)
        mul = ring.mul
        units = [int(u) for u in ring.unit_indices]
        one = units[0] if ring.size == 1 else 1

        def power(x, e):
            out = one
            for _ in range(e):
                out = int(mul[out, x])
            return out

        gens: list[tuple[int, int]] = []
        for r in _prime_factors(self.order):
            a = 0
            n = self.order
            while n % r == 0:
                n //= r
                a += 1
            sylow = [u for u in units if power(u, r**a) == one]
            generated = {one}
            while len(generated) < len(sylow):
                best = None
                for x in sylow:
                    j, y = 1, x
                    while y not in generated:
                        y = int(mul[y, x])
                        j += 1
                    if best is None or j > best[1]:
                        best = (x, j)
                x, rank = best
                lift = None
                for c in sorted(generated):
                    g = int(mul[x, c])
                    if power(g, rank) == one:
                        lift = g
                        break
                if lift is None:
                    raise AssertionError(f"no order-preserving lift in the unit group mod {h}")
                gens.append((lift, rank))
                new = set()
                y = one
                for _ in range(rank):
                    new.update(int(mul[z, y]) for z in generated)
                    y = int(mul[y, lift])
                generated = new
        self.generators = gens
        self.exponent = math.lcm(*(o for _, o in gens)) if gens else 1

        dlog = {}
        for exps in itertools.product(*(range(o) for _, o in gens)):
            x = one
            for (g, _), e in zip(gens, exps):
                x = int(mul[x, power(g, e)])
            if x in dlog:
                raise AssertionError("generators are not independent")
            dlog[x] = exps
        if len(dlog) != self.order:
            raise AssertionError("generators do not span the unit group")
        self.dlog = dlog

    @property
    def orders(self) -> list[int]:
        return [o for _, o in self.generators]

    def generator_polys(self) -> list[Poly]:
        return [self.ring.poly(g) for g, _ in self.generators]

    def log(self, a: Poly) -> tuple[int, ...]:
        return self.dlog[self.ring.index(a)]


@functools.lru_cache(maxsize=None)
def unit_group(h: Poly) -> UnitGroup:
    if h.is_zero():
        raise PolyError("unit group modulo zero")
    return UnitGroup(h)


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    modulus: Poly
    group: UnitGroup
    exponents: tuple[int, ...]

    def __eq__(self, other):
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    @functools.cached_property
    def value_exponents(self) -> np.ndarray:
        """For each residue index: k with chi = zeta_e^k (e = group exponent), or -1 off the units."""
        g = self.group
        out = np.full(g.ring.size, -1, dtype=np.int64)
        scale = [g.exponent // o for o in g.orders]
        for u, logs in g.dlog.items():
            out[u] = sum(e * a * s for e, a, s in zip(self.exponents, logs, scale)) % g.exponent
        return out

    @property
    def value_order(self) -> int:
        return self.group.exponent

    @functools.cached_property
    def order(self) -> int:
        """Order of chi in the character group."""
        ks = self.value_exponents[self.value_exponents >= 0]
        e = self.group.exponent
        return e // math.gcd(e, *(int(k) for k in ks)) if len(ks) else 1

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def is_real(self) -> bool:
        return self.order <= 2

    def __call__(self, a: Poly):
        k = int(self.value_exponents[self.group.ring.index(a)])
        if k < 0:
            return 0
        return RootOfUnity(self.group.exponent, k)

    def __repr__(self):
        return f"DirichletCharacter(mod {self.modulus}, exponents={self.exponents})"


def characters(h: Poly) -> list[DirichletCharacter]:
    """All phi(H) characters, exponent vectors in lexicographic order (trivial first)."""
    h = h.monic()
    g = unit_group(h)
    return [DirichletCharacter(h, g, exps) for exps in itertools.product(*(range(o) for o in g.orders))]


def trivial_character(h: Poly) -> DirichletCharacter:
    h = h.monic()
    g = unit_group(h)
    return DirichletCharacter(h, g, (0,) * len(g.generators))


def char_eval(chi: DirichletCharacter, a: Poly):
    return chi(a)


def induced_moduli(chi: DirichletCharacter) -> list[Poly]:
    """Monic divisors D of H on which chi is constant along unit classes mod D."""
    ring = chi.group.ring
    units = ring.unit_indices
    vals = chi.value_exponents[units]
    out = []
    for d in ring.divisors:
        classes = ring.reduce_to(d)[units]
        seen = {}
        ok = True
        for c, v in zip(classes.tolist(), vals.tolist()):
            if seen.setdefault(c, v) != v:
                ok = False
                break
        if ok:
            out.append(d)
    return out


@functools.lru_cache(maxsize=None)
def conductor(chi: DirichletCharacter) -> Poly:
    cands = induced_moduli(chi)
    minimal = [d for d in cands if all(d.divides(e) for e in cands)]
    if len(minimal) != 1:
        raise AssertionError(f"no unique minimal induced modulus for {chi}")
    return minimal[0]


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.modulus


@functools.lru_cache(maxsize=None)
def primitive_lift(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character modulo the conductor that induces chi."""
    h = chi.modulus
    d = conductor(chi)
    if d == h:
        return chi
    gd = unit_group(d)
    fac = factorize(h)
    d_primes = set(factorize(d).primes())
    local = [(p, p**e) for p, e in fac.factors]
    exps = []
    for g_poly, o in zip(gd.generator_polys(), gd.orders):
        pairs = [(g_poly if p in d_primes else Poly.const(h.field, 1), pe) for p, pe in local]
        a = crt_solve(pairs)
        k = int(chi.value_exponents[chi.group.ring.index(a)])
        scaled = k * o
        if k < 0 or scaled % chi.group.exponent:
            raise AssertionError("lifted value is not a root of unity of the generator order")
        exps.append(scaled // chi.group.exponent)
    return DirichletCharacter(d, gd, tuple(exps))


# --- additive characters ------------------------------------------------------

@dataclass(frozen=True)
class AdditiveCharacter:
    """E(W, H): B -> exp(2 pi i Tr(t(W B mod H)) / p), t = coefficient of T^(deg H - 1)."""

    modulus: Poly
    w: Poly

    def __post_init__(self):
        if self.modulus.deg < 1:
            raise PolyError("additive characters need deg H >= 1")
        if self.w.deg >= self.modulus.deg:
            raise PolyError("W must have degree < deg H")

    @functools.cached_property
    def value_exponents(self) -> np.ndarray:
        """Tr(t(W B mod H)) in [0, p) for every residue index B."""
        h = self.modulus
        f = h.field
        ring = ring_of(h)
        m = int(h.deg)
        images = []
        for w in ring.weights:
            r = (self.w * ring.poly(int(w))) % h
            top = r.coeffs[m - 1] if len(r.coeffs) >= m else 0
            images.append(f.trace_code(top))
        return (ring.digits @ np.array(images, dtype=np.int64)) % f.p

    def __call__(self, b: Poly) -> RootOfUnity:
        k = int(self.value_exponents[ring_of(self.modulus).index(b)])
        return RootOfUnity(self.modulus.field.p, k)

    def is_real(self) -> bool:
        return self.modulus.field.p == 2 or self.w.is_zero()


def additive_char_eval(lam: AdditiveCharacter, b: Poly) -> RootOfUnity:
    return lam(b)


def additive_character(h: Poly, w: Poly) -> AdditiveCharacter:
    h = h.monic()
    return AdditiveCharacter(h, w % h)


def all_additive_characters(h: Poly) -> list[AdditiveCharacter]:
    h = h.monic()
    if h.deg < 1:
        raise PolyError("additive characters need deg H >= 1")
    return [AdditiveCharacter(h, w) for w in residues(h)]


def additive_sum_over_multiples_brute(lam: AdditiveCharacter, m: Poly) -> CycloSum:
    """Sum of lambda(B) over residues B mod H with M | B, as an exact cyclotomic sum."""
    ring = ring_of(lam.modulus)
    idx = ring.multiples_of(m)
    p = lam.modulus.field.p
    counts = np.bincount(lam.value_exponents[idx], minlength=p)
    return CycloSum(p, [int(c) for c in counts])


def additive_sum_over_multiples_closed(lam: AdditiveCharacter, m: Poly) -> int:
    """|H/M| when (H/M) | W, else 0."""
    h = lam.modulus
    m = m.monic()
    if not m.divides(h):
        raise PolyError(f"{m} does not divide {h}")
    cof = h // m
    if cof.divides(lam.w):
        return h.field.q ** int(cof.deg)
    return 0


def additive_sum_over_multiples(lam: AdditiveCharacter, m: Poly, method: str = "closed"):
    if not m.monic().divides(lam.modulus):
        raise PolyError(f"{m} does not divide {lam.modulus}")
    if method == "brute":
        return additive_sum_over_multiples_brute(lam, m)
    return additive_sum_over_multiples_closed(lam, m)

