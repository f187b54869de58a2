"""Lookup tables for A/(H) indexed by residue codes.

Residue ``B`` of degree < deg H is identified with ``B.to_index()``.  Addition,
multiplication and reduction modulo a divisor are all F_p-linear in one
argument, so each table is built from the images of an F_p-basis.
"""

from __future__ import annotations

import functools

import numpy as np

from .polyring import Poly, PolyError, divisors, poly_gcd

MAX_RESIDUES = 4096


class ResidueRing:
    def __init__(self, h: Poly):
        if h.is_zero():
            raise PolyError("residue ring modulo zero")
        h = h.monic()
        f = h.field
        self.modulus = h
        self.field = f
        self.m = int(h.deg)
        self.size = f.q**self.m
        if self.size > MAX_RESIDUES:
            raise PolyError(f"|H| = {self.size} exceeds the table cap {MAX_RESIDUES}")
        p = f.p
        self.ndig = self.m * f.n
        # base-p digits of each residue index; index = sum digit_k * p**k
        idx = np.arange(self.size)
        self.weights = p ** np.arange(self.ndig, dtype=np.int64)
        self.digits = (idx[:, None] // self.weights[None, :]) % p if self.ndig else np.zeros((self.size, 0), np.int64)
        self.polys = [Poly.from_index(f, i) for i in range(self.size)]

    def index(self, b: Poly) -> int:
        return (b % self.modulus).to_index()

    def poly(self, i: int) -> Poly:
        return self.polys[i]

    def _encode(self, digits):
        return (digits % self.field.p) @ self.weights if self.ndig else np.zeros(len(digits), np.int64)

    def _linear_images(self, fn):
        # images of the F_p-basis {p^k} under an F_p-linear map, as digit rows
        rows = [self.digits[fn(self.polys[int(w)])] for w in self.weights]
        return np.array(rows, dtype=np.int64).reshape(self.ndig, -1)

    @functools.cached_property
    def add(self) -> np.ndarray:
        if self.ndig == 0:
            return np.zeros((1, 1), dtype=np.int64)
        d = self.digits
        return np.stack([self._encode(d[a] + d) for a in range(self.size)])

    @functools.cached_property
    def neg(self) -> np.ndarray:
        return self._encode(-self.digits)

    @functools.cached_property
    def mul(self) -> np.ndarray:
        if self.ndig == 0:
            return np.zeros((1, 1), dtype=np.int64)
        out = np.empty((self.size, self.size), dtype=np.int64)
        h = self.modulus
        for a in range(self.size):
            pa = self.polys[a]
            images = self._linear_images(lambda b: ((pa * b) % h).to_index())
            out[a] = self._encode(self.digits @ images)
        return out

    @functools.cached_property
    def divisors(self) -> list[Poly]:
        return divisors(self.modulus)

    @functools.cached_property
    def divisor_index(self) -> dict:
        return {d: i for i, d in enumerate(self.divisors)}

    @functools.cached_property
    def gcd_index(self) -> np.ndarray:
        """gcd(B, H) for each residue, as an index into ``divisors`` (gcd(0, H) = H)."""
        h = self.modulus
        di = self.divisor_index
        return np.array([di[poly_gcd(b, h)] for b in self.polys], dtype=np.int64)

    @functools.cached_property
    def unit_mask(self) -> np.ndarray:
        return self.gcd_index == 0  # divisors[0] is 1

    @functools.cached_property
    def unit_indices(self) -> np.ndarray:
        return np.flatnonzero(self.unit_mask)

    @functools.cached_property
    def divisor_gcd(self) -> np.ndarray:
        ds = self.divisors
        di = self.divisor_index
        return np.array([[di[poly_gcd(a, b)] for b in ds] for a in ds], dtype=np.int64)

    def reduce_to(self, d: Poly) -> np.ndarray:
        """Index of (B mod D) in the ring of D, for every residue B (D | H)."""
        d = d.monic()
        if not d.divides(self.modulus):
            raise PolyError(f"{d} does not divide {self.modulus}")
        return _reduction(self, d)

    def multiples_of(self, d: Poly) -> np.ndarray:
        """Residue indices B with D | B."""
        return np.flatnonzero(self.reduce_to(d) == 0)


@functools.lru_cache(maxsize=None)
def _reduction_cached(h: Poly, d: Poly):
    ring = ring_of(h)
    if ring.ndig == 0 or d.deg == 0:
        return np.zeros(ring.size, dtype=np.int64)
    sub = ring_of(d)
    images = np.array([sub.digits[(ring.polys[int(w)] % d).to_index()] for w in ring.weights], dtype=np.int64)
    return sub._encode(ring.digits @ images)


def _reduction(ring: ResidueRing, d: Poly):
    return _reduction_cached(ring.modulus, d)


@functools.lru_cache(maxsize=None)
def ring_of(h: Poly) -> ResidueRing:
    return ResidueRing(h.monic())
