"""Arithmetic in A = F_q[T].

A :class:`Poly` stores the integer codes of its coefficients (see
:mod:`fqmenon.gf`), ascending degree, with no trailing zeros.  gcd, lcm and
divisor outputs are always monic.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass

from .gf import FieldElement, FieldSpec


class PolyError(ValueError):
    """Precondition violation in polynomial arithmetic."""


class PolyParseError(ValueError):
    """Malformed polynomial text."""


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(self, "coeffs", _trim(self.coeffs))

    # -- constructors
    @classmethod
    def from_ints(cls, field: FieldSpec, coeffs) -> Poly:
        """Coefficients given as element codes (prime-field values when n == 1)."""
        coeffs = tuple(int(c) for c in coeffs)
        if any(not 0 <= c < field.q for c in coeffs):
            raise PolyError(f"coefficient codes must lie in [0, {field.q})")
        return cls(field, _trim(coeffs))

    @classmethod
    def from_elements(cls, field: FieldSpec, coeffs) -> Poly:
        return cls(field, _trim(field(c).code for c in coeffs))

    @classmethod
    def const(cls, field: FieldSpec, c: int = 1) -> Poly:
        return cls(field, _trim((c,)))

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, c: int = 1) -> Poly:
        return cls(field, _trim((0,) * degree + (c,)))

    @classmethod
    def T(cls, field: FieldSpec) -> Poly:
        return cls.monomial(field, 1)

    # -- basic properties
    @property
    def deg(self):
        """Degree; the zero polynomial has degree -inf."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def is_monic(self) -> bool:
        return self.lc == 1

    def coefficients(self) -> list[FieldElement]:
        return [self.field.from_code(c) for c in self.coeffs]

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def sort_key(self):
        """Canonical order: degree, then coefficient codes from the constant term up."""
        return (len(self.coeffs), self.coeffs)

    def __lt__(self, other: Poly):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic
    def _check(self, other) -> Poly:
        if isinstance(other, int):
            return Poly.const(self.field, self.field(other).code)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.field != self.field:
            raise PolyError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add_code(out[i], c)
        return Poly(f, _trim(out))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Poly(f, tuple(f.neg_code(c) for c in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(f, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = f.add_code(out[i + j], f.mul_code(x, y))
        return Poly(f, _trim(out))

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        """Multiply by the field element with code c."""
        f = self.field
        return Poly(f, _trim(f.mul_code(c, x) for x in self.coeffs))

    def __pow__(self, e: int):
        if e < 0:
            raise PolyError("negative power of a polynomial")
        result = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(self.field.inv_code(self.lc))

    def divides(self, other: Poly) -> bool:
        """True when self | other (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # -- residue codes
    def to_index(self) -> int:
        """Integer code sum(c_i * q**i); a bijection onto residues of bounded degree."""
        q = self.field.q
        idx = 0
        for c in reversed(self.coeffs):
            idx = idx * q + c
        return idx

    @classmethod
    def from_index(cls, field: FieldSpec, idx: int) -> Poly:
        q = field.q
        out = []
        while idx:
            idx, r = divmod(idx, q)
            out.append(r)
        return cls(field, tuple(out))


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.field != b.field:
        raise PolyError("polynomials over different fields")
    f = a.field
    r = list(a.coeffs)
    bc = b.coeffs
    db = len(bc) - 1
    inv_lead = f.inv_code(bc[-1])
    if len(r) <= db:
        return Poly(f, ()), a
    quot = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = f.mul_code(c, inv_lead)
        quot[k - db] = c
        for i, y in enumerate(bc):
            if y:
                r[k - db + i] = f.sub_code(r[k - db + i], f.mul_code(c, y))
    return Poly(f, _trim(quot)), Poly(f, _trim(r))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, H) is monic(H) and gcd(0, 0) is an error."""
    if a.field != b.field:
        raise PolyError("polynomials over different fields")
    if a.is_zero() and b.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def gcd_many(*polys: Poly) -> Poly:
    """Left-to-right gcd chain; zero entries are skipped by the convention gcd(0, X) = monic(X)."""
    acc = None
    for x in polys:
        if acc is None:
            acc = x
        elif acc.is_zero():
            acc = x
        elif not x.is_zero():
            acc = poly_gcd(acc, x)
    if acc is None or acc.is_zero():
        raise PolyError("gcd of zero polynomials is undefined")
    return acc.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        raise PolyError("lcm of the zero polynomial")
    g = poly_gcd(a, b)
    return ((a * b) // g).monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(f, 1), Poly(f, ())
    t0, t1 = Poly(f, ()), Poly.const(f, 1)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    k = f.inv_code(r0.lc)
    return r0.scale(k), s0.scale(k), t0.scale(k)


def crt_solve(pairs) -> Poly:
    """Unique X with deg X < deg(prod moduli) and X = r_i mod m_i for each pair."""
    pairs = list(pairs)
    if not pairs:
        raise PolyError("crt_solve needs at least one congruence")
    field = pairs[0][1].field
    for _, m in pairs:
        if m.is_zero() or m.deg < 1:
            raise PolyError("CRT moduli must have degree >= 1")
    for (_, m1), (_, m2) in itertools.combinations(pairs, 2):
        if poly_gcd(m1, m2).deg > 0:
            raise PolyError(f"moduli {m1} and {m2} are not coprime")
    x = Poly(field, ())
    modulus = Poly.const(field, 1)
    for r, m in pairs:
        # x + modulus*k = r (mod m)
        _, inv, _ = poly_xgcd(modulus % m, m)
        k = ((r - x) * inv) % m
        x = x + modulus * k
        modulus = modulus * m
        x = x % modulus
    return x


def abs_value(h: Poly) -> int:
    """|H| = q**deg H."""
    if h.is_zero():
        raise PolyError("|0| is not defined here")
    return h.field.q ** h.deg


# --- enumeration -----------------------------------------------------------

def polys_of_degree_below(field: FieldSpec, m: int):
    """All polynomials of degree < m in canonical order."""
    yield Poly(field, ())
    q = field.q
    for d in range(m):
        for lead in range(1, q):
            for low in itertools.product(range(q), repeat=d):
                yield Poly(field, low + (lead,))


def monic_polys(field: FieldSpec, d: int):
    """Monic polynomials of degree exactly d, canonical order."""
    for low in itertools.product(range(field.q), repeat=d):
        yield Poly(field, low + (1,))


def residues(h: Poly):
    if h.is_zero() or h.deg < 1:
        raise PolyError("residue enumeration needs deg H >= 1")
    return polys_of_degree_below(h.field, h.deg)


def units(h: Poly):
    for r in residues(h):
        if not r.is_zero() and poly_gcd(r, h).deg == 0:
            yield r


@functools.lru_cache(maxsize=None)
def irreducibles(field: FieldSpec, d: int) -> tuple[Poly, ...]:
    """Monic irreducibles of degree d, found by sieving with all lower-degree irreducibles."""
    if d < 1:
        return ()
    smaller = [p for e in range(1, d // 2 + 1) for p in irreducibles(field, e)]
    out = []
    for cand in monic_polys(field, d):
        if all(not p.divides(cand) for p in smaller):
            out.append(cand)
    return tuple(out)


@dataclass(frozen=True)
class Factorization:
    unit: FieldElement
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        out = Poly.const(self.unit.field, self.unit.code)
        for p, e in self.factors:
            out = out * p**e
        return out

    def primes(self) -> list[Poly]:
        return [p for p, _ in self.factors]

    def valuation(self, p: Poly) -> int:
        for pp, e in self.factors:
            if pp == p:
                return e
        return 0

    def __str__(self):
        parts = []
        for p, e in self.factors:
            s = str(p) if len(p.coeffs) == 2 and p.coeffs[0] == 0 else f"({p})"
            parts.append(s if e == 1 else f"{s}^{e}")
        if self.unit.code != 1 or not parts:
            parts.insert(0, str(self.unit))
        return "*".join(parts)


@functools.lru_cache(maxsize=4096)
def factorize(h: Poly) -> Factorization:
    """Trial division by monic irreducibles of increasing degree."""
    if h.is_zero():
        raise PolyError("cannot factor the zero polynomial")
    unit = h.lc
    rest = h.monic()
    factors = []
    d = 1
    while rest.deg >= 1:
        if 2 * d > rest.deg:
            factors.append((rest, 1))
            break
        for p in irreducibles(h.field, d):
            e = 0
            while True:
                quo, rem = divmod(rest, p)
                if not rem.is_zero():
                    break
                rest, e = quo, e + 1
            if e:
                factors.append((p, e))
        d += 1
    factors.sort(key=lambda pe: pe[0].sort_key())
    return Factorization(h.field.from_code(unit), tuple(factors))


def divisors(h: Poly) -> list[Poly]:
    """All monic divisors, canonical order."""
    fac = factorize(h)
    out = []
    for exps in itertools.product(*(range(e + 1) for _, e in fac.factors)):
        d = Poly.const(h.field, 1)
        for (p, _), k in zip(fac.factors, exps):
            if k:
                d = d * p**k
        out.append(d)
    out.sort(key=Poly.sort_key)
    return out


def radical(h: Poly) -> Poly:
    out = Poly.const(h.field, 1)
    for p, _ in factorize(h).factors:
        out = out * p
    return out


# --- text format -----------------------------------------------------------

def format_coeff(field: FieldSpec, code: int) -> str:
    if code < field.p:
        return str(code)
    return "[" + ",".join(map(str, field.decode(code))) + "]"


def format_poly(h: Poly) -> str:
    """Canonical symbolic text, nonzero terms in descending degree."""
    if h.is_zero():
        return "0"
    f = h.field
    terms = []
    for k in range(len(h.coeffs) - 1, -1, -1):
        c = h.coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
        if k == 0:
            terms.append(format_coeff(f, c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{format_coeff(f, c)}*{mono}")
    return "+".join(terms)


def format_coeff_form(h: Poly) -> str:
    f = h.field
    return "coeffs=[" + ",".join(format_coeff(f, c) for c in h.coeffs) + "]"


_VEC = r"\[\s*\d+(?:\s*,\s*\d+)*\s*\]"
_COEF = rf"(?:\d+|{_VEC})"
_TERM_RE = re.compile(rf"^(?:(?P<c>{_COEF})\s*\*\s*)?T(?:\s*\^\s*(?P<e>\d+))?$|^(?P<k>{_COEF})$")


def _parse_coeff(field: FieldSpec, text: str) -> int:
    text = text.strip()
    if text.startswith("["):
        vals = [int(s) for s in text.strip("[]").split(",")]
        if len(vals) != field.n or any(not 0 <= v < field.p for v in vals):
            raise PolyParseError(f"coefficient {text} is not a vector of {field.n} values in [0, {field.p})")
        return field.encode(vals)
    v = int(text)
    if not 0 <= v < field.p:
        raise PolyParseError(f"integer coefficient {v} outside [0, {field.p})")
    return v


def _split_list(body: str) -> list[str]:
    # split the top level of "[a,b,[c,d]]" contents
    items, depth, cur = [], 0, ""
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise PolyParseError("unbalanced brackets")
        if ch == "," and depth == 0:
            items.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise PolyParseError("unbalanced brackets")
    if cur.strip() or items:
        items.append(cur)
    return items


def parse_poly(field: FieldSpec, text: str) -> Poly:
    """Parse ``"T^2+2*T+1"`` or ``"coeffs=[1,2,1]"`` (ascending); extension coefficients as ``[a,b]``."""
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial text")
    if s.startswith("coeffs"):
        m = re.fullmatch(r"coeffs\s*=\s*\[(.*)\]", s)
        if not m:
            raise PolyParseError(f"malformed coefficient form {text!r}")
        items = _split_list(m.group(1))
        if any(not it.strip() for it in items):
            raise PolyParseError(f"empty coefficient in {text!r}")
        return Poly(field, _trim(_parse_coeff(field, it) for it in items))
    if s == "0":
        return Poly(field, ())
    # split on top-level +/- keeping the sign
    terms, depth, cur, sign = [], 0, "", 1
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0:
            if not cur.strip():
                if terms or ch == "+":
                    raise PolyParseError(f"dangling operator in {text!r}")
                sign = -1
                continue
            terms.append((sign, cur.strip()))
            cur, sign = "", (1 if ch == "+" else -1)
        else:
            cur += ch
    if not cur.strip():
        raise PolyParseError(f"dangling operator in {text!r}")
    terms.append((sign, cur.strip()))

    coeffs: dict[int, int] = {}
    for sgn, term in terms:
        m = _TERM_RE.match(term)
        if not m:
            raise PolyParseError(f"cannot parse term {term!r}")
        if m.group("k") is not None:
            deg, c = 0, _parse_coeff(field, m.group("k"))
        else:
            deg = int(m.group("e")) if m.group("e") else 1
            c = _parse_coeff(field, m.group("c")) if m.group("c") else 1
        if c == 0:
            raise PolyParseError(f"zero coefficient in term {term!r}")
        if deg in coeffs:
            raise PolyParseError(f"repeated degree {deg} in {text!r}")
        coeffs[deg] = c if sgn > 0 else field.neg_code(c)
    top = max(coeffs)
    return Poly(field, _trim(coeffs.get(k, 0) for k in range(top + 1)))
