"""Finite fields GF(p^n) = F_p[x]/(m(x)).

Elements carry their polynomial-basis coordinates.  Internally every element
also has an integer *code* ``sum(c_i * p**i)`` which the polynomial layer uses
as a compact key; the field precomputes log/antilog tables over codes so that
multiplication is a table lookup.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field

MAX_ORDER = 2**16


class FieldError(ValueError):
    """Invalid field construction or field operation."""


class FieldParseError(FieldError):
    """Malformed field specification text."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# --- plain F_p[x] helpers on ascending coefficient lists -------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, b, p):
    """Remainder of a by b over F_p (b nonzero, lists ascending)."""
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def fp_is_irreducible(modulus, p: int) -> bool:
    """Trial division of a monic polynomial by every monic polynomial of degree 1..n//2."""
    n = len(modulus) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _fp_mod(modulus, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n (low-degree coefficient first)."""
    for low in itertools.product(range(p), repeat=n):
        cand = tuple(low) + (1,)
        if fp_is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")  # unreachable


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field F_q, q = p**n, built on a monic irreducible modulus of degree n."""

    p: int
    n: int
    modulus: tuple[int, ...]
    _exp: tuple = field(repr=False, compare=False, default=())
    _log: tuple = field(repr=False, compare=False, default=())

    @property
    def q(self) -> int:
        return self.p**self.n

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.n, self.modulus) == (
            other.p,
            other.n,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __str__(self):
        return f"p={self.p},n={self.n},mod=[{','.join(map(str, self.modulus))}]"

    # -- codes <-> coordinates
    def decode(self, code: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.n):
            code, r = divmod(code, p)
            out.append(r)
        return tuple(out)

    def encode(self, coeffs) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    # -- element constructors
    def __call__(self, value) -> FieldElement:
        """Element from an integer of the prime subfield or a coordinate vector."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.decode(value % self.p))
        coeffs = tuple(value)
        if len(coeffs) != self.n or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"expected {self.n} coordinates in [0, {self.p})")
        return FieldElement(self, coeffs)

    def from_code(self, code: int) -> FieldElement:
        return FieldElement(self, self.decode(code))

    def elements(self):
        return [self.from_code(c) for c in range(self.q)]

    @property
    def zero(self) -> FieldElement:
        return self.from_code(0)

    @property
    def one(self) -> FieldElement:
        return self.from_code(1)

    @property
    def gen(self) -> FieldElement:
        """The class of x; for n == 1 this is the constant 0 (modulus x) or a constant root."""
        if self.n == 1:
            return self.from_code(-self.modulus[0] % self.p)
        return self.from_code(self.p)

    # -- code-level arithmetic (used by the polynomial layer)
    def add_code(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if self.q <= 1024:
            return self._add_table[a][b]
        return self.encode([(x + y) % self.p for x, y in zip(self.decode(a), self.decode(b))])

    def neg_code(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        return self._neg_table[a]

    def sub_code(self, a: int, b: int) -> int:
        return self.add_code(a, self.neg_code(b))

    def mul_code(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return a * b % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.n == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def pow_code(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv_code(a), -e
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.n == 1:
            return pow(a, e, self.p)
        return self._exp[self._log[a] * e % (self.q - 1)]

    @functools.cached_property
    def _add_table(self):
        p, q = self.p, self.q
        digits = [self.decode(c) for c in range(q)]
        return [
            [self.encode([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
            for a in range(q)
        ]

    @functools.cached_property
    def _neg_table(self):
        return [self.encode([-c % self.p for c in self.decode(a)]) for a in range(self.q)]

    def trace_code(self, a: int) -> int:
        """Tr(a) = a + a^p + ... + a^(p^(n-1)) as an integer in [0, p)."""
        total, x = 0, a
        for _ in range(self.n):
            total = self.add_code(total, x)
            x = self.pow_code(x, self.p)
        if total >= self.p:
            raise AssertionError("trace left the prime subfield")
        return total

    # -- element-level API
    def add(self, *xs: FieldElement) -> FieldElement:
        code = 0
        for x in xs:
            code = self.add_code(code, self(x).code)
        return self.from_code(code)

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.from_code(self.sub_code(self(x).code, self(y).code))

    def mul(self, *xs: FieldElement) -> FieldElement:
        code = 1
        for x in xs:
            code = self.mul_code(code, self(x).code)
        return self.from_code(code)

    def inv(self, x: FieldElement) -> FieldElement:
        return self.from_code(self.inv_code(self(x).code))

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        return self.from_code(self.pow_code(self(x).code, e))

    def trace(self, x: FieldElement) -> FieldElement:
        return self.from_code(self.trace_code(self(x).code))


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec = field(repr=False)
    coeffs: tuple[int, ...]

    @property
    def code(self) -> int:
        return self.field.encode(self.coeffs)

    def __int__(self):
        """Value in [0, p) for elements of the prime subfield."""
        if any(self.coeffs[1:]):
            raise FieldError("element is not in the prime subfield")
        return self.coeffs[0]

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        return self.field.add(self, self.field(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field.sub(self, self.field(other))

    def __rsub__(self, other):
        return self.field.sub(self.field(other), self)

    def __neg__(self):
        return self.field.from_code(self.field.neg_code(self.code))

    def __mul__(self, other):
        return self.field.mul(self, self.field(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self.field.inv(self.field(other))

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def inverse(self):
        return self.field.inv(self)

    def trace(self):
        return self.field.trace(self)

    def __str__(self):
        if self.field.n == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(map(str, self.coeffs)) + "]"


def _mulmod_fp(a, b, modulus, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _fp_mod(prod, modulus, p) if prod else []


def _log_tables(p, n, modulus):
    q = p**n
    def enc(v):
        v = list(v) + [0] * (n - len(v))
        code = 0
        for c in reversed(v):
            code = code * p + c
        return code
    for g in range(2, q):
        gv = []
        code = g
        for _ in range(n):
            code, r = divmod(code, p)
            gv.append(r)
        gv = _trim(gv)
        exp = [0] * (q - 1)
        x = [1]
        ok = True
        for i in range(q - 1):
            c = enc(x)
            if i > 0 and c == 1:
                ok = False
                break
            exp[i] = c
            x = _mulmod_fp(x, gv, list(modulus), p)
        if ok:
            log = [0] * q
            for i, c in enumerate(exp):
                log[c] = i
            return tuple(exp), tuple(log)
    raise FieldError("no primitive element found")  # unreachable for a field


def ff_make(p: int, n: int = 1, modulus=None) -> FieldSpec:
    """Build and validate F_{p^n}.

    ``modulus`` lists coefficients in ascending degree and must be monic and
    irreducible of degree n.  When omitted the lexicographically smallest
    monic irreducible is used.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise FieldError(f"extension degree must be >= 1, got {n}")
    if p**n > MAX_ORDER:
        raise FieldError(f"q = {p}^{n} exceeds the configured cap {MAX_ORDER}")
    if modulus is None:
        modulus = smallest_irreducible(p, n)
    modulus = tuple(int(c) for c in modulus)
    if len(modulus) != n + 1:
        raise FieldError(f"modulus must have degree {n}")
    if any(not 0 <= c < p for c in modulus):
        raise FieldError(f"modulus coefficients must lie in [0, {p})")
    if modulus[-1] != 1:
        raise FieldError("modulus must be monic")
    if not fp_is_irreducible(modulus, p):
        raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
    exp, log = ((), ()) if n == 1 else _log_tables(p, n, modulus)
    return _cached_field(p, n, modulus, exp, log)


@functools.lru_cache(maxsize=None)
def _cached_field(p, n, modulus, exp, log):
    return FieldSpec(p, n, modulus, exp, log)


_FIELD_RE = re.compile(r"^\s*p\s*=\s*(\d+)\s*(?:,\s*n\s*=\s*(\d+)\s*)?(?:,\s*mod\s*=\s*\[([\d\s,]*)\]\s*)?$")


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p=2,n=2,mod=[1,1,1]"``; n defaults to 1 and mod to the default modulus."""
    m = _FIELD_RE.match(text)
    if not m:
        raise FieldParseError(f"cannot parse field spec {text!r}")
    p = int(m.group(1))
    n = int(m.group(2)) if m.group(2) else 1
    modulus = None
    if m.group(3) is not None:
        parts = [s for s in m.group(3).split(",") if s.strip()]
        modulus = [int(s) for s in parts]
    return ff_make(p, n, modulus)
