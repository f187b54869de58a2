"""Brute-force and closed-form sides of the gcd-sum identity and its lemmas.

Every brute-force path enumerates residues explicitly through the lookup
tables in :mod:`fqmenon.residue`; closed forms use only divisor sums,
factorizations and exact rationals.  The two paths share nothing beyond the
basic ring arithmetic.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .budget import check_budget
from .chars import (
    AdditiveCharacter,
    DirichletCharacter,
    additive_character,
    characters,
    conductor,
    primitive_lift,
)
from .gf import FieldSpec
from .multfunc import (
    ArithFunc,
    MU,
    alternating_factor,
    dirichlet_convolution,
    euler_phi,
    get_function,
    moebius,
    phi_k_formula,
)
from .polyring import (
    Poly,
    abs_value,
    divisors,
    factorize,
    format_poly,
    poly_gcd,
    poly_lcm,
)
from .residue import ring_of
from .scalar import CycloSum, RootOfUnity, exact_equal, exact_value


class PreconditionError(ValueError):
    """Arguments violate an operation's preconditions."""


def _require(cond, msg):
    if not cond:
        raise PreconditionError(msg)


def _divides(d: Poly, h: Poly) -> bool:
    return not d.is_zero() and d.divides(h)


def _coprime(a: Poly, b: Poly) -> bool:
    if a.is_zero() and b.is_zero():
        return False
    return poly_gcd(a, b).deg == 0


# --- Lemma-level counts ---------------------------------------------------------

def count_coprime_progression(h: Poly, d: Poly, q: Poly, method: str = "brute") -> int:
    """#{K mod H : (K, H) = 1, K = Q mod D}."""
    h, d = h.monic(), d.monic()
    _require(_divides(d, h), f"{d} does not divide {h}")
    _require(_coprime(q, h), f"gcd({q}, {h}) != 1")
    if method == "closed":
        return euler_phi(h) // euler_phi(d)
    ring = ring_of(h)
    red = ring.reduce_to(d)[ring.unit_indices]
    return int(np.count_nonzero(red == ring_of(d).index(q)))


def g_count_table(h: Poly, d: Poly, m: Poly) -> np.ndarray:
    """counts[Q mod D, S mod M] = #{K unit mod H : K = Q mod D, K = S mod M}, by enumeration."""
    ring = ring_of(h)
    u = ring.unit_indices
    rd = ring.reduce_to(d)[u]
    rm = ring.reduce_to(m)[u]
    nd, nm = ring_of(d).size, ring_of(m).size
    return np.bincount(rd * nm + rm, minlength=nd * nm).reshape(nd, nm)


def g_count_table_closed(h: Poly, d: Poly, m: Poly) -> np.ndarray:
    """Closed form of :func:`g_count_table`, indexed by residues Q mod H and S mod H."""
    ring = ring_of(h)
    g = poly_gcd(d, m)
    qd = ring_of(d).unit_mask[ring.reduce_to(d)]
    sm = ring_of(m).unit_mask[ring.reduce_to(m)]
    rg = ring.reduce_to(g)
    ok = qd[:, None] & sm[None, :] & (rg[:, None] == rg[None, :])
    return np.where(ok, euler_phi(h) // euler_phi(poly_lcm(d, m)), 0)


def g_count_table_local(h: Poly, d: Poly, m: Poly) -> np.ndarray:
    """Product over P^a || H of the enumerated local counts, indexed by residues Q, S mod H."""
    ring = ring_of(h)
    fd, fm = factorize(d), factorize(m)
    out = np.ones((ring.size, ring.size), dtype=np.int64)
    for p, a in factorize(h).factors:
        pa, pb, pc = p**a, p ** fd.valuation(p), p ** fm.valuation(p)
        local = g_count_table(pa, pb, pc)
        rq = ring_of(pa).reduce_to(pb)[ring.reduce_to(pa)]
        rs = ring_of(pa).reduce_to(pc)[ring.reduce_to(pa)]
        out *= local[rq[:, None], rs[None, :]]
    return out


def g_count_table_brute(h: Poly, d: Poly, m: Poly) -> np.ndarray:
    """:func:`g_count_table` re-indexed by residues Q, S mod H."""
    ring = ring_of(h)
    t = g_count_table(h, d, m)
    return t[ring.reduce_to(d)[:, None], ring.reduce_to(m)[None, :]]


def g_count(h: Poly, d: Poly, m: Poly, q: Poly, s: Poly, method: str = "brute") -> int:
    """#{K mod H : (K, H) = 1, K = Q mod D, K = S mod M}.

    ``method`` is ``brute`` (enumeration), ``closed`` (phi(H)/phi([D, M]) under
    compatibility) or ``local`` (product of brute-force prime-power counts).
    """
    h, d, m = h.monic(), d.monic(), m.monic()
    _require(_divides(d, h) and _divides(m, h), "D and M must divide H")
    if method == "brute":
        ring_d, ring_m = ring_of(d), ring_of(m)
        return int(g_count_table(h, d, m)[ring_d.index(q), ring_m.index(s)])
    if method == "closed":
        g = poly_gcd(d, m)
        if _coprime(q, d) and _coprime(s, m) and ((q - s) % g).is_zero():
            return euler_phi(h) // euler_phi(poly_lcm(d, m))
        return 0
    if method == "local":
        fac = factorize(h)
        fd, fm = factorize(d), factorize(m)
        total = 1
        for p, a in fac.factors:
            total *= g_count(p**a, p ** fd.valuation(p), p ** fm.valuation(p), q, s, "brute")
        return total
    raise ValueError(f"unknown method {method!r}")


def primitive_progression_sum(psi: DirichletCharacter, q: Poly, s: Poly, method: str = "brute"):
    """Sum of psi(U) over U mod D with U = S mod Q (psi primitive mod D)."""
    d = psi.modulus
    q = q.monic()
    _require(_divides(q, d), f"{q} does not divide {d}")
    _require(_coprime(s, d), f"gcd({s}, {d}) != 1")
    if method == "closed":
        return psi(s) if q == d else 0
    ring = ring_of(d)
    sel = ring.reduce_to(q) == ring_of(q).index(s)
    vals = psi.value_exponents[sel]
    vals = vals[vals >= 0]
    e = psi.group.exponent
    return CycloSum(e, [int(c) for c in np.bincount(vals, minlength=e)])


def _unit_tuples(h: Poly, l: int, budget=None):
    # (first coordinate, sum) for every l-tuple of units mod H
    ring = ring_of(h)
    check_budget(ring.size**l, budget)
    u = ring.unit_indices
    first = u.copy()
    sums = u.copy()
    for _ in range(l - 1):
        first = np.repeat(first, len(u))
        sums = ring.add[sums][:, u].ravel()
    return first, sums


def n_l_table(h: Poly, m: Poly, n: Poly, d: Poly, s: Poly, l: int, budget=None) -> np.ndarray:
    """N_l(H, M, N, D, S, U) for every residue U mod D, by enumerating unit l-tuples."""
    h, m, n, d = h.monic(), m.monic(), n.monic(), d.monic()
    _require(l >= 1, "l must be >= 1")
    _require(all(_divides(x, h) for x in (m, n, d)), "M, N, D must divide H")
    _require(_coprime(s, h), f"gcd({s}, {h}) != 1")
    ring = ring_of(h)
    first, sums = _unit_tuples(h, l, budget)
    ok = (ring.reduce_to(m)[sums] == ring_of(m).index(s)) & (ring.reduce_to(n)[sums] == 0)
    return np.bincount(ring.reduce_to(d)[first[ok]], minlength=ring_of(d).size)


def n_l_count(h, m, n, d, s, u, l, budget=None) -> int:
    """Count unit l-tuples with K_1 = U mod D, sum = S mod M and sum = 0 mod N."""
    return int(n_l_table(h, m, n, d, s, l, budget)[ring_of(d.monic()).index(u)])


def n_l_recursion_rhs(h, m, n, d, s, u, l, budget=None) -> Fraction:
    """phi(H)/(phi(M) phi(N)) * sum_{J|M} mu(J) sum_{I|N} mu(I) N_{l-1}(H, J, I, D, S, U)."""
    _require(l >= 2, "the recursion needs l >= 2")
    _require(_coprime(m, n), "M and N must be coprime")
    total = 0
    for j in divisors(m):
        mj = moebius(j)
        if not mj:
            continue
        for i in divisors(n):
            mi = moebius(i)
            if mi:
                total += mj * mi * n_l_count(h, j, i, d, s, u, l - 1, budget)
    return Fraction(euler_phi(h), euler_phi(m) * euler_phi(n)) * total


def n_l_recursion_check(h, m, n, d, s, u, l, budget=None) -> bool:
    _require(_coprime(m, n), "M and N must be coprime")
    _require(l >= 2, "the recursion needs l >= 2")
    return n_l_count(h, m, n, d, s, u, l, budget) == n_l_recursion_rhs(h, m, n, d, s, u, l, budget)


def weighted_sum_brute(h, m, n, l, chi: DirichletCharacter, s, budget=None) -> CycloSum:
    """Sum over units U mod D of psi(U) N_l(H, M, N, D, S, U), psi the primitive lift of chi."""
    psi = primitive_lift(chi)
    d = psi.modulus
    table = n_l_table(h, m, n, d, s, l, budget)
    ks = psi.value_exponents
    e = psi.group.exponent
    coeffs = [0] * e
    for idx in np.flatnonzero(table):
        k = int(ks[idx])
        if k >= 0:
            coeffs[k] += int(table[idx])
    return CycloSum(e, coeffs)


def weighted_sum_closed(h, m, n, l, chi: DirichletCharacter, s):
    """Closed form of the character-weighted N_l sum (zero unless D | M)."""
    h, m, n = h.monic(), m.monic(), n.monic()
    _require(l >= 2, "the closed form needs l >= 2")
    _require(_coprime(m, n), "M and N must be coprime")
    psi = primitive_lift(chi)
    d = psi.modulus
    if not d.divides(m):
        return 0
    coeff = Fraction(euler_phi(h) ** l, euler_phi(m) * euler_phi(n)) * moebius(d) ** (l - 1)
    d_primes = factorize(d).primes()
    for p in d_primes:
        coeff /= (abs_value(p) - 1) ** (l - 1)
    for p in factorize(m).primes():
        if p not in d_primes:
            coeff *= alternating_factor(abs_value(p), l)
    for p in factorize(n).primes():
        coeff *= alternating_factor(abs_value(p), l - 1)
    return psi(s) * coeff


def weighted_sum_check(h, m, n, l, chi, s, budget=None) -> bool:
    return exact_equal(weighted_sum_brute(h, m, n, l, chi, s, budget), weighted_sum_closed(h, m, n, l, chi, s))


def h0_compute(h: Poly, d: Poly) -> Poly:
    """The part of H supported on the primes of D."""
    h, d = h.monic(), d.monic()
    _require(_divides(d, h), f"{d} does not divide {h}")
    fh = factorize(h)
    out = Poly.const(h.field, 1)
    for p in factorize(d).primes():
        out = out * p ** fh.valuation(p)
    assert set(factorize(out).primes()) == set(factorize(d).primes())
    assert _coprime(out, h // out)
    return out


# --- the identity -----------------------------------------------------------------

@dataclass(frozen=True)
class GcdSumInstance:
    field: FieldSpec
    H: Poly
    l: int
    s: int
    chi_index: int
    lambdas: tuple[Poly, ...]
    S: Poly
    F: str
    mode: str = "auto"

    def __post_init__(self):
        _require(not self.H.is_zero() and self.H.deg >= 1, "H must have degree >= 1")
        _require(self.H.is_monic(), "H must be monic")
        _require(self.l >= 1, "l must be >= 1")
        _require(self.s >= 0, "s must be >= 0")
        _require(len(self.lambdas) == self.s, f"expected {self.s} additive characters, got {len(self.lambdas)}")
        _require(all(w.deg < self.H.deg for w in self.lambdas), "every W_i needs deg W_i < deg H")
        _require(_coprime(self.S, self.H), f"gcd(S, H) != 1 for S = {self.S}")
        _require(0 <= self.chi_index < euler_phi(self.H), f"character index {self.chi_index} out of range")
        _require(self.mode in ("auto", "exact", "float"), f"unknown mode {self.mode!r}")
        get_function(self.F)

    @property
    def chi(self) -> DirichletCharacter:
        return characters(self.H)[self.chi_index]

    @property
    def additive(self) -> list[AdditiveCharacter]:
        return [additive_character(self.H, w) for w in self.lambdas]

    @property
    def func(self) -> ArithFunc:
        return get_function(self.F)

    def describe(self) -> dict:
        return {
            "field": str(self.field),
            "H": format_poly(self.H),
            "l": self.l,
            "s": self.s,
            "chi": self.chi_index,
            "lambdas": [format_poly(w) for w in self.lambdas],
            "S": format_poly(self.S),
            "F": self.F,
            "mode": self.mode,
        }

    def rational_terms(self) -> bool:
        """Every summand on both sides is rational."""
        return self.func.integral and self.chi.is_real() and all(a.is_real() for a in self.additive)


def estimate_cost(inst: GcdSumInstance) -> int:
    return inst.field.q ** (int(inst.H.deg) * (inst.l + inst.s))


def gcd_sum_lhs(inst: GcdSumInstance, budget=None):
    """Exhaustive left side.

    All unit l-tuples K and all s-tuples B of residues are enumerated.  The
    summand depends on K only through chi(K_1) and gcd(sum K - S, H), so K is
    tallied by that pair before the B enumeration; the total is an exact
    cyclotomic sum when F is rational-valued.
    """
    check_budget(estimate_cost(inst), budget)
    h = inst.H
    ring = ring_of(h)
    chi = inst.chi
    e = chi.group.exponent
    p = h.field.p
    func = inst.func

    first, sums = _unit_tuples(h, inst.l, budget)
    keep = ring.unit_mask[sums]
    x = ring.add[sums[keep], ring.neg[ring.index(inst.S)]]
    gx = ring.gcd_index[x]
    kx = chi.value_exponents[first[keep]]
    ndiv = len(ring.divisors)
    k_counts = np.bincount(gx * e + kx, minlength=ndiv * e).reshape(ndiv, e)

    fvals = [func(dv) for dv in ring.divisors]
    lam_exps = [a.value_exponents for a in inst.additive]
    order = math.lcm(e, p)
    exact = func.integral
    total = CycloSum(order) if exact else 0j

    for dstart in np.flatnonzero(k_counts.sum(axis=1)):
        g = np.array([dstart])
        lam = np.zeros(1, dtype=np.int64)
        for le in lam_exps:
            g = ring.divisor_gcd[g[:, None], ring.gcd_index[None, :]].ravel()
            lam = ((lam[:, None] + le[None, :]) % p).ravel()
        b_counts = np.bincount(g * p + lam, minlength=ndiv * p).reshape(ndiv, p)
        inner = [0] * p  # sum_B F(gcd) zeta_p^lam, by exponent of zeta_p
        for gi, li in zip(*np.nonzero(b_counts)):
            inner[li] += int(b_counts[gi, li]) * fvals[gi]
        for ki in np.flatnonzero(k_counts[dstart]):
            c = int(k_counts[dstart, ki])
            for li, v in enumerate(inner):
                if v:
                    j = (int(ki) * (order // e) + li * (order // p)) % order
                    if exact:
                        total.coeffs[j] += c * v
                    else:
                        total += c * v * complex(RootOfUnity(order, j))
    if exact:
        r = total.rational_value()
        return r if r is not None else total
    return total


def gcd_sum_lhs_naive(inst: GcdSumInstance, budget=None):
    """Term-by-term loop over every (K, B) tuple of residues; only for tiny instances."""
    check_budget(estimate_cost(inst), budget)
    h = inst.H
    ring = ring_of(h)
    chi = inst.chi
    lams = inst.additive
    func = inst.func
    total = CycloSum(math.lcm(chi.group.exponent, h.field.p)) if func.integral else 0j
    residues = ring.polys
    for ks in itertools.product(residues, repeat=inst.l):
        prod = Poly.const(h.field, 1)
        for k in ks:
            prod = prod * k
        tot = sum(ks, Poly(h.field, ()))
        if not _coprime(tot, h) or not _coprime(prod, h):
            continue
        wchi = chi(ks[0])
        for bs in itertools.product(residues, repeat=inst.s):
            g = tot - inst.S
            for b in bs:
                g = b if g.is_zero() else (g if b.is_zero() else poly_gcd(g, b))
            g = h if g.is_zero() else poly_gcd(g, h)
            term = wchi * func(g)
            for lam, b in zip(lams, bs):
                term = term * lam(b)
            total = total + (term if func.integral else complex(term))
    if isinstance(total, CycloSum):
        r = total.rational_value()
        return r if r is not None else total
    return total


def phi_l_of(h: Poly, l: int) -> int:
    if h.deg == 0:
        return 1
    return phi_k_formula(h, l)


def gcd_sum_rhs(inst: GcdSumInstance):
    """Closed-form right side."""
    h, l, s = inst.H, inst.l, inst.s
    chi = inst.chi
    d = conductor(chi)
    psi = primitive_lift(chi)
    h0 = h0_compute(h, d)
    func = inst.func

    fh0, fd = factorize(h0), factorize(d)
    phi_part = 1
    for p in fd.primes():
        e = l * fh0.valuation(p) - (l - 1) * fd.valuation(p)
        a = abs_value(p)
        phi_part *= a ** (e - 1) * (a - 1)

    mu_f = lambda mm: dirichlet_convolution(MU, func, mm)
    div_sum = Fraction(0) if func.integral else 0.0
    for mm in divisors(h):
        if not d.divides(mm):
            continue
        cof = h // mm
        if not all(cof.divides(w) for w in inst.lambdas):
            continue
        term = mu_f(mm) * abs_value(cof) ** s
        div_sum += Fraction(term) / euler_phi(mm) if func.integral else term / euler_phi(mm)

    coeff = moebius(d) ** (l - 1) * phi_part * phi_l_of(h // h0, l) * div_sum
    value = psi(inst.S)
    if not func.integral:
        return complex(value) * coeff
    if coeff == 0:
        return 0
    out = value * coeff
    r = out.rational_value()
    if r is not None:
        return r.numerator if isinstance(r, Fraction) and r.denominator == 1 else r
    return out


@dataclass
class VerificationReport:
    instance: dict
    lhs: object
    rhs: object
    abs_diff: float
    passed: bool
    terms: int
    elapsed_ms: int
    mode: str
    extra: dict = field(default_factory=dict)

    def to_record(self, timing: bool = True) -> dict:
        lc, rc = complex(self.lhs), complex(self.rhs)
        rec = {
            "instance": self.instance,
            "lhs": [lc.real, lc.imag],
            "rhs": [rc.real, rc.imag],
            "abs_diff": self.abs_diff,
            "pass": self.passed,
            "terms": self.terms,
            "elapsed_ms": self.elapsed_ms if timing else 0,
            "mode": self.mode,
        }
        if self.mode == "exact":
            rec["lhs_exact"] = str(_as_exact(self.lhs))
            rec["rhs_exact"] = str(_as_exact(self.rhs))
        rec.update(self.extra)
        return rec


def _as_exact(value):
    r = exact_value(value)
    if r is None:
        return value
    if isinstance(r, Fraction) and r.denominator == 1:
        return r.numerator
    return r


def compare(lhs, rhs, mode: str, tol: float = 1e-6) -> tuple[bool, float]:
    """Exact equality in exact mode; relative-or-absolute tolerance otherwise."""
    diff = abs(complex(lhs) - complex(rhs))
    if mode == "exact":
        return exact_equal(lhs, rhs), diff
    return diff <= tol * max(1.0, abs(complex(lhs))), diff


def resolve_mode(inst: GcdSumInstance) -> str:
    if inst.mode == "auto":
        return "exact" if inst.rational_terms() else "float"
    if inst.mode == "exact" and not inst.func.integral:
        raise PreconditionError(f"exact mode needs a rational-valued F, got {inst.F}")
    return inst.mode


def verify_gcd_sum(inst: GcdSumInstance, tol: float = 1e-6, budget=None, rhs_override=None) -> VerificationReport:
    """Evaluate both sides and compare; ``rhs_override`` replaces the closed form (fault injection)."""
    mode = resolve_mode(inst)
    t0 = time.perf_counter()
    lhs = gcd_sum_lhs(inst, budget)
    rhs = gcd_sum_rhs(inst) if rhs_override is None else rhs_override
    elapsed = int(round((time.perf_counter() - t0) * 1000))
    if mode == "float":
        lhs, rhs = complex(lhs), complex(rhs)
    ok, diff = compare(lhs, rhs, mode, tol)
    return VerificationReport(inst.describe(), lhs, rhs, diff, ok, estimate_cost(inst), elapsed, mode)


def make_instance(field: FieldSpec, h: Poly, l: int, s: int, chi: int, lambdas, S: Poly, F: str, mode="auto"):
    return GcdSumInstance(field, h.monic(), l, s, chi, tuple(w % h.monic() for w in lambdas), S, F, mode)
