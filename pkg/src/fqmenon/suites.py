"""Exhaustive and sampled verification suites.

Each suite yields plain report records (dicts) in a fixed order.  Sampling
draws from ``numpy.random.default_rng(seed)`` (PCG64) in instance order, so a
given configuration always produces the same instance sequence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .budget import BudgetExceeded
from .chars import (
    additive_character,
    additive_sum_over_multiples_brute,
    additive_sum_over_multiples_closed,
    characters,
    primitive_lift,
)
from .gf import FieldSpec, ff_make
from .identity import (
    PreconditionError,
    GcdSumInstance,
    count_coprime_progression,
    estimate_cost,
    g_count_table_brute,
    g_count_table_closed,
    g_count_table_local,
    n_l_count,
    n_l_recursion_rhs,
    primitive_progression_sum,
    verify_gcd_sum,
    weighted_sum_brute,
    weighted_sum_closed,
)
from .multfunc import euler_phi, phi_k_brute, phi_k_formula
from .polyring import Poly, divisors, format_poly, monic_polys, poly_gcd, residues
from .residue import ring_of
from .scalar import exact_equal, exact_value

SUITES = (
    "lemma21", "lemma22", "lemma23", "lemma24", "lemma41",
    "lemma42", "lemma43", "theorem1", "theorem2",
)

FUNCTION_POOL = ("one", "abs", "tau", "mu", "phi", "indicator_unit", "abs_s:-1")


@dataclass
class RunConfig:
    fields: list[FieldSpec] = dc_field(default_factory=lambda: [ff_make(2)])
    maxdeg: int = 3
    H: Poly | None = None
    l: list[int] | None = None
    s: list[int] | None = None
    k: int = 3
    chi: int | None = None
    lambdas: list[Poly] | None = None
    S: Poly | None = None
    F: str | None = None
    seed: int = 0
    budget: int | None = None
    tol: float = 1e-6
    samples: int = 200
    timing: bool = True
    max_table: int = 64  # |H| cap for the additive-sum suite

    def moduli(self) -> list[Poly]:
        if self.H is not None:
            return [self.H.monic()]
        return [h for f in self.fields for d in range(1, self.maxdeg + 1) for h in monic_polys(f, d)]


def _fmt(value):
    r = exact_value(value)
    if r is None:
        return str(value)
    if isinstance(r, Fraction) and r.denominator == 1:
        return str(r.numerator)
    return str(r)


def make_record(suite, n, instance, lhs, rhs, passed, terms=0, ms=0, mode="exact", diff=None):
    lc, rc = complex(lhs), complex(rhs)
    rec = {
        "suite": suite,
        "id": f"{suite}-{n:05d}",
        "instance": instance,
        "lhs": [lc.real, lc.imag],
        "rhs": [rc.real, rc.imag],
        "abs_diff": abs(lc - rc) if diff is None else diff,
        "pass": bool(passed),
        "terms": int(terms),
        "elapsed_ms": int(ms),
        "mode": mode,
    }
    if mode == "exact":
        rec["lhs_exact"] = _fmt(lhs)
        rec["rhs_exact"] = _fmt(rhs)
    return rec


def budget_record(suite, n, instance, err: BudgetExceeded):
    return {
        "suite": suite,
        "id": f"{suite}-{n:05d}",
        "instance": instance,
        "status": "budget_exceeded",
        "pass": False,
        "terms": int(err.cost),
        "elapsed_ms": 0,
        "mode": "none",
    }


def _units(h):
    return [b for b in residues(h) if poly_gcd(b, h).deg == 0] if h.deg >= 1 else [Poly.const(h.field, 1)]


def _pick(rng, seq):
    return seq[int(rng.integers(len(seq)))]


class _Counter:
    def __init__(self, suite):
        self.suite = suite
        self.n = 0

    def __call__(self, *args, **kw):
        rec = make_record(self.suite, self.n, *args, **kw)
        self.n += 1
        return rec


# --- suites ---------------------------------------------------------------------

def suite_theorem1(cfg: RunConfig) -> Iterator[dict]:
    rec = _Counter("theorem1")
    for h in cfg.moduli():
        for k in range(1, cfg.k + 1):
            inst = {"field": str(h.field), "H": format_poly(h), "k": k}
            t0 = time.perf_counter()
            try:
                brute = phi_k_brute(h, k, cfg.budget)
            except BudgetExceeded as err:
                yield budget_record("theorem1", rec.n, inst, err)
                rec.n += 1
                continue
            closed = phi_k_formula(h, k)
            ms = (time.perf_counter() - t0) * 1000 if cfg.timing else 0
            yield rec(inst, brute, closed, brute == closed, h.field.q ** (int(h.deg) * k), ms)


def suite_lemma21(cfg):
    rec = _Counter("lemma21")
    for h in cfg.moduli():
        units = _units(h)
        for d in divisors(h):
            for q in units:
                inst = {"field": str(h.field), "H": format_poly(h), "D": format_poly(d), "Q": format_poly(q)}
                b = count_coprime_progression(h, d, q, "brute")
                c = count_coprime_progression(h, d, q, "closed")
                yield rec(inst, b, c, b == c, ring_of(h).size)


def _g_grid(cfg, suite, other):
    # one record per (H, D, M): every (Q, S) cell compared; lhs/rhs are the cell totals
    rec = _Counter(suite)
    for h in cfg.moduli():
        divs = divisors(h)
        for d in divs:
            for m in divs:
                inst = {"field": str(h.field), "H": format_poly(h), "D": format_poly(d), "M": format_poly(m)}
                b = g_count_table_brute(h, d, m)
                c = other(h, d, m)
                r = rec(inst, int(b.sum()), int(c.sum()), np.array_equal(b, c), b.size)
                r["cells"] = int(b.size)
                r["mismatches"] = int(np.count_nonzero(b != c))
                yield r


def suite_lemma22(cfg):
    """Global enumeration against the product of prime-power local counts."""
    return _g_grid(cfg, "lemma22", g_count_table_local)


def suite_lemma23(cfg):
    return _g_grid(cfg, "lemma23", g_count_table_closed)


def suite_lemma24(cfg):
    rec = _Counter("lemma24")
    seen = set()
    for h in cfg.moduli():
        for chi in characters(h):
            psi = primitive_lift(chi)
            if psi in seen:
                continue
            seen.add(psi)
            d = psi.modulus
            for q in divisors(d):
                for s in _units(d):
                    inst = {"field": str(h.field), "D": format_poly(d), "psi": list(psi.exponents),
                            "Q": format_poly(q), "S": format_poly(s)}
                    b = primitive_progression_sum(psi, q, s, "brute")
                    c = primitive_progression_sum(psi, q, s, "closed")
                    yield rec(inst, b, c, exact_equal(b, c), ring_of(d).size)


def _coprime_pairs(h):
    divs = divisors(h)
    return [(m, n) for m in divs for n in divs if poly_gcd(m, n).deg == 0]


def suite_lemma41(cfg):
    rng = np.random.default_rng(cfg.seed)
    rec = _Counter("lemma41")
    hs = cfg.moduli()
    ls = cfg.l or [2, 3]
    for _ in range(cfg.samples):
        h = _pick(rng, hs)
        l = _pick(rng, ls)
        m, n = _pick(rng, _coprime_pairs(h))
        d = _pick(rng, divisors(h))
        s = _pick(rng, _units(h))
        u = _pick(rng, list(residues(h)))
        inst = {"field": str(h.field), "H": format_poly(h), "M": format_poly(m), "N": format_poly(n),
                "D": format_poly(d), "S": format_poly(s), "U": format_poly(u), "l": l}
        try:
            t0 = time.perf_counter()
            b = n_l_count(h, m, n, d, s, u, l, cfg.budget)
            c = n_l_recursion_rhs(h, m, n, d, s, u, l, cfg.budget)
        except BudgetExceeded as err:
            yield budget_record("lemma41", rec.n, inst, err)
            rec.n += 1
            continue
        ms = (time.perf_counter() - t0) * 1000 if cfg.timing else 0
        yield rec(inst, b, c, c.denominator == 1 and b == c, euler_phi(h) ** l, ms)


def suite_lemma42(cfg):
    rng = np.random.default_rng(cfg.seed)
    rec = _Counter("lemma42")
    hs = cfg.moduli()
    ls = cfg.l or [2, 3]
    for _ in range(cfg.samples):
        h = _pick(rng, hs)
        l = _pick(rng, ls)
        m, n = _pick(rng, _coprime_pairs(h))
        chis = characters(h)
        ci = int(rng.integers(len(chis)))
        s = _pick(rng, _units(h))
        d = primitive_lift(chis[ci]).modulus
        inst = {"field": str(h.field), "H": format_poly(h), "M": format_poly(m), "N": format_poly(n),
                "chi": ci, "D": format_poly(d), "S": format_poly(s), "l": l}
        try:
            t0 = time.perf_counter()
            b = weighted_sum_brute(h, m, n, l, chis[ci], s, cfg.budget)
        except BudgetExceeded as err:
            yield budget_record("lemma42", rec.n, inst, err)
            rec.n += 1
            continue
        c = weighted_sum_closed(h, m, n, l, chis[ci], s)
        ms = (time.perf_counter() - t0) * 1000 if cfg.timing else 0
        diff = abs(complex(b) - complex(c))
        if d.deg == 0:
            ok = exact_equal(b, c)
        else:
            ok = exact_equal(b, c) and diff <= cfg.tol * max(1.0, abs(complex(b)))
        yield rec(inst, b, c, ok, euler_phi(h) ** l, ms, diff=diff)


def suite_lemma43(cfg):
    rec = _Counter("lemma43")
    for h in cfg.moduli():
        if ring_of(h).size > cfg.max_table:
            continue
        for w in residues(h):
            lam = additive_character(h, w)
            for m in divisors(h):
                inst = {"field": str(h.field), "H": format_poly(h), "W": format_poly(w), "M": format_poly(m)}
                b = additive_sum_over_multiples_brute(lam, m)
                c = additive_sum_over_multiples_closed(lam, m)
                yield rec(inst, b, c, exact_equal(b, c), ring_of(h).size)


def theorem2_instances(cfg: RunConfig) -> Iterator[GcdSumInstance]:
    """Every modulus x every character x each (l, s), with W_i, S and F drawn from the seeded stream."""
    rng = np.random.default_rng(cfg.seed)
    ls = cfg.l or [1, 2, 3]
    ss = cfg.s or [0, 1, 2]
    for h in cfg.moduli():
        res = list(residues(h))
        units = _units(h)
        chis = range(euler_phi(h)) if cfg.chi is None else [cfg.chi]
        for ci in chis:
            for l in ls:
                for s in ss:
                    if cfg.lambdas is not None and len(cfg.lambdas) == s:
                        ws = tuple(w % h for w in cfg.lambdas)
                    else:
                        ws = tuple(_pick(rng, res) for _ in range(s))
                    sv = cfg.S if cfg.S is not None else _pick(rng, units)
                    fn = cfg.F if cfg.F is not None else _pick(rng, FUNCTION_POOL)
                    yield GcdSumInstance(h.field, h, l, s, ci, ws, sv % h, fn)


def run_instances(suite: str, instances, cfg: RunConfig) -> Iterator[dict]:
    for n, inst in enumerate(instances):
        try:
            rep = verify_gcd_sum(inst, cfg.tol, cfg.budget)
        except BudgetExceeded as err:
            yield budget_record(suite, n, inst.describe(), err)
            continue
        rec = rep.to_record(timing=cfg.timing)
        yield {"suite": suite, "id": f"{suite}-{n:05d}", **rec}


def suite_theorem2(cfg):
    return run_instances("theorem2", theorem2_instances(cfg), cfg)


RUNNERS = {
    "lemma21": suite_lemma21,
    "lemma22": suite_lemma22,
    "lemma23": suite_lemma23,
    "lemma24": suite_lemma24,
    "lemma41": suite_lemma41,
    "lemma42": suite_lemma42,
    "lemma43": suite_lemma43,
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
}


def run_suite(name: str, cfg: RunConfig) -> list[dict]:
    if name == "all":
        return [r for s in SUITES for r in RUNNERS[s](cfg)]
    if name not in RUNNERS:
        raise PreconditionError(f"unknown suite {name!r}")
    return list(RUNNERS[name](cfg))


def summarize(records: list[dict]) -> dict:
    budget = sum(1 for r in records if r.get("status") == "budget_exceeded")
    failed = sum(1 for r in records if not r["pass"] and r.get("status") != "budget_exceeded")
    return {"total": len(records), "passed": len(records) - failed - budget, "failed": failed, "budget_exceeded": budget}


def bench_rows(h: Poly, ls, s: int, cfg: RunConfig) -> list[dict]:
    """Term-by-term left side against the closed form (trivial character, W_i = 0, S = 1)."""
    from .identity import gcd_sum_lhs_naive, gcd_sum_rhs

    rows = []
    zero = Poly(h.field, ())
    for l in ls:
        inst = GcdSumInstance(h.field, h, l, s, 0, (zero,) * s, Poly.const(h.field, 1), cfg.F or "abs")
        t0 = time.perf_counter()
        lhs = gcd_sum_lhs_naive(inst, cfg.budget)
        t1 = time.perf_counter()
        rhs = gcd_sum_rhs(inst)
        t2 = time.perf_counter()
        lt, rt = (t1 - t0) * 1000, (t2 - t1) * 1000
        rows.append({
            "H": format_poly(h),
            "l": l,
            "s": s,
            "terms": estimate_cost(inst),
            "lhs_ms": round(lt, 3),
            "rhs_ms": round(rt, 3),
            "speedup": round(lt / rt, 2) if rt > 0 else None,
            "rhs_terms": len(divisors(h)),
            "agree": exact_equal(lhs, rhs),
        })
    return rows
