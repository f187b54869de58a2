"""Command-line entry point: ``fqmenon <command> [flags]``.

Exit codes: 0 all checks pass, 1 an identity check failed, 2 unparsable
input, 3 precondition violated, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .budget import BudgetExceeded
from .chars import characters, conductor
from .gf import FieldError, FieldParseError, ff_make, parse_field
from .identity import PreconditionError, GcdSumInstance
from .multfunc import euler_phi, phi_k_formula
from .polyring import PolyError, PolyParseError, factorize, format_poly, parse_poly
from .suites import RunConfig, SUITES, bench_rows, run_instances, run_suite, summarize

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4

CSV_COLUMNS = ["suite", "instance-id", "lhs-re", "lhs-im", "rhs-re", "rhs-im", "diff", "pass", "terms", "ms"]


class ParseError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="p=2,n=1", help='e.g. "p=3,n=2,mod=[2,2,1]"')
    common.add_argument("--H", dest="H")
    common.add_argument("--l", type=int, action="append")
    common.add_argument("--s", type=int, action="append")
    common.add_argument("--chi", type=int)
    common.add_argument("--lambda", dest="lambdas", action="append", metavar="W")
    common.add_argument("--S", dest="S")
    common.add_argument("--F", dest="F")
    common.add_argument("--k", type=int, default=3)
    common.add_argument("--maxdeg", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int)
    common.add_argument("--tol", type=float, default=1e-6)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--no-timing", action="store_true", help="write 0 for elapsed times")

    p = argparse.ArgumentParser(prog="fqmenon", description="Menon-type identities over F_q[T]")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("factor", "phi", "phik", "chars", "conductor"):
        sub.add_parser(name, parents=[common])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--suite", default="theorem2", choices=SUITES + ("all",))
    v.add_argument("--instance", help="JSON instance file; verifies that single instance")
    sub.add_parser("bench", parents=[common])
    return p


def _field(args):
    return parse_field(args.field)


def _poly(field, text, name):
    if text is None:
        raise PreconditionError(f"--{name} is required")
    return parse_poly(field, text)


def _config(args, field) -> RunConfig:
    h = parse_poly(field, args.H) if args.H else None
    return RunConfig(
        fields=[field],
        maxdeg=args.maxdeg,
        H=h,
        l=args.l,
        s=args.s,
        k=args.k,
        chi=args.chi,
        lambdas=[parse_poly(field, w) for w in args.lambdas] if args.lambdas else None,
        S=parse_poly(field, args.S) if args.S else None,
        F=args.F,
        seed=args.seed,
        budget=args.budget,
        tol=args.tol,
        samples=args.samples,
        timing=not args.no_timing,
    )


def _field_from_json(obj):
    if isinstance(obj, str):
        return parse_field(obj)
    if isinstance(obj, dict):
        return ff_make(int(obj["p"]), int(obj.get("n", 1)), obj.get("mod", obj.get("modulus")))
    raise ParseError(f"bad field entry {obj!r}")


def load_instance(text: str) -> GcdSumInstance:
    """Build an instance from the JSON instance-file format."""
    try:
        obj = json.loads(text)
        field = _field_from_json(obj["field"])
        h = parse_poly(field, obj["H"]).monic()
        lambdas = tuple(parse_poly(field, w) % h for w in obj.get("lambdas", []))
        return GcdSumInstance(
            field, h, int(obj["l"]), int(obj.get("s", len(lambdas))), int(obj.get("chi", 0)),
            lambdas, parse_poly(field, obj["S"]) % h, obj.get("F", "one"), obj.get("mode", "auto"),
        )
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed instance file: {exc}") from exc


def render_report(suite: str, cfg: RunConfig, records: list[dict], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            lhs, rhs = r.get("lhs", [None, None]), r.get("rhs", [None, None])
            w.writerow([r["suite"], r["id"], lhs[0], lhs[1], rhs[0], rhs[1],
                        r.get("abs_diff"), str(r["pass"]).lower(), r["terms"], r["elapsed_ms"]])
        return buf.getvalue()
    doc = {
        "suite": suite,
        "seed": cfg.seed,
        "fields": [str(f) for f in cfg.fields],
        "tolerance": cfg.tol,
        "summary": summarize(records),
        "records": records,
    }
    return json.dumps(doc, indent=1) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_code(records) -> int:
    s = summarize(records)
    if s["failed"]:
        return EXIT_FAIL
    if s["budget_exceeded"]:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args) -> int:
    field = _field(args)
    cfg = _config(args, field)
    if args.instance:
        with open(args.instance, encoding="utf-8") as fh:
            inst = load_instance(fh.read())
        cfg.fields = [inst.field]
        records = list(run_instances("instance", [inst], cfg))
        suite = "instance"
    else:
        suite = args.suite
        records = run_suite(suite, cfg)
    _emit(render_report(suite, cfg, records, args.format), args.out)
    s = summarize(records)
    print(f"{suite}: {s['passed']}/{s['total']} passed, {s['failed']} failed, "
          f"{s['budget_exceeded']} over budget", file=sys.stderr)
    return _exit_code(records)


def cmd_bench(args) -> int:
    field = _field(args)
    cfg = _config(args, field)
    h = cfg.H if cfg.H is not None else parse_poly(field, f"T^{args.maxdeg}")
    ls = cfg.l or [1, 2, 3]
    s = (cfg.s or [0])[0]
    rows = bench_rows(h, ls, s, cfg)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(rows, indent=1) + "\n"
    _emit(text, args.out)
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_FAIL


def cmd_simple(args) -> int:
    field = _field(args)
    h = _poly(field, args.H, "H")
    if args.command == "factor":
        print(factorize(h))
    elif args.command == "phi":
        print(euler_phi(h))
    elif args.command == "phik":
        print(phi_k_formula(h, args.k))
    elif args.command == "chars":
        for i, chi in enumerate(characters(h)):
            print(f"{i}\texponents={list(chi.exponents)}\torder={chi.order}\tconductor={format_poly(conductor(chi))}")
    elif args.command == "conductor":
        chis = characters(h)
        idx = args.chi or 0
        if not 0 <= idx < len(chis):
            raise PreconditionError(f"character index {idx} out of range [0, {len(chis)})")
        print(format_poly(conductor(chis[idx])))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "bench":
            return cmd_bench(args)
        return cmd_simple(args)
    except (ParseError, PolyParseError, FieldParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, PolyError, FieldError, KeyError, ValueError, OSError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
