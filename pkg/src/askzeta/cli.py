"""Command-line surface: tensor I/O, computations, checks and the verify suite.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exhaustion. Rationals are printed as exact num/den strings; no floating
point appears anywhere in the pipeline.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .ask import DEFAULT_BUDGET, BudgetExceededError, ask_m, kernel_census, zeta_coeffs
from .corpus import DEFAULT_SEED
from .groups import (
    DEFAULT_BUILD_BUDGET,
    DEFAULT_CLASS_BUDGET,
    build_group,
    class_number,
    lazard_group,
    verify_class_identities,
)
from .mrep import (
    HomotopyTriple,
    MRep,
    constant_rank_check,
    kminimality_check,
    verify_homotopy,
)
from .polynom import count_hypersurface_points, det_linear_matrix, generic_rank
from .ring import TruncatedRing
from .verify import CRITERIA, run_all
from .zeta import closed_form

_JSON_INT_LIMIT = 2**53


class UsageError(Exception):
    pass


def _coerce_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise UsageError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise UsageError(f"{where}: {value!r} is not a decimal integer") from None
    raise UsageError(f"{where}: expected an integer or decimal string, got {type(value).__name__}")


def parse_rep(payload) -> MRep:
    """Parse the tensor JSON schema, with field-level diagnostics."""
    if isinstance(payload, (str, bytes)):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as err:
            raise UsageError(f"invalid JSON: {err}") from None
    if not isinstance(payload, dict):
        raise UsageError("tensor JSON must be an object")
    shape = payload.get("shape")
    if not isinstance(shape, dict):
        raise UsageError("missing or malformed 'shape' object")
    dims = {}
    for key in ("l", "d", "e"):
        if key not in shape:
            raise UsageError(f"shape.{key} is missing")
        dims[key] = _coerce_int(shape[key], f"shape.{key}")
        if dims[key] < 0:
            raise UsageError(f"shape.{key} must be nonnegative")
    coeffs = payload.get("coeffs")
    if not isinstance(coeffs, list):
        raise UsageError("'coeffs' must be a nested list c[h][i][j]")
    if len(coeffs) != dims["l"]:
        raise UsageError(f"coeffs has {len(coeffs)} slices, shape.l is {dims['l']}")
    data = []
    for h, mat in enumerate(coeffs):
        if not isinstance(mat, list) or len(mat) != dims["d"]:
            raise UsageError(f"coeffs[{h}] must be a list of {dims['d']} rows")
        rows = []
        for i, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != dims["e"]:
                raise UsageError(f"coeffs[{h}][{i}] must be a list of {dims['e']} integers")
            rows.append(tuple(_coerce_int(x, f"coeffs[{h}][{i}][{j}]") for j, x in enumerate(row)))
        data.append(tuple(rows))
    return MRep(dims["l"], dims["d"], dims["e"], tuple(data))


def emit_rep(rep: MRep) -> dict:
    def enc(x: int):
        return x if abs(x) < _JSON_INT_LIMIT else str(x)

    return {
        "shape": {"l": rep.l, "d": rep.d, "e": rep.e},
        "coeffs": [[[enc(x) for x in row] for row in mat] for mat in rep.coeffs],
    }


def _frac(x) -> str:
    return str(Fraction(x))


def _resolve_rep(args) -> MRep:
    if getattr(args, "input", None) and getattr(args, "catalog", None):
        raise UsageError("give either --input or --catalog, not both")
    if getattr(args, "input", None):
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                return parse_rep(fh.read())
        except OSError as err:
            raise UsageError(f"cannot read {args.input}: {err}") from None
    if getattr(args, "catalog", None):
        params = {}
        for key in ("d", "e", "r"):
            value = getattr(args, key, None)
            if value is not None:
                params[key] = value
        try:
            return catalog.make(args.catalog, **params)
        except ValueError as err:
            raise UsageError(str(err)) from None
    raise UsageError("no tensor given; use --input FILE or --catalog NAME")


def _print_report(rows: list[dict], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rows, indent=2))
        return
    for row in rows:
        mark = {True: "ok  ", False: "FAIL", None: "skip"}[row.get("match")]
        claim = row.get("claim", "")
        identity = row.get("identity", "")
        expected = row.get("expected", "")
        computed = row.get("computed", "")
        tail = f" expected={expected} computed={computed}" if expected or computed else ""
        print(f"  {mark} {claim}: {identity}{tail}")


def _add_rep_arguments(sub, with_ring=True):
    sub.add_argument("--input", help="tensor JSON file")
    sub.add_argument("--catalog", help="catalog entry name")
    sub.add_argument("--d", type=int, help="catalog parameter d")
    sub.add_argument("--e", type=int, help="catalog parameter e")
    sub.add_argument("--r", type=int, help="catalog parameter r")
    if with_ring:
        sub.add_argument("--p", type=int, required=True, help="prime")
        sub.add_argument("--n", type=int, default=1, help="level (default 1)")
    sub.add_argument("--format", choices=("table", "json"), default="table")


def cmd_ask(args) -> int:
    rep = _resolve_rep(args)
    ring = TruncatedRing(args.p, args.n)
    result = ask_m(rep, ring, m=args.moment, strategy=args.strategy, budget=args.budget)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "value": _frac(result.value),
                    "level": result.level,
                    "moment": result.moment,
                    "strategy": result.strategy,
                }
            )
        )
    else:
        print(
            f"ask^{result.moment} over Z/{args.p}^{args.n} = "
            f"{_frac(result.value)} [{result.strategy}]"
        )
    if args.census:
        census = kernel_census(rep, ring, budget=args.budget)
        for k in sorted(census):
            print(f"  kernel size {args.p}^{k}: {census[k]} parameter vectors")
    return 0


def cmd_zeta(args) -> int:
    if args.levels < 0:
        raise UsageError("--levels must be nonnegative")
    if args.moment < 1:
        raise UsageError("--moment must be at least 1")
    rep = _resolve_rep(args)
    series = zeta_coeffs(
        rep, args.p, m=args.moment, levels=args.levels, strategy=args.strategy, budget=args.budget
    )
    expected = None
    conditions_note = None
    if args.compare:
        if not args.catalog:
            raise UsageError("--compare needs a --catalog entry with a registered closed form")
        params = {k: getattr(args, k) for k in ("d", "e", "r") if getattr(args, k) is not None}
        expected = catalog.expected_zeta(args.catalog, params, args.moment, args.p)
        if expected is None:
            raise UsageError(
                f"no closed form registered for {args.catalog} at moment {args.moment}"
            )
        descriptor = next(
            (d for d in catalog.list_examples() if d.name == args.catalog), None
        )
        if descriptor is not None and not descriptor.applies(params, TruncatedRing(args.p, 1)):
            conditions_note = (
                f"conditions for the closed form are not met at p={args.p}"
                + (f" ({descriptor.conditions})" if descriptor.conditions else "")
            )
    rows = []
    ok = True
    for n, c in enumerate(series.coeffs):
        row = {"level": n, "coefficient": _frac(c)}
        if expected is not None:
            want = expected.expand(args.levels)[n]
            row.update({"expected": _frac(want), "match": want == c})
            ok &= want == c
        rows.append(row)
    if args.format == "json":
        out = {"p": args.p, "moment": args.moment, "coefficients": rows}
        if expected is not None:
            out["closed_form"] = expected.to_json()
        if conditions_note is not None:
            out["note"] = conditions_note
        if series.failed_level is not None:
            out["failed_level"] = series.failed_level
        print(json.dumps(out, indent=2))
    else:
        if conditions_note is not None:
            print(f"  note: {conditions_note}")
        for row in rows:
            line = f"  c_{row['level']} = {row['coefficient']}"
            if "match" in row:
                line += f"  (closed form {row['expected']}: {'match' if row['match'] else 'MISMATCH'})"
            print(line)
        if series.failed_level is not None:
            print(f"  level {series.failed_level}: enumeration budget exceeded, series truncated")
    if series.failed_level is not None:
        return 3
    return 0 if ok else 1


def cmd_dual(args) -> int:
    rep = _resolve_rep(args)
    print(json.dumps(emit_rep(rep.dual(args.op))))
    return 0


def cmd_hull(args) -> int:
    rep = _resolve_rep(args)
    print(json.dumps(emit_rep(rep.alternating_hull())))
    return 0


def cmd_check(args) -> int:
    if args.predicate == "homotopy":
        if not args.triple:
            raise UsageError("check homotopy needs --triple FILE")
        with open(args.triple, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        try:
            source = parse_rep(payload["source"])
            target = parse_rep(payload["target"])
            triple = HomotopyTriple(
                tuple(tuple(_coerce_int(x, "nu") for x in row) for row in payload["nu"]),
                tuple(tuple(_coerce_int(x, "phi") for x in row) for row in payload["phi"]),
                tuple(tuple(_coerce_int(x, "psi") for x in row) for row in payload["psi"]),
            )
        except KeyError as err:
            raise UsageError(f"triple file is missing {err}") from None
        ring = TruncatedRing(args.p, args.n)
        okay = verify_homotopy(triple, source, target, ring)
        if args.format == "json":
            print(json.dumps({"homotopy": okay}))
        else:
            print(f"  triple {'is' if okay else 'is NOT'} a homotopy over Z/{args.p}^{args.n}")
        return 0
    rep = _resolve_rep(args)
    if args.predicate == "duality":
        ring = TruncatedRing(args.p, args.n)
        base = ask_m(rep, ring, strategy="direct", budget=args.budget).value
        qn = Fraction(args.p) ** args.n
        rows = []
        for which, scale, identity in (
            ("circ", qn ** (rep.l - rep.d), "ask(circ) = q^(n(l-d)) ask"),
            ("vee", qn ** (rep.e - rep.d), "ask(vee) = q^(n(e-d)) ask"),
            ("bullet", Fraction(1), "ask(bullet) = ask"),
        ):
            value = ask_m(rep.dual(which), ring, strategy="direct", budget=args.budget).value
            rows.append(
                {
                    "claim": f"{which} dual",
                    "identity": identity,
                    "expected": _frac(scale * base),
                    "computed": _frac(value),
                    "match": scale * base == value,
                }
            )
        _print_report(rows, args.format)
        return 0 if all(r["match"] for r in rows) else 1
    if args.predicate == "kminimal":
        r = args.rank if args.rank is not None else generic_rank(rep)
        verdicts = kminimality_check(rep, args.p, args.levels, r, budget=args.budget)
        rows = [
            {
                "claim": f"level {n}",
                "identity": f"unit-level kernels all equal p^(n(d-r)), r={r}",
                "expected": "",
                "computed": str(okay),
                "match": okay,
            }
            for n, okay in verdicts.items()
        ]
        _print_report(rows, args.format)
        return 0
    if args.predicate == "constant-rank":
        ring = TruncatedRing(args.p, 1)
        constant, rank = constant_rank_check(rep, ring)
        if args.format == "json":
            print(json.dumps({"constant": constant, "rank": rank}))
        else:
            kind = "constant rank" if constant else "maximal rank (not constant)"
            print(f"  {kind} {rank} over F_{args.p}")
        return 0
    raise UsageError(f"unknown predicate {args.predicate!r}")


def cmd_group(args) -> int:
    rep = _resolve_rep(args)
    ring = TruncatedRing(args.p, args.n)
    if args.kind == "lazard":
        spec = lazard_group(rep, ring, budget=args.build_budget)
    else:
        kind = {"galpha": "g_alpha", "htheta": "h_theta"}[args.kind]
        spec = build_group(kind, rep, ring, budget=args.build_budget)
    k_cent = class_number(spec, "centralizer", budget=args.class_budget)
    k_orbit = class_number(spec, "orbit", budget=args.class_budget)
    checks = verify_class_identities(
        rep, ring, class_budget=args.class_budget, ask_budget=args.budget
    )
    rows = [
        {
            "claim": check.claim,
            "identity": check.identity,
            "expected": check.expected,
            "computed": check.computed,
            "match": check.match,
        }
        for check in checks
    ]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "kind": spec.kind,
                    "order": spec.order,
                    "class_number": k_cent,
                    "class_number_by_orbits": k_orbit,
                    "identities": rows,
                },
                indent=2,
            )
        )
    else:
        print(f"group {spec.kind} of order {spec.order} over Z/{args.p}^{args.n}")
        print(f"  class number (centralizer average) = {k_cent}")
        print(f"  class number (orbit partition)     = {k_orbit}")
        _print_report(rows, args.format)
    okay = k_cent == k_orbit and all(r["match"] is not False for r in rows)
    return 0 if okay else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = [
            {
                "name": d.name,
                "params": list(d.params),
                "summary": d.summary,
                "closed_form": d.expected_form,
                "conditions": d.conditions,
            }
            for d in catalog.list_examples()
        ]
        if args.format == "json":
            print(json.dumps(rows, indent=2))
        else:
            for row in rows:
                params = ",".join(row["params"]) or "-"
                form = row["closed_form"] or "-"
                note = f"  [{row['conditions']}]" if row["conditions"] else ""
                print(f"  {row['name']:<14} params={params:<6} form={form:<10} {row['summary']}{note}")
        return 0
    if args.action == "emit":
        if not args.name:
            raise UsageError("catalog emit needs --name")
        params = {k: getattr(args, k) for k in ("d", "e", "r") if getattr(args, k) is not None}
        try:
            rep = catalog.make(args.name, **params)
        except ValueError as err:
            raise UsageError(str(err)) from None
        print(json.dumps(emit_rep(rep)))
        return 0
    raise UsageError(f"unknown catalog action {args.action!r}")


def cmd_det_example(args) -> int:
    if args.n != 1:
        raise UsageError("det-example counts points over the residue field; use --n 1")
    rep = _resolve_rep(args)
    if rep.d != rep.e:
        raise UsageError("det-example needs a square matrix of linear forms (d = e)")
    F = det_linear_matrix(rep)
    ring = TruncatedRing(args.p, 1)
    points, smooth = count_hypersurface_points(F, ring)
    rows = []
    series = zeta_coeffs(rep, args.p, m=args.moment, levels=args.levels, budget=args.budget)
    form = closed_form(
        "determinantal", args.p, l=rep.l, d=rep.d, m=args.moment, num_points=points
    )
    expected = form.expand(args.levels)
    ok = smooth
    for n, c in enumerate(series.coeffs):
        rows.append(
            {
                "claim": f"level {n}",
                "identity": "determinantal closed form",
                "expected": _frac(expected[n]),
                "computed": _frac(c),
                "match": expected[n] == c,
            }
        )
        ok &= expected[n] == c
    if args.format == "json":
        print(
            json.dumps(
                {
                    "determinant": repr(F),
                    "degree": F.total_degree(),
                    "smooth": smooth,
                    "projective_points": points,
                    "closed_form": form.to_json(),
                    "levels": rows,
                },
                indent=2,
            )
        )
    else:
        print(f"F = {F!r} (degree {F.total_degree()})")
        print(f"  smooth over F_{args.p}: {smooth}; projective points: {points}")
        if not smooth:
            print("  warning: the closed form assumes smoothness; comparison may fail")
        _print_report(rows, args.format)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    indices = None
    if args.criteria:
        try:
            indices = sorted({int(x) for x in args.criteria.split(",")})
        except ValueError:
            raise UsageError("--criteria takes a comma-separated list of criterion numbers") from None
        unknown = [i for i in indices if i not in CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}; valid: {sorted(CRITERIA)}")

    results = []

    def report(result):
        status = "PASS" if result.passed else "FAIL"
        print(
            f"criterion {result.index:>2} {status}  {result.title} "
            f"({result.checks} checks, {result.seconds:.1f}s)"
        )
        for failure in result.failures[:10]:
            print(f"    FAIL {failure['claim']}: {failure['identity']}")
            print(f"         expected {failure['expected']}, computed {failure['computed']}")
        if len(result.failures) > 10:
            print(f"    ... {len(result.failures) - 10} more failures")
        sys.stdout.flush()

    results = run_all(
        seed=args.seed,
        budget=args.budget,
        indices=indices,
        report=None if args.format == "json" else report,
    )
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        total = sum(r.checks for r in results)
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed ({total} exact checks)")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="askzeta",
        description="Exact average-kernel-size computations over Z/p^n",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ask = sub.add_parser("ask", help="average kernel size at one level")
    _add_rep_arguments(p_ask)
    p_ask.add_argument("--moment", type=int, default=1)
    p_ask.add_argument("--strategy", choices=("auto", "direct", "circ", "bullet"), default="auto")
    p_ask.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_ask.add_argument("--census", action="store_true", help="also print the kernel-size histogram")
    p_ask.set_defaults(fn=cmd_ask)

    p_zeta = sub.add_parser("zeta", help="zeta coefficients up to a level bound")
    _add_rep_arguments(p_zeta, with_ring=False)
    p_zeta.add_argument("--p", type=int, required=True)
    p_zeta.add_argument("--levels", type=int, default=2)
    p_zeta.add_argument("--moment", type=int, default=1)
    p_zeta.add_argument("--strategy", choices=("auto", "direct", "circ", "bullet"), default="auto")
    p_zeta.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_zeta.add_argument(
        "--compare", action="store_true", help="compare against the registered closed form"
    )
    p_zeta.set_defaults(fn=cmd_zeta)

    p_dual = sub.add_parser("dual", help="emit a Knuth dual of a tensor")
    _add_rep_arguments(p_dual, with_ring=False)
    p_dual.add_argument("--op", choices=("circ", "bullet", "vee"), required=True)
    p_dual.set_defaults(fn=cmd_dual)

    p_hull = sub.add_parser("hull", help="emit the alternating hull of a tensor")
    _add_rep_arguments(p_hull, with_ring=False)
    p_hull.set_defaults(fn=cmd_hull)

    p_check = sub.add_parser("check", help="run a predicate on a tensor")
    p_check.add_argument("predicate", choices=("duality", "kminimal", "constant-rank", "homotopy"))
    _add_rep_arguments(p_check)
    p_check.add_argument("--levels", type=int, default=2, help="levels for kminimal")
    p_check.add_argument("--rank", type=int, help="target rank for kminimal (default: generic rank)")
    p_check.add_argument("--triple", help="JSON file with source, target, nu, phi, psi")
    p_check.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_check.set_defaults(fn=cmd_check)

    p_group = sub.add_parser("group", help="build a finite group and count classes")
    p_group.add_argument("--kind", choices=("galpha", "htheta", "lazard"), required=True)
    _add_rep_arguments(p_group)
    p_group.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_group.add_argument("--class-budget", type=int, default=DEFAULT_CLASS_BUDGET)
    p_group.add_argument("--build-budget", type=int, default=DEFAULT_BUILD_BUDGET)
    p_group.set_defaults(fn=cmd_group)

    p_cat = sub.add_parser("catalog", help="list catalog entries or emit a tensor")
    p_cat.add_argument("action", choices=("list", "emit"))
    p_cat.add_argument("--name")
    p_cat.add_argument("--d", type=int)
    p_cat.add_argument("--e", type=int)
    p_cat.add_argument("--r", type=int)
    p_cat.add_argument("--format", choices=("table", "json"), default="table")
    p_cat.set_defaults(fn=cmd_catalog)

    p_det = sub.add_parser("det-example", help="determinant, smoothness, point count, closed form")
    _add_rep_arguments(p_det)
    p_det.add_argument("--moment", type=int, default=1)
    p_det.add_argument("--levels", type=int, default=2)
    p_det.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_det.set_defaults(fn=cmd_det_example)

    p_verify = sub.add_parser("verify", help="run the full acceptance suite")
    p_verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_verify.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_verify.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")
    p_verify.add_argument("--format", choices=("table", "json"), default="table")
    p_verify.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except BudgetExceededError as err:
        print(f"budget exhausted: {err}", file=sys.stderr)
        return 3
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
