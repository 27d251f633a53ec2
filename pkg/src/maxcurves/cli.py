"""
Command line front end.

Every invocation writes exactly one report to stdout.  Exit codes: 0 on
success, 2 when a verification fails (a curve is not maximal, an oracle
disagrees, a theorem check fails) and 1 on usage or budget errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from dataclasses import dataclass, field

from . import autgroup, covers, curves, feasibility
from .ff import prime_power

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

SUBCOMMANDS = ("count", "maximality", "isigma", "quotient", "profile", "feasible", "theorem")
ODD_N_FAMILIES = ("xn", "ggk")


class UsageError(ValueError):
    pass


@dataclass
class Report:
    """One report object plus an optional table view for csv/table output."""

    body: dict
    columns: list[str] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)
    ok: bool = True


# -- argument handling ------------------------------------------------------


def _int_list(text: str) -> list[int]:
    """Parse ``3,4,5`` or ``3-5`` (or a mix) into a sorted list."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.update(range(int(lo), int(hi) + 1))
        else:
            out.add(int(part))
    return sorted(out)


def _coeffs(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t != ""]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="base prime power q")
    common.add_argument("--n", type=int, help="odd exponent n >= 3")
    common.add_argument("--Q", type=int, help="Hermitian parameter Q (= q^n)")
    common.add_argument("--family", choices=curves.FAMILIES)
    common.add_argument("--genus", type=int, help="explicit genus override")
    common.add_argument("--d", type=int, help="covering degree / subgroup order")
    common.add_argument("--budget", type=int,
                        help="largest field size to enumerate (default $MAXCURVES_BUDGET or 2^20)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")

    parser = argparse.ArgumentParser(prog="maxcurves", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    sub.required = True

    sub.add_parser("count", parents=[common], help="affine and total rational points")
    sub.add_parser("maximality", parents=[common], help="compare the count with the Hasse-Weil bound")

    p = sub.add_parser("isigma", parents=[common], help="Artin value of a stabilizer element [a,b,c]")
    p.add_argument("--a", type=_coeffs, help="coefficients of a over F_p, lowest degree first")
    p.add_argument("--b", type=_coeffs, default=[])
    p.add_argument("--c", type=_coeffs, default=[])
    p.add_argument("--all", action="store_true", help="census over every nontrivial element of H")

    p = sub.add_parser("quotient", parents=[common], help="genus of H_Q / G")
    p.add_argument("--gen", action="append", default=[], metavar="A;B;C",
                   help="generator as three coefficient lists, e.g. '2;0;0' (repeatable)")

    sub.add_parser("profile", parents=[common], help="ramification profiles for (Q, genus, d)")

    p = sub.add_parser("feasible", parents=[common], help="feasible covering degrees")
    p.add_argument("--order-filter", action="store_true",
                   help="also drop profile categories no element of order dividing d can have")

    p = sub.add_parser("theorem", parents=[common], help="check a theorem over (q, n) ranges")
    p.add_argument("--id", required=True, choices=("1.1", "1.2", "1.3"), dest="theorem_id")
    p.add_argument("--qs", type=_int_list, help="q range, e.g. 3-5")
    p.add_argument("--ns", type=_int_list, help="n range, e.g. 3,5")
    return parser


def validate(args: argparse.Namespace) -> None:
    """Raise UsageError naming the first violated constraint."""
    for name in ("q", "Q"):
        v = getattr(args, name, None)
        if v is not None and prime_power(v) is None:
            raise UsageError(f"{name}={v} is not a prime power")
    n = getattr(args, "n", None)
    if n is not None and (args.family in ODD_N_FAMILIES or args.subcommand == "theorem"):
        if n < 3 or n % 2 == 0:
            raise UsageError(f"n={n} must be odd and at least 3")
    if args.q is not None and args.n is not None and args.Q is not None and args.Q != args.q**args.n:
        raise UsageError(f"Q={args.Q} conflicts with q^n={args.q ** args.n}")
    if args.budget is not None and args.budget <= 0:
        raise UsageError("budget must be positive")
    if args.workers < 1:
        raise UsageError("workers must be at least 1")


def _budget(args) -> curves.Budget:
    if args.budget is not None:
        return curves.Budget(max_field=args.budget)
    return curves.Budget.from_env()


def _resolve_Q(args) -> int:
    if args.Q is not None:
        return args.Q
    if args.q is not None:
        return args.q ** (args.n or 1)
    raise UsageError("need --Q or --q [--n]")


def _model(args) -> curves.CurveModel:
    if args.family is None:
        if args.Q is None:
            raise UsageError("need --family (or --Q for the Hermitian curve)")
        args.family = "hermitian"
    try:
        return curves.make_model(args.family, q=args.q, n=args.n, Q=args.Q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- subcommands ------------------------------------------------------------


def _point_report(args, model: curves.CurveModel) -> tuple[curves.PointCount, int]:
    budget = _budget(args)
    affine = curves.count_affine(model, budget=budget, workers=args.workers)
    genus = model.genus if args.genus is None else args.genus
    target = model.field_order + 1 + 2 * genus * model.sqrt_order
    return curves.PointCount(affine, model.n_infinity, affine + model.n_infinity, target), genus


def cmd_count(args) -> Report:
    model = _model(args)
    pc, genus = _point_report(args, model)
    body = {"family": model.name, "params": model.params(), "field_order": model.field_order,
            "genus": genus, **pc.to_json()}
    cols = ["family", "field_order", "genus", "affine", "at_infinity", "total", "target", "maximal"]
    return Report(body, cols, [body])


def cmd_maximality(args) -> Report:
    rep = cmd_count(args)
    rep.ok = rep.body["maximal"]
    return rep


def _parse_element(Q: int, a, b, c) -> autgroup.StabilizerElement:
    spec = autgroup.quadratic_field(Q)
    try:
        return autgroup.StabilizerElement(spec(a or [1]), spec(b or [0]), spec(c or [0]), Q)
    except ValueError as exc:
        raise UsageError(f"invalid stabilizer element: {exc}") from exc


def cmd_isigma(args) -> Report:
    Q = _resolve_Q(args)
    _budget(args).check(Q**3 * (Q * Q - 1) if args.all else Q * Q, 0)
    if args.all:
        census: Counter = Counter()
        mismatches = 0
        for s in autgroup.enumerate_stabilizer(Q):
            if s.is_identity:
                continue
            v = autgroup.isigma_formula(s)
            census[v.category] += 1
            mismatches += v.value != autgroup.isigma_oracle(s)
        rows = [{"category": c, "i": covers.category_values(Q)[autgroup.CATEGORIES.index(c)],
                 "count": census.get(c, 0)} for c in autgroup.CATEGORIES]
        body = {"Q": Q, "elements": sum(census.values()), "census": rows, "mismatches": mismatches}
        return Report(body, ["category", "i", "count"], rows, ok=mismatches == 0)
    if args.a is None:
        raise UsageError("isigma needs --a (and optionally --b, --c) or --all")
    s = _parse_element(Q, args.a, args.b, args.c)
    if s.is_identity:
        raise UsageError("i(sigma) is undefined for the identity")
    v = autgroup.isigma_formula(s)
    oracle = autgroup.isigma_oracle(s)
    body = {"Q": Q, "element": {"a": list(s.a.coeffs), "b": list(s.b.coeffs), "c": list(s.c.coeffs)},
            "order": autgroup.order(s), **v.to_json(), "oracle": oracle}
    row = {"Q": Q, "order": body["order"], "i": v.value, "case_tag": v.case_tag, "oracle": oracle}
    return Report(body, list(row), [row], ok=oracle == v.value)


def cmd_quotient(args) -> Report:
    Q = _resolve_Q(args)
    if args.gen:
        gens = []
        for text in args.gen:
            parts = text.split(";")
            if len(parts) != 3:
                raise UsageError(f"generator {text!r} must have the form A;B;C")
            gens.append(_parse_element(Q, *(_coeffs(p) for p in parts)))
        G = covers.SubgroupWitness.generate(gens, Q)
        source = "generators"
    elif args.d is not None:
        try:
            G = covers.translation_subgroup(Q, args.d)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        source = "translations"
    else:
        raise UsageError("quotient needs --gen or --d")
    degR, prof = covers.ramification_degree(G)
    g = covers.quotient_genus(G, Q, degR)
    ok = covers.hermitian_genus_check(Q, G)
    body = {"Q": Q, "source": source, "order": G.order, "profile": prof.to_json(), "degR": degR,
            "genus": g}
    if source == "translations":
        body["expected_genus"] = covers.gsx_genus(Q, G.order)
        ok = ok and g == body["expected_genus"]
    row = {"Q": Q, "order": G.order, "degR": degR, "genus": g}
    return Report(body, list(row), [row], ok=ok)


def cmd_profile(args) -> Report:
    Q = _resolve_Q(args)
    if args.genus is None or args.d is None:
        raise UsageError("profile needs --genus and --d")
    sols = covers.profile_solutions(Q, args.genus, args.d)
    cols = [f"n_{c}" for c in autgroup.CATEGORIES] + ["degR"]
    rows = [dict(zip(cols, [*p.vector, p.degR])) for p in sols]
    body = {"Q": Q, "genus": args.genus, "d": args.d,
            "required_degR": covers.required_degR(Q, args.genus, args.d),
            "categories": list(autgroup.CATEGORIES), "profiles": [p.to_json() for p in sols]}
    return Report(body, cols, rows)


def cmd_feasible(args) -> Report:
    if args.genus is None and args.family is None:
        raise UsageError("feasible needs --family or --genus")
    try:
        rep = feasibility.feasible_degrees(
            args.Q, args.genus, q=args.q, n=args.n, family=args.family,
            order_filter=args.order_filter,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    body = rep.to_json()
    rows = [{"Q": rep.Q, "genus": rep.g, "d": d, "status": "feasible", "reason": ""}
            for d in rep.feasible]
    rows += [{"Q": rep.Q, "genus": rep.g, "d": e["d"], "status": "eliminated", "reason": e["reason"]}
             for e in rep.eliminated]
    rows.sort(key=lambda r: r["d"])
    return Report(body, ["Q", "genus", "d", "status", "reason"], rows)


def theorem_row(theorem: str, q: int, n: int) -> dict:
    """Check one (q, n) instance of a theorem against the feasibility engine."""
    family = "ggk" if theorem in ("1.1", "1.2") else "xn"
    rep = feasibility.feasible_degrees(q=q, n=n, family=family)
    expected = feasibility.theorem_interval(theorem, q, n)
    row = {"theorem": theorem, "q": q, "n": n, "Q": q**n, "genus": rep.g,
           "lower": rep.lower, "upper": rep.upper, "feasible": list(rep.feasible)}
    if theorem == "1.1":
        row["expected"] = []
        row["pass"] = not rep.feasible
    elif theorem == "1.2":
        d = expected[0]
        gc = feasibility.genus_class(rep.Q, rep.g)
        row["expected"] = [d]
        row["degR"] = feasibility.ramification_budget(gc, d).degR
        row["pass"] = rep.feasible == [d] and row["degR"] == 0
    else:
        lo, hi = expected
        row["expected"] = [lo, hi]
        row["endpoints_match"] = rep.lower == lo and rep.upper == hi
        row["pass"] = rep.lower == lo and all(lo <= d <= hi for d in rep.feasible)
    return row


def cmd_theorem(args) -> Report:
    default_q = {"1.1": [3, 4, 5], "1.2": [2], "1.3": [3, 4]}[args.theorem_id]
    qs = args.qs or ([args.q] if args.q is not None else default_q)
    ns = args.ns or ([args.n] if args.n is not None else [3, 5])
    for q in qs:
        if prime_power(q) is None:
            raise UsageError(f"q={q} is not a prime power")
        if args.theorem_id == "1.2" and q != 2:
            raise UsageError("theorem 1.2 concerns q = 2 only")
        if args.theorem_id != "1.2" and q < 3:
            raise UsageError(f"theorem {args.theorem_id} needs q >= 3")
    for n in ns:
        if n < 3 or n % 2 == 0:
            raise UsageError(f"n={n} must be odd and at least 3")
    rows = [theorem_row(args.theorem_id, q, n) for q in qs for n in ns]
    ok = all(r["pass"] for r in rows)
    body = {"theorem": args.theorem_id, "rows": rows, "pass": ok}
    cols = ["theorem", "q", "n", "Q", "genus", "lower", "upper", "feasible", "expected", "pass"]
    return Report(body, cols, rows, ok=ok)


HANDLERS = {
    "count": cmd_count,
    "maximality": cmd_maximality,
    "isigma": cmd_isigma,
    "quotient": cmd_quotient,
    "profile": cmd_profile,
    "feasible": cmd_feasible,
    "theorem": cmd_theorem,
}


# -- output -----------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return "" if v is None else str(v)


def emit(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.body, indent=2) + "\n"
    cols = report.columns or list(report.body)
    rows = report.rows if report.columns else [report.body]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue()
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        validate(args)
        report = HANDLERS[args.subcommand](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except curves.BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(emit(report, args.format))
    if not report.ok:
        print(f"verification failed: {args.subcommand}", file=stderr)
        return EXIT_VERIFY
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
