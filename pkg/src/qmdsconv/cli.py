"""Command-line front end: ``qmdsconv <command> [options]``.

Exit status is 0 on success, 1 when a verification or precondition fails
and 2 on usage errors (bad flags, unreadable or malformed input files).
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from . import __version__
from .convcode import (
    ConvCode,
    PolyMatrix,
    check_reduced_basic,
    conv_from_split,
    conv_params,
    conv_self_orthogonal,
    free_distance_search,
)
from .errors import BudgetExceeded, ConstructionError, FormatError, InvalidCodeError, PreconditionError
from .families import (
    CONSTRUCTIONS,
    PUBLISHED_TABLES,
    FamilyError,
    emit_tables,
    enumerate_quantum,
    grid_rows,
    parse_family_grid,
    render_family_rows,
    validate_table_row,
)
from .grs import (
    GrsCode,
    grs_code,
    grs_generator,
    grs_parity_check,
    hermitian_dual_by_membership,
    is_hermitian_dual_containing,
    min_distance_bruteforce,
    search_dual_containing,
)
from .linear import DEFAULT_BUDGET
from .quantum import build_construction_one, build_construction_two
from .selfcheck import run_selfcheck


class VerificationFailed(Exception):
    """A check requested on the command line did not hold."""


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if val <= 0:
        raise argparse.ArgumentTypeError(f"budgets must be positive, got {val}")
    return val


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="codeword enumeration budget")
    p.add_argument("--state-budget", type=_positive, default=1 << 20, help="encoder state budget for exact search")
    p.add_argument("--span-limit", type=_positive, default=4, help="span limit for bounded searches")
    p.add_argument("--search-budget", type=_positive, default=64, help="random evaluation sets for witness search")
    p.add_argument("--format", default="text", help="output format (text/json; markdown/csv for tables)")
    p.add_argument("--out", type=Path, help="write the report to this file instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qmdsconv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qmdsconv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    grs = sub.add_parser("grs", help="GRS codes").add_subparsers(dest="action", required=True)
    g = grs.add_parser("build", parents=[common], help="write a GRS record")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--a", type=_int_list, required=True, help="evaluation points as field indices")
    g.add_argument("--v", type=_int_list, help="column multipliers (default all ones)")
    g = grs.add_parser("verify", parents=[common], help="check a GRS record")
    g.add_argument("path", type=Path)

    g = sub.add_parser("search-witness", parents=[common], help="find a Hermitian dual-containing GRS code")
    for name in ("q", "n", "k"):
        g.add_argument(f"--{name}", type=int, required=True)

    conv = sub.add_parser("conv", help="convolutional codes").add_subparsers(dest="action", required=True)
    g = conv.add_parser("build", parents=[common], help="split a GRS parity-check matrix")
    g.add_argument("--grs", type=Path, required=True, help="GRS record file")
    g.add_argument("--split", type=_int_list, required=True, help="block row counts, e.g. 2,1")
    g = conv.add_parser("distance", parents=[common], help="free distance of a generator record")
    g.add_argument("path", type=Path, help="polynomial matrix record")
    g.add_argument("--exact", choices=("auto", "yes", "no"), default="auto")

    qm = sub.add_parser("qmds", help="quantum MDS convolutional constructions").add_subparsers(dest="action", required=True)
    for name in ("one", "two"):
        g = qm.add_parser(name, parents=[common], help=f"memory-{name} construction")
        g.add_argument("--grs", type=Path, help="GRS record (default: search for a witness)")
        for par in ("q", "n", "k"):
            g.add_argument(f"--{par}", type=int)
        if name == "one":
            g.add_argument("--t0", type=int, required=True)

    fam = sub.add_parser("families", help="parameter families").add_subparsers(dest="action", required=True)
    g = fam.add_parser("enumerate", parents=[common], help="rows for a grid config or every spec up to --q-max")
    g.add_argument("--config", type=Path)
    g.add_argument("--q-max", type=int)
    g.add_argument("--construction", choices=CONSTRUCTIONS, default="mu1")
    fam.add_parser("tables", parents=[common], help="regenerate the published tables")
    fam.add_parser("validate", parents=[common], help="recompute every published row")

    sub.add_parser("selfcheck", parents=[common], help="run the structural invariant suite")
    return parser


# -- reports ---------------------------------------------------------------------


def _meta(args: argparse.Namespace) -> dict[str, Any]:
    return {
        "tool": "qmdsconv",
        "version": __version__,
        "seed": args.seed,
        "budgets": {"enumeration": args.budget, "state": args.state_budget, "span": args.span_limit,
                    "search": args.search_budget},
    }


def _header(args: argparse.Namespace) -> str:
    m = _meta(args)
    b = m["budgets"]
    return (f"# qmdsconv {m['version']} seed={m['seed']} budget={b['enumeration']} "
            f"state_budget={b['state']} span_limit={b['span']} search_budget={b['search']}")


def _render(args: argparse.Namespace, lines: list[str], record: dict[str, Any]) -> str:
    if args.format == "json":
        return json.dumps({**_meta(args), "result": record}, sort_keys=True, indent=2) + "\n"
    return "\n".join([_header(args), *lines]) + "\n"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _load_grs(path: Path) -> GrsCode:
    return GrsCode.from_text(path.read_text())


def _witness(args: argparse.Namespace) -> GrsCode:
    if args.grs is not None:
        return _load_grs(args.grs)
    if None in (args.q, args.n, args.k):
        raise _Usage("give --grs or all of --q, --n, --k")
    code = search_dual_containing(args.q, args.n, args.k, budget=args.search_budget, seed=args.seed,
                                  distance_budget=args.budget)
    if code is None:
        raise VerificationFailed(f"no Hermitian dual-containing [{args.n},{args.k}]_{args.q * args.q} GRS code found "
                                 f"within the search budget")
    return code


class _Usage(Exception):
    pass


def _grs_summary(code: GrsCode, budget: int) -> tuple[list[str], dict[str, Any]]:
    g, h = grs_generator(code), grs_parity_check(code)
    parity_ok = h.nrows == 0 or (g @ h.transpose()).is_zero()
    contains = is_hermitian_dual_containing(code)
    ref = hermitian_dual_by_membership(code)
    rec: dict[str, Any] = {"n": code.n, "k": code.k, "q": code.q, "parity_ok": parity_ok,
                           "dual_containing": contains, "membership_check": ref}
    lines = [f"GRS [{code.n},{code.k}]_{code.field.order}",
             f"G H^T = 0: {_yes(parity_ok)}",
             f"Hermitian dual-containing: {_yes(contains)} (membership check: {_yes(ref)})"]
    if code.field.order ** min(code.k, code.n - code.k) <= budget:
        d = min_distance_bruteforce(code, budget)
        rec["distance"] = d
        lines.append(f"minimum distance: {d} (MDS: {_yes(d == code.n - code.k + 1)})")
    return lines, rec


def cmd_grs(args: argparse.Namespace) -> tuple[str, int]:
    if args.action == "build":
        v = args.v if args.v is not None else None
        code = grs_code(args.q, args.k, args.a, v)
        return _header(args) + "\n" + code.to_text(), 0
    code = _load_grs(args.path)
    lines, rec = _grs_summary(code, args.budget)
    status = 0 if rec["parity_ok"] and rec["dual_containing"] == rec["membership_check"] else 1
    if not rec["dual_containing"]:
        lines.append("verification failed: C^perpH <= C does not hold")
        status = 1
    return _render(args, lines, rec), status


def cmd_search(args: argparse.Namespace) -> tuple[str, int]:
    code = search_dual_containing(args.q, args.n, args.k, budget=args.search_budget, seed=args.seed,
                                  distance_budget=args.budget)
    if code is None:
        rec = {"found": False}
        return _render(args, [f"no witness for [{args.n},{args.k}]_{args.q * args.q} within the search budget"], rec), 1
    if args.format == "json":
        return _render(args, [], {"found": True, "record": code.to_text()}), 0
    return _header(args) + "\n" + code.to_text(), 0


def _conv_lines(c: ConvCode) -> tuple[list[str], dict[str, Any]]:
    n, k, gamma, mu = conv_params(c)
    report = check_reduced_basic(c.gen)
    so = conv_self_orthogonal(c)
    rec = {"n": n, "k": k, "gamma": gamma, "mu": mu, "basic": report.basic, "reduced": report.reduced,
           "self_orthogonal": so}
    lines = [f"({n},{k},{gamma};{mu})_{c.field.order}",
             f"basic: {_yes(report.basic)} reduced: {_yes(report.reduced)} ({report.detail})",
             f"Hermitian self-orthogonal: {_yes(so)}"]
    return lines, rec


def cmd_conv(args: argparse.Namespace) -> tuple[str, int]:
    if args.action == "build":
        code = _load_grs(args.grs)
        c = conv_from_split(grs_parity_check(code), args.split, check=False)
        lines, rec = _conv_lines(c)
        status = 0 if rec["basic"] and rec["reduced"] else 1
        if args.format == "json":
            rec["generator"] = c.gen.to_text()
            return _render(args, lines, rec), status
        # summary lines are comments so the output loads back as a generator record
        return _header(args) + "\n" + "".join(f"# {ln}\n" for ln in lines) + c.gen.to_text(), status
    gen = PolyMatrix.from_text(args.path.read_text())
    c = ConvCode(gen)
    exact = {"auto": None, "yes": True, "no": False}[args.exact]
    fd = free_distance_search(c, state_budget=args.state_budget, span_limit=args.span_limit, exact=exact)
    lines, rec = _conv_lines(c)
    rec.update({"d_free_low": fd.lower, "d_free_high": fd.upper, "exact": fd.exact})
    d = str(fd.lower) if fd.lower == fd.upper else f"{fd.lower}..{fd.upper}"
    lines.append(f"free distance: {d} ({'exact state search' if fd.exact else 'bounded search'})")
    return _render(args, lines, rec), 0


def cmd_qmds(args: argparse.Namespace) -> tuple[str, int]:
    code = _witness(args)
    if args.action == "one":
        built = build_construction_one(code, args.t0, verify_budget=min(args.budget, 1 << 16))
    else:
        built = build_construction_two(code, verify_budget=min(args.budget, 1 << 16))
    p = built.params
    lines = [f"{p.bracket()} MDS: {_yes(p.mds)}",
             f"classical: [{code.n},{code.k},{code.n - code.k + 1}]_{code.field.order}",
             "split: " + ",".join(map(str, built.split)),
             "checks: " + " ".join(f"{k}={_yes(v)}" for k, v in sorted(built.checks.items()))]
    if built.translated_by:
        lines.append(f"evaluation points translated by field element {built.translated_by}")
    rec = {**p.to_record(), "split": list(built.split), "checks": built.checks, "translated_by": built.translated_by}
    return _render(args, lines, rec), 0


def cmd_families(args: argparse.Namespace) -> tuple[str, int]:
    if args.action == "tables":
        fmt = "markdown" if args.format == "text" else args.format
        if fmt not in ("markdown", "csv"):
            raise _Usage("tables support --format markdown or csv")
        return _header(args) + "\n" + emit_tables(fmt), 0
    if args.action == "validate":
        lines, recs = [], []
        for construction in CONSTRUCTIONS:
            for row in PUBLISHED_TABLES[construction]:
                v = validate_table_row(row, construction)
                c = "-" if row.c is None else row.c
                lines.append(f"{construction} q={row.q} a={row.a} b={row.b} c={c}: printed n={row.n} "
                             f"s<={row.s_max}; family {v.family_id} gives n={v.n} s<={v.s_max}: {v.text()}")
                recs.append({"construction": construction, "q": row.q, "verdict": v.text()})
        return _render(args, lines, {"rows": recs}), 0
    rejected: list[str] = []
    if args.config is not None:
        rows = []
        for spec in parse_family_grid(args.config.read_text()):
            try:
                rows.append(enumerate_quantum(spec))
            except FamilyError as exc:
                rejected.append(f"# rejected {spec.construction} {spec.family_id} {spec.q} {spec.params_text()}: {exc}")
    elif args.q_max is not None:
        rows = list(grid_rows(args.q_max, args.construction))
    else:
        raise _Usage("give --config or --q-max")
    fmt = "markdown" if args.format == "text" else args.format
    if fmt not in ("markdown", "csv"):
        raise _Usage("enumerate supports --format markdown or csv")
    body = render_family_rows(rows, fmt) + "".join(ln + "\n" for ln in rejected)
    return _header(args) + "\n" + body, 1 if rejected else 0


def cmd_selfcheck(args: argparse.Namespace) -> tuple[str, int]:
    results = run_selfcheck(args.seed)
    # timings vary run to run, so they stay out of the deterministic report
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.cases} cases" + (f" ({r.detail})" if r.detail else "")
             for r in results]
    rec = {"checks": [{"name": r.name, "passed": r.passed, "cases": r.cases} for r in results]}
    return _render(args, lines, rec), 0 if all(r.passed for r in results) else 1


COMMANDS = {"grs": cmd_grs, "search-witness": cmd_search, "conv": cmd_conv, "qmds": cmd_qmds,
            "families": cmd_families, "selfcheck": cmd_selfcheck}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = COMMANDS[args.command](args)
    except PreconditionError as exc:
        text, status = f"precondition failed: {exc}\n", 1
    except (VerificationFailed, ConstructionError, InvalidCodeError, BudgetExceeded) as exc:
        text, status = f"verification failed: {exc}\n", 1
    except (_Usage, FormatError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qmdsconv: error: {exc}", file=sys.stderr)
        return 2
    if status and not text.startswith("#") and args.format != "json":
        sys.stderr.write(text)
        return status
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
