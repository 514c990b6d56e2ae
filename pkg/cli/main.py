"""hatlab command line: exact evaluation, closed forms, searches, bounds and simulation."""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from analysis.bounds import (
    derivative_diagnostics,
    emit_curve,
    parse_grid,
    strategy_table,
    upper_bound,
)
from analysis.monte_carlo import simulate_finite_pair, simulate_machine_pair
from analysis.search import run_search
from cli.formats import (
    EXACT,
    TEXT,
    cell_lines,
    factored_text,
    pair_lines,
    render,
    value_text,
)
from config.logger import logger
from config.settings import DEFAULT_MAX_BLOCKS, SearchConfig
from errors import (
    CheckpointError,
    DomainError,
    InvalidStrategyError,
    ProbabilityRangeError,
    UnknownStrategyError,
)
from exact.rational import format_rational, parse_rational
from exact.rational_function import rf_serialize
from game.block_machine import (
    BUILTIN_NAMES,
    MachinePair,
    builtin_machine,
    dual_machine,
    is_builtin_name,
    truncate_to_finite,
)
from game.files import (
    StrategyDocument,
    dump_document,
    dumps_document,
    load_document,
    load_machine,
    load_pair,
)
from game.finite import FinitePair, dual_pair, evaluate_pair, winning_cells
from game.renewal import derive_closed_form

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

Result = Tuple[Dict[str, Any], Optional[List[str]]]


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _machine_from(source: str) -> MachinePair:
    if is_builtin_name(source):
        return builtin_machine(source)
    if not Path(source).exists():
        raise UnknownStrategyError(source)
    return load_machine(source)


def _document_from(source: str) -> StrategyDocument:
    if is_builtin_name(source):
        return builtin_machine(source)
    if not Path(source).exists():
        raise UnknownStrategyError(source)
    return load_document(source)


def _check_probability(p: Fraction) -> Fraction:
    if not 0 <= p <= 1:
        raise ProbabilityRangeError(f"probability out of range: {p}")
    return p


def _document_output(document: StrategyDocument, out: Optional[str]) -> Result:
    payload = document.to_dict()
    if out:
        dump_document(document, out)
        return {"written": out, "document": payload}, [f"wrote {out}"]
    return payload, [dumps_document(document).rstrip("\n")]


# --- subcommands -------------------------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> Result:
    pair = load_pair(args.pair)
    counts = evaluate_pair(pair)
    polynomial = counts.polynomial()
    payload: Dict[str, Any] = {
        "hats": pair.hats,
        "polynomial": str(polynomial),
        "win_counts": list(counts.counts),
    }
    lines = [f"V(p) = {polynomial}", f"win counts by white hats: {list(counts.counts)}"]
    if args.p is not None:
        value = counts.probability(args.p)
        payload.update(
            p=format_rational(args.p),
            win_probability=format_rational(value),
            decimal=float(value),
        )
        shown = value_text(value, args.format)
        lines.insert(0, f"win probability at p = {format_rational(args.p)}: {shown}")
    if args.table:
        cells = winning_cells(pair)
        payload["cells"] = [list(cell) for cell in cells]
        lines += pair_lines(pair) + [f"winning cells ({len(cells)}):"]
        lines += cell_lines(cells, pair.hats)
    return payload, lines


def cmd_closed_form(args: argparse.Namespace) -> Result:
    if args.strategy.strip().lower() == "all":
        entries = [(name, builtin_machine(name)) for name in BUILTIN_NAMES]
    else:
        entries = [(args.strategy, _machine_from(args.strategy))]
    values = {}
    if args.p is not None:
        _check_probability(args.p)
        if len(entries) > 1:
            values = strategy_table(args.p)
    rows = []
    lines = []
    for name, mp in entries:
        closed = derive_closed_form(mp)
        row: Dict[str, Any] = {
            "strategy": name,
            "closed_form": rf_serialize(closed.value),
            "text": factored_text(closed.value),
            "system_size": closed.system_size,
        }
        lines.append(f"{name}: V(p) = {factored_text(closed.value)}")
        if args.format == EXACT:
            lines.append(f"  coefficients: {rf_serialize(closed.value)}")
        if args.p is not None:
            value = values[name] if name in values else closed(args.p)
            row.update(p=format_rational(args.p), value=format_rational(value))
            lines.append(f"  V({format_rational(args.p)}) = {value_text(value, args.format)}")
        rows.append(row)
    payload = rows[0] if len(rows) == 1 else {"strategies": rows}
    return payload, lines


def cmd_dual(args: argparse.Namespace) -> Result:
    document = _document_from(args.strategy)
    if isinstance(document, FinitePair):
        dual: StrategyDocument = dual_pair(document)
    else:
        dual = dual_machine(document)
    return _document_output(dual, args.out)


def cmd_truncate(args: argparse.Namespace) -> Result:
    pair = truncate_to_finite(_machine_from(args.strategy), args.hats)
    return _document_output(pair, args.out)


def cmd_search(args: argparse.Namespace) -> Result:
    settings: Dict[str, Any] = {
        "hats": args.hats,
        "p": args.p,
        "symmetric": args.kind == "symmetric" or args.symmetric,
        "mode": "hillclimb" if args.kind == "hillclimb" else "exhaustive",
        "seed": args.seed,
        "restarts": args.restarts,
        "max_iterations": args.max_iterations,
        "sideways_moves": args.sideways,
        "workers": args.workers,
        "checkpoint_path": args.checkpoint,
        "stop_after_chunks": args.stop_after_chunks,
    }
    if args.checkpoint_interval is not None:
        settings["checkpoint_interval"] = args.checkpoint_interval
    cfg = SearchConfig(**settings)
    report = run_search(cfg, progress=not args.quiet)
    payload = report.to_dict()
    if args.out:
        with open(args.out, "w") as f:
            json.dump(payload, f, indent=2)
    lines = [
        f"mode: {report.mode}  hats: {report.hats}  p: {format_rational(report.p)}",
        f"best value: {value_text(report.best_value, args.format)}",
        f"win counts by white hats: {list(report.best_win_counts.counts)}",
    ]
    if report.optimum_count is not None:
        lines.append(f"optimal strategies: {report.optimum_count}")
    if report.class_count is not None:
        lines.append(f"equivalence classes: {report.class_count}")
    if report.local_optimum is not None:
        lines.append(f"local optimum: {report.local_optimum}")
    lines.append(f"iterations: {report.iterations}  complete: {report.complete}")
    lines.append(f"wall time: {report.wall_time:.2f}s")
    lines += ["best pair:"] + pair_lines(report.best_pair)
    return payload, lines


def _bound_text(value, exact: bool, fmt: str) -> str:
    return value_text(value, fmt) if exact else f"~{value_text(value, fmt)}"


def cmd_bounds(args: argparse.Namespace) -> Result:
    if args.p is None and not args.derivatives:
        raise ValueError("bounds needs --p, --derivatives or both")
    payload: Dict[str, Any] = {}
    lines: List[str] = []
    if args.p is not None:
        record = upper_bound(args.p)
        payload.update(record.to_dict())
        exponent = record.to_dict()["binomial_exponent"]
        lines += [
            f"p: {format_rational(record.p)}",
            f"lower: {value_text(record.lower, args.format)} ({record.lower_witness})",
            f"upper: {_bound_text(record.upper, record.upper_exact, args.format)}",
            f"binomial exponent: {exponent}",
        ]
    if args.derivatives:
        diagnostics = derivative_diagnostics().to_dict()
        payload["derivatives"] = diagnostics
        lines += [
            f"V_S1'(0) = {diagnostics['s1_slope_at_zero']}",
            f"V_S3'(1) = {diagnostics['s3_slope_at_one']}",
            f"b*UB(1/b) at b={diagnostics['probe']}: {diagnostics['upper_slope_at_zero']:.6f}"
            f" (limit {diagnostics['limit_at_zero']:.6f})",
            f"b*(1-UB(1-1/b)) at b={diagnostics['probe']}: "
            f"{diagnostics['upper_slope_at_one']:.6f} (limit {diagnostics['limit_at_one']:.6f})",
        ]
    return payload, lines


def cmd_curve(args: argparse.Namespace) -> Result:
    rows = emit_curve(parse_grid(args.grid), args.out, exact_only=args.exact_only)
    payload = {"written": args.out, "rows": [row.to_csv() for row in rows]}
    return payload, [f"wrote {len(rows)} rows to {args.out}"]


def cmd_simulate(args: argparse.Namespace) -> Result:
    document = _document_from(args.strategy)
    if isinstance(document, FinitePair):
        report = simulate_finite_pair(document, args.p, args.trials, args.seed, args.workers)
    else:
        report = simulate_machine_pair(
            document, args.p, args.trials, args.seed, args.max_blocks, args.workers
        )
    lines = [
        f"estimate: {report.estimate:.6f} +/- {report.stderr:.6f}",
        f"wins: {report.wins} / {report.trials}  unresolved: {report.unresolved}",
        "events: " + "  ".join(f"{k}={v}" for k, v in report.event_counts.items()),
    ]
    return report.to_dict(), lines


# --- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    common.add_argument("--format", choices=[TEXT, EXACT], default=TEXT)
    common.add_argument("--quiet", action="store_true", help="no progress bars")

    parser = argparse.ArgumentParser(prog="hatlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="exact win rate of a finite pair")
    p_eval.add_argument("--pair", required=True, help="strategy-pair JSON file")
    p_eval.add_argument("--p", type=_rational, help="white-hat probability a/b")
    p_eval.add_argument("--table", action="store_true", help="print the winning cells")
    p_eval.set_defaults(handler=cmd_eval)

    p_closed = sub.add_parser("closed-form", parents=[common], help="win rate as a function of p")
    p_closed.add_argument("--strategy", required=True, help="built-in name, machine file or all")
    p_closed.add_argument("--p", type=_rational)
    p_closed.set_defaults(handler=cmd_closed_form)

    p_dual = sub.add_parser("dual", parents=[common], help="swap colours in a strategy")
    p_dual.add_argument("--strategy", required=True)
    p_dual.add_argument("--out")
    p_dual.set_defaults(handler=cmd_dual)

    p_trunc = sub.add_parser("truncate", parents=[common], help="unroll a machine on n hats")
    p_trunc.add_argument("--strategy", required=True)
    p_trunc.add_argument("--hats", type=int, required=True)
    p_trunc.add_argument("--out")
    p_trunc.set_defaults(handler=cmd_truncate)

    p_search = sub.add_parser("search", parents=[common], help="search finite strategies")
    p_search.add_argument("kind", choices=["exhaustive", "symmetric", "hillclimb"])
    p_search.add_argument("--hats", type=int, required=True)
    p_search.add_argument("--p", type=_rational, default=Fraction(1, 2))
    p_search.add_argument("--seed", type=int, default=0)
    p_search.add_argument("--restarts", type=int, default=1)
    p_search.add_argument("--max-iterations", type=int, default=10**6)
    p_search.add_argument("--sideways", action="store_true", help="accept equal-value moves")
    p_search.add_argument("--symmetric", action="store_true", help="hill-climb one shared table")
    p_search.add_argument("--workers", type=int, default=1)
    p_search.add_argument("--checkpoint", type=Path)
    p_search.add_argument("--checkpoint-interval", type=int)
    p_search.add_argument("--stop-after-chunks", type=int)
    p_search.add_argument("--out", help="also write the report as JSON")
    p_search.set_defaults(handler=cmd_search)

    p_bounds = sub.add_parser("bounds", parents=[common], help="lower and upper bounds on V(p)")
    p_bounds.add_argument("--p", type=_rational)
    p_bounds.add_argument("--derivatives", action="store_true", help="endpoint slopes")
    p_bounds.set_defaults(handler=cmd_bounds)

    p_curve = sub.add_parser("curve", parents=[common], help="bound curve as CSV")
    p_curve.add_argument("--grid", required=True, help='"figure", start:stop:count or a,b,c')
    p_curve.add_argument("--out", required=True)
    p_curve.add_argument("--exact-only", action="store_true")
    p_curve.set_defaults(handler=cmd_curve)

    p_sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo estimate")
    p_sim.add_argument("--strategy", required=True, help="built-in name, machine or pair file")
    p_sim.add_argument("--p", type=float, required=True)
    p_sim.add_argument("--trials", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--max-blocks", type=int, default=DEFAULT_MAX_BLOCKS)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.set_defaults(handler=cmd_simulate)

    return parser


def _fail(args: argparse.Namespace, code: int, exc: BaseException) -> int:
    message = str(exc) or type(exc).__name__
    if isinstance(exc, ValidationError):
        message = "; ".join(
            f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}"
            for error in exc.errors()
        )
    if getattr(args, "json", False):
        print(json.dumps({"error": type(exc).__name__, "message": message}), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)
    logger.debug("command failed", extra={"exit_code": code, "error": type(exc).__name__})
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    handler: Callable[[argparse.Namespace], Result] = args.handler
    try:
        payload, lines = handler(args)
    except (InvalidStrategyError, ValidationError) as exc:
        return _fail(args, EXIT_USAGE, exc)
    except DomainError as exc:
        return _fail(args, EXIT_DOMAIN, exc)
    except (CheckpointError, OSError) as exc:
        return _fail(args, EXIT_IO, exc)
    except ValueError as exc:
        return _fail(args, EXIT_USAGE, exc)
    print(render(payload, lines, args.json))
    return EXIT_OK


def main() -> None:
    sys.exit(run())
