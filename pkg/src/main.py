"""Command line entry point for quatrace."""

import argparse
import csv
import io
import itertools
import json
import logging
import sys
from collections.abc import Callable, Iterator, Sequence
from pathlib import Path
from typing import Any

import structlog
import yaml

from src import __version__
from src.brackets import bracketize, glb_condition, is_planar_on, upper_bound_status
from src.combinatorics import (
    SignedDomain,
    SignedPermutation,
    doubled,
    enumerate_alternating_premaps,
    enumerate_involution_premaps,
    enumerate_pairings,
    enumerate_premaps,
    is_premap,
    with_infinity,
)
from src.combinatorics.serialization import parse_cycles, premap_from_json
from src.config import Settings, load_config
from src.config.toml_source import render_settings_toml
from src.dsl import serialize, to_spec
from src.ensembles import EnsembleManifest, load_manifest
from src.exceptions import (
    CapExceededError,
    ManifestError,
    NotBracketableError,
    ParseError,
    QuatraceError,
)
from src.expansion import (
    ExpressionSpec,
    compare_mc,
    evaluate,
    exact_expectation,
    format_value,
    leading_terms,
    mc_expectation,
    spec_from_json,
)
from src.quaternion import QuaternionMatrix
from src.utils.constants import (
    APP_DESCRIPTION,
    EXIT_CAP_EXCEEDED,
    EXIT_FAILURE,
    EXIT_MANIFEST_ERROR,
    EXIT_NOT_BRACKETABLE,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    SCHEMA_VERSION,
)
from src.weingarten import weingarten_table

# Most specific first; NotBracketableError and ParseError subclass broader families
EXIT_CODES: list[tuple[type[QuatraceError], int]] = [
    (ParseError, EXIT_PARSE_ERROR),
    (CapExceededError, EXIT_CAP_EXCEEDED),
    (ManifestError, EXIT_MANIFEST_ERROR),
    (NotBracketableError, EXIT_NOT_BRACKETABLE),
]

Payload = dict[str, Any]


def setup_logging(debug: bool = False, level: str = "INFO") -> None:
    """Configure structured logging on stderr; stdout carries results only."""
    log_level = logging.DEBUG if debug else getattr(logging, level.upper(), logging.INFO)

    logging.basicConfig(
        level=log_level,
        format="%(message)s",
        stream=sys.stderr,
        force=True,
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            (structlog.processors.JSONRenderer() if not debug else structlog.dev.ConsoleRenderer()),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


# -- argument parsing -------------------------------------------------------


def _expression_args(parser: argparse.ArgumentParser, fixed_n: bool) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("-e", "--expr", help='Expression text, e.g. "E[Re(tr(X1 X1*))]"')
    source.add_argument("-s", "--spec", type=Path, help="Expression as JSON faces, word and ε")
    parser.add_argument("-m", "--manifest", type=Path, help="Ensemble manifest (YAML or JSON)")
    parser.add_argument("--y-file", type=Path, help="JSON list of the fixed matrices Y_k (exact entries)")
    if fixed_n:
        parser.add_argument("--at", type=int, required=True, metavar="N", help="Matrix size N")
    else:
        size = parser.add_mutually_exclusive_group()
        size.add_argument("--at", type=int, metavar="N", help="Evaluate at a fixed N")
        size.add_argument("--symbolic", action="store_true", help="Rational function of N (default)")


def _sampling_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--samples", type=int, help="Monte Carlo draws")
    parser.add_argument("--seed", type=int, help="Seed; required unless default_seed is configured")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatrace",
        description=APP_DESCRIPTION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "Results print as YAML-style text unless --json is given; errors are always JSON.\n"
            "Exit codes: 0 ok, 1 failure, 2 parse error, 3 cap exceeded, 4 manifest error, 5 not bracketable."
        ),
    )
    parser.add_argument("--version", action="version", version=f"quatrace {__version__}")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument("--log-level", help="Logging level (DEBUG, INFO, WARNING, ...)")
    parser.add_argument("--config-file", type=Path, help="Path to a .env file")
    parser.add_argument("--json", action="store_true", help="Print JSON; results are YAML-style text otherwise")
    parser.add_argument("-o", "--output", type=Path, help="Write the result to a file")
    parser.add_argument(
        "--cap",
        type=int,
        help="Cap on premap products, the product of (2m-1)!! over colours before pruning (env QUATRACE_CAP)",
    )
    parser.add_argument("--workers", type=int, help="Worker threads")

    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = commands.add_parser("eval", help="Exact expected value by the topological expansion")
    _expression_args(p, fixed_n=False)
    p.add_argument(
        "--ledger",
        nargs="?",
        const=True,
        default=False,
        type=Path,
        metavar="FILE",
        help="Include every term of the expansion, or write them as JSON to FILE",
    )
    p.add_argument("--leading", action="store_true", help="Include the terms of the highest power of N")
    p.add_argument("--residual", action="store_true", help="Group terms by residual expression")
    p.add_argument("--timing", action="store_true", help="Include the elapsed time in the output")
    p.add_argument(
        "--direct",
        action="store_true",
        help="Also sum over index assignments directly (needs --at, capped by wick_cap)",
    )

    p = commands.add_parser("mc", help="Monte Carlo estimate")
    _expression_args(p, fixed_n=True)
    _sampling_args(p)

    p = commands.add_parser("compare", help="Exact value against a Monte Carlo estimate")
    _expression_args(p, fixed_n=True)
    _sampling_args(p)
    p.add_argument("--threshold", type=float, help="|z| bound for PASS")
    p.add_argument("--offset", type=float, default=0.0, help=argparse.SUPPRESS)

    for name, help_text in (
        ("bracketize", "Bracket expression for a pair of premaps"),
        ("check-planar", "Planarity, upper bound and glb checks for two permutations"),
    ):
        p = commands.add_parser(name, help=help_text)
        first, second = ("--re", "--tr") if name == "bracketize" else ("--pi", "--rho")
        p.add_argument(first, required=True, help="JSON, a JSON file, or cycle notation")
        p.add_argument(second, required=True, help="JSON, a JSON file, or cycle notation")
        p.add_argument("-n", type=int, help="Number of symbols when cycle notation is given")

    p = commands.add_parser("wg-table", help="Symplectic Weingarten table")
    p.add_argument("n", type=int, help="Degree (even)")
    p.add_argument("--at", type=int, metavar="N", help="Evaluate at a fixed N")
    p.add_argument("--csv", action="store_true", help="CSV rows instead of JSON")

    p = commands.add_parser("enumerate", help="List premaps or pairings")
    p.add_argument("kind", choices=sorted(ENUMERATIONS))
    p.add_argument("n", type=int, help="Number of symbols")
    p.add_argument("--count-only", action="store_true", help="Omit the items")

    p = commands.add_parser("config", help="Show the effective settings")
    p.add_argument("--toml", action="store_true", help="Print a settings.toml document instead")

    return parser


# -- inputs -----------------------------------------------------------------


def _manifest(path: Path | None) -> EnsembleManifest:
    return load_manifest(path) if path is not None else EnsembleManifest([])


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise QuatraceError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e.msg}", e.pos) from e


def _y_matrices(path: Path | None) -> tuple[QuaternionMatrix, ...] | None:
    if path is None:
        return None
    return tuple(QuaternionMatrix.from_lists(rows, exact=True) for rows in _read_json(path))


def load_expression(args: argparse.Namespace) -> ExpressionSpec:
    """The expression named on the command line, bound to the manifest."""
    manifest = _manifest(args.manifest)
    if args.expr is not None:
        spec = to_spec(args.expr, manifest)
    else:
        spec = spec_from_json(_read_json(args.spec), manifest)
    updates: dict[str, Any] = {}
    if getattr(args, "residual", False):
        updates["y_mode"] = "residual"
    ys = _y_matrices(args.y_file)
    if ys is not None:
        updates["y_matrices"] = ys
    return spec.with_options(**updates) if updates else spec


def load_permutation(raw: str, n: int | None) -> SignedPermutation:
    """A premap from JSON text, a JSON file, or cycle notation; one-sided input is doubled."""
    text = raw.strip()
    if text.startswith("{"):
        try:
            return premap_from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON permutation: {e.msg}", e.pos) from e
    if Path(text).is_file():
        return premap_from_json(_read_json(Path(text)))
    if n is None:
        raise QuatraceError("cycle notation needs -n")
    cycles = parse_cycles(text)
    domain = SignedDomain(n, has_infinity=any("inf" in str(x) or "∞" in str(x) for c in cycles for x in c))
    perm = SignedPermutation.from_cycles(domain, cycles)
    if is_premap(perm):
        return perm
    # one-sided face, possibly with starred symbols
    points = {domain.parse(x) for c in cycles for x in c}
    points |= {k for k in domain.positive() if k not in points and -k not in points}
    return doubled(SignedPermutation.from_cycles(domain, cycles, points=points))


def _seed(args: argparse.Namespace, settings: Settings) -> int:
    seed = args.seed if args.seed is not None else settings.default_seed
    if seed is None:
        raise QuatraceError("Monte Carlo commands need --seed (or QUATRACE_DEFAULT_SEED)")
    return seed


def _engine_options(settings: Settings) -> dict[str, Any]:
    return {
        "cap": settings.cap,
        "workers": settings.workers,
        "symbolic_max_symbols": settings.symbolic_max_symbols,
        "fixed_max_symbols": settings.fixed_max_symbols,
    }


def _mc_options(settings: Settings) -> dict[str, Any]:
    return {
        "chunk_size": settings.mc_chunk_size,
        "workers": settings.workers,
        "haar_tol": settings.haar_residual_tol,
    }


# -- commands ---------------------------------------------------------------


def cmd_eval(args: argparse.Namespace, settings: Settings) -> tuple[Payload, int]:
    spec = load_expression(args)
    options = _engine_options(settings)
    result = evaluate(spec, args.at, ledger=bool(args.ledger), **options)
    payload = result.to_dict()
    if isinstance(args.ledger, Path):
        ledger = {"schema": SCHEMA_VERSION, "ledger": payload.pop("ledger", [])}
        _emit(json.dumps(ledger, ensure_ascii=False) + "\n", args.ledger)
        payload["ledger_file"] = str(args.ledger)
    if args.leading:
        payload["leading"] = [t.to_dict() for t in leading_terms(spec, args.at, **options)]
    if args.timing:
        payload["elapsed"] = round(result.elapsed, 6)
    if not args.direct:
        return payload, EXIT_OK
    if args.at is None:
        raise QuatraceError("--direct needs --at")
    direct = exact_expectation(spec, args.at, cap=settings.wick_cap)
    payload["direct"] = format_value(direct)
    payload["agrees"] = result.materialize() == direct
    return payload, EXIT_OK if payload["agrees"] else EXIT_FAILURE


def cmd_mc(args: argparse.Namespace, settings: Settings) -> tuple[Payload, int]:
    spec = load_expression(args)
    samples = args.samples or settings.default_samples
    estimate = mc_expectation(spec, args.at, samples, _seed(args, settings), **_mc_options(settings))
    return {"shape": spec.shape, "N": args.at, **estimate.to_dict()}, EXIT_OK


def cmd_compare(args: argparse.Namespace, settings: Settings) -> tuple[Payload, int]:
    spec = load_expression(args)
    report = compare_mc(
        spec,
        args.at,
        args.samples or settings.default_samples,
        _seed(args, settings),
        threshold=args.threshold if args.threshold is not None else settings.z_threshold,
        offset=args.offset,
        engine_options=_engine_options(settings),
        **_mc_options(settings),
    )
    return {"N": args.at, **report.to_dict()}, EXIT_OK if report.passed else EXIT_FAILURE


def cmd_bracketize(args: argparse.Namespace, settings: Settings) -> tuple[Payload, int]:
    diagram = bracketize(load_permutation(args.re, args.n), load_permutation(args.tr, args.n))
    return {"expression": serialize(diagram)}, EXIT_OK


def cmd_check_planar(args: argparse.Namespace, settings: Settings) -> tuple[Payload, int]:
    """The conditions bracketize needs: π planar on ρ⁻¹, a least upper bound, and glb."""
    pi = with_infinity(load_permutation(args.pi, args.n))
    rho = with_infinity(load_permutation(args.rho, args.n))
    result = is_planar_on(pi, rho.inverse())
    payload: Payload = {
        "planar": result.planar,
        "crossing": list(result.crossing) if result.crossing else None,
        "sign_conflict": result.sign_conflict,
        "glb": None,
        "upper_bound": None,
        "bracketable": False,
    }
    if result.witness is not None:
        p, r = pi.induced(result.witness), rho.induced(result.witness)
        payload["glb"] = glb_condition(p, r)
        bound = upper_bound_status(p, r)
        payload["upper_bound"] = str(bound.sigma) if bound is not None else None
        payload["bracketable"] = result.planar and payload["glb"]
    return payload, EXIT_OK


def cmd_wg_table(args: argparse.Namespace, settings: Settings) -> tuple[Payload, int]:
    table = weingarten_table(
        args.n,
        args.at,
        symbolic_max_symbols=settings.symbolic_max_symbols,
        fixed_max_symbols=settings.fixed_max_symbols,
    )
    return table.to_dict(), EXIT_OK


def _pairing_items(n: int) -> Iterator[Any]:
    for pairing in enumerate_pairings(range(1, n + 1)):
        yield [list(p) for p in pairing.pairs()]


ENUMERATIONS: dict[str, Callable[[int], Iterator[Any]]] = {
    "premaps": lambda n: (str(p) for p in enumerate_premaps(SignedDomain(n))),
    "alternating": lambda n: (str(p) for p in enumerate_alternating_premaps(SignedDomain(n))),
    "involution": lambda n: (str(p) for p in enumerate_involution_premaps(SignedDomain(n))),
    "pairings": _pairing_items,
}


def cmd_enumerate(args: argparse.Namespace, settings: Settings) -> tuple[Payload, int]:
    items = list(itertools.islice(ENUMERATIONS[args.kind](args.n), settings.cap + 1))
    if len(items) > settings.cap:
        raise CapExceededError(
            f"enumerating {args.kind} of {args.n} exceeds the cap", requested=len(items), cap=settings.cap
        )
    payload: Payload = {"kind": args.kind, "n": args.n, "count": len(items)}
    if not args.count_only:
        payload["items"] = items
    return payload, EXIT_OK


def cmd_config(args: argparse.Namespace, settings: Settings) -> tuple[Payload, int]:
    return {"path": str(settings.settings_path), "settings": settings.model_dump(mode="json")}, EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace, Settings], tuple[Payload, int]]] = {
    "eval": cmd_eval,
    "mc": cmd_mc,
    "compare": cmd_compare,
    "bracketize": cmd_bracketize,
    "check-planar": cmd_check_planar,
    "wg-table": cmd_wg_table,
    "enumerate": cmd_enumerate,
    "config": cmd_config,
}


# -- output -----------------------------------------------------------------


def exit_code_for(error: QuatraceError) -> int:
    for kind, code in EXIT_CODES:
        if isinstance(error, kind):
            return code
    return EXIT_FAILURE


def error_payload(error: QuatraceError) -> Payload:
    payload: Payload = {"schema": SCHEMA_VERSION, "error": str(error), "type": type(error).__name__}
    if isinstance(error, NotBracketableError):
        payload["obstruction"] = error.obstruction
        payload["crossing"] = list(error.crossing) if error.crossing else None
    if isinstance(error, ParseError):
        payload["position"] = error.position
    if isinstance(error, CapExceededError):
        payload["requested"] = error.requested
        payload["cap"] = error.cap
    return payload


def _csv_rows(payload: Payload) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["lambda", "num", "den", "value"])
    for row in payload["entries"]:
        writer.writerow([" ".join(map(str, row[key])) for key in ("lambda", "num", "den")] + [row["value"]])
    return buffer.getvalue()


def render(payload: Payload, as_json: bool, as_csv: bool = False, as_toml: bool = False) -> str:
    if as_csv:
        return _csv_rows(payload)
    if as_toml:
        return render_settings_toml(payload["settings"])
    if as_json:
        return json.dumps(payload, ensure_ascii=False) + "\n"
    return yaml.safe_dump(payload, sort_keys=False, allow_unicode=True)


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command; returns the process exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(debug=args.debug, level=args.log_level or "INFO")
    logger = structlog.get_logger()

    try:
        settings = load_config(
            config_file=args.config_file, cap=args.cap, workers=args.workers, log_level=args.log_level
        )
        logger.debug("Running command", command=args.command, version=__version__)
        payload, code = COMMANDS[args.command](args, settings)
    except QuatraceError as e:
        code = exit_code_for(e)
        logger.error("Command failed", command=args.command, error=str(e), error_type=type(e).__name__)
        _emit(render(error_payload(e), as_json=True), args.output)
        return code

    payload = {"schema": SCHEMA_VERSION, "command": args.command, **payload}
    text = render(payload, args.json, as_csv=getattr(args, "csv", False), as_toml=getattr(args, "toml", False))
    _emit(text, args.output)
    return code


def run() -> None:
    """Synchronous entry point for the console script."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nInterrupted", file=sys.stderr)
        sys.exit(130)


if __name__ == "__main__":
    run()
