"""
CLI Runner: series expansion, coefficient lookup, dissection and verification.

Usage:
    From project root:
        python -m src.twodiv.run verify theorem --weights 12 --a-max 2 --b-max 2

    Or directly:
        python src/twodiv/run.py coeff --weight 12 -m -1 -n 2

Subcommands:
    expand     print a q-expansion (canonical basis element or a named form)
    coeff      print a_k(m, n) and its 2-adic valuation
    verify     check the main congruence grid, or one named claim
    dissect    two-dissect a Kolberg expression
    duality    check a_k(m, n) = -a_{2-k}(n, m)
    sharpness  minimum observed valuations for one case
    lemmas     list the named claims
    pipeline   print the index-four dissection transcript

Exit status: 0 when everything checked passes, 1 on a failed check, 2 on
usage or computation errors.
"""

import argparse
import logging
import os
import sys
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

# Support both `python -m` and direct script execution
try:
    from . import __version__
    from .config import load_config, load_environment
    from .dissection import dissect, divide_by_q, halve, reduce_mod_pow2
    from .errors import ConfigError, TwoDivError
    from .expression import parse_expression, render
    from .harness import duality_defects, probe_sharpness, verify_main_theorem
    from .lemmas import list_lemmas, verify_lemma
    from .level1 import a_coefficient, canonical_basis, delta, delta_k, eisenstein, j_invariant
    from .level2 import alpha, phi, psi, s4, s6, t4, t6, theta
    from .models import CaseLabel, FormKind, GridConfig, HarnessConfig, LemmaBounds, Parity, VerificationReport
    from .pipeline import run_index_four_pipeline
    from .qseries import QSeries, two_adic_valuation
    from .report import FORMATS, render_report, render_sharpness, render_transcript, write_output
except ImportError:
    sys.path.insert(
        0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
    )
    from src.twodiv import __version__
    from src.twodiv.config import load_config, load_environment
    from src.twodiv.dissection import dissect, divide_by_q, halve, reduce_mod_pow2
    from src.twodiv.errors import ConfigError, TwoDivError
    from src.twodiv.expression import parse_expression, render
    from src.twodiv.harness import duality_defects, probe_sharpness, verify_main_theorem
    from src.twodiv.lemmas import list_lemmas, verify_lemma
    from src.twodiv.level1 import a_coefficient, canonical_basis, delta, delta_k, eisenstein, j_invariant
    from src.twodiv.level2 import alpha, phi, psi, s4, s6, t4, t6, theta
    from src.twodiv.models import CaseLabel, FormKind, GridConfig, HarnessConfig, LemmaBounds, Parity, VerificationReport
    from src.twodiv.pipeline import run_index_four_pipeline
    from src.twodiv.qseries import QSeries, two_adic_valuation
    from src.twodiv.report import FORMATS, render_report, render_sharpness, render_transcript, write_output

logger = logging.getLogger(__name__)

RULE = "=" * 65


# ─────────────────────── helpers ───────────────────────

def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _banner(lines: List[str], to_stderr: bool) -> None:
    stream = sys.stderr if to_stderr else sys.stdout
    print(RULE, file=stream)
    for line in lines:
        print(f"  {line}", file=stream)
    print(RULE, file=stream)


def _validated(model, base, overrides: Dict) -> object:
    """Re-validate base with CLI overrides so field validators apply to them too."""
    data = base.model_dump()
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid command-line values: {e}") from e


def _grid(args: argparse.Namespace, config: HarnessConfig) -> GridConfig:
    return _validated(GridConfig, config.theorem, {
        "weights": args.weights,
        "a_max": args.a_max,
        "b_max": args.b_max,
        "m_list": args.m_list,
        "n_list": args.n_list,
    })


def _configure_logging(level: str) -> None:
    try:
        logging.basicConfig(level=level.upper(), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    except ValueError as e:
        raise ConfigError(f"invalid log level {level!r}") from e


def _finish(report: VerificationReport, args: argparse.Namespace, title: str) -> int:
    quiet = args.format != "table" or args.output is not None
    summary = report.summary()
    _banner([title, f"Records: {len(report.records)}"], quiet)
    write_output(render_report(report, args.format), args.output)
    _banner([
        f"Done. {summary['passed']}/{summary['total']} claims passed"
        f" ({summary['informational']} informational).",
    ], quiet)
    if report.failures:
        first = report.failures[0]
        print(f"[FAIL] k={first.k} {first.case} a={first.a} b={first.b} m={first.m} n={first.n}: "
              f"observed {first.observed if first.observed is not None else 'inf'}, "
              f"claimed {first.claimed if first.claimed is not None else 'inf'}", file=sys.stderr)
        return 1
    return 0


# ─────────────────────── subcommands ───────────────────────

_FORMS: Dict[FormKind, Callable[[argparse.Namespace], QSeries]] = {
    FormKind.CANONICAL: lambda a: canonical_basis(a.weight, a.index, a.prec),
    FormKind.E4: lambda a: eisenstein(4, a.prec),
    FormKind.E6: lambda a: eisenstein(6, a.prec),
    FormKind.DELTA: lambda a: delta(a.prec),
    FormKind.J: lambda a: j_invariant(a.prec),
    FormKind.DELTA_K: lambda a: delta_k(a.weight, a.prec),
    FormKind.S4: lambda a: s4(a.prec),
    FormKind.S6: lambda a: s6(a.prec),
    FormKind.T4: lambda a: t4(a.prec),
    FormKind.T6: lambda a: t6(a.prec),
    FormKind.PHI: lambda a: phi(a.prec),
    FormKind.PSI: lambda a: psi(a.prec),
    FormKind.ALPHA: lambda a: alpha(a.weight, a.prec),
    FormKind.THETA: lambda a: theta(a.weight, a.prec),
}


def cmd_expand(args: argparse.Namespace, config: HarnessConfig) -> int:
    kind = FormKind(args.form)
    if kind in (FormKind.CANONICAL, FormKind.DELTA_K, FormKind.ALPHA, FormKind.THETA) and args.weight is None:
        raise TwoDivError(f"--weight is required for --form {kind.value}")
    if kind is FormKind.CANONICAL and args.index is None:
        raise TwoDivError("--index is required for --form canonical")
    print(_FORMS[kind](args))
    return 0


def cmd_coeff(args: argparse.Namespace, config: HarnessConfig) -> int:
    value = a_coefficient(args.weight, args.m, args.n)
    v = two_adic_valuation(value)
    print(f"a_{args.weight}({args.m}, {args.n}) = {value}")
    print(f"v2 = {'inf' if v == float('inf') else v}")
    return 0


def cmd_verify(args: argparse.Namespace, config: HarnessConfig) -> int:
    workers = args.workers or config.workers
    if args.target == "theorem":
        if args.name:
            raise TwoDivError("`verify theorem` takes no claim name")
        grid = _grid(args, config)
        _banner([f"[Verifying] main congruence, weights {grid.weights}",
                 f"a <= {grid.a_max}, b <= {grid.b_max}, m in {grid.m_list}, n in {grid.n_list}",
                 f"Workers: {workers}"], args.format != "table" or args.output is not None)
        report = verify_main_theorem(grid, workers=workers)
        return _finish(report, args, f"twodiv {__version__}: main congruence")

    if not args.name:
        raise TwoDivError("`verify lemma` needs a claim name; see `twodiv lemmas`")
    bounds = _validated(LemmaBounds, config.lemmas, {
        "weights": args.weights,
        "odd_max": args.odd_max,
        "a_max": args.a_max,
        "b_max": args.b_max,
    })
    report = verify_lemma(args.name, bounds)
    return _finish(report, args, f"twodiv {__version__}: {args.name}")


def cmd_dissect(args: argparse.Namespace, config: HarnessConfig) -> int:
    expr = parse_expression(args.expr)
    part = dissect(expr, Parity(args.parity))
    if args.halve:
        if args.parity == Parity.ODD.value:
            part = divide_by_q(part)
        part = halve(part)
    if args.mod_exp is not None:
        part = reduce_mod_pow2(part, args.mod_exp)
    print(render(part))
    return 0


def cmd_duality(args: argparse.Namespace, config: HarnessConfig) -> int:
    defects = duality_defects(args.weight, args.max)
    if defects:
        for d in defects:
            print(f"[FAIL] a_{args.weight}({d.m}, {d.n}) = {d.a_k}, "
                  f"a_{2 - args.weight}({d.n}, {d.m}) = {d.a_dual}")
        return 1
    print(f"[Done] a_{args.weight}(m, n) = -a_{2 - args.weight}(n, m) for all m, n <= {args.max} (n != -m)")
    return 0


def cmd_sharpness(args: argparse.Namespace, config: HarnessConfig) -> int:
    args.weights = [args.weight]
    grid = _grid(args, config)
    report = probe_sharpness(args.weight, CaseLabel(args.case), grid)
    write_output(render_sharpness(report, args.format), args.output)
    return 0


def cmd_lemmas(args: argparse.Namespace, config: HarnessConfig) -> int:
    for entry in list_lemmas():
        print(f"{entry.name:<26} {entry.statement}")
    return 0


def cmd_pipeline(args: argparse.Namespace, config: HarnessConfig) -> int:
    transcript = run_index_four_pipeline(args.weight)
    write_output(render_transcript(transcript), args.output)
    return 0 if transcript.passed else 1


# ─────────────────────── argument parsing ───────────────────────

def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a-max", type=int, default=None)
    p.add_argument("--b-max", type=int, default=None)
    p.add_argument("--m-list", type=_int_list, default=None, help="odd m values, e.g. 1,3,5")
    p.add_argument("--n-list", type=_int_list, default=None, help="odd n values, e.g. 1,3,5")


def _add_output_flags(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--format", choices=FORMATS, default=default_format)
    p.add_argument("--output", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twodiv", description="2-adic congruences for canonical bases f_{k,m}")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="YAML config (default: $TWODIV_CONFIG or the shipped defaults)")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ... (default: $TWODIV_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print a q-expansion")
    p.add_argument("--form", choices=[f.value for f in FormKind], default=FormKind.CANONICAL.value)
    p.add_argument("--weight", type=int, default=None)
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--prec", type=int, default=20)
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("coeff", help="print a_k(m, n) and its 2-adic valuation")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(handler=cmd_coeff)

    p = sub.add_parser("verify", help="check the main congruence or one named claim")
    p.add_argument("target", choices=["theorem", "lemma"])
    p.add_argument("name", nargs="?", default=None, help="claim name for `verify lemma`")
    p.add_argument("--weights", type=_int_list, default=None)
    p.add_argument("--odd-max", type=int, default=None, help="largest odd m, n for `verify lemma`")
    p.add_argument("--workers", type=int, default=None)
    _add_grid_flags(p)
    _add_output_flags(p, "table")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("dissect", help="two-dissect a Kolberg expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--parity", choices=[x.value for x in Parity], required=True)
    p.add_argument("--mod-exp", type=int, default=None, help="reduce coefficients mod 2^N")
    p.add_argument("--halve", action="store_true", help="substitute q^2 -> q after dissecting")
    p.set_defaults(handler=cmd_dissect)

    p = sub.add_parser("duality", help="check a_k(m, n) = -a_{2-k}(n, m)")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--max", type=int, default=20)
    p.set_defaults(handler=cmd_duality)

    p = sub.add_parser("sharpness", help="minimum observed valuation per case")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--case", choices=[c.value for c in CaseLabel], required=True)
    _add_grid_flags(p)
    _add_output_flags(p, "table")
    p.set_defaults(handler=cmd_sharpness)

    p = sub.add_parser("lemmas", help="list the named claims")
    p.set_defaults(handler=cmd_lemmas)

    p = sub.add_parser("pipeline", help="print the index-four dissection transcript")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(handler=cmd_pipeline)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    load_environment()
    try:
        config = load_config(args.config)
        _configure_logging(args.log_level or config.log_level)
        return args.handler(args, config)
    except TwoDivError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
