"""rrkit command-line front end.

Usage:
    rrkit region --channel bsscbsc --p 0.25 --bound capacity --out cap.csv
    rrkit verify pmax
    rrkit verify symmetry --random --n 5 --seed 7
    rrkit figure fig2 --p 0.25

Exit codes: 0 pass, 1 verification failed, 2 usage error, 3 numeric or I/O failure.
CSV/JSON go to files and standard output; logs go to standard error.
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from dotenv import load_dotenv

from .bounds.bsscbsc import (
    SUM_RATE_CAP,
    bsscbsc_verdict,
    capacity_region,
    classify_regime,
    p_max,
    p_o,
    p_o_slope,
    region_a,
    symmetrization_suite,
)
from .bounds.generic import (
    bound3_generic,
    deterministic_y3_region,
    inner_bound,
    outer_bound_inner_approx,
    remark_constraint_gap,
)
from .codebook_symmetry import check_invariants, random_codebook, symmetrize_codebook, symmetry_verdict
from .config import ToolkitConfig
from .dmc import bssc_triple
from .entropy_core import binary_entropy
from .exceptions import ToolkitError
from .formats import load_channel, load_codebook, region_to_csv, table_to_csv, to_json, write_text
from .inequality_lab import (
    CLAIM1_P_MIN,
    appendix_check,
    claim1_ratio_decreasing,
    claim1_sweep,
    corollary1_suite,
    lemma1_suite,
    mrs_gerber_convexity,
)
from .logging import cli_logger as logger, set_all_levels
from .models import Verdict
from .region import RateRegion, max_vertical_gap

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_ERROR = 3

LAB_PS = (CLAIM1_P_MIN, 0.25, 0.4)
PMAX_REFERENCE = 0.184
PO_SLOPE_TOL = 1e-4
REMARK_TOL = 1e-6
FIG2_POINTS = 501
RANDOM_CODEBOOK_MESSAGES = (2, 2)


@dataclass
class Outcome:
    """What a command produced: stdout document, files to write, exit status."""
    document: dict
    files: dict[Path, str] = field(default_factory=dict)
    passed: bool = True


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from e
    if not 0.0 <= p <= 0.5:
        raise argparse.ArgumentTypeError(f"p must lie in [0, 1/2], got {p}")
    return p


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _combine(name: str, verdicts: list[Verdict]) -> Verdict:
    if len(verdicts) == 1:
        return verdicts[0]
    return Verdict(
        name,
        all(v.passed for v in verdicts),
        min(v.min_slack for v in verdicts),
        details={"runs": [v.to_dict() for v in verdicts]},
    )


def _headline(region: RateRegion) -> dict:
    v = region.vertices
    return {
        "r0_max": region.r0_max,
        "r1_max": region.r1_max,
        "sum_rate_max": float(np.max(v.sum(axis=1))),
        "vertices": len(v),
    }


# ============ region ============

CLOSED_FORM_BOUNDS = ("capacity", "region-a")


def cmd_region(args, config: ToolkitConfig) -> Outcome:
    if args.channel == "bsscbsc":
        if args.p is None:
            raise _UsageError("--p is required with --channel bsscbsc")
        triple = bssc_triple(args.p)
    else:
        if args.bound in CLOSED_FORM_BOUNDS:
            raise _UsageError(f"--bound {args.bound} needs --channel bsscbsc")
        triple = load_channel(args.channel)

    grid_n = args.grid or config.grids.grid_n
    aux_card = args.aux_card or config.grids.aux_card
    weight_grid = config.grids.weight_grid
    doc = {"bound": args.bound, "channel": args.channel}
    if args.channel == "bsscbsc":
        doc["regime"] = classify_regime(args.p).value

    if args.bound == "capacity":
        region, _ = capacity_region(args.p, config.grids.s_grid)
    elif args.bound == "region-a":
        region = region_a(args.p, config.grids.u_grid)
    elif args.bound == "det-y3":
        region = deterministic_y3_region(triple, args.grid or 1001)
    else:
        evaluate = {
            "inner": inner_bound,
            "outer-approx": outer_bound_inner_approx,
            "bound3": bound3_generic,
        }[args.bound]
        region = evaluate(triple, aux_card, grid_n, weight_grid, config.threads)
        doc.update({"grid": grid_n, "aux_card": aux_card})
    if args.p is not None:
        doc["p"] = args.p
    doc.update(_headline(region))
    out = _resolve(args, "region.csv")
    doc["out"] = str(out)
    return Outcome(doc, {out: region_to_csv(region)})


# ============ verify ============

def verify_pmax(args, config) -> Verdict:
    value = p_max()
    residual = abs(1.0 - binary_entropy(value) - SUM_RATE_CAP)
    ok = residual <= 1e-12 and abs(value - PMAX_REFERENCE) <= 1e-3
    return Verdict("pmax", ok, 1e-12 - residual, details={"p_max": value, "residual": residual})


def verify_po(args, config) -> Verdict:
    slope = p_o_slope()
    err = abs(slope.estimate + 1.0)
    return Verdict(
        "po",
        err <= PO_SLOPE_TOL,
        PO_SLOPE_TOL - err,
        p=slope.p,
        details={"p_o": p_o(), "slope": slope.estimate, "oracle_slope": slope.oracle},
    )


def verify_claim1(args, config) -> Verdict:
    grid = config.grids.claim1_grid
    if args.p is None:
        return claim1_sweep(grid_n=grid)
    return claim1_ratio_decreasing(args.p, grid)


def verify_lemma1(args, config) -> Verdict:
    ps = LAB_PS if args.p is None else (args.p,)
    return _combine("lemma1", [lemma1_suite(p, args.trials, args.seed) for p in ps])


def verify_corollary1(args, config) -> Verdict:
    ps = LAB_PS if args.p is None else (args.p,)
    return _combine("corollary1", [corollary1_suite(p, args.trials, args.seed) for p in ps])


def verify_gerber(args, config) -> Verdict:
    ps = LAB_PS if args.p is None else (args.p,)
    grid = config.grids.gerber_grid
    tol = config.tolerances.grid_inequality
    return _combine("gerber", [mrs_gerber_convexity(p, grid, tol) for p in ps])


def verify_bound3(args, config) -> Verdict:
    return bsscbsc_verdict(
        args.p,
        aux_card=args.aux_card or 2,
        grid_n=args.grid or config.grids.grid_n,
        weight_grid=config.grids.weight_grid,
        s_grid=config.grids.s_grid,
        u_grid=config.grids.u_grid,
        max_workers=config.threads,
    )


def verify_symmetry(args, config) -> Verdict:
    if args.codebook:
        base = load_codebook(args.codebook)
    else:
        m0, m1 = RANDOM_CODEBOOK_MESSAGES
        base = random_codebook(args.n, m0, m1, args.seed)
    cb = symmetrize_codebook(base)
    invariants = check_invariants(cb)
    verdict = symmetry_verdict(cb, args.p, config.tolerances.relabel)
    verdict.details["invariants"] = invariants.passed
    verdict.passed = verdict.passed and invariants.passed
    return verdict


def verify_symmetrization(args, config) -> Verdict:
    return symmetrization_suite(trials=args.trials, seed=args.seed,
                                tol=config.tolerances.identity)


def verify_remark(args, config) -> Verdict:
    result = remark_constraint_gap(
        bssc_triple(args.p),
        aux_card=args.aux_card or 2,
        grid_n=args.grid or 41,
        max_workers=config.threads,
    )
    return Verdict(
        "remark",
        result.gap <= REMARK_TOL,
        REMARK_TOL - result.gap,
        p=args.p,
        grid=args.grid or 41,
        details={"gap": result.gap, "r0_at_gap": result.r0_at_gap},
    )


VERIFIERS = {
    "pmax": verify_pmax,
    "po": verify_po,
    "claim1": verify_claim1,
    "lemma1": verify_lemma1,
    "corollary1": verify_corollary1,
    "gerber": verify_gerber,
    "bound3": verify_bound3,
    "symmetry": verify_symmetry,
    "symmetrization": verify_symmetrization,
    "remark": verify_remark,
}


def cmd_verify(args, config: ToolkitConfig) -> Outcome:
    if args.check == "appendix":
        verdict, table = appendix_check(config.grids.fig3_grid)
        out = _resolve(args, "fig3.csv")
        doc = verdict.to_dict()
        doc["out"] = str(out)
        return Outcome(doc, {out: table_to_csv(("x", "R", "S"), table)}, verdict.passed)
    verdict = VERIFIERS[args.check](args, config)
    return Outcome(verdict.to_dict(), passed=verdict.passed)


# ============ figure ============

def cmd_figure(args, config: ToolkitConfig) -> Outcome:
    if args.figure == "fig3":
        verdict, table = appendix_check(config.grids.fig3_grid)
        out = _resolve(args, "fig3.csv")
        doc = {"figure": "fig3", "min_r_minus_s": verdict.min_slack, "out": str(out)}
        return Outcome(doc, {out: table_to_csv(("x", "R", "S"), table)})

    inner, regime = capacity_region(args.p, config.grids.s_grid)
    outer = region_a(args.p, config.grids.u_grid)
    gap, r0 = max_vertical_gap(inner, outer)
    r0_grid = np.linspace(0.0, max(inner.r0_max, outer.r0_max), FIG2_POINTS)
    table = np.column_stack([r0_grid, inner.height(r0_grid), outer.height(r0_grid)])
    out = _resolve(args, "fig2.csv")
    doc = {
        "figure": "fig2",
        "p": args.p,
        "regime": regime.value,
        "gap": gap,
        "r0_at_gap": r0,
        "out": str(out),
    }
    return Outcome(doc, {out: table_to_csv(("R0", "inner", "region_a"), table)})


# ============ Plumbing ============

class _UsageError(Exception):
    pass


def _resolve(args, default: str) -> Path:
    out = Path(args.out or default)
    return out if out.is_absolute() else Path(args.out_dir) / out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrkit",
        description="Rate regions of 3-receiver broadcast channels with two degraded message sets",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Capacity region of BSSC + BSC(1/4)
  %(prog)s region --channel bsscbsc --p 0.25 --bound capacity --out cap.csv

  # Generic inner bound of a channel triple from JSON
  %(prog)s region --channel triple.json --bound inner --grid 101 --aux-card 2

  # Verification suites
  %(prog)s verify pmax
  %(prog)s verify lemma1 --trials 1000 --seed 0
  %(prog)s verify symmetry --random --n 5 --seed 7

  # Figure data
  %(prog)s figure fig2 --p 0.25
  %(prog)s figure fig3 --out-dir results/
        """,
    )
    parser.add_argument("--config", help="Path to config.yaml (default: RRKIT_CONFIG or repo config)")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Override the configured log level")
    parser.add_argument("--out-dir", default=".", help="Directory for relative output paths")
    sub = parser.add_subparsers(dest="command", required=True)

    region = sub.add_parser("region", help="Compute a rate region and write its boundary CSV")
    region.add_argument("--channel", default="bsscbsc", help="'bsscbsc' or a channel-triple JSON file")
    region.add_argument("--p", type=_probability, help="BSC crossover probability in [0, 1/2]")
    region.add_argument("--bound", required=True,
                        choices=["inner", "outer-approx", "bound3", "capacity", "region-a", "det-y3"])
    region.add_argument("--grid", type=_positive_int, help="s-grid resolution")
    region.add_argument("--aux-card", type=_positive_int, help="Auxiliary alphabet size")
    region.add_argument("--out", help="Output CSV (default region.csv)")
    region.set_defaults(func=cmd_region)

    verify = sub.add_parser("verify", help="Run a verification and print its JSON verdict")
    checks = verify.add_subparsers(dest="check", required=True)
    checks.add_parser("pmax", help="Sum-rate-only threshold")
    checks.add_parser("po", help="Threshold where the sum-rate constraint stops mattering")
    c = checks.add_parser("claim1", help="f'/g' decreasing (one p, or the sweep over [1/6, 1/2])")
    c.add_argument("--p", type=_probability)
    for name in ("lemma1", "corollary1"):
        c = checks.add_parser(name, help=f"Randomized {name} suite")
        c.add_argument("--p", type=_probability)
        c.add_argument("--trials", type=_positive_int, default=1000)
        c.add_argument("--seed", type=int, default=0)
    c = checks.add_parser("gerber", help="Convexity of h(p * f^-1(y))")
    c.add_argument("--p", type=_probability)
    c = checks.add_parser("appendix", help="S(x) <= R(x) and the (x, R, S) table")
    c.add_argument("--out", help="Output CSV (default fig3.csv)")
    c = checks.add_parser("bound3", help="Single-auxiliary outer bound against the capacity region")
    c.add_argument("--p", type=_probability, required=True)
    c.add_argument("--grid", type=_positive_int)
    c.add_argument("--aux-card", type=_positive_int)
    c = checks.add_parser("symmetry", help="Relabel equivalence of flip-closed codebooks")
    source = c.add_mutually_exclusive_group(required=True)
    source.add_argument("--codebook", help="Base codebook JSON")
    source.add_argument("--random", action="store_true", help="Random base codebook")
    c.add_argument("--n", type=_positive_int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--p", type=_probability, default=0.25)
    c = checks.add_parser("symmetrization", help="Dominance of the symmetrized auxiliary")
    c.add_argument("--trials", type=_positive_int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c = checks.add_parser("remark", help="Effect of R0 <= min{I(U1;Y1), I(U2;Y2)}")
    c.add_argument("--p", type=_probability, default=0.25)
    c.add_argument("--grid", type=_positive_int)
    c.add_argument("--aux-card", type=_positive_int)
    verify.set_defaults(func=cmd_verify)

    figure = sub.add_parser("figure", help="Emit figure data as CSV")
    figs = figure.add_subparsers(dest="figure", required=True)
    c = figs.add_parser("fig2", help="Inner bound against Region A")
    c.add_argument("--p", type=_probability, default=0.25)
    c.add_argument("--out", help="Output CSV (default fig2.csv)")
    c = figs.add_parser("fig3", help="R(x) and S(x)")
    c.add_argument("--out", help="Output CSV (default fig3.csv)")
    figure.set_defaults(func=cmd_figure)
    return parser


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    args.out = getattr(args, "out", None)

    try:
        config = ToolkitConfig.load(args.config)
    except ToolkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    set_all_levels(args.log_level or config.log_level)

    try:
        outcome = args.func(args, config)
    except _UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"rrkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ToolkitError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    try:
        for path, text in outcome.files.items():
            write_text(path, text)
            logger.info(f"wrote {path}")
    except OSError as e:
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return EXIT_ERROR

    sys.stdout.write(to_json(outcome.document))
    return EXIT_PASS if outcome.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
