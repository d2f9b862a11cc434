"""Command-line front end.

Subcommands::

    capacity   print the closed-form capacity for one (lambda, omega) pair
    sweep      write the rate-endpoint table over a budget grid as CSV
    simulate   Monte Carlo repetition-code experiment, JSON summary
    verify     run a named verification suite, one status line per check

Exit codes are stable: 0 success, 1 verification failure, 2 argument
error, 3 I/O error, 4 window-sizing error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .capacity import avcei_capacity, separation_sweep
from .coding import append_result_csv, estimate_success, repetition_code
from .correlations import (
    Correlation,
    DeterministicModulator,
    deterministic_correlation,
    effective_flip_prob,
    epr_correlation,
    pr_box,
)
from .jamming import JammerBudget, SizingError, greedy_jammer, typical_jammer, typical_params_from_rates
from .verify import run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_SIZING = 4


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from err
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from err
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def fmt12(value: float) -> str:
    """Fixed decimal formatting with 12 significant digits."""
    return f"{value:.12g}"


@dataclass(frozen=True)
class RunConfig:
    """Validated simulate parameters; built before any work starts."""

    modulation: str
    jammer: str
    lam: float
    n: int
    trials: int
    seed: int
    out: str | None
    eps: float
    p_star: float | None
    threads: int
    csv: str | None

    def __post_init__(self) -> None:
        if self.n % 2 == 0:
            raise ValueError("block length must be odd (majority decoding)")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")


def parse_modulation(spec: str) -> Correlation:
    """Parse det:A,B | local:FILE | epr | pr:t into a correlation table."""
    if spec == "epr":
        return epr_correlation()
    if spec.startswith("pr:"):
        try:
            return pr_box(float(spec[3:]))
        except ValueError as err:
            raise argparse.ArgumentTypeError(f"bad box strength in {spec!r}: {err}") from err
    if spec.startswith("det:"):
        parts = spec[4:].split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError("det modulation needs two maps, e.g. det:id,const0")
        try:
            return deterministic_correlation(DeterministicModulator(parts[0], parts[1]))
        except ValueError as err:
            raise argparse.ArgumentTypeError(str(err)) from err
    if spec.startswith("local:"):
        path = spec[6:]
        try:
            with open(path) as fh:
                table = Correlation.from_json(fh.read())
        except OSError as err:
            raise argparse.ArgumentTypeError(f"cannot read {path!r}: {err}") from err
        except (ValueError, KeyError) as err:
            raise argparse.ArgumentTypeError(f"bad correlation file {path!r}: {err}") from err
        if table.kind != "local":
            raise argparse.ArgumentTypeError(
                f"{path!r} holds a {table.kind!r} table, expected kind 'local'"
            )
        return table
    raise argparse.ArgumentTypeError(
        f"unknown modulation {spec!r}; use det:A,B, local:FILE, epr or pr:t"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macjam",
        description="capacities and Monte Carlo experiments for the jammed two-sender channel",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cap = sub.add_parser("capacity", help="closed-form capacity for one query")
    p_cap.add_argument("--lambda", dest="lam", type=_probability, required=True,
                       help="jammer power constraint in [0, 1]")
    p_cap.add_argument("--omega", type=_probability, required=True,
                       help="environmental flip probability in [0, 1]")

    p_sweep = sub.add_parser("sweep", help="rate endpoints over a budget grid (CSV)")
    p_sweep.add_argument("--grid-start", type=_probability, required=True)
    p_sweep.add_argument("--grid-end", type=_probability, required=True)
    p_sweep.add_argument("--grid-steps", type=_positive_int, required=True)
    p_sweep.add_argument("--out", help="output CSV path (default: stdout)")

    p_sim = sub.add_parser("simulate", help="repetition-code Monte Carlo experiment")
    p_sim.add_argument("--modulation", required=True, type=parse_modulation,
                       help="det:A,B | local:FILE | epr | pr:t  (maps: id, flip, const0, const1)")
    p_sim.add_argument("--jammer", choices=["none", "greedy", "typical"], required=True)
    p_sim.add_argument("--lambda", dest="lam", type=_probability, required=True)
    p_sim.add_argument("--n", type=_positive_int, required=True, help="odd block length")
    p_sim.add_argument("--trials", type=_positive_int, required=True)
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--out", help="output JSON path (default: stdout)")
    p_sim.add_argument("--eps", type=float, default=0.05,
                       help="window slack for the typical jammer (default 0.05)")
    p_sim.add_argument("--p-star", dest="p_star", type=float, default=None,
                       help="target i.i.d. parameter for the typical jammer weights")
    p_sim.add_argument("--threads", type=_positive_int, default=1,
                       help="worker processes for the trials (result is identical)")
    p_sim.add_argument("--csv", help="also append a summary row to this CSV file")

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", choices=["classical", "epr", "jammer", "capacity", "all"],
                       required=True)
    return parser


def _cmd_capacity(args) -> int:
    print(fmt12(avcei_capacity(args.lam, args.omega)))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    start, end, steps = args.grid_start, args.grid_end, args.grid_steps
    if steps == 1:
        if start != end:
            print("error: a single-step grid needs --grid-start == --grid-end", file=sys.stderr)
            return EXIT_USAGE
        grid = [start]
    else:
        if not start < end:
            print("error: --grid-start must be below --grid-end", file=sys.stderr)
            return EXIT_USAGE
        grid = [start + i * (end - start) / (steps - 1) for i in range(steps)]

    lines = ["lambda,classical,epr,pr"]
    for row in separation_sweep(grid):
        lines.append(
            f"{fmt12(row.lam)},{fmt12(row.classical)},{fmt12(row.epr)},{fmt12(row.pr)}"
        )
    payload = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(payload)
        return EXIT_OK
    try:
        with open(args.out, "w") as fh:
            fh.write(payload)
    except OSError as err:
        print(f"error: cannot write {args.out!r}: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_simulate(args) -> int:
    try:
        cfg = RunConfig(
            modulation=_modulation_label(args),
            jammer=args.jammer,
            lam=args.lam,
            n=args.n,
            trials=args.trials,
            seed=args.seed,
            out=args.out,
            eps=args.eps,
            p_star=args.p_star,
            threads=args.threads,
            csv=args.csv,
        )
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE

    corr = args.modulation
    code = repetition_code(cfg.n)
    if cfg.jammer == "none":
        jammer = None
    elif cfg.jammer == "greedy":
        jammer = greedy_jammer(JammerBudget(lam=cfg.lam, n=cfg.n))
    else:
        try:
            params = typical_params_from_rates(
                n=cfg.n,
                lam=cfg.lam,
                eta=effective_flip_prob(corr),
                eps=cfg.eps,
                p_star=cfg.p_star,
            )
        except SizingError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_SIZING
        jammer = typical_jammer(params)

    estimate = estimate_success(
        code, corr, jammer, cfg.lam, cfg.trials, cfg.seed, workers=cfg.threads
    )
    summary = {
        "modulation": cfg.modulation,
        "jammer": cfg.jammer,
        "lambda": cfg.lam,
        "n": cfg.n,
        "trials": cfg.trials,
        "seed": cfg.seed,
        **estimate.to_json_dict(),
    }
    payload = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if cfg.out is None:
        sys.stdout.write(payload)
    else:
        try:
            with open(cfg.out, "w") as fh:
                fh.write(payload)
        except OSError as err:
            print(f"error: cannot write {cfg.out!r}: {err}", file=sys.stderr)
            return EXIT_IO
    if cfg.csv is not None:
        try:
            append_result_csv(
                cfg.csv,
                n=cfg.n,
                trials=cfg.trials,
                modulation=cfg.modulation,
                jammer=cfg.jammer,
                lam=cfg.lam,
                estimate=estimate,
                seed=cfg.seed,
            )
        except OSError as err:
            print(f"error: cannot write {cfg.csv!r}: {err}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def _modulation_label(args) -> str:
    # raw flag string as typed by the user
    argv = getattr(args, "_raw_modulation", None)
    return argv if argv is not None else args.modulation.kind


def _cmd_verify(args) -> int:
    results = run_suite(args.suite)
    failed = [r for r in results if not r.passed]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        suffix = f" - {r.detail}" if r.detail else ""
        print(f"[{status}] {r.name}{suffix}")
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed:", file=sys.stderr)
        for r in failed:
            print(f"  {r.name}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate":
        # keep the user's modulation string for labeling
        for i, token in enumerate(argv):
            if token == "--modulation" and i + 1 < len(argv):
                args._raw_modulation = argv[i + 1]
            elif token.startswith("--modulation="):
                args._raw_modulation = token.split("=", 1)[1]
    if args.command == "capacity":
        return _cmd_capacity(args)
    if args.command == "sweep":
        return _cmd_sweep(args)
    if args.command == "simulate":
        return _cmd_simulate(args)
    return _cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
