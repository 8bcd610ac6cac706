"""Command-line front end.

Subcommands::

    bounds     security-bound table over a range of min-entropy losses
    code gen   generate a sphere code file
    code check measure a code's covering angle against the lattice bound
    adversary  worst-case key distribution for a code and loss budget
    simulate   Monte Carlo run of the full protocol with the worst case
    converge   discretization-convergence study over a list of code sizes

All CSV output uses '.' decimals and line-feed terminators regardless of
locale, and repeated invocations with the same flags and seed produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import adversary as adv
from . import protocol
from .bounds import cap_geometry
from .codes import covering_angle, fibonacci_code, load_code, meridian_code, store_code
from .experiments import (
    ExperimentRecord,
    convergence_experiment,
    bounds_dataset,
    format_convergence_csv,
    format_bounds_csv,
)
from .figures import save_bounds_figure, save_convergence_figure
from .rng import stream, substream

#: Restarts used when a subcommand needs the worst-case search but exposes
#: no --restarts flag of its own.
DEFAULT_RESTARTS = 20


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _emit_record(args, record: ExperimentRecord) -> None:
    if not args.quiet:
        print(record.summary(), file=sys.stderr)


def _cmd_bounds(args) -> int:
    start = time.perf_counter()
    rows = bounds_dataset(args.c_min, args.c_max, args.step)
    _write_text(args.out, format_bounds_csv(rows))
    if args.plot:
        save_bounds_figure(rows, args.plot)
    _emit_record(
        args,
        ExperimentRecord(
            experiment="bounds",
            params=(("c_min", args.c_min), ("c_max", args.c_max), ("step", args.step)),
            results=(("rows", len(rows)),),
            wall_time=time.perf_counter() - start,
        ),
    )
    return 0


def _cmd_code_gen(args) -> int:
    generator = fibonacci_code if args.kind == "fibonacci" else meridian_code
    store_code(generator(args.n), args.out)
    return 0


def _cmd_code_check(args) -> int:
    code = load_code(args.in_path)
    angle = covering_angle(code, args.probes, stream(args.seed))
    reference = float(3.0 * np.pi / (2.0 * np.sqrt(len(code))))
    print(f"n={len(code)} kind={code.kind} probes={args.probes}")
    print(f"covering_angle={angle!r}")
    print(f"lattice_bound={reference!r}  # 3*pi/(2*sqrt(n))")
    return 0


def _load_and_report(args) -> adv.AdversaryReport:
    code = load_code(args.code)
    if args.method == "iterate":
        return adv.worst_case_iterate(code, args.c, args.restarts, stream(args.seed))
    if args.method == "brute":
        return adv.brute_force_worst(code, args.c)
    return adv.greedy_report(code, args.c)


def _cmd_adversary(args) -> int:
    report = _load_and_report(args)
    print(adv.REPORT_CSV_HEADER)
    print(report.csv_row())
    return 0


def _cmd_simulate(args) -> int:
    code = load_code(args.code)
    report = adv.worst_case_iterate(code, args.c, DEFAULT_RESTARTS, substream(args.seed, 0))
    stats = protocol.run_protocol(
        code, report.distribution, report.axis, args.trials, substream(args.seed, 1)
    )
    print(protocol.STATS_CSV_HEADER)
    print(stats.csv_row())
    return 0


def _cmd_converge(args) -> int:
    start = time.perf_counter()
    n_list = [int(part) for part in args.n.split(",") if part.strip()]
    rows, slope = convergence_experiment(args.c, n_list, args.kind, args.restarts, args.seed)
    _write_text(args.out, format_convergence_csv(rows, slope))
    if args.plot:
        save_convergence_figure(rows, slope, args.plot)
    _emit_record(
        args,
        ExperimentRecord(
            experiment="converge",
            params=(
                ("c", args.c),
                ("n", args.n),
                ("kind", args.kind),
                ("restarts", args.restarts),
                ("seed", args.seed),
            ),
            results=(("slope", slope), ("p_opt", cap_geometry(args.c).p_opt)),
            wall_time=time.perf_counter() - start,
        ),
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakqubit",
        description="Security bounds and simulations for one-bit encryption "
        "with weakly random keys and a qubit ciphertext.",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress timing notes on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="tabulate classical vs quantum bounds")
    p_bounds.add_argument("--c-min", type=float, required=True)
    p_bounds.add_argument("--c-max", type=float, required=True)
    p_bounds.add_argument("--step", type=float, required=True)
    p_bounds.add_argument("--out", required=True, help="CSV output path")
    p_bounds.add_argument("--plot", help="also render the comparison figure to this path")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_code = sub.add_parser("code", help="generate or inspect sphere codes")
    code_sub = p_code.add_subparsers(dest="code_command", required=True)

    p_gen = code_sub.add_parser("gen", help="write a code file")
    p_gen.add_argument("--kind", choices=("fibonacci", "meridian"), required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_code_gen)

    p_check = code_sub.add_parser("check", help="measure the covering angle")
    p_check.add_argument("--in", dest="in_path", required=True, metavar="IN")
    p_check.add_argument("--probes", type=int, default=100_000)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=_cmd_code_check)

    p_adv = sub.add_parser("adversary", help="worst-case key distribution search")
    p_adv.add_argument("--code", required=True, help="code file path")
    p_adv.add_argument("--c", type=float, required=True, help="min-entropy loss budget in bits")
    p_adv.add_argument("--method", choices=("greedy", "iterate", "brute"), default="iterate")
    p_adv.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p_adv.add_argument("--seed", type=int, default=0)
    p_adv.set_defaults(func=_cmd_adversary)

    p_sim = sub.add_parser("simulate", help="Monte Carlo protocol run")
    p_sim.add_argument("--code", required=True, help="code file path")
    p_sim.add_argument("--c", type=float, required=True, help="min-entropy loss budget in bits")
    p_sim.add_argument("--trials", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.set_defaults(func=_cmd_simulate)

    p_conv = sub.add_parser("converge", help="discretization convergence study")
    p_conv.add_argument("--c", type=float, required=True)
    p_conv.add_argument("--n", required=True, help="comma-separated code sizes")
    p_conv.add_argument("--kind", choices=("fibonacci", "meridian"), default="fibonacci")
    p_conv.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p_conv.add_argument("--seed", type=int, default=0)
    p_conv.add_argument("--out", required=True, help="CSV output path")
    p_conv.add_argument("--plot", help="also render the gap figure to this path")
    p_conv.set_defaults(func=_cmd_converge)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
