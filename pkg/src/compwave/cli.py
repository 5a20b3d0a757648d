"""Command-line front end.

Subcommands
-----------
design      build a resilient design and write it as JSON with a report
evaluate    ambiguity map + sidelobe metrics for a stored design
compare     null-space design vs binomial and PTM baselines
snr-sweep   SNR ratio versus train length for several selection methods
polar       four polarization channel maps and sampled output matrices
golay-gen   generate a complementary pair of length 2^m
repro       run the full experiment pipeline into one directory

Options can also come from a JSON config file (--config); flags given on
the command line override file values.  The default output directory is
taken from $COMPWAVE_OUT_DIR when --out-dir is absent.  Exit codes:
0 success, 1 validation error, 2 numerical failure (empty null space),
3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .ambiguity import (
    discrete_ambiguity,
    evaluation_grid,
    sidelobe_metrics,
    write_two_column_csv,
    _fmt,
)
from .baselines import binomial_design, ptm_schedule
from .design import (
    EmptyNullSpaceError,
    ResilienceGrid,
    WaveformDesign,
    design_from_vector,
    design_matrix,
    null_space_basis,
    null_space_design,
    validate_design,
)
from .golay import GolayPair, generate_golay_pair, length64_pair
from .polarimetric import ScatteringMatrix, output_matrix, polarimetric_ambiguities
from .snropt import basis_selection, coordinate_descent, design_from_lambda, snr_ratio

ENV_OUT_DIR = "COMPWAVE_OUT_DIR"
OPTIMIZERS = ("first-basis", "bs", "hcd")
SWEEP_METHODS = ("first-basis", "bs", "hcd", "bd")


class CliError(ValueError):
    """Bad arguments or config; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse's default error() exits with status 2, which this tool
    # reserves for numerical failures; route argument problems to 1.
    def error(self, message):
        raise CliError(message)


def _build_parser(suppress: bool = False) -> argparse.ArgumentParser:
    """The CLI parser; with ``suppress`` the namespace only carries flags
    that were explicitly given (used to let flags override config files)."""

    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    common = _Parser(add_help=False)
    common.add_argument("--out-dir", default=dflt(None), help="output directory (default: $COMPWAVE_OUT_DIR or .)")
    common.add_argument("--config", default=dflt(None), help="JSON config file; flags override file values")
    common.add_argument("--seed", type=int, default=dflt(0), help="seed for randomized paths")

    pair_opts = _Parser(add_help=False)
    pair_opts.add_argument("--pair", default=dflt("length64"),
                           help="'length64' (bundled fixture) or a power-of-two length to generate")
    pair_opts.add_argument("--pair-file", default=dflt(None), help="JSON pair file (overrides --pair)")

    eval_opts = _Parser(add_help=False)
    eval_opts.add_argument("--eval-interval", type=float, nargs=2, metavar=("LO", "HI"), default=dflt(None),
                           help="evaluation angle interval (default: the design interval)")
    eval_opts.add_argument("--points", type=int, default=dflt(2001), help="evaluation grid size")

    hcd_opts = _Parser(add_help=False)
    hcd_opts.add_argument("--restarts", type=int, default=dflt(20))
    hcd_opts.add_argument("--sweeps", type=int, default=dflt(100))
    hcd_opts.add_argument("--eps", type=float, default=dflt(1e-6))

    parser = _Parser(prog="compwave", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    # "required" options default to None and are checked after the config
    # file merge, so they may come from either the flags or the file
    p = sub.add_parser("design", parents=[common, hcd_opts], help="build and store a resilient design")
    p.add_argument("--n", type=int, default=dflt(None), help="number of pulses")
    p.add_argument("--interval", type=float, nargs=2, metavar=("LO", "HI"), default=dflt(None))
    p.add_argument("--m", type=int, default=dflt(None), help="constraint angles (default: N-1)")
    p.add_argument("--kind", choices=("doppler", "delay"), default=dflt("doppler"))
    p.add_argument("--optimizer", choices=OPTIMIZERS, default=dflt("first-basis"))
    p.add_argument("--basis-index", type=int, default=dflt(0), help="basis column for first-basis")
    p.add_argument("--out", default=dflt("design.json"), help="design file name")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("evaluate", parents=[common, pair_opts, eval_opts], help="map + metrics for a design")
    p.add_argument("--design", default=dflt(None), help="design JSON file")
    p.add_argument("--prefix", default=dflt(None), help="output file prefix (default: design file stem)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", parents=[common, pair_opts, eval_opts], help="null-space vs baselines")
    p.add_argument("--n", type=int, default=dflt(48))
    p.add_argument("--interval", type=float, nargs=2, metavar=("LO", "HI"), default=dflt(None))
    p.add_argument("--m", type=int, default=dflt(None))
    p.add_argument("--prefix", default=dflt("compare"))
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("snr-sweep", parents=[common, hcd_opts], help="SNR ratio vs number of pulses")
    p.add_argument("--n-list", type=int, nargs="+", default=dflt([8, 16, 24, 32, 40, 48]))
    p.add_argument("--interval", type=float, nargs=2, metavar=("LO", "HI"), default=dflt([0.0, 2.0]))
    p.add_argument("--optimizers", nargs="+", choices=SWEEP_METHODS, default=dflt(list(SWEEP_METHODS)))
    p.add_argument("--out", default=dflt("snr_sweep.csv"))
    p.set_defaults(func=cmd_snr_sweep)

    p = sub.add_parser("polar", parents=[common, pair_opts, eval_opts], help="four-channel polarimetric maps")
    p.add_argument("--design", default=dflt(None))
    p.add_argument("--scattering", nargs=4, metavar=("HVV", "HVH", "HHV", "HHH"), default=dflt(["1", "0", "0", "1"]),
                   help="scattering coefficients as complex literals, e.g. 0.9+0.1j (no spaces)")
    p.add_argument("--sample", action="append", nargs=2, metavar=("LAG", "ANGLE"), default=dflt(None),
                   help="evaluate the output matrix at this (lag, angle); repeatable")
    p.add_argument("--prefix", default=dflt(None))
    p.set_defaults(func=cmd_polar)

    p = sub.add_parser("golay-gen", parents=[common], help="generate a complementary pair")
    p.add_argument("--log2-length", type=int, default=dflt(None), help="pair length is 2**this")
    p.add_argument("--out", default=dflt("golay_pair.json"))
    p.set_defaults(func=cmd_golay_gen)

    p = sub.add_parser("repro", parents=[common, hcd_opts], help="full experiment pipeline")
    p.add_argument("--n", type=int, default=dflt(48))
    p.add_argument("--points", type=int, default=dflt(2001))
    p.add_argument("--n-list", type=int, nargs="+", default=dflt([8, 16, 24, 32, 40, 48]))
    p.add_argument("--label", default=dflt(None), help="directory label (default: timestamp)")
    p.set_defaults(func=cmd_repro)

    return parser


def _apply_config(args: argparse.Namespace, argv) -> None:
    """Overlay config-file values onto defaults; explicit flags win."""
    explicit = vars(_build_parser(suppress=True).parse_args(argv))
    try:
        cfg = json.loads(Path(args.config).read_text())
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed config file {args.config}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise CliError(f"config file {args.config} must hold a JSON object")
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest in ("command", "config", "func"):
            continue
        if not hasattr(args, dest):
            raise CliError(f"unknown config key {key!r} for command {args.command!r}")
        if dest not in explicit:
            setattr(args, dest, value)


def _require(args, *names) -> None:
    for name in names:
        if getattr(args, name.replace("-", "_"), None) is None:
            raise CliError(f"missing required option --{name} (flag or config file)")


def _out_dir(args) -> Path:
    root = args.out_dir or os.environ.get(ENV_OUT_DIR) or "."
    path = Path(root)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _resolve_pair(args) -> GolayPair:
    if getattr(args, "pair_file", None):
        return GolayPair.load(args.pair_file)
    token = str(getattr(args, "pair", "length64"))
    if token == "length64":
        return length64_pair()
    try:
        length = int(token)
    except ValueError as exc:
        raise CliError(f"--pair must be 'length64' or an integer length, got {token!r}") from exc
    if length < 1 or length & (length - 1):
        raise CliError(f"generated pair lengths must be powers of two, got {length}")
    return generate_golay_pair(length.bit_length() - 1)


def _build_design(n, interval, m, kind, optimizer, restarts, sweeps, eps, seed, basis_index=0):
    """Design via the requested selection method; returns (design, report)."""
    if optimizer == "first-basis":
        return null_space_design(n, interval, constraints=m, kind=kind, basis_index=basis_index), None
    m = n - 1 if m is None else m
    grid = ResilienceGrid.uniform(interval[0], interval[1], m, kind=kind)
    basis = null_space_basis(design_matrix(grid, n))
    if optimizer == "bs":
        return design_from_vector(basis_selection(basis), grid), None
    report = coordinate_descent(basis, restarts=restarts, sweeps=sweeps, eps=eps, seed=seed)
    return design_from_lambda(basis, report.best_lambda, grid), report


def _eval_angles(args, design: WaveformDesign) -> np.ndarray:
    interval = getattr(args, "eval_interval", None)
    if interval is None:
        if design is None or design.grid is None:
            raise CliError("design carries no interval; pass --eval-interval")
        interval = design.grid.interval
    if args.points < 1:
        raise CliError("--points must be at least 1")
    return evaluation_grid(interval[0], interval[1], args.points)


def _write_design_bundle(design: WaveformDesign, path: Path) -> None:
    design.save(path)
    print(f"wrote {path}")
    if design.grid is not None:
        report = validate_design(design)
        report_path = path.with_name(path.stem + "_report.json")
        report_path.write_text(json.dumps(report.to_dict(), indent=2) + "\n")
        print(f"wrote {report_path}")
        if not report.ok:
            raise CliError(
                f"design violates usability conditions: nullspace residual "
                f"{report.nullspace_residual:.3e}, mainlobe residual {report.mainlobe_residual:.3e}"
            )


def cmd_design(args) -> None:
    _require(args, "n", "interval")
    if args.n < 2:
        raise CliError("--n must be at least 2")
    out = _out_dir(args)
    design, report = _build_design(
        args.n, tuple(args.interval), args.m, args.kind, args.optimizer,
        args.restarts, args.sweeps, args.eps, args.seed, basis_index=args.basis_index,
    )
    path = out / args.out
    _write_design_bundle(design, path)
    if report is not None:
        opt_path = path.with_name(path.stem + "_optimizer.json")
        report.save(opt_path)
        print(f"wrote {opt_path}")
    print(f"snr_ratio {snr_ratio(design.w):.6f}  residual {design.residual:.3e}")


def _evaluate_design(design, pair, angles, out, prefix) -> None:
    amap = discrete_ambiguity(pair, design.p, design.w, angles,
                              kind="doppler" if design.grid is None else design.grid.kind)
    metrics = sidelobe_metrics(amap)
    paths = {
        "map": out / f"{prefix}_map.csv",
        "db": out / f"{prefix}_map_db.csv",
        "meta": out / f"{prefix}_map_meta.json",
        "profile": out / f"{prefix}_profile.csv",
        "prsl": out / f"{prefix}_prsl.csv",
    }
    amap.to_csv(paths["map"])
    amap.db_to_csv(paths["db"])
    amap.save_metadata(paths["meta"])
    metrics.profile_to_csv(paths["profile"])
    metrics.prsl_to_csv(paths["prsl"])
    for path in paths.values():
        print(f"wrote {path}")
    finite = metrics.prsl_db[np.isfinite(metrics.prsl_db)]
    if finite.size:
        print(f"prsl_db min {finite.min():.2f}  max {finite.max():.2f}")


def cmd_evaluate(args) -> None:
    _require(args, "design")
    out = _out_dir(args)
    design = WaveformDesign.load(args.design)
    if design.grid is not None and not validate_design(design).ok:
        raise CliError(f"stored design {args.design} fails its usability conditions")
    pair = _resolve_pair(args)
    angles = _eval_angles(args, design)
    prefix = args.prefix or Path(args.design).stem
    _evaluate_design(design, pair, angles, out, prefix)


def cmd_compare(args) -> None:
    _require(args, "n", "interval")
    if args.n < 2:
        raise CliError("--n must be at least 2")
    out = _out_dir(args)
    pair = _resolve_pair(args)
    ns = null_space_design(args.n, tuple(args.interval), constraints=args.m)
    designs = {"ns": ns, "bd": binomial_design(args.n), "ptm": ptm_schedule(args.n)}
    angles = _eval_angles(args, ns)
    prsl_cols, profile_cols = {}, {}
    for name, design in designs.items():
        design.save(out / f"{args.prefix}_{name}.json")
        metrics = sidelobe_metrics(discrete_ambiguity(pair, design.p, design.w, angles))
        prsl_cols[name] = metrics.prsl_db
        profile_cols[name] = metrics.profile
    for stem, cols in (("prsl", prsl_cols), ("profile", profile_cols)):
        path = out / f"{args.prefix}_{stem}.csv"
        header = "angle," + ",".join(cols)
        lines = [header]
        for i, angle in enumerate(angles):
            lines.append(",".join([_fmt(angle)] + [_fmt(cols[name][i]) for name in cols]))
        path.write_text("\n".join(lines) + "\n")
        print(f"wrote {path}")


def cmd_snr_sweep(args) -> None:
    out = _out_dir(args)
    lines = ["n,method,snr_ratio"]
    for n in args.n_list:
        if n < 2:
            raise CliError(f"every swept N must be at least 2, got {n}")
        for method in args.optimizers:
            try:
                if method == "bd":
                    ratio = snr_ratio(binomial_design(n).w)
                else:
                    design, _ = _build_design(
                        n, tuple(args.interval), None, "doppler", method,
                        args.restarts, args.sweeps, args.eps, args.seed,
                    )
                    ratio = snr_ratio(design.w)
                lines.append(f"{n},{method},{_fmt(ratio)}")
            except (EmptyNullSpaceError, ValueError) as exc:
                # missing cell, but the sweep goes on
                print(f"warning: N={n} {method} failed: {exc}", file=sys.stderr)
                lines.append(f"{n},{method},")
    path = out / args.out
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path}")


def cmd_polar(args) -> None:
    _require(args, "design")
    out = _out_dir(args)
    design = WaveformDesign.load(args.design)
    if design.grid is not None and not validate_design(design).ok:
        raise CliError(f"stored design {args.design} fails its usability conditions")
    pair = _resolve_pair(args)
    angles = _eval_angles(args, design)
    prefix = args.prefix or (Path(args.design).stem + "_polar")
    try:
        scattering = ScatteringMatrix(*(complex(tok) for tok in args.scattering))
    except ValueError as exc:
        raise CliError(f"bad --scattering value: {exc}") from exc
    amb = polarimetric_ambiguities(pair, design.p, design.w, angles)
    for name, channel in amb.channels.items():
        channel.to_csv(out / f"{prefix}_{name}.csv")
        channel.db_to_csv(out / f"{prefix}_{name}_db.csv")
        channel.save_metadata(out / f"{prefix}_{name}_meta.json")
        print(f"wrote {out / f'{prefix}_{name}.csv'} (+db, +meta)")
    samples = []
    for lag_str, angle_str in args.sample or []:
        lag_val = float(lag_str)
        if lag_val != int(lag_val):
            raise CliError(f"sample lag must be an integer, got {lag_str}")
        lag = int(lag_val)
        angle = float(angle_str)
        u = output_matrix(scattering, amb, lag, angle)
        samples.append({
            "lag": lag,
            "angle": angle,
            "U": [[[float(c.real), float(c.imag)] for c in row] for row in u],
        })
    sample_path = out / f"{prefix}_u_samples.json"
    sample_path.write_text(json.dumps(samples, indent=2) + "\n")
    print(f"wrote {sample_path}")


def cmd_golay_gen(args) -> None:
    _require(args, "log2-length")
    if args.log2_length < 0:
        raise CliError("--log2-length must be nonnegative")
    out = _out_dir(args)
    pair = generate_golay_pair(args.log2_length)
    path = out / args.out
    pair.save(path)
    print(f"wrote {path} (length {pair.length})")


def cmd_repro(args) -> None:
    """The full pipeline: designs, maps, baselines, SNR sweep, polarimetry."""
    label = args.label or time.strftime("%Y%m%d-%H%M%S")
    out = _out_dir(args) / f"repro-{label}"
    out.mkdir(parents=True, exist_ok=True)
    n = args.n
    pair = length64_pair()
    manifest = {"n": n, "points": args.points, "seed": args.seed, "outputs": []}

    def note(path):
        manifest["outputs"].append(path.name)
        print(f"wrote {path}")

    # interval-limited design and its schedule/weight profiles
    interval_design = null_space_design(n, (0.0, 2.0))
    interval_design.save(out / "interval_design.json")
    note(out / "interval_design.json")
    idx = np.arange(n)
    write_two_column_csv(out / "interval_schedule.csv", idx, interval_design.p, ("pulse", "p"))
    note(out / "interval_schedule.csv")
    write_two_column_csv(out / "interval_weight_magnitude.csv", idx, np.abs(interval_design.w), ("pulse", "abs_w"))
    note(out / "interval_weight_magnitude.csv")

    angles_interval = evaluation_grid(0.0, 2.0, args.points)
    amap = discrete_ambiguity(pair, interval_design.p, interval_design.w, angles_interval)
    amap.db_to_csv(out / "interval_map_db.csv")
    note(out / "interval_map_db.csv")
    amap.save_metadata(out / "interval_map_meta.json")
    note(out / "interval_map_meta.json")
    sidelobe_metrics(amap).prsl_to_csv(out / "interval_prsl.csv")
    note(out / "interval_prsl.csv")

    # full-interval design vs binomial baseline
    overall = null_space_design(n, (0.0, np.pi))
    overall.save(out / "overall_design.json")
    note(out / "overall_design.json")
    angles_overall = evaluation_grid(0.0, np.pi, args.points)
    columns = {}
    for name, design in (("ns", overall), ("bd", binomial_design(n)), ("ptm", ptm_schedule(n))):
        dmap = discrete_ambiguity(pair, design.p, design.w, angles_overall)
        if name != "ptm":
            dmap.db_to_csv(out / f"overall_{name}_map_db.csv")
            note(out / f"overall_{name}_map_db.csv")
        columns[name] = sidelobe_metrics(dmap).prsl_db
    path = out / "overall_prsl_comparison.csv"
    lines = ["angle," + ",".join(columns)]
    for i, angle in enumerate(angles_overall):
        lines.append(",".join([_fmt(angle)] + [_fmt(columns[name][i]) for name in columns]))
    path.write_text("\n".join(lines) + "\n")
    note(path)

    # SNR sweep across methods
    sweep_lines = ["n,method,snr_ratio"]
    for n_i in args.n_list:
        for method in SWEEP_METHODS:
            if method == "bd":
                ratio = snr_ratio(binomial_design(n_i).w)
            else:
                design, _ = _build_design(n_i, (0.0, 2.0), None, "doppler", method,
                                          args.restarts, args.sweeps, args.eps, args.seed)
                ratio = snr_ratio(design.w)
            sweep_lines.append(f"{n_i},{method},{_fmt(ratio)}")
    (out / "snr_vs_pulses.csv").write_text("\n".join(sweep_lines) + "\n")
    note(out / "snr_vs_pulses.csv")

    # cross-polar channels, referenced to each run's co-polar mainlobe peak
    for tag, design, angles in (
        ("interval", interval_design, angles_interval),
        ("overall", overall, angles_overall),
        ("bd", binomial_design(n), angles_overall),
    ):
        amb = polarimetric_ambiguities(pair, design.p, design.w, angles)
        reference = float(np.abs(amb.vv.mainlobe).max())
        amb.vh.db_to_csv(out / f"polar_{tag}_vh_db.csv", reference=reference)
        note(out / f"polar_{tag}_vh_db.csv")

    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {out / 'manifest.json'}")


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        if getattr(args, "config", None):
            _apply_config(args, argv)
        args.func(args)
        return 0
    except EmptyNullSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
