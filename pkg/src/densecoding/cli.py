"""Command-line front end: sweep, mc, fit, tomo and show subcommands.

Data goes to ``--out`` (or the config ``output_path``, or stdout);
diagnostics go to stderr.  Every run with identical inputs and seed
produces byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .config import CONFIG_DEFAULTS, ConfigError, RunConfig, build_config, tokenize_config
from .environment import decoherence_function
from .experiment import (
    estimate_mi_with_errors,
    fit_k_s,
    fit_result_to_csv,
    reconstruct_linear_inversion,
    run_sweep,
    sweep_rows_to_csv,
)
from .protocol import closed_form_mi, conditional_probabilities, effective_visibility
from .states import concurrence, density_matrix_to_text

__all__ = ["main"]


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="run configuration file")
    sub.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    for key in CONFIG_DEFAULTS:
        flag = "--" + key.replace("_", "-")
        sub.add_argument(flag, dest=f"cfg_{key}", metavar="VALUE",
                         help=f"override config key {key}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densecoding",
        description="Dense-coding simulator over correlated dephasing environments.")
    subs = parser.add_subparsers(dest="command", required=True)

    sweep = subs.add_parser("sweep", help="mutual-information sweep CSV over the time grid")
    _add_common_flags(sweep)
    sweep.set_defaults(func=_cmd_sweep)

    mc = subs.add_parser("mc", help="single-point Monte Carlo MI estimate with error bar")
    _add_common_flags(mc)
    mc.add_argument("--kappa-abs", type=float, metavar="X",
                    help="coherence magnitude of the shared state (overrides --t-a)")
    mc.add_argument("--t-a", type=float, metavar="T",
                    help="noise duration; defaults to the last grid point")
    mc.set_defaults(func=_cmd_mc)

    fit = subs.add_parser("fit", help="least-squares (k, s) fit from a CSV of points")
    _add_common_flags(fit)
    fit.add_argument("--in", dest="input_path", required=True, metavar="PATH",
                     help="CSV of (kappa_abs, mi) points or a sweep CSV")
    fit.set_defaults(func=_cmd_fit)

    tomo = subs.add_parser("tomo", help="reconstruct a state from 16 projector counts")
    _add_common_flags(tomo)
    tomo.add_argument("--in", dest="input_path", required=True, metavar="PATH",
                      help="file with 16 counts (whitespace or comma separated)")
    tomo.add_argument("--n-per-projector", type=int, metavar="N",
                      help="shots per projector; defaults to n_per_input")
    tomo.set_defaults(func=_cmd_tomo)

    show = subs.add_parser("show", help="echo the resolved configuration and derived values")
    _add_common_flags(show)
    show.set_defaults(func=_cmd_show)

    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    if args.config:
        text = Path(args.config).read_text(encoding="utf-8")
    else:
        text = ""
    pairs = tokenize_config(text)
    for key in CONFIG_DEFAULTS:
        override = getattr(args, f"cfg_{key}")
        if override is not None:
            pairs.append((key, override, f"command-line flag --{key.replace('_', '-')}"))
    return build_config(pairs)


def _emit(text: str, args: argparse.Namespace, cfg: RunConfig) -> None:
    path = args.out or cfg.output_path
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    rows = run_sweep(cfg.spectrum, cfg.time_grid, cfg.scheme, cfg.n_per_input,
                     cfg.trials, cfg.seed, cfg.s, cfg.noise_order)
    _emit(sweep_rows_to_csv(rows), args, cfg)
    return 0


def _cmd_mc(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    if args.kappa_abs is not None:
        kappa_abs = args.kappa_abs
    else:
        t_a = args.t_a if args.t_a is not None else cfg.time_grid[-1]
        kappa_abs = abs(decoherence_function(cfg.spectrum, t_a))
    m = effective_visibility(kappa_abs, cfg.spectrum.k)
    table = conditional_probabilities(cfg.scheme, m)
    mean, std = estimate_mi_with_errors(table, cfg.scheme, cfg.n_per_input,
                                        cfg.trials, cfg.seed)
    theory = closed_form_mi(cfg.scheme.variant, kappa_abs, cfg.spectrum.k, cfg.s)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kappa_abs", "mi_theory", "mi_mc_mean", "mi_mc_std"])
    writer.writerow([f"{kappa_abs:.17g}", f"{theory:.17g}",
                     f"{max(0.0, mean - cfg.s):.17g}", f"{std:.17g}"])
    _emit(buf.getvalue(), args, cfg)
    return 0


def _read_fit_points(path: str) -> list[tuple[float, float]]:
    """Accept either a sweep CSV (kappa_abs / mi_mc_mean columns) or bare
    (kappa_abs, mi) rows with an optional header."""
    rows = list(csv.reader(Path(path).read_text(encoding="utf-8").splitlines()))
    rows = [r for r in rows if r]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    header = rows[0]
    if "kappa_abs" in header:
        k_col = header.index("kappa_abs")
        if "mi_mc_mean" in header:
            m_col = header.index("mi_mc_mean")
        elif "mi" in header:
            m_col = header.index("mi")
        else:
            raise ValueError(f"{path}: no mi or mi_mc_mean column next to kappa_abs")
        data = rows[1:]
    else:
        k_col, m_col = 0, 1
        data = rows
    points = []
    for row in data:
        try:
            points.append((float(row[k_col]), float(row[m_col])))
        except (ValueError, IndexError):
            raise ValueError(f"{path}: malformed data row {row!r}") from None
    return points


def _cmd_fit(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    points = _read_fit_points(args.input_path)
    result = fit_k_s(points, cfg.scheme.variant)
    _emit(fit_result_to_csv(result), args, cfg)
    return 0


def _cmd_tomo(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    text = Path(args.input_path).read_text(encoding="utf-8")
    tokens = text.replace(",", " ").split()
    try:
        counts = [float(tok) for tok in tokens]
    except ValueError:
        raise ValueError(f"{args.input_path}: counts must be numeric") from None
    if len(counts) != 16:
        raise ValueError(f"{args.input_path}: expected 16 counts, got {len(counts)}")
    n = args.n_per_projector if args.n_per_projector is not None else cfg.n_per_input
    rho = reconstruct_linear_inversion(counts, float(n))
    sys.stdout.write(f"concurrence = {concurrence(rho):.17g}\n")
    path = args.out or cfg.output_path
    if path:
        Path(path).write_text(density_matrix_to_text(rho), encoding="utf-8")
    return 0


def _cmd_show(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    spec = cfg.spectrum
    lines = [
        f"omega0 = {spec.omega0:.17g}",
        f"c_aa = {spec.c_aa:.17g}",
        f"c_bb = {spec.c_bb:.17g}",
        f"k = {spec.k:.17g}",
        f"delta_n = {spec.delta_n:.17g}",
        f"s = {cfg.s:.17g}",
        f"n_per_input = {cfg.n_per_input}",
        f"trials = {cfg.trials}",
        f"seed = {cfg.seed}",
        f"scheme = {cfg.scheme.variant.value}",
        f"noise_order = {cfg.noise_order.value}",
        f"priors = {','.join(f'{p:.17g}' for p in cfg.scheme.priors)}",
        f"time_grid = {','.join(f'{t:.17g}' for t in cfg.time_grid)}",
        f"output_path = {cfg.output_path}",
    ]
    for tag, t in (("first", cfg.time_grid[0]), ("last", cfg.time_grid[-1])):
        kappa_abs = abs(decoherence_function(spec, t))
        theory = closed_form_mi(cfg.scheme.variant, kappa_abs, spec.k, cfg.s)
        lines.append(f"kappa_abs_{tag} = {kappa_abs:.17g}")
        lines.append(f"mi_theory_{tag} = {theory:.17g}")
    _emit("\n".join(lines) + "\n", args, cfg)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
