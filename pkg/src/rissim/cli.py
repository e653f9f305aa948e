"""``rissim`` command line: optimisation, sweeps, codebook analysis and studies.

Every command writes its outputs plus ``manifest.json`` into ``--out DIR``.
``rissim replay DIR/manifest.json --out NEW`` re-runs a command from its
manifest. Exit codes: 0 success, 1 I/O failure, 2 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .channel import SPEED_OF_LIGHT
from .codebook import (
    Codebook,
    ideal_codebook,
    load_codebook,
    measured_codebook,
    phase_quality,
    quality_sweep,
    restrict,
)
from .experiment import (
    ScenarioBundle,
    bandwidth_3db,
    bundled_scenario_path,
    compare_resolutions,
    configuration_sweep,
    emit_results,
    load_scenario,
    optimize_and_sweep,
    plate_sweep,
    quantization_study,
)
from .geometry import build_grid
from .optimizer import OptimizerSettings, baseline_config, greedy_optimize

log = logging.getLogger("rissim")

MANIFEST_SCHEMA_VERSION = 1
CELL_MM = (22.5, 15.0)

EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2


class UsageError(ValueError):
    pass


# --- argument parsing helpers -----------------------------------------------


def _float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _int(text: str) -> int:
    v = _float(text)
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def _positive(conv):
    def parse(text: str):
        v = conv(text)
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
        return v

    return parse


def _band(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"band must look like LO:HI, got {text!r}")
    lo_f, hi_f = _float(lo), _float(hi)
    if not 0 < lo_f <= hi_f:
        raise argparse.ArgumentTypeError(f"band needs 0 < LO <= HI, got {text!r}")
    return lo_f, hi_f


def _grid_shape(text: str) -> tuple[int, int]:
    a, sep, b = text.lower().partition("x")
    if not sep:
        raise argparse.ArgumentTypeError(f"grid must look like NxM, got {text!r}")
    n, m = _int(a), _int(b)
    if n < 1 or m < 1:
        raise argparse.ArgumentTypeError(f"grid dimensions must be positive, got {text!r}")
    return n, m


def _csv_list(text: str) -> list[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return items


def resolve_codebook(source: str) -> Codebook:
    """``measured``, ``ideal:N`` or a path to a codebook JSON file."""
    if source == "measured":
        return measured_codebook()
    if source.startswith("ideal:"):
        return ideal_codebook(_int(source.split(":", 1)[1]))
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"codebook file not found: {source}")
    try:
        return load_codebook(path)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{source}: not valid JSON: {exc}") from None


def resolve_scenario(source: str) -> ScenarioBundle:
    """A scenario file path, or the name of a bundled scenario (e.g. ``scenario3``)."""
    path = Path(source)
    if not path.exists() and "/" not in source:
        path = bundled_scenario_path(source)
    return load_scenario(path)


def _settings(args) -> OptimizerSettings:
    return OptimizerSettings(
        max_iterations=args.iterations,
        epsilon=args.epsilon,
        noise_db_std=args.noise_db,
        seed=args.seed,
    )


def _active_codebook(args) -> Codebook:
    cb = resolve_codebook(args.codebook)
    if args.resolution:
        cb = restrict(cb, args.resolution)
    return cb


# --- output helpers -----------------------------------------------------------


def _g17(x: float) -> str:
    return format(x, ".17g")


def _dbm(p: float) -> float:
    return 10.0 * math.log10(p / 1e-3) if p > 0 else -math.inf


def _write_json(path: Path, doc) -> Path:
    path.write_text(json.dumps(doc, indent=2) + "\n")
    return path


def _write_trace(path: Path, trace) -> Path:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iteration", "group", "code", "p_r_watts", "p_r_dbm"])
        for s in trace.steps:
            w.writerow([s.iteration, s.group, s.code, _g17(s.p_r), _g17(_dbm(s.p_r))])
    return path


def _config_doc(config, trace, f_hz: float) -> dict:
    return {
        "scheme": config.groups.scheme,
        "n_groups": config.groups.n_groups,
        "f_hz": f_hz,
        "assignment": config.as_dict(),
        "p_r_watts": trace.final_power,
        "iterations_completed": trace.iterations_completed,
        "evaluations": trace.evaluations,
    }


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _file_entry(path: Path) -> dict:
    return {"path": str(path), "sha256": _sha256(path)}


# --- commands -------------------------------------------------------------------


def cmd_optimize(args) -> dict:
    bundle = resolve_scenario(args.scenario)
    cb = _active_codebook(args)
    initial = baseline_config("uniform", bundle.groups, cb, args.initial) if args.initial else None
    config, trace = greedy_optimize(bundle.scenario, bundle.grid, bundle.groups, cb, _settings(args), initial)
    out = args.out
    files = {
        "configuration": _write_json(out / "configuration.json", _config_doc(config, trace, bundle.scenario.f)),
        "trace": _write_trace(out / "trace.csv", trace),
    }
    print(
        f"optimised {config.groups.n_groups} groups over {trace.iterations_completed} passes "
        f"({trace.evaluations} evaluations): P_r = {_dbm(trace.final_power):.3f} dBm"
    )
    return files


def cmd_sweep(args) -> dict:
    bundle = resolve_scenario(args.scenario)
    cb = _active_codebook(args)
    opt = optimize_and_sweep(
        bundle.scenario, bundle.grid, bundle.groups, cb, args.f_opt, args.band, args.step,
        _settings(args), workers=args.workers,
    )
    curves = [opt]
    if args.reference == "plate":
        curves.append(plate_sweep(bundle.scenario, bundle.grid, opt.freqs, args.workers))
    elif args.reference:
        kind, _, code = args.reference.partition(":")
        if kind != "uniform" or not code:
            raise UsageError(f"--reference must be 'plate' or 'uniform:CODE', got {args.reference!r}")
        base = baseline_config("uniform", bundle.groups, cb, code)
        curves.append(configuration_sweep(bundle.scenario, bundle.grid, base, cb, opt.freqs, f"uniform:{code}"))
    out = args.out
    files = {
        "sweep_csv": emit_results(curves, out / "sweep.csv"),
        "sweep_json": emit_results(curves, out / "sweep.json"),
        "configuration": _write_json(
            out / "configuration.json", _config_doc(opt.configuration, opt.trace, args.f_opt)
        ),
    }
    bw = bandwidth_3db(opt, args.f_opt)
    print(f"{len(opt.freqs)} sweep points; 3-dB bandwidth around {args.f_opt:.6g} Hz: {bw / 1e6:.3f} MHz")
    return files


def cmd_codebook_analyze(args) -> dict:
    cb = resolve_codebook(args.codebook)
    if len(cb) < 2:
        raise UsageError(f"phase spread is undefined for a codebook with {len(cb)} state(s)")
    if args.band:
        if args.step is None:
            raise UsageError("--band requires --step")
        rows = quality_sweep(cb, args.band, args.step)
    else:
        if cb.is_flat:
            freqs = [cb.states[0].freqs[0]]
        else:
            lo, hi = cb.band
            freqs = sorted({f for s in cb.states for f in s.freqs if lo <= f <= hi})
        rows = [(f, phase_quality(cb, f)) for f in freqs]
    path = args.out / "quality.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["f_hz", "sigma_deg", "n_bit"])
        for f, q in rows:
            w.writerow([_g17(f), _g17(q.sigma), _g17(q.n_bit)])
    for f, q in rows[:10]:
        print(f"{f:.6g} Hz  sigma = {q.sigma:.4f} deg  N_bit = {q.n_bit:.6f}")
    if len(rows) > 10:
        print(f"... {len(rows) - 10} more rows in {path}")
    return {"quality": path}


def cmd_compare_resolutions(args) -> dict:
    bundle = resolve_scenario(args.scenario)
    cb = resolve_codebook(args.codebook)
    report = compare_resolutions(bundle.scenario, bundle.grid, bundle.groups, cb, args.labels, _settings(args))
    out = args.out
    files = {
        "report_json": emit_results(report, out / "resolutions.json"),
        "report_csv": emit_results(report, out / "resolutions.csv"),
    }
    print(report.table())
    return files


def cmd_quantization_study(args) -> dict:
    n, m = args.grid
    lam = SPEED_OF_LIGHT / args.freq
    if args.spacing == "cells":
        dx, dy = (v * 1e-3 for v in CELL_MM)
    elif args.spacing == "half-wavelength":
        dx = dy = lam / 2.0
    else:
        raise UsageError(f"unknown spacing {args.spacing!r}")
    bits = []
    for r in args.resolutions:
        b = _int(r.removesuffix("-bit"))
        if b < 1:
            raise UsageError(f"resolution must be at least 1 bit, got {r!r}")
        bits.append(b)
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    grid = build_grid(n, m, dx, dy)
    report = quantization_study(grid, bits, args.trials, args.seed, args.freq, args.workers)
    out = args.out
    files = {
        "quantization_csv": emit_results(report, out / "quantization.csv"),
        "quantization_json": emit_results(report, out / "quantization.json"),
    }
    for lab in report.labels:
        print(f"{lab:>6}: mean loss {report.mean_db[lab]:.4f} dB (std {report.std_db[lab]:.4f})")
    return files


# --- parser -------------------------------------------------------------------


def _add_optimizer_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--iterations", type=_positive(_int), default=5, help="maximum greedy passes")
    p.add_argument("--epsilon", type=_float, default=1e-4, help="relative per-pass improvement threshold")
    p.add_argument("--noise-db", type=_float, default=0.0, help="std of Gaussian measurement noise (dB)")
    p.add_argument("--seed", type=_int, default=None, help="seed for the measurement-noise hook")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rissim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rissim {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="greedy per-group optimisation at the scenario frequency")
    p.add_argument("--scenario", required=True)
    p.add_argument("--codebook", required=True, help="JSON file, 'measured' or 'ideal:N'")
    p.add_argument("--resolution", help="restrict to a codebook subset, e.g. 2-bit")
    p.add_argument("--initial", help="start from this code on every group (default: first code)")
    _add_optimizer_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="optimise at f_opt then sweep the frozen configuration")
    p.add_argument("--scenario", required=True)
    p.add_argument("--codebook", required=True)
    p.add_argument("--resolution")
    p.add_argument("--f-opt", type=_positive(_float), required=True)
    p.add_argument("--band", type=_band, required=True, help="LO:HI in Hz")
    p.add_argument("--step", type=_positive(_float), required=True, help="Hz")
    p.add_argument("--reference", help="'plate' or 'uniform:CODE'")
    p.add_argument("--workers", type=_positive(_int), default=1)
    _add_optimizer_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("codebook-analyze", help="phase standard deviation and equivalent bit number")
    p.add_argument("--codebook", required=True)
    p.add_argument("--band", type=_band)
    p.add_argument("--step", type=_positive(_float))
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_codebook_analyze)

    p = sub.add_parser("compare-resolutions", help="optimised power per codebook subset")
    p.add_argument("--scenario", required=True)
    p.add_argument("--codebook", required=True)
    p.add_argument("--labels", type=_csv_list, default=["1-bit", "2-bit", "3-bit"])
    _add_optimizer_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_compare_resolutions)

    p = sub.add_parser("quantization-study", help="far-field phase quantization loss vs continuous phase")
    p.add_argument("--grid", type=_grid_shape, required=True, help="NxM")
    p.add_argument("--resolutions", type=_csv_list, default=["1", "2", "3"], help="bit counts, e.g. 1,2,3")
    p.add_argument("--trials", type=_int, required=True)
    p.add_argument("--seed", type=_int, required=True)
    p.add_argument("--freq", type=_positive(_float), default=3.75e9, help="Hz")
    p.add_argument("--spacing", choices=["cells", "half-wavelength"], default="cells",
                   help="element periodicity: 22.5 x 15 mm cells or lambda/2")
    p.add_argument("--workers", type=_positive(_int), default=1)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_quantization_study)

    p = sub.add_parser("replay", help="re-run a command from its manifest")
    p.add_argument("manifest", type=Path)
    p.add_argument("--out", type=Path, help="output directory (default: the manifest's)")
    p.add_argument("--check", action="store_true", help="fail unless outputs are bit-identical")
    p.set_defaults(func=None)
    return parser


_INPUT_OPTIONS = ("--scenario", "--codebook")


def _recorded_argv(argv: list[str]) -> list[str]:
    """argv without ``--out`` and with existing relative input paths made absolute."""
    rec: list[str] = []
    it = iter(argv)
    for tok in it:
        opt, eq, val = tok.partition("=")
        if opt == "--out":
            if not eq:
                next(it, None)
            continue
        if opt in _INPUT_OPTIONS:
            if not eq:
                val = next(it, "")
            if Path(val).exists():
                val = str(Path(val).resolve())
            rec.extend([opt, val])
            continue
        rec.append(tok)
    return rec


def _inputs(args) -> dict:
    out = {}
    for name in ("scenario", "codebook"):
        value = getattr(args, name, None)
        if value is None:
            continue
        path = Path(value)
        out[name] = _file_entry(path) if path.is_file() else {"name": value}
    return out


def _settings_snapshot(args) -> dict:
    skip = {"func", "out", "command", "verbose"}
    snap = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        snap[k] = list(v) if isinstance(v, tuple) else v
    return snap


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.command == "replay":
        return replay(args.manifest, args.out, args.check)

    args.out.mkdir(parents=True, exist_ok=True)
    files = args.func(args)
    manifest = {
        "schema_version": MANIFEST_SCHEMA_VERSION,
        "tool": "rissim",
        "version": __version__,
        "command": args.command,
        "argv": _recorded_argv(argv),
        "inputs": _inputs(args),
        "seed": getattr(args, "seed", None),
        "settings": _settings_snapshot(args),
        "outputs": {k: {"file": p.name, "sha256": _sha256(p)} for k, p in files.items()},
    }
    _write_json(args.out / "manifest.json", manifest)
    return EXIT_OK


def replay(manifest_path: Path, out: Path | None, check: bool) -> int:
    doc = json.loads(Path(manifest_path).read_text())
    version = doc.get("schema_version")
    if version != MANIFEST_SCHEMA_VERSION:
        raise UsageError(f"unsupported manifest schema_version {version!r}")
    out = out or Path(manifest_path).parent
    argv = list(doc["argv"]) + ["--out", str(out)]
    code = run(argv)
    if code or not check:
        return code
    mismatched = [
        entry["file"]
        for entry in doc["outputs"].values()
        if _sha256(out / entry["file"]) != entry["sha256"]
    ]
    if mismatched:
        print(f"replay outputs differ from manifest: {', '.join(mismatched)}", file=sys.stderr)
        return EXIT_INVALID
    print(f"replay reproduced {len(doc['outputs'])} output file(s) bit-identically")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INVALID
    except OSError as exc:
        print(f"rissim: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"rissim: invalid input: {msg}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
