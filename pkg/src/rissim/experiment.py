"""Scenario files, frequency sweeps, resolution comparisons and quantization studies."""

from __future__ import annotations

import csv
import json
import logging
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from os import PathLike
from pathlib import Path
from typing import Callable, NamedTuple, Sequence

import jsonschema
import numpy as np

from .channel import (
    AntennaPattern,
    LinkModel,
    Scenario,
    plate_gamma,
)
from .codebook import Codebook, OutOfBandError, frequency_grid, ideal_codebook, restrict
from .geometry import GroupMap, SurfaceGrid, build_grid, column_groups
from .optimizer import (
    Configuration,
    OptimizationTrace,
    OptimizerSettings,
    greedy_optimize,
    quantize_profile,
)

log = logging.getLogger(__name__)

# unit-cell reradiation pattern used when a scenario file does not give one
DEFAULT_CELL_PATTERN = AntennaPattern("cosine-power", 0.5, 1.0)


class ScenarioError(ValueError):
    """Scenario file failed schema or unit validation."""


_PATTERN_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["isotropic", "cosine-power"]},
        "q": {"type": "number", "minimum": 0},
        "gain_dbi": {"type": "number"},
        "gain_lin": {"type": "number", "exclusiveMinimum": 0},
    },
    "additionalProperties": False,
}

_VEC3 = {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}

_ANTENNA_SCHEMA = {
    "type": "object",
    "required": ["pos_m", "pattern"],
    "properties": {"pos_m": _VEC3, "pattern": _PATTERN_SCHEMA, "boresight": _VEC3},
    "additionalProperties": False,
}

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["grid", "tx", "rx", "f_hz"],
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "grid": {
            "type": "object",
            "required": ["n_rows", "n_cols", "d_x_m", "d_y_m"],
            "properties": {
                "n_rows": {"type": "integer", "minimum": 1},
                "n_cols": {"type": "integer", "minimum": 1},
                "d_x_m": {"type": "number", "exclusiveMinimum": 0},
                "d_y_m": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
        "grouping": {
            "type": "object",
            "required": ["cells_per_group"],
            "properties": {"cells_per_group": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        },
        "ris": {
            "type": "object",
            "properties": {"pos_m": _VEC3, "normal": _VEC3, "up": _VEC3},
            "additionalProperties": False,
        },
        "tx": _ANTENNA_SCHEMA,
        "rx": _ANTENNA_SCHEMA,
        "cell": {
            "type": "object",
            "required": ["pattern"],
            "properties": {"pattern": _PATTERN_SCHEMA},
            "additionalProperties": False,
        },
        "p_t_dbm": {"type": "number"},
        "p_t_w": {"type": "number", "exclusiveMinimum": 0},
        "f_hz": {"type": "number", "exclusiveMinimum": 0},
    },
    "additionalProperties": False,
}

# schema paths that correspond to Scenario field names
_FIELD_ALIASES = {"tx.pos_m": "tx_pos", "rx.pos_m": "rx_pos", "f_hz": "f", "p_t_dbm": "p_t", "p_t_w": "p_t"}


class ScenarioBundle(NamedTuple):
    """A loaded scenario; ``scenario`` holds surface-frame coordinates."""

    scenario: Scenario
    grid: SurfaceGrid
    groups: GroupMap
    name: str = ""
    ris_center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    rotation: np.ndarray | None = None

    def to_world(self, p) -> np.ndarray:
        rot = np.eye(3) if self.rotation is None else self.rotation
        return rot.T @ np.asarray(p, dtype=float) + np.asarray(self.ris_center)


def _schema_error(source: str, err: jsonschema.ValidationError) -> ScenarioError:
    parts = [str(p) for p in err.absolute_path]
    if err.validator == "required":
        m = re.search(r"'([^']+)' is a required property", err.message)
        if m:
            parts.append(m.group(1))
    where = ".".join(parts) or "<root>"
    alias = _FIELD_ALIASES.get(where)
    label = f"{where} ({alias})" if alias else where
    return ScenarioError(f"{source}: {label}: {err.message}")


def _pattern(doc: dict, where: str) -> AntennaPattern:
    gain_dbi = doc.get("gain_dbi")
    gain_lin = doc.get("gain_lin")
    if gain_dbi is not None and gain_lin is not None:
        if not math.isclose(10.0 ** (gain_dbi / 10.0), gain_lin, rel_tol=1e-6):
            raise ScenarioError(f"{where}: gain_dbi={gain_dbi} and gain_lin={gain_lin} disagree")
    gain = gain_lin if gain_lin is not None else 10.0 ** ((gain_dbi or 0.0) / 10.0)
    if doc["kind"] == "cosine-power" and "q" not in doc:
        raise ScenarioError(f"{where}.q: cosine-power pattern needs an exponent")
    return AntennaPattern(doc["kind"], float(doc.get("q", 0.0)), float(gain))


def _unit(v, where: str) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    n = np.linalg.norm(a)
    if n == 0:
        raise ScenarioError(f"{where}: zero vector")
    return a / n


def surface_frame(normal: Sequence[float], up: Sequence[float] = (0.0, 0.0, 1.0)) -> np.ndarray:
    """Rotation whose rows are the local x (normal), y (horizontal) and z (up) axes."""
    x = _unit(normal, "ris.normal")
    z = np.asarray(up, dtype=float) - np.dot(up, x) * x
    if np.linalg.norm(z) < 1e-12:
        raise ScenarioError("ris.up is parallel to ris.normal")
    z = _unit(z, "ris.up")
    y = np.cross(z, x)
    return np.vstack([x, y, z])


def scenario_from_dict(doc: dict, source: str = "<scenario>") -> ScenarioBundle:
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        raise _schema_error(source, errors[0])

    g = doc["grid"]
    for key in ("d_x_m", "d_y_m"):
        if g[key] >= 1.0:
            raise ScenarioError(f"{source}: grid.{key}={g[key]} is not a plausible periodicity in metres")
    grid = build_grid(g["n_rows"], g["n_cols"], g["d_x_m"], g["d_y_m"])
    cells = doc.get("grouping", {}).get("cells_per_group", 1)
    try:
        groups = column_groups(grid, cells)
    except ValueError as exc:
        raise ScenarioError(f"{source}: grouping.cells_per_group: {exc}") from None

    if "p_t_dbm" in doc and "p_t_w" in doc:
        if not math.isclose(1e-3 * 10.0 ** (doc["p_t_dbm"] / 10.0), doc["p_t_w"], rel_tol=1e-6):
            raise ScenarioError(f"{source}: p_t_dbm and p_t_w disagree")
    if "p_t_w" in doc:
        p_t = float(doc["p_t_w"])
    else:
        p_t = 1e-3 * 10.0 ** (doc.get("p_t_dbm", 0.0) / 10.0)

    ris = doc.get("ris", {})
    center = np.asarray(ris.get("pos_m", [0.0, 0.0, 0.0]), dtype=float)
    rot = surface_frame(ris.get("normal", [1.0, 0.0, 0.0]), ris.get("up", [0.0, 0.0, 1.0]))

    def local(p):
        return tuple((rot @ (np.asarray(p, dtype=float) - center)).tolist())

    def bore(ant):
        b = ant.get("boresight")
        return None if b is None else tuple((rot @ np.asarray(b, dtype=float)).tolist())

    tx, rx = doc["tx"], doc["rx"]
    cell = _pattern(doc["cell"]["pattern"], "cell.pattern") if "cell" in doc else DEFAULT_CELL_PATTERN
    try:
        scenario = Scenario(
            tx_pos=local(tx["pos_m"]),
            rx_pos=local(rx["pos_m"]),
            f=float(doc["f_hz"]),
            p_t=p_t,
            tx_pattern=_pattern(tx["pattern"], "tx.pattern"),
            rx_pattern=_pattern(rx["pattern"], "rx.pattern"),
            cell_pattern=cell,
            tx_boresight=bore(tx),
            rx_boresight=bore(rx),
        )
        for name, p in (("tx.pos_m", scenario.tx_pos), ("rx.pos_m", scenario.rx_pos)):
            if abs(p[0]) < 1e-12:
                raise ScenarioError(f"{name}: antenna lies in the surface plane")
    except ScenarioError as exc:
        raise ScenarioError(f"{source}: {exc}") from None
    except ValueError as exc:
        raise ScenarioError(f"{source}: {exc}") from None
    return ScenarioBundle(scenario, grid, groups, doc.get("name", ""), tuple(center.tolist()), rot)


def load_scenario(path: str | PathLike) -> ScenarioBundle:
    """Read and validate a scenario JSON file; antenna coordinates are moved into the surface frame."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: not valid JSON: {exc}") from None
    return scenario_from_dict(doc, str(path))


def bundled_scenarios() -> list[str]:
    root = resources.files("rissim") / "data" / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_scenario_path(name: str) -> Path:
    ref = resources.files("rissim") / "data" / "scenarios" / f"{name.removesuffix('.json')}.json"
    if not ref.is_file():
        raise FileNotFoundError(f"no bundled scenario {name!r}; available: {bundled_scenarios()}")
    return Path(str(ref))


def load_bundled_scenario(name: str) -> ScenarioBundle:
    return load_scenario(bundled_scenario_path(name))


# --- sweeps -----------------------------------------------------------------


@dataclass
class SweepResult:
    label: str
    freqs: np.ndarray
    powers: np.ndarray
    f_opt: float | None = None
    configuration: Configuration | None = field(default=None, repr=False)
    trace: OptimizationTrace | None = field(default=None, repr=False)

    def __post_init__(self):
        self.freqs = np.asarray(self.freqs, dtype=float)
        self.powers = np.asarray(self.powers, dtype=float)
        if self.freqs.shape != self.powers.shape:
            raise ValueError("freqs and powers differ in length")
        if np.any(np.diff(self.freqs) <= 0):
            raise ValueError("sweep frequencies must be strictly increasing")
        if np.any(self.powers < 0):
            raise ValueError("received powers must be non-negative")

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.freqs.tolist(), self.powers.tolist()))

    def power_at(self, f: float) -> float:
        return float(np.interp(f, self.freqs, self.powers))

    def to_dict(self) -> dict:
        d = {
            "label": self.label,
            "f_opt": self.f_opt,
            "points": [{"f_hz": f, "p_r_watts": p} for f, p in self.points],
        }
        if self.configuration is not None:
            d["configuration"] = self.configuration.as_dict()
        return d


def sweep_power(
    scenario: Scenario,
    grid: SurfaceGrid,
    gamma_at: Callable[[float], np.ndarray],
    freqs: Sequence[float],
    label: str,
    f_opt: float | None = None,
    workers: int = 1,
) -> SweepResult:
    """Evaluate the link at each frequency with reflection coefficients ``gamma_at(f)``."""

    def one(f):
        return LinkModel(scenario.at_frequency(f), grid).power(gamma_at(f))

    freqs = [float(f) for f in freqs]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            powers = list(pool.map(one, freqs))
    else:
        powers = [one(f) for f in freqs]
    return SweepResult(label, np.array(freqs), np.array(powers), f_opt)


def sweep_frequencies(band: tuple[float, float], step: float, include: float | None = None) -> np.ndarray:
    freqs = frequency_grid(band, step)
    if include is not None and not np.any(freqs == include):
        freqs = np.sort(np.append(freqs, include))
    return freqs


def configuration_sweep(
    scenario: Scenario,
    grid: SurfaceGrid,
    config: Configuration,
    codebook: Codebook,
    freqs: Sequence[float],
    label: str = "baseline",
    f_opt: float | None = None,
    workers: int = 1,
) -> SweepResult:
    """Frozen configuration re-expanded from the (possibly dispersive) codebook at every frequency."""
    res = sweep_power(scenario, grid, lambda f: config.expand(codebook, f), freqs, label, f_opt, workers)
    res.configuration = config
    return res


def plate_sweep(
    scenario: Scenario, grid: SurfaceGrid, freqs: Sequence[float], workers: int = 1
) -> SweepResult:
    gamma = plate_gamma(grid)
    return sweep_power(scenario, grid, lambda f: gamma, freqs, "plate", None, workers)


def _check_band(codebook: Codebook, band: tuple[float, float]) -> None:
    lo, hi = codebook.band
    if band[0] < lo or band[1] > hi:
        raise OutOfBandError(
            f"sweep band [{band[0]:.6g}, {band[1]:.6g}] Hz not covered by codebook samples [{lo:.6g}, {hi:.6g}] Hz"
        )


def optimize_and_sweep(
    scenario: Scenario,
    grid: SurfaceGrid,
    groups: GroupMap,
    codebook: Codebook,
    f_opt: float,
    band: tuple[float, float],
    step: float,
    settings: OptimizerSettings | None = None,
    initial: Configuration | None = None,
    workers: int = 1,
) -> SweepResult:
    """Optimise at ``f_opt``, freeze the configuration and sweep it over ``band``.

    ``f_opt`` is added to the sweep grid when the step does not land on it, so the
    swept value there always equals the optimiser's final power.
    """
    _check_band(codebook, band)
    if not band[0] <= f_opt <= band[1]:
        raise ValueError(f"f_opt={f_opt:.6g} Hz outside the sweep band")
    config, trace = greedy_optimize(scenario.at_frequency(f_opt), grid, groups, codebook, settings, initial)
    freqs = sweep_frequencies(band, step, include=f_opt)
    res = configuration_sweep(scenario, grid, config, codebook, freqs, "optimized", f_opt, workers)
    res.trace = trace
    return res


def bandwidth_3db(result: SweepResult, f_opt: float) -> float:
    """Width of the contiguous span around ``f_opt`` where power stays at or above half its value at ``f_opt``.

    Crossings are located by linear interpolation between sweep points; the span
    stops at the sweep edges.
    """
    f, p = result.freqs, result.powers
    if f.size == 0 or not f[0] <= f_opt <= f[-1]:
        raise ValueError(f"f_opt={f_opt:.6g} Hz outside the sweep")
    ref = float(np.interp(f_opt, f, p))
    if not ref > 0:
        raise ValueError("power at f_opt must be positive")
    half = ref / 2.0

    def edge(direction: int) -> float:
        # index of first sweep point strictly beyond f_opt in the given direction
        if direction > 0:
            k = int(np.searchsorted(f, f_opt, side="right"))
            prev_f, prev_p = f_opt, ref
            rng = range(k, f.size)
        else:
            k = int(np.searchsorted(f, f_opt, side="left")) - 1
            prev_f, prev_p = f_opt, ref
            rng = range(k, -1, -1)
        for i in rng:
            if p[i] < half:
                t = (prev_p - half) / (prev_p - p[i])
                return prev_f + t * (f[i] - prev_f)
            prev_f, prev_p = f[i], p[i]
        return f[-1] if direction > 0 else f[0]

    return float(edge(+1) - edge(-1))


# --- resolution comparison --------------------------------------------------


@dataclass
class ResolutionEntry:
    label: str
    p_r: float
    delta_db: float
    codes: tuple[str, ...] = field(default=(), repr=False)


@dataclass
class ResolutionReport:
    """Optimised power per resolution; ``delta_db`` is the reference's power over this one, in dB."""

    reference: str
    entries: list[ResolutionEntry]

    def __getitem__(self, label: str) -> ResolutionEntry:
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "reference": self.reference,
            "entries": [
                {"label": e.label, "p_r_watts": e.p_r, "delta_db": e.delta_db, "codes": list(e.codes)}
                for e in self.entries
            ],
        }

    def table(self) -> str:
        lines = [f"{'resolution':<12}{'P_r (dBm)':>14}{'delta vs ' + self.reference + ' (dB)':>24}"]
        for e in self.entries:
            dbm = 10.0 * math.log10(e.p_r / 1e-3) if e.p_r > 0 else -math.inf
            lines.append(f"{e.label:<12}{dbm:>14.3f}{e.delta_db:>24.3f}")
        return "\n".join(lines)


def dedupe_labels(labels: Sequence[str]) -> list[str]:
    out: list[str] = []
    for lab in labels:
        if lab in out:
            log.warning("duplicate resolution label %r ignored", lab)
            continue
        out.append(lab)
    return out


def compare_resolutions(
    scenario: Scenario,
    grid: SurfaceGrid,
    groups: GroupMap,
    codebook: Codebook,
    labels: Sequence[str],
    settings: OptimizerSettings | None = None,
) -> ResolutionReport:
    """Greedy-optimise independently with each restricted codebook and compare to the finest one."""
    labels = dedupe_labels(labels)
    if not labels:
        raise ValueError("no resolution labels given")
    subs = {lab: restrict(codebook, lab) for lab in labels}
    reference = max(labels, key=lambda lab: (len(subs[lab]), -labels.index(lab)))
    results = {}
    for lab in labels:
        cfg, trace = greedy_optimize(scenario, grid, groups, subs[lab], settings)
        results[lab] = (trace.final_power, cfg.codes)
    p_ref = results[reference][0]
    entries = [
        ResolutionEntry(lab, p, 10.0 * math.log10(p_ref / p) if p > 0 else math.inf, codes)
        for lab, (p, codes) in results.items()
    ]
    return ResolutionReport(reference, entries)


# --- quantization study -----------------------------------------------------


def far_field_directions(rng: np.random.Generator, n: int, max_theta_deg: float = 60.0) -> np.ndarray:
    """Unit vectors in the front (+x) hemisphere with direction cosines uniform over the ``theta < max`` cap."""
    rho = math.sin(math.radians(max_theta_deg)) * np.sqrt(rng.random(n))
    phi = 2.0 * np.pi * rng.random(n)
    uy, uz = rho * np.cos(phi), rho * np.sin(phi)
    return np.column_stack([np.sqrt(1.0 - uy**2 - uz**2), uy, uz])


def far_field_scenario(
    rng: np.random.Generator, grid: SurfaceGrid, f: float, distance_factor: float = 100.0
) -> Scenario:
    """Isotropic Tx and Rx at ``distance_factor`` aperture diagonals in random front-cap directions."""
    r = distance_factor * math.hypot(grid.width, grid.height)
    d = far_field_directions(rng, 2)
    center = np.asarray(grid.origin)
    return Scenario(tx_pos=tuple(center + r * d[0]), rx_pos=tuple(center + r * d[1]), f=f)


@dataclass
class QuantizationReport:
    trials: int
    seed: int
    labels: list[str]
    losses_db: np.ndarray  # shape (trials, len(labels))

    @property
    def mean_db(self) -> dict[str, float]:
        return {lab: float(v) for lab, v in zip(self.labels, self.losses_db.mean(axis=0))}

    @property
    def std_db(self) -> dict[str, float]:
        return {lab: float(v) for lab, v in zip(self.labels, self.losses_db.std(axis=0, ddof=1 if self.trials > 1 else 0))}

    def delta_vs(self, reference: str) -> dict[str, float]:
        means = self.mean_db
        return {lab: means[lab] - means[reference] for lab in self.labels}

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "resolutions": [
                {"label": lab, "mean_loss_db": self.mean_db[lab], "std_loss_db": self.std_db[lab]}
                for lab in self.labels
            ],
        }


def sinc2_loss_db(n_states: int) -> float:
    """Mean-field quantization loss (dB) for phase errors uniform over one state spacing."""
    x = math.pi / n_states
    return -10.0 * math.log10((math.sin(x) / x) ** 2)


def _resolve_codebooks(resolutions) -> dict[str, Codebook]:
    out: dict[str, Codebook] = {}
    for r in resolutions:
        if isinstance(r, Codebook):
            out[f"{len(r)}-state"] = r
        elif isinstance(r, tuple) and len(r) == 2 and isinstance(r[1], Codebook):
            out[str(r[0])] = r[1]
        else:
            bits = int(r)
            if bits < 1:
                raise ValueError(f"resolution must be at least 1 bit, got {r}")
            out[f"{bits}-bit"] = ideal_codebook(2**bits)
    return out


def quantization_study(
    grid: SurfaceGrid,
    resolutions: Sequence,
    trials: int,
    seed: int,
    f: float = 3.75e9,
    workers: int = 1,
) -> QuantizationReport:
    """Mean power loss from projecting the continuous co-phasing profile onto discrete codebooks.

    ``resolutions`` holds bit counts (ideal ``2**b``-state codebooks), Codebooks, or
    ``(label, Codebook)`` pairs. Each trial draws independent far-field Tx/Rx
    directions from its own child seed, so results do not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    books = _resolve_codebooks(resolutions)
    if not books:
        raise ValueError("no resolutions given")
    groups = column_groups(grid, 1)
    children = np.random.SeedSequence(seed).spawn(trials)

    def trial(ss: np.random.SeedSequence) -> list[float]:
        rng = np.random.default_rng(ss)
        scen = far_field_scenario(rng, grid, f)
        link = LinkModel(scen, grid)
        bound = link.upper_bound(1.0)
        ideal = link.ideal_phases()
        row = []
        for cb in books.values():
            cfg = quantize_profile(ideal, cb, f, groups)
            row.append(10.0 * math.log10(bound / link.power(cfg.expand(cb, f))))
        return row

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(trial, children))
    else:
        rows = [trial(c) for c in children]
    return QuantizationReport(trials, seed, list(books), np.array(rows))


# --- output -----------------------------------------------------------------


def _g17(x: float) -> str:
    return format(x, ".17g")


def _dbm(p: float) -> float:
    return 10.0 * math.log10(p / 1e-3) if p > 0 else -math.inf


def emit_results(result, path: str | PathLike, fmt: str | None = None) -> Path:
    """Write a sweep (or list of sweeps), resolution report or quantization report as CSV or JSON.

    Sweep CSV columns are ``f_hz,p_r_watts,p_r_dbm,label``.
    """
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".").lower()
    if fmt not in ("csv", "json"):
        raise ValueError(f"unsupported output format {fmt!r}")
    sweeps = result if isinstance(result, (list, tuple)) else None
    try:
        if fmt == "json":
            if sweeps is not None:
                doc = {"sweeps": [s.to_dict() for s in sweeps]}
            else:
                doc = result.to_dict()
            path.write_text(json.dumps(doc, indent=2) + "\n")
            return path
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            if sweeps is not None or isinstance(result, SweepResult):
                w.writerow(["f_hz", "p_r_watts", "p_r_dbm", "label"])
                for s in sweeps if sweeps is not None else [result]:
                    for f, p in s.points:
                        w.writerow([_g17(f), _g17(p), _g17(_dbm(p)), s.label])
            elif isinstance(result, ResolutionReport):
                w.writerow(["label", "p_r_watts", "p_r_dbm", f"delta_db_vs_{result.reference}"])
                for e in result.entries:
                    w.writerow([e.label, _g17(e.p_r), _g17(_dbm(e.p_r)), _g17(e.delta_db)])
            elif isinstance(result, QuantizationReport):
                w.writerow(["resolution", "mean_loss_db", "std_loss_db", "trials"])
                means, stds = result.mean_db, result.std_db
                for lab in result.labels:
                    w.writerow([lab, _g17(means[lab]), _g17(stds[lab]), result.trials])
            else:
                raise TypeError(f"cannot emit {type(result).__name__} as CSV")
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    return path


def load_results(path: str | PathLike) -> dict:
    return json.loads(Path(path).read_text())


def sweep_from_dict(doc: dict) -> SweepResult:
    pts = doc["points"]
    return SweepResult(
        label=doc["label"],
        freqs=[p["f_hz"] for p in pts],
        powers=[p["p_r_watts"] for p in pts],
        f_opt=doc.get("f_opt"),
    )
