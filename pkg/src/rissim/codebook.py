"""Discrete reflection states and phase-resolution metrics."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from os import PathLike
from typing import Iterable, Mapping, Sequence

import numpy as np


class OutOfBandError(ValueError):
    """Frequency outside the sampled response of a state."""


@dataclass(frozen=True)
class ReflectionState:
    """One digital code and its sampled reflection response.

    ``freqs`` in Hz (strictly increasing), ``mags`` linear in (0, 1],
    ``phases`` in radians.
    """

    code: str
    freqs: tuple[float, ...]
    mags: tuple[float, ...]
    phases: tuple[float, ...]

    def __post_init__(self):
        if not self.freqs:
            raise ValueError(f"state {self.code!r} has no frequency samples")
        if not (len(self.freqs) == len(self.mags) == len(self.phases)):
            raise ValueError(f"state {self.code!r}: sample arrays differ in length")
        if any(b <= a for a, b in zip(self.freqs, self.freqs[1:])):
            raise ValueError(f"state {self.code!r}: frequencies must be strictly increasing")
        if any(not (0.0 < m <= 1.0) for m in self.mags):
            raise ValueError(f"state {self.code!r}: magnitudes must lie in (0, 1]")

    @classmethod
    def from_db_deg(cls, code: str, samples: Iterable[tuple[float, float, float]]) -> ReflectionState:
        """Build from ``(f_hz, mag_db, phase_deg)`` triples."""
        rows = sorted(samples)
        return cls(
            code=code,
            freqs=tuple(float(f) for f, _, _ in rows),
            mags=tuple(10.0 ** (float(db) / 20.0) for _, db, _ in rows),
            phases=tuple(math.radians(float(p)) for _, _, p in rows),
        )

    @property
    def band(self) -> tuple[float, float]:
        return self.freqs[0], self.freqs[-1]

    @property
    def is_flat(self) -> bool:
        return len(self.freqs) == 1

    def gamma(self, f: float) -> complex:
        if self.is_flat:
            return complex(self.mags[0] * np.exp(1j * self.phases[0]))
        lo, hi = self.band
        if not (lo <= f <= hi):
            raise OutOfBandError(
                f"state {self.code!r}: {f:.6g} Hz outside sampled band [{lo:.6g}, {hi:.6g}] Hz"
            )
        freqs = np.asarray(self.freqs)
        k = int(np.searchsorted(freqs, f))
        if k < len(freqs) and freqs[k] == f:
            return complex(self.mags[k] * np.exp(1j * self.phases[k]))
        mag_db = 20.0 * np.log10(self.mags)
        phase = np.unwrap(self.phases)
        t = (f - freqs[k - 1]) / (freqs[k] - freqs[k - 1])
        m = mag_db[k - 1] + t * (mag_db[k] - mag_db[k - 1])
        p = phase[k - 1] + t * (phase[k] - phase[k - 1])
        return complex(10.0 ** (m / 20.0) * np.exp(1j * p))


@dataclass(frozen=True)
class Codebook:
    """Ordered reflection states plus named resolution subsets."""

    states: tuple[ReflectionState, ...]
    subsets: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        codes = self.codes
        if len(set(codes)) != len(codes):
            raise ValueError(f"duplicate codes in codebook: {codes}")
        for label, members in self.subsets.items():
            missing = [c for c in members if c not in codes]
            if missing:
                raise ValueError(f"subset {label!r} references unknown codes {missing}")

    def __len__(self) -> int:
        return len(self.states)

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(s.code for s in self.states)

    def index(self, code: str) -> int:
        try:
            return self.codes.index(code)
        except ValueError:
            raise KeyError(f"unknown code {code!r}; codebook has {list(self.codes)}") from None

    def state(self, code: str) -> ReflectionState:
        return self.states[self.index(code)]

    @property
    def is_flat(self) -> bool:
        return all(s.is_flat for s in self.states)

    @property
    def band(self) -> tuple[float, float]:
        """Frequency range covered by every dispersive state."""
        dispersive = [s.band for s in self.states if not s.is_flat]
        if not dispersive:
            return -math.inf, math.inf
        return max(b[0] for b in dispersive), min(b[1] for b in dispersive)

    def gammas(self, f: float) -> np.ndarray:
        """Complex reflection coefficient of every state at ``f``, in codebook order."""
        return np.array([s.gamma(f) for s in self.states], dtype=complex)


def state_gamma(codebook: Codebook, code: str, f: float) -> complex:
    return codebook.state(code).gamma(f)


def restrict(codebook: Codebook, resolution: str) -> Codebook:
    """Sub-codebook holding only the states of a named subset, parent order kept."""
    if resolution not in codebook.subsets:
        raise KeyError(
            f"unknown resolution {resolution!r}; available: {sorted(codebook.subsets)}"
        )
    keep = set(codebook.subsets[resolution])
    states = tuple(s for s in codebook.states if s.code in keep)
    sub = {
        label: tuple(c for c in members if c in keep)
        for label, members in codebook.subsets.items()
        if set(members) <= keep
    }
    return Codebook(states=states, subsets=sub)


def ideal_codebook(n_states: int, f_hz: float = 3.75e9) -> Codebook:
    """Unity-magnitude, frequency-flat codebook with phases ``360 k / n_states`` degrees.

    When ``n_states`` is a power of two, nested ``"b-bit"`` subsets of uniformly
    spaced states are attached for every ``b`` up to ``log2(n_states)``.
    """
    if n_states < 2:
        raise ValueError(f"an ideal codebook needs at least 2 states, got {n_states}")
    width = max(1, math.ceil(math.log2(n_states)))
    states = tuple(
        ReflectionState(
            code=format(k, f"0{width}b"),
            freqs=(f_hz,),
            mags=(1.0,),
            phases=(2.0 * math.pi * k / n_states,),
        )
        for k in range(n_states)
    )
    subsets: dict[str, tuple[str, ...]] = {}
    bits = n_states.bit_length() - 1
    if 1 << bits == n_states:
        for b in range(1, bits + 1):
            stride = n_states >> b
            subsets[f"{b}-bit"] = tuple(s.code for s in states[::stride])
    return Codebook(states=states, subsets=subsets)


def phase_std(phases_deg: Sequence[float]) -> float:
    """Phase standard deviation (degrees) of a discrete phase set.

    Gaps are taken between circularly sorted states, wrap-around included, so
    they always sum to 360 degrees. Coincident phases give zero-width gaps.
    """
    p = np.asarray(phases_deg, dtype=float)
    if p.size < 2:
        raise ValueError(f"phase spread needs at least 2 phases, got {p.size}")
    p = np.sort(np.mod(p + 180.0, 360.0) - 180.0)
    gaps = np.diff(np.append(p, p[0] + 360.0))
    return float(np.sqrt(np.sum(gaps**3) / (12.0 * 360.0)))


def equivalent_bits(sigma_deg: float) -> float:
    if not sigma_deg > 0:
        raise ValueError(f"phase standard deviation must be positive, got {sigma_deg}")
    return math.log2(360.0 / (math.sqrt(12.0) * sigma_deg))


@dataclass(frozen=True)
class PhaseQuality:
    sigma: float
    n_bit: float


def phase_quality(codebook: Codebook, f: float) -> PhaseQuality:
    phases = np.degrees(np.angle(codebook.gammas(f)))
    sigma = phase_std(phases)
    return PhaseQuality(sigma=sigma, n_bit=equivalent_bits(sigma))


def quality_sweep(
    codebook: Codebook, band: tuple[float, float], step: float
) -> list[tuple[float, PhaseQuality]]:
    """Phase spread and equivalent bit number on a regular frequency grid over ``band``."""
    return [(f, phase_quality(codebook, f)) for f in frequency_grid(band, step)]


def frequency_grid(band: tuple[float, float], step: float) -> np.ndarray:
    """Inclusive regular grid ``lo, lo+step, ..., hi`` (end point snapped when within 1e-9 step)."""
    lo, hi = float(band[0]), float(band[1])
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"band upper edge {hi} below lower edge {lo}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def codebook_from_dict(doc: Mapping) -> Codebook:
    try:
        states = tuple(
            ReflectionState.from_db_deg(
                str(s["code"]),
                [(x["f_hz"], x["mag_db"], x["phase_deg"]) for x in s["samples"]],
            )
            for s in doc["states"]
        )
        subsets = {str(k): tuple(str(c) for c in v) for k, v in doc.get("subsets", {}).items()}
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed codebook document: missing or invalid field {exc}") from exc
    return Codebook(states=states, subsets=subsets)


def codebook_to_dict(codebook: Codebook) -> dict:
    return {
        "states": [
            {
                "code": s.code,
                "samples": [
                    {"f_hz": f, "mag_db": 20.0 * math.log10(m), "phase_deg": math.degrees(p)}
                    for f, m, p in zip(s.freqs, s.mags, s.phases)
                ],
            }
            for s in codebook.states
        ],
        "subsets": {k: list(v) for k, v in codebook.subsets.items()},
    }


def load_codebook(path: str | PathLike) -> Codebook:
    with open(path) as fh:
        return codebook_from_dict(json.load(fh))


def measured_codebook() -> Codebook:
    """The bundled eight-state measured codebook at 3.75 GHz (``measured_3p75ghz.json``)."""
    ref = resources.files("rissim") / "data" / "codebooks" / "measured_3p75ghz.json"
    return codebook_from_dict(json.loads(ref.read_text()))
