"""Coherent element-sum received-power model for a Tx -> surface -> Rx link.

For element ``e`` with reflection coefficient ``G_e``::

    P_r = P_t * G_t * G_r * d_x * d_y * lam**2 / (64 pi**3)
          * | sum_e sqrt(F_e) * G_e / (r_t,e * r_r,e) * exp(-j 2 pi / lam * (r_t,e + r_r,e)) |**2

where ``F_e`` multiplies the Tx, cell-incidence, cell-departure and Rx
pattern factors. The direct Tx -> Rx path is not modelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .geometry import PathGeometry, SurfaceGrid, as_vec3, path_geometry

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class AntennaPattern:
    """Normalised power pattern plus peak gain (linear).

    ``cosine-power`` evaluates to ``cos(theta) ** (2 q)`` in the front
    hemisphere and 0 behind it.
    """

    kind: str = "isotropic"
    q: float = 0.0
    gain: float = 1.0

    def __post_init__(self):
        if self.kind not in ("isotropic", "cosine-power"):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if not self.gain > 0:
            raise ValueError(f"pattern gain must be positive, got {self.gain}")
        if self.q < 0:
            raise ValueError(f"cosine-power exponent must be non-negative, got {self.q}")

    @classmethod
    def cosine_power(cls, q: float, gain_dbi: float = 0.0) -> AntennaPattern:
        return cls("cosine-power", float(q), 10.0 ** (gain_dbi / 10.0))


ISOTROPIC = AntennaPattern()


def pattern_value(p: AntennaPattern, theta) -> np.ndarray | float:
    theta = np.asarray(theta, dtype=float)
    if p.kind == "isotropic":
        out = np.ones_like(theta)
    else:
        c = np.cos(theta)
        out = np.where(theta < np.pi / 2, np.abs(c) ** (2.0 * p.q), 0.0)
    return out if out.ndim else float(out)


def exponent_for_gain(gain_lin: float) -> float:
    """Cosine-power exponent from the usual link ``G = 2 (q + 1)``."""
    return max(gain_lin / 2.0 - 1.0, 0.0)


@dataclass(frozen=True)
class Scenario:
    """Link parameters in the surface-local frame (surface in ``x = const``, facing ``+x``).

    ``p_t`` in watts, ``f`` in Hz. Boresights of ``None`` aim at the surface centre.
    """

    tx_pos: tuple[float, float, float]
    rx_pos: tuple[float, float, float]
    f: float
    p_t: float = 1.0
    tx_pattern: AntennaPattern = ISOTROPIC
    rx_pattern: AntennaPattern = ISOTROPIC
    cell_pattern: AntennaPattern = ISOTROPIC
    tx_boresight: tuple[float, float, float] | None = None
    rx_boresight: tuple[float, float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "tx_pos", tuple(as_vec3(self.tx_pos, "tx_pos").tolist()))
        object.__setattr__(self, "rx_pos", tuple(as_vec3(self.rx_pos, "rx_pos").tolist()))
        if not self.p_t > 0:
            raise ValueError(f"transmit power must be positive, got {self.p_t}")
        if not self.f > 0:
            raise ValueError(f"frequency must be positive, got {self.f}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.f

    def at_frequency(self, f: float) -> Scenario:
        return replace(self, f=float(f))

    def swapped(self) -> Scenario:
        """Scenario with transmitter and receiver roles exchanged."""
        return replace(
            self,
            tx_pos=self.rx_pos,
            rx_pos=self.tx_pos,
            tx_pattern=self.rx_pattern,
            rx_pattern=self.tx_pattern,
            tx_boresight=self.rx_boresight,
            rx_boresight=self.tx_boresight,
        )

    def geometry(self, grid: SurfaceGrid) -> PathGeometry:
        return path_geometry(grid, self.tx_pos, self.rx_pos, self.tx_boresight, self.rx_boresight)


def combined_pattern(scenario: Scenario, geom: PathGeometry) -> np.ndarray:
    return (
        pattern_value(scenario.tx_pattern, geom.theta_tx)
        * pattern_value(scenario.cell_pattern, geom.theta_inc)
        * pattern_value(scenario.cell_pattern, geom.theta_dep)
        * pattern_value(scenario.rx_pattern, geom.theta_rx)
    )


class LinkModel:
    """Per-element channel coefficients for a fixed scenario and grid.

    ``power(gamma)`` is the received power for a per-element reflection vector;
    every power value in the package goes through it so repeated evaluations of
    one configuration are bit-identical.
    """

    def __init__(self, scenario: Scenario, grid: SurfaceGrid):
        self.scenario = scenario
        self.grid = grid
        geom = scenario.geometry(grid)
        self.geometry = geom
        self.f_combine = combined_pattern(scenario, geom)
        lam = scenario.wavelength
        self.path_length = geom.r_t + geom.r_r
        self.weights = np.sqrt(self.f_combine) / (geom.r_t * geom.r_r)
        self.coeffs = self.weights * np.exp(-1j * (2.0 * np.pi / lam) * self.path_length)
        self.prefactor = (
            scenario.p_t
            * scenario.tx_pattern.gain
            * scenario.rx_pattern.gain
            * grid.d_x
            * grid.d_y
            * lam**2
            / (64.0 * math.pi**3)
        )

    def field(self, gamma: np.ndarray) -> complex:
        g = np.asarray(gamma, dtype=complex).reshape(-1)
        if g.shape[0] != self.coeffs.shape[0]:
            raise ValueError(f"expected {self.coeffs.shape[0]} reflection coefficients, got {g.shape[0]}")
        # contiguous complex reduction: numpy sums pairwise in a fixed order
        return complex(np.sum(self.coeffs * g))

    def power(self, gamma: np.ndarray) -> float:
        s = self.field(gamma)
        return self.prefactor * (s.real * s.real + s.imag * s.imag)

    def upper_bound(self, magnitudes: np.ndarray | float = 1.0) -> float:
        mags = np.broadcast_to(np.abs(np.asarray(magnitudes, dtype=float)), self.weights.shape)
        return self.prefactor * float(np.sum(self.weights * mags)) ** 2

    def ideal_phases(self) -> np.ndarray:
        return np.mod((2.0 * np.pi / self.scenario.wavelength) * self.path_length, 2.0 * np.pi)


def received_power(scenario: Scenario, grid: SurfaceGrid, gamma: np.ndarray | Sequence[complex]) -> float:
    """Received power in watts for per-element reflection coefficients ``gamma`` (row-major)."""
    return LinkModel(scenario, grid).power(np.asarray(gamma))


def ideal_phase_profile(scenario: Scenario, grid: SurfaceGrid) -> np.ndarray:
    """Per-element phase (rad, in [0, 2 pi)) that puts every summand on the positive real axis."""
    return LinkModel(scenario, grid).ideal_phases()


def power_upper_bound(scenario: Scenario, grid: SurfaceGrid, magnitudes: np.ndarray | float = 1.0) -> float:
    return LinkModel(scenario, grid).upper_bound(magnitudes)


PLATE_GAMMA = complex(-1.0, 0.0)


def plate_gamma(grid: SurfaceGrid) -> np.ndarray:
    return np.full(grid.n_elements, PLATE_GAMMA)


def reference_plate_power(scenario: Scenario, grid: SurfaceGrid) -> float:
    """Power reflected by a same-size perfect conductor on the same lattice."""
    return received_power(scenario, grid, plate_gamma(grid))


def to_db(x) -> np.ndarray | float:
    return 10.0 * np.log10(x)


def watts_to_dbm(p) -> np.ndarray | float:
    """dBm of a power in watts; zero power maps to ``-inf``."""
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(np.asarray(p, dtype=float) / 1e-3)
    return out if out.ndim else float(out)
