"""
Received power through a surface
================================

The link model sums one spherical-wave term per element. This walk-through
checks the single-element case, compares a metal plate with a co-phased
surface, and shows the 6 dB gain from doubling a coherent aperture.
"""

import math

import numpy as np

from rissim import (
    Scenario,
    build_grid,
    ideal_phase_profile,
    power_upper_bound,
    received_power,
    reference_plate_power,
    to_db,
)
from rissim.experiment import load_bundled_scenario

F = 3.75e9
lam = 299_792_458.0 / F

# One 22.5 x 15 mm element, antennas 1 m away on the surface normal
one = build_grid(1, 1, 0.0225, 0.015)
p = received_power(Scenario((1, 0, 0), (1, 0, 0), F), one, [1.0])
print(f"single element: P_r/P_t = {p:.4e} ({to_db(p):.2f} dB)")
print(f"closed form:              {0.0225 * 0.015 * lam**2 / (64 * math.pi**3):.4e}")

# Corridor geometry: Tx straight ahead, Rx far off to the side
b = load_bundled_scenario("scenario2_pos4")
sc, grid = b.scenario, b.grid
plate = reference_plate_power(sc, grid)
cophased = received_power(sc, grid, np.exp(1j * ideal_phase_profile(sc, grid)))
print(f"plate:      {10 * np.log10(plate / 1e-3):7.2f} dBm")
print(f"co-phased:  {10 * np.log10(cophased / 1e-3):7.2f} dBm (bound {10 * np.log10(power_upper_bound(sc, grid) / 1e-3):.2f} dBm)")

# Far field: twice the elements, four times the power
far = Scenario((400, 30, 20), (300, -50, 10), F)
for n in (4, 8, 16):
    a, b2 = build_grid(n, n, lam / 2, lam / 2), build_grid(n, 2 * n, lam / 2, lam / 2)
    pa = received_power(far, a, np.exp(1j * ideal_phase_profile(far, a)))
    pb = received_power(far, b2, np.exp(1j * ideal_phase_profile(far, b2)))
    print(f"{n}x{n} -> {n}x{2 * n}: +{to_db(pb / pa):.3f} dB")
