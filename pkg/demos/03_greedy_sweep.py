"""
Greedy configuration and frequency sweep
========================================

Optimise the 192 column groups of a 48 x 48 surface at one frequency,
freeze the result, and sweep it against a same-size metal plate.
"""

import numpy as np

from rissim import measured_codebook
from rissim.experiment import bandwidth_3db, load_bundled_scenario, optimize_and_sweep, plate_sweep
from rissim.optimizer import baseline_config

cb = measured_codebook()
f_opt = 3.8e9

for pos in (1, 2, 3, 4):
    b = load_bundled_scenario(f"scenario2_pos{pos}")
    start = baseline_config("uniform", b.groups, cb, code="000")
    res = optimize_and_sweep(b.scenario, b.grid, b.groups, cb, f_opt, (3e9, 4.5e9), 20e6, initial=start)
    plate = plate_sweep(b.scenario, b.grid, res.freqs)
    gain = 10 * np.log10(res.power_at(f_opt) / plate.power_at(f_opt))
    passes = [10 * np.log10(p / 1e-3) for p in res.trace.pass_powers]
    print(f"position {pos}: passes {', '.join(f'{p:.2f}' for p in passes)} dBm; "
          f"{gain:.1f} dB over plate; 3-dB bandwidth {bandwidth_3db(res, f_opt) / 1e6:.0f} MHz")

# Coarse view of the last sweep
for f, p in res.points[::10]:
    print(f"  {f / 1e9:.2f} GHz  {10 * np.log10(p / 1e-3):7.2f} dBm")
