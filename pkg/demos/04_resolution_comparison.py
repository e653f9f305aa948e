"""
How many bits does the surface need?
====================================

Restrict the measured codebook to 1, 2 and 3 bits, optimise each
independently, and report how much power the coarser versions give up.
"""

from rissim import measured_codebook
from rissim.experiment import compare_resolutions, load_bundled_scenario

cb = measured_codebook()
for name in ("scenario3", "scenario2_pos2", "scenario1_B"):
    b = load_bundled_scenario(name)
    report = compare_resolutions(b.scenario, b.grid, b.groups, cb, ["1-bit", "2-bit", "3-bit"])
    print(name)
    print(report.table())
    print()
