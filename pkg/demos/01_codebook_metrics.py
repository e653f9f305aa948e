"""
Phase resolution of a discrete codebook
=======================================

How close does a set of measured reflection states come to an ideal
N-bit phase shifter? The phase standard deviation turns the gaps between
states into one number, and the equivalent bit number maps it back to bits.
"""

import numpy as np

from rissim import equivalent_bits, ideal_codebook, measured_codebook, phase_quality, restrict

F = 3.75e9

# The bundled eight-state codebook, one sample per state
cb = measured_codebook()
for s in cb.states:
    g = s.gamma(F)
    print(f"{s.code}: |G| = {abs(g):.4f} ({20 * np.log10(abs(g)):+.2f} dB), phase {np.degrees(np.angle(g)):+7.1f} deg")

# Uniform states hit the bit count exactly
for m in (2, 4, 8, 16):
    q = phase_quality(ideal_codebook(m), F)
    print(f"ideal {m:2d} states: sigma = {q.sigma:7.3f} deg, N_bit = {q.n_bit:.6f}")

# Measured states are uneven, so they give fewer effective bits
for label in ("1-bit", "2-bit", "3-bit"):
    q = phase_quality(restrict(cb, label), F)
    print(f"measured {label}: sigma = {q.sigma:.3f} deg, N_bit = {q.n_bit:.4f}")

print(f"sigma of 16.25 deg corresponds to {equivalent_bits(16.25):.4f} bits")
