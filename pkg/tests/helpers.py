"""Random instance generators shared by the test modules."""

import numpy as np

from rissim.channel import AntennaPattern, Scenario
from rissim.codebook import Codebook, ReflectionState
from rissim.geometry import build_grid

F0 = 3.75e9
LAM0 = 299_792_458.0 / F0


def front_point(rng, r_lo=0.5, r_hi=5.0, max_theta=np.radians(75)):
    theta = rng.uniform(0, max_theta)
    phi = rng.uniform(0, 2 * np.pi)
    r = rng.uniform(r_lo, r_hi)
    return (r * np.cos(theta), r * np.sin(theta) * np.cos(phi), r * np.sin(theta) * np.sin(phi))


def random_pattern(rng):
    if rng.random() < 0.3:
        return AntennaPattern()
    return AntennaPattern("cosine-power", float(rng.uniform(0, 4)), float(rng.uniform(1, 12)))


def random_scenario(rng, f=F0, **kw):
    return Scenario(
        tx_pos=front_point(rng, **kw),
        rx_pos=front_point(rng, **kw),
        f=f,
        p_t=float(rng.uniform(1e-3, 1.0)),
        tx_pattern=random_pattern(rng),
        rx_pattern=random_pattern(rng),
        cell_pattern=AntennaPattern("cosine-power", float(rng.uniform(0, 1.5)), 1.0),
    )


def random_codebook(rng, k, f=F0):
    states = tuple(
        ReflectionState(f"s{i}", (f,), (float(rng.uniform(0.3, 1.0)),), (float(rng.uniform(-np.pi, np.pi)),))
        for i in range(k)
    )
    return Codebook(states)


def random_grid(rng, max_rows=4, max_cols=4, lam=LAM0):
    return build_grid(
        int(rng.integers(1, max_rows + 1)),
        int(rng.integers(1, max_cols + 1)),
        float(rng.uniform(0.2, 0.6)) * lam,
        float(rng.uniform(0.2, 0.6)) * lam,
    )


def oracle_instance(rng):
    """Random small problem: 1-3 column groups, 2-8 random states, random front-half-space geometry."""
    from rissim.geometry import column_groups

    n_cols = int(rng.integers(1, 4))
    n_rows = int(rng.integers(1, 4))
    grid = build_grid(n_rows, n_cols, float(rng.uniform(0.2, 0.6)) * LAM0, float(rng.uniform(0.2, 0.6)) * LAM0)
    groups = column_groups(grid, n_rows)
    codebook = random_codebook(rng, int(rng.integers(2, 9)))
    return random_scenario(rng), grid, groups, codebook
