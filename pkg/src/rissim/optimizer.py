"""Greedy per-group state selection, an exhaustive oracle and simple baselines."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .channel import LinkModel, Scenario
from .codebook import Codebook
from .geometry import GroupMap, SurfaceGrid


@dataclass(frozen=True, eq=False)
class Configuration:
    """One code per control group; ``codes[g]`` drives group ``g``."""

    groups: GroupMap
    codes: tuple[str, ...]

    def __post_init__(self):
        if len(self.codes) != self.groups.n_groups:
            raise ValueError(
                f"configuration has {len(self.codes)} codes for {self.groups.n_groups} groups"
            )

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.codes == other.codes and np.array_equal(self.groups.labels, other.groups.labels)

    def indices(self, codebook: Codebook) -> np.ndarray:
        return np.array([codebook.index(c) for c in self.codes], dtype=np.int64)

    def expand(self, codebook: Codebook, f: float) -> np.ndarray:
        """Per-element reflection coefficients (row-major) at frequency ``f``."""
        return codebook.gammas(f)[self.indices(codebook)][self.groups.labels]

    def as_dict(self) -> dict[str, str]:
        return {str(g): c for g, c in enumerate(self.codes)}


@dataclass(frozen=True)
class OptimizerSettings:
    max_iterations: int = 5
    epsilon: float = 1e-4
    tie_break: str = "lowest-code-index"
    noise_db_std: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.tie_break != "lowest-code-index":
            raise ValueError(f"unsupported tie_break {self.tie_break!r}")
        if self.noise_db_std < 0:
            raise ValueError(f"noise_db_std must be >= 0, got {self.noise_db_std}")
        if self.noise_db_std > 0 and self.seed is None:
            raise ValueError("a seed is required when measurement noise is enabled")


@dataclass(frozen=True)
class TraceStep:
    iteration: int
    group: int
    code: str
    p_r: float


@dataclass
class OptimizationTrace:
    """Committed choices in sweep order.

    ``p_r`` of each step is the noiseless model power after the commit.
    """

    steps: list[TraceStep] = field(default_factory=list)
    iterations_completed: int = 0
    evaluations: int = 0
    pass_powers: list[float] = field(default_factory=list)

    @property
    def final_power(self) -> float:
        return self.steps[-1].p_r if self.steps else math.nan


def greedy_optimize(
    scenario: Scenario,
    grid: SurfaceGrid,
    groups: GroupMap,
    codebook: Codebook,
    settings: OptimizerSettings | None = None,
    initial: Configuration | None = None,
) -> tuple[Configuration, OptimizationTrace]:
    """Sweep every group through all codes, keep the best, repeat.

    Groups are visited in id order. Each visit evaluates all ``K`` codes with
    the other groups held fixed (the incumbent is re-measured, so a commit never
    lowers the power) and commits the first maximiser. Passes repeat until
    ``max_iterations`` or until a pass improves on the previous pass by a
    relative amount below ``epsilon``. The initial state defaults to the
    codebook's first code everywhere.
    """
    settings = settings or OptimizerSettings()
    if len(codebook) == 0:
        raise ValueError("codebook is empty")
    if groups.labels.shape[0] != grid.n_elements:
        raise ValueError("group map does not match the grid")

    link = LinkModel(scenario, grid)
    gam = codebook.gammas(scenario.f)
    K = len(gam)
    if initial is None:
        idx = np.zeros(groups.n_groups, dtype=np.int64)
    else:
        idx = initial.indices(codebook)
    gamma = gam[idx][groups.labels]
    members = groups.members
    rng = np.random.default_rng(settings.seed) if settings.noise_db_std > 0 else None

    trace = OptimizationTrace()
    scores = np.empty(K)
    measured = np.empty(K)
    prev = None
    for it in range(1, settings.max_iterations + 1):
        for g, elems in enumerate(members):
            for k in range(K):
                gamma[elems] = gam[k]
                scores[k] = link.power(gamma)
            trace.evaluations += K
            if rng is None:
                q = int(np.argmax(scores))
            else:
                measured[:] = scores * 10.0 ** (rng.normal(0.0, settings.noise_db_std, K) / 10.0)
                q = int(np.argmax(measured))
            gamma[elems] = gam[q]
            idx[g] = q
            trace.steps.append(TraceStep(it, g, codebook.states[q].code, float(scores[q])))
        trace.iterations_completed = it
        end = trace.steps[-1].p_r
        trace.pass_powers.append(end)
        if prev is not None:
            gain = (end - prev) / prev if prev > 0 else (math.inf if end > prev else 0.0)
            if gain < settings.epsilon:
                break
        prev = end

    config = Configuration(groups, tuple(codebook.states[i].code for i in idx))
    return config, trace


class SearchSpaceTooLarge(ValueError):
    pass


EXHAUSTIVE_LIMIT = 10**7


def exhaustive_optimize(
    scenario: Scenario,
    grid: SurfaceGrid,
    groups: GroupMap,
    codebook: Codebook,
    limit: int = EXHAUSTIVE_LIMIT,
    chunk: int = 1 << 16,
) -> Configuration:
    """Global maximiser of the received power over all group assignments.

    Candidates are screened with per-group field sums, then every assignment
    within 1e-9 of the screened maximum is re-evaluated through the full model.
    Ties go to the smallest code-index vector (group 0 most significant).
    """
    K, G = len(codebook), groups.n_groups
    if K == 0:
        raise ValueError("codebook is empty")
    if K**G > limit:
        raise SearchSpaceTooLarge(f"{K}^{G} = {K**G} assignments exceeds the limit of {limit}")

    link = LinkModel(scenario, grid)
    gam = codebook.gammas(scenario.f)
    contrib = np.array([np.sum(link.coeffs[m]) for m in groups.members])
    table = contrib[:, None] * gam[None, :]  # (G, K)
    radix = K ** np.arange(G - 1, -1, -1, dtype=np.int64)

    total = K**G
    best = -math.inf
    values = np.empty(total)
    for start in range(0, total, chunk):
        n = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (n[:, None] // radix[None, :]) % K
        field_ = table[np.arange(G)[None, :], digits].sum(axis=1)
        v = field_.real**2 + field_.imag**2
        values[start:start + len(n)] = v
        best = max(best, float(v.max()))

    near = np.flatnonzero(values >= best * (1.0 - 1e-9))[:65536]
    chosen, chosen_p = None, -math.inf
    for n in near:
        digits = (int(n) // radix) % K
        p = link.power(gam[digits][groups.labels])
        if p > chosen_p:
            chosen, chosen_p = digits, p
    return Configuration(groups, tuple(codebook.states[int(i)].code for i in chosen))


def enumerate_powers(scenario: Scenario, grid: SurfaceGrid, groups: GroupMap, codebook: Codebook):
    """Yield ``(code_indices, power)`` for every assignment through the full model (small cases only)."""
    link = LinkModel(scenario, grid)
    gam = codebook.gammas(scenario.f)
    for digits in itertools.product(range(len(codebook)), repeat=groups.n_groups):
        d = np.array(digits, dtype=np.int64)
        yield digits, link.power(gam[d][groups.labels])


def _circular_distance(a, b):
    d = np.mod(a - b + np.pi, 2.0 * np.pi) - np.pi
    return np.abs(d)


def quantize_profile(
    ideal: np.ndarray,
    codebook: Codebook,
    f: float,
    groups: GroupMap,
) -> Configuration:
    """Assign every group the code whose phase is circularly nearest its ideal phase.

    For multi-element groups the ideal phase is the circular mean over members.
    Magnitudes play no part in the choice.
    """
    if len(codebook) == 0:
        raise ValueError("codebook is empty")
    ideal = np.asarray(ideal, dtype=float).reshape(-1)
    if ideal.shape[0] != groups.labels.shape[0]:
        raise ValueError("ideal profile length does not match the group map")
    if all(len(m) == 1 for m in groups.members):
        target = np.empty(groups.n_groups)
        target[groups.labels] = ideal
    else:
        phasors = np.exp(1j * ideal)
        target = np.array([np.angle(np.sum(phasors[m])) for m in groups.members])
    state_phase = np.angle(codebook.gammas(f))
    dist = _circular_distance(target[:, None], state_phase[None, :])
    choice = np.argmin(dist, axis=1)
    return Configuration(groups, tuple(codebook.states[i].code for i in choice))


def baseline_config(
    kind: str,
    groups: GroupMap,
    codebook: Codebook,
    code: str | None = None,
    seed: int | None = None,
) -> Configuration:
    """``kind="uniform"`` puts ``code`` everywhere; ``kind="random"`` draws codes from ``seed``."""
    if kind == "uniform":
        if code is None:
            raise ValueError("uniform baseline needs a code")
        codebook.index(code)
        return Configuration(groups, (code,) * groups.n_groups)
    if kind == "random":
        if seed is None:
            raise ValueError("random baseline needs a seed")
        draw = np.random.default_rng(seed).integers(len(codebook), size=groups.n_groups)
        return Configuration(groups, tuple(codebook.states[i].code for i in draw))
    raise ValueError(f"unknown baseline kind {kind!r}")
