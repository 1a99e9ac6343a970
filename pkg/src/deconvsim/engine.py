"""The deconvolution iteration and its run driver.

Given ascending samples sortx and sortz of equal length n and a current
estimate oldy, one step draws a uniform random permutation rperm, forms
``w = sortx + oldy[rperm]``, ranks w, and takes
``ydiff = sortz[ranks(w)] - sortx``.  The boundary policy is applied to
ydiff and the result is stored sorted ascending.  Each iterate is one of
the n! vectors ``sortz[perm] - sortx``, so the run is a random walk over
those candidates.

Two deliberately bad estimators are included for comparison: the sorted
difference (far too little spread) and the fully random difference (far
too much).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import variations
from .adjusters import UNBOUNDED, AdjustPolicy, SupportConstraint, adjust
from .config import DeconvConfig
from .core import (
    TieRule,
    as_sample,
    make_rng,
    random_permutation,
    ranks,
)
from .errors import DegenerateReferenceError, InvalidInputError
from .metrics import NormalReferenceLine, distance_index, reference_normal_line
from .variations import PoolingKind, equalize_lengths


@dataclass(frozen=True)
class EngineState:
    """Chain state: the two sorted inputs and the current sorted estimate."""

    sortx: np.ndarray
    sortz: np.ndarray
    y: np.ndarray
    iteration: int = 0

    def __post_init__(self):
        n = self.sortx.size
        if self.sortz.size != n or self.y.size != n:
            raise InvalidInputError("sortx, sortz and y must have equal length")
        for name in ("sortx", "sortz", "y"):
            v = getattr(self, name)
            if np.any(np.diff(v) < 0):
                raise InvalidInputError(f"{name} must be ascending")


@dataclass(frozen=True)
class IterationRecord:
    """One row of a run: the sorted estimate plus its diagnostics."""

    iteration: int
    y: np.ndarray
    d: float | None
    violations: int


@dataclass
class IterationTrace:
    """Everything a run produced, initial estimate included."""

    config: DeconvConfig
    sortx: np.ndarray
    sortz: np.ndarray
    initial: IterationRecord
    steps: list[IterationRecord] = field(default_factory=list)
    reference: NormalReferenceLine | None = None
    pooled: np.ndarray | None = None

    @property
    def all_records(self) -> list[IterationRecord]:
        return [self.initial, *self.steps]

    def step_ys(self) -> list[np.ndarray]:
        return [r.y for r in self.steps]

    def pool_average(self, burn_in: int) -> np.ndarray:
        return variations.pool_average(self.step_ys(), burn_in)

    def pool_concat(self, burn_in: int) -> np.ndarray:
        return variations.pool_concat(self.step_ys(), burn_in)

    def mean_distance(self, burn_in: int) -> float | None:
        """Mean of d over iterations beyond burn_in; None if d was never defined."""
        ds = [r.d for r in self.steps if r.iteration > burn_in and r.d is not None]
        if not ds:
            return None
        return float(np.mean(ds))

    def mean_violations(self, burn_in: int = 0) -> float:
        counts = [r.violations for r in self.steps if r.iteration > burn_in]
        return float(np.mean(counts)) if counts else 0.0


def init_estimate(sortz, sortx) -> np.ndarray:
    """First estimate: the sorted elementwise difference of the sorted inputs."""
    sortz = as_sample(sortz)
    sortx = as_sample(sortx)
    if sortz.size != sortx.size:
        raise InvalidInputError("sortz and sortx must have equal length")
    return np.sort(sortz - sortx)


def _step(
    x_eff: np.ndarray,
    z_eff: np.ndarray,
    oldy: np.ndarray,
    rperm: np.ndarray,
    w_noise: np.ndarray | None,
    policy: AdjustPolicy,
    support: SupportConstraint,
    rng: np.random.Generator,
    tie_rule: TieRule,
) -> tuple[np.ndarray, int]:
    # One transition on effective (possibly smoothed) ascending inputs.
    w = x_eff + oldy[rperm]
    if w_noise is not None:
        w = w + w_noise
    r = ranks(w, tie_rule, rng)
    ydiff = z_eff[r] - x_eff
    adjusted, violations = adjust(ydiff, policy, support, rng)
    return np.sort(adjusted), violations


def iterate_once(
    state: EngineState,
    rng: np.random.Generator,
    policy: AdjustPolicy = AdjustPolicy.NONE,
    support: SupportConstraint = UNBOUNDED,
    tie_rule: TieRule = TieRule.FIRST_OCCURRENCE,
    rperm: np.ndarray | None = None,
) -> tuple[np.ndarray, int]:
    """One chain step; returns the new sorted estimate and the
    pre-adjustment violation count.  rperm is drawn uniformly unless a
    fixed permutation is passed in (useful for deterministic checks)."""
    if rperm is None:
        rperm = random_permutation(state.y.size, rng)
    return _step(
        state.sortx, state.sortz, state.y, rperm, None, policy, support, rng, tie_rule
    )


def naive_sorted_difference(x, z) -> np.ndarray:
    """sort(z) - sort(x), stored sorted.  Understates the spread of Y."""
    x = as_sample(x)
    z = as_sample(z)
    if x.size != z.size:
        raise InvalidInputError("x and z must have equal length")
    return np.sort(np.sort(z) - np.sort(x))


def naive_random_difference(x, z, rng: np.random.Generator) -> np.ndarray:
    """Difference of independently shuffled x and z.  Overstates the spread."""
    x = as_sample(x)
    z = as_sample(z)
    if x.size != z.size:
        raise InvalidInputError("x and z must have equal length")
    xp = x[random_permutation(x.size, rng)]
    zp = z[random_permutation(z.size, rng)]
    return np.sort(zp - xp)


def run(x, z, config: DeconvConfig, rng: np.random.Generator | None = None) -> IterationTrace:
    """Drive a full deconvolution run.

    Equalizes lengths, applies any one-shot smoothing, iterates
    ``config.iters`` times recording each estimate with its distance index
    and pre-adjustment violation count, and attaches the pooled estimate
    when pooling is configured.  Deterministic given the seed.

    RNG consumption order is fixed: equalization, one-shot smoothing, then
    per iteration pool draw / rperm / fresh xi / eta / zeta / adjuster.
    """
    if rng is None:
        rng = make_rng(config.seed)
    x = as_sample(x)
    z = as_sample(z)

    x_eq, z_eq = equalize_lengths(x, z, config.equalize, rng)
    n = x_eq.size

    # The reference line is fitted to the equalized data before smoothing,
    # so d keeps one meaning across smoothing configurations.
    reference = None
    if n >= 2:
        try:
            reference = reference_normal_line(x_eq, z_eq, n)
        except DegenerateReferenceError:
            reference = None

    sm = config.smoothing
    eta_once = None
    if sm.active and not sm.fresh_each_step:
        if sm.xi_sd > 0:
            x_eq = variations.perturb(x_eq, sm.xi_sd, rng)
        if sm.eta_sd > 0:
            eta_once = rng.normal(0.0, sm.eta_sd, n)
        if sm.zeta_sd > 0:
            z_eq = variations.perturb(z_eq, sm.zeta_sd, rng)

    sortx = np.sort(x_eq)
    sortz = np.sort(z_eq)

    y = init_estimate(sortz, sortx)
    initial = IterationRecord(
        iteration=0,
        y=y,
        d=distance_index(y, reference) if reference is not None else None,
        violations=int(config.support.violations(y).sum()),
    )

    fresh = sm.active and sm.fresh_each_step
    pool_mode = config.pool.kind
    pool_values: list[np.ndarray] = [y] if pool_mode is PoolingKind.CONCAT_AND_DRAW else []

    steps: list[IterationRecord] = []
    for t in range(1, config.iters + 1):
        if pool_mode is PoolingKind.CONCAT_AND_DRAW:
            pooled_so_far = np.concatenate(pool_values)
            oldy = np.sort(pooled_so_far[rng.integers(0, pooled_so_far.size, n)])
        else:
            oldy = y

        rperm = random_permutation(n, rng)

        x_eff, z_eff, w_noise = sortx, sortz, eta_once
        if fresh:
            if sm.xi_sd > 0:
                x_eff = np.sort(sortx + rng.normal(0.0, sm.xi_sd, n))
            if sm.eta_sd > 0:
                w_noise = rng.normal(0.0, sm.eta_sd, n)
            if sm.zeta_sd > 0:
                z_eff = np.sort(sortz + rng.normal(0.0, sm.zeta_sd, n))

        y, violations = _step(
            x_eff,
            z_eff,
            oldy,
            rperm,
            w_noise,
            config.adjust,
            config.support,
            rng,
            config.tie_rule,
        )
        steps.append(
            IterationRecord(
                iteration=t,
                y=y,
                d=distance_index(y, reference) if reference is not None else None,
                violations=violations,
            )
        )
        if pool_mode is PoolingKind.CONCAT_AND_DRAW:
            pool_values.append(y)

    trace = IterationTrace(
        config=config,
        sortx=sortx,
        sortz=sortz,
        initial=initial,
        steps=steps,
        reference=reference,
    )
    if pool_mode is PoolingKind.AVERAGE:
        trace.pooled = trace.pool_average(config.pool.burn_in)
    elif pool_mode in (PoolingKind.CONCAT, PoolingKind.CONCAT_AND_DRAW):
        trace.pooled = trace.pool_concat(config.pool.burn_in)
    return trace
