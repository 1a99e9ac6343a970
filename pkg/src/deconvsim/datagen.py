"""Synthetic sample generators for the bundled experiments.

Each named experiment draws three independent samples: x0 and y0 combine
into the observed z0 = x0 + y0, and x1 is a second independent sample
from X's distribution.  Only (x1, z0) are inputs to the engine; y0 is
returned as ground truth for evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import as_sample, make_rng
from .errors import ConfigError, InvalidInputError


class DistKind(Enum):
    NORMAL = "normal"
    EXPONENTIAL = "exponential"
    UNIFORM = "uniform"
    CONTAMINATED_EXPONENTIAL = "contaminated-exponential"
    DELAY_LINK = "delay-link"


@dataclass(frozen=True)
class DistSpec:
    """A drawable distribution; build via the classmethod constructors."""

    kind: DistKind
    params: tuple[float, ...]

    @classmethod
    def normal(cls, mu: float = 0.0, sd: float = 1.0) -> "DistSpec":
        if not sd > 0:
            raise ConfigError("normal sd must be > 0")
        return cls(DistKind.NORMAL, (float(mu), float(sd)))

    @classmethod
    def exponential(cls, mean: float = 1.0) -> "DistSpec":
        # Parameterized by mean, not rate.
        if not mean > 0:
            raise ConfigError("exponential mean must be > 0")
        return cls(DistKind.EXPONENTIAL, (float(mean),))

    @classmethod
    def uniform(cls, lo: float = 0.0, hi: float = 1.0) -> "DistSpec":
        if not lo < hi:
            raise ConfigError("uniform requires lo < hi")
        return cls(DistKind.UNIFORM, (float(lo), float(hi)))

    @classmethod
    def contaminated_exponential(
        cls, n_main: int, main_mean: float, n_out: int, out_mean: float
    ) -> "DistSpec":
        if n_main < 0 or n_out < 0 or n_main + n_out < 1:
            raise ConfigError("contaminated component counts must be nonnegative, total >= 1")
        if not (main_mean > 0 and out_mean > 0):
            raise ConfigError("contaminated component means must be > 0")
        return cls(
            DistKind.CONTAMINATED_EXPONENTIAL,
            (float(n_main), float(main_mean), float(n_out), float(out_mean)),
        )

    @classmethod
    def delay_link(
        cls, base_ms: float, spike_prob: float, spike_mean_ms: float
    ) -> "DistSpec":
        """Demo-only network-delay model: constant base plus occasional
        exponential spikes.  Not part of any acceptance check."""
        if base_ms < 0:
            raise ConfigError("delay base must be >= 0")
        if not 0.0 <= spike_prob <= 1.0:
            raise ConfigError("spike probability must be in [0, 1]")
        if not spike_mean_ms > 0:
            raise ConfigError("spike mean must be > 0")
        return cls(
            DistKind.DELAY_LINK, (float(base_ms), float(spike_prob), float(spike_mean_ms))
        )


def parse_dist_spec(text: str) -> DistSpec:
    """Parse "name" or "name:p1,p2,..." into a DistSpec.

    Recognized names: normal(mu, sd), exponential(mean), uniform(lo, hi),
    contaminated-exponential(n_main, main_mean, n_out, out_mean),
    delay-link(base_ms, spike_prob, spike_mean_ms).  Omitted parameters
    take defaults where the constructor has them.
    """
    name, _, rest = text.strip().partition(":")
    name = name.strip().lower()
    try:
        params = [float(p) for p in rest.split(",")] if rest.strip() else []
    except ValueError:
        raise ConfigError(f"malformed distribution parameters in {text!r}") from None
    try:
        if name == "normal":
            return DistSpec.normal(*params)
        if name == "exponential":
            return DistSpec.exponential(*params)
        if name == "uniform":
            return DistSpec.uniform(*params)
        if name == "contaminated-exponential":
            if len(params) != 4:
                raise ConfigError("contaminated-exponential takes exactly 4 parameters")
            n_main, main_mean, n_out, out_mean = params
            if n_main != int(n_main) or n_out != int(n_out):
                raise ConfigError("contaminated-exponential counts must be integers")
            return DistSpec.contaminated_exponential(
                int(n_main), main_mean, int(n_out), out_mean
            )
        if name == "delay-link":
            if len(params) != 3:
                raise ConfigError("delay-link takes exactly 3 parameters")
            return DistSpec.delay_link(*params)
    except TypeError:
        raise ConfigError(f"wrong parameter count in {text!r}") from None
    raise ConfigError(f"unknown distribution {name!r}")


def generate(spec: DistSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. draws from spec; deterministic per rng state."""
    if n < 1:
        raise InvalidInputError("n must be >= 1")
    p = spec.params
    if spec.kind is DistKind.NORMAL:
        return rng.normal(p[0], p[1], n)
    if spec.kind is DistKind.EXPONENTIAL:
        return rng.exponential(p[0], n)
    if spec.kind is DistKind.UNIFORM:
        return rng.uniform(p[0], p[1], n)
    if spec.kind is DistKind.CONTAMINATED_EXPONENTIAL:
        n_main, main_mean, n_out, out_mean = int(p[0]), p[1], int(p[2]), p[3]
        if n != n_main + n_out:
            raise InvalidInputError(
                f"contaminated sample needs n == {n_main + n_out}, got {n}"
            )
        pooled = np.concatenate(
            [rng.exponential(main_mean, n_main), rng.exponential(out_mean, n_out)]
        )
        return pooled[rng.permutation(n)]
    if spec.kind is DistKind.DELAY_LINK:
        base, prob, spike_mean = p
        spikes = np.where(rng.random(n) < prob, rng.exponential(spike_mean, n), 0.0)
        return base + spikes
    raise ConfigError(f"unhandled distribution kind {spec.kind}")


EXPERIMENT_SIZE = 100

EXPERIMENT_SPECS = {
    "normal": DistSpec.normal(0.0, 1.0),
    "exponential": DistSpec.exponential(1.0),
    "uniform": DistSpec.uniform(0.0, 1.0),
    "outlier": DistSpec.contaminated_exponential(95, 1.0, 5, 100.0),
}


def make_experiment(name: str, seed) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Build one named experiment; returns (x1, z0, truth).

    x0, y0, x1 are drawn in that fixed order (n = 100 each) from the
    experiment's distribution, z0 = x0 + y0 elementwise, truth = y0.
    """
    try:
        spec = EXPERIMENT_SPECS[name]
    except KeyError:
        raise ConfigError(
            f"unknown experiment {name!r}; choose from {sorted(EXPERIMENT_SPECS)}"
        ) from None
    rng = make_rng(seed)
    x0 = generate(spec, EXPERIMENT_SIZE, rng)
    y0 = generate(spec, EXPERIMENT_SIZE, rng)
    x1 = generate(spec, EXPERIMENT_SIZE, rng)
    z0 = x0 + y0
    return as_sample(x1), as_sample(z0), as_sample(y0)
