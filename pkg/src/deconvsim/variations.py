"""Sample-size equalization, Gaussian smoothing, bootstrap, and pooling.

These are the optional knobs around the core iteration: making x and z the
same length when they are not, perturbing the data to smooth a lattice,
resampling, and combining iterates into a single pooled estimate.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import as_sample
from .errors import InvalidInputError


class EqualizeKind(Enum):
    BOOTSTRAP = "bootstrap"
    SUBSAMPLE = "subsample"
    TILE = "tile"


@dataclass(frozen=True)
class EqualizeStrategy:
    """How unequal-length x and z are brought to a common length.

    BOOTSTRAP resamples both with replacement to length ``target``.
    SUBSAMPLE draws without replacement from the longer vector down to the
    shorter one's length.  TILE repeats the shorter vector whole as many
    times as fits and tops it up with a without-replacement draw.
    """

    kind: EqualizeKind = EqualizeKind.TILE
    target: int | None = None

    def __post_init__(self):
        if self.kind is EqualizeKind.BOOTSTRAP:
            if self.target is None or self.target < 1:
                raise InvalidInputError("bootstrap equalization needs target >= 1")
        elif self.target is not None:
            raise InvalidInputError(f"{self.kind.value} takes no target length")

    @classmethod
    def bootstrap(cls, target: int) -> "EqualizeStrategy":
        return cls(EqualizeKind.BOOTSTRAP, target)

    @classmethod
    def subsample(cls) -> "EqualizeStrategy":
        return cls(EqualizeKind.SUBSAMPLE)

    @classmethod
    def tile(cls) -> "EqualizeStrategy":
        return cls(EqualizeKind.TILE)


@dataclass(frozen=True)
class SmoothingSpec:
    """Standard deviations of the Gaussian perturbations added to x, y, z.

    ``fresh_each_step`` draws new perturbations at every iteration;
    otherwise one set is drawn up front and reused.  The smoothings are
    bias-free when zeta_sd**2 == xi_sd**2 + eta_sd**2 (perturbed x plus
    perturbed y is then distributed like perturbed z); violating that is
    allowed but warned about.
    """

    xi_sd: float = 0.0
    eta_sd: float = 0.0
    zeta_sd: float = 0.0
    fresh_each_step: bool = True

    def __post_init__(self):
        if min(self.xi_sd, self.eta_sd, self.zeta_sd) < 0:
            raise InvalidInputError("smoothing standard deviations must be >= 0")
        if self.active:
            want = self.xi_sd**2 + self.eta_sd**2
            got = self.zeta_sd**2
            if not np.isclose(want, got, rtol=1e-9, atol=1e-12):
                warnings.warn(
                    "smoothing is biased: zeta_sd^2 != xi_sd^2 + eta_sd^2 "
                    f"({got:g} != {want:g})",
                    stacklevel=2,
                )

    @property
    def active(self) -> bool:
        return max(self.xi_sd, self.eta_sd, self.zeta_sd) > 0


class PoolingKind(Enum):
    NONE = "none"
    AVERAGE = "average"
    CONCAT = "concat"
    CONCAT_AND_DRAW = "concat-draw"


@dataclass(frozen=True)
class PoolingMode:
    """Whether and how post-burn-in iterates are combined.

    AVERAGE takes the elementwise mean of the sorted iterates, CONCAT
    concatenates them, and CONCAT_AND_DRAW additionally feeds each
    iteration's working vector with draws from the pool accumulated so far
    instead of the previous iterate.
    """

    kind: PoolingKind = PoolingKind.NONE
    burn_in: int = 4

    def __post_init__(self):
        if self.burn_in < 0:
            raise InvalidInputError("pooling burn-in must be >= 0")


def equalize_lengths(
    x, z, strategy: EqualizeStrategy, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Return equal-length copies of x and z per the chosen strategy."""
    x = as_sample(x)
    z = as_sample(z)
    kind = strategy.kind

    if kind is EqualizeKind.BOOTSTRAP:
        n = strategy.target
        return bootstrap_sample(x, n, rng), bootstrap_sample(z, n, rng)

    if x.size == z.size:
        return x, z

    if kind is EqualizeKind.SUBSAMPLE:
        n = min(x.size, z.size)
        if x.size > n:
            return rng.choice(x, size=n, replace=False), z
        return x, rng.choice(z, size=n, replace=False)

    if kind is EqualizeKind.TILE:
        if x.size < z.size:
            return _tile_to(x, z.size, rng), z
        return x, _tile_to(z, x.size, rng)

    raise InvalidInputError(f"unknown equalize strategy {kind!r}")  # pragma: no cover


def _tile_to(v: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    # n = k*m + r: repeat v k times, then adjoin r draws without replacement.
    m = v.size
    k, r = divmod(n, m)
    parts = [v] * k
    if r:
        parts.append(rng.choice(v, size=r, replace=False))
    return np.concatenate(parts)


def perturb(v, sd: float, rng: np.random.Generator) -> np.ndarray:
    """Add i.i.d. mean-zero Gaussian noise of standard deviation sd."""
    if sd < 0:
        raise InvalidInputError("perturbation sd must be >= 0")
    v = np.asarray(v, dtype=np.float64)
    if sd == 0:
        return v.copy()
    return v + rng.normal(0.0, sd, v.size)


def bootstrap_sample(v, n: int, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. draws with replacement from the elements of v."""
    v = as_sample(v)
    if n < 1:
        raise InvalidInputError("bootstrap size must be >= 1")
    return v[rng.integers(0, v.size, n)]


def pool_average(ys: list[np.ndarray], burn_in: int) -> np.ndarray:
    """Elementwise mean of the sorted iterates after burn_in.

    ``ys[t]`` is the sorted estimate of iteration t+1, so iterations
    strictly beyond burn_in are ``ys[burn_in:]``.  The mean of ascending
    vectors is ascending.
    """
    kept = _post_burn_in(ys, burn_in)
    return np.mean(kept, axis=0)


def pool_concat(ys: list[np.ndarray], burn_in: int) -> np.ndarray:
    """Concatenation of the iterates after burn_in."""
    kept = _post_burn_in(ys, burn_in)
    return np.concatenate(kept)


def _post_burn_in(ys: list[np.ndarray], burn_in: int) -> list[np.ndarray]:
    if burn_in < 0:
        raise InvalidInputError("burn-in must be >= 0")
    if burn_in >= len(ys):
        raise InvalidInputError(
            f"burn-in {burn_in} leaves no iterations out of {len(ys)}"
        )
    return ys[burn_in:]
