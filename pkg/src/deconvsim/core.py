"""Vector primitives: sorting, ranking, indexing, random permutations.

Everything downstream is built on these four operations plus a single
seedable RNG family (numpy's PCG64 via ``numpy.random.default_rng``).
Ranks and permutations are 0-based: ``ranks(v)[i]`` is the number of
elements that sort strictly before ``v[i]`` (ties broken by position),
so ``sort_ascending(v)[ranks(v)] == v`` exactly.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import InvalidInputError

FloatArray = np.ndarray
IntArray = np.ndarray


class TieRule(Enum):
    """How equal values are ordered when ranking.

    FIRST_OCCURRENCE gives the earlier element the lower rank, which keeps
    the result a true permutation and makes ranking deterministic.  RANDOM
    breaks each tie uniformly at random (for lattice-valued data); it needs
    an rng handle.
    """

    FIRST_OCCURRENCE = "first-occurrence"
    RANDOM = "random"


def make_rng(seed: int) -> np.random.Generator:
    """One seedable generator family for the whole package (PCG64)."""
    return np.random.default_rng(seed)


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Independent streams for concurrent tasks, derived from one seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def as_sample(values) -> FloatArray:
    """Validate and copy input into a float64 sample vector.

    Raises InvalidInputError on empty input or any non-finite element.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        v = v.reshape(-1)
    if v.size < 1:
        raise InvalidInputError("sample must contain at least one value")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("sample contains non-finite values")
    return v.copy()


def sort_ascending(v) -> FloatArray:
    """Return the multiset of v in ascending order; v is not modified."""
    return np.sort(as_sample(v), kind="stable")


def ranks(
    v,
    tie_rule: TieRule = TieRule.FIRST_OCCURRENCE,
    rng: np.random.Generator | None = None,
) -> IntArray:
    """0-based ranks of the elements of v.

    ``result[i]`` is the position v[i] would occupy after an ascending sort.
    The result is always a permutation of 0..n-1, even with tied values.
    """
    v = as_sample(v)
    n = v.size
    if tie_rule is TieRule.FIRST_OCCURRENCE:
        order = np.argsort(v, kind="stable")
    elif tie_rule is TieRule.RANDOM:
        if rng is None:
            raise InvalidInputError("random tie rule requires an rng")
        order = np.lexsort((rng.random(n), v))
    else:  # pragma: no cover - enum is closed
        raise InvalidInputError(f"unknown tie rule {tie_rule!r}")
    r = np.empty(n, dtype=np.intp)
    r[order] = np.arange(n, dtype=np.intp)
    return r


def apply_index(v, idx) -> np.ndarray:
    """``result[i] = v[idx[i]]`` with 0-based indices; repeats are allowed."""
    v = np.asarray(v)
    idx = np.asarray(idx, dtype=np.intp)
    if idx.size and (idx.min() < 0 or idx.max() >= v.shape[0]):
        raise InvalidInputError(
            f"index out of range: expected 0..{v.shape[0] - 1}"
        )
    return v[idx]


def random_permutation(n: int, rng: np.random.Generator) -> IntArray:
    """A uniformly random permutation of 0..n-1."""
    if n < 1:
        raise InvalidInputError("permutation length must be at least 1")
    return rng.permutation(n)
