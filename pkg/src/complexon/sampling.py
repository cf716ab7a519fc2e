"""Seeded sampling of simplicial complexes from a complexon.

Stream order, all from one ``numpy.random.Philox`` generator keyed by the
seed: first ``n`` uniform latent points, then for ``d = 1..D`` one uniform
draw per (d+1)-subset of nodes in lexicographic order. A subset whose
faces are all present joins the complex when its draw is below
``W^(d)`` at its latent points; other subsets consume their draw and are
skipped, so two complexons sampled with the same seed see identical draws.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .complex import SimplicialComplex
from .kernels import Complexon

__all__ = [
    "SampleConfig",
    "Sample",
    "SampleStats",
    "sample_complex",
    "sample_with_stats",
    "empirical_simplex_rate",
    "derive_seed",
    "format_latent",
]

RNG_NAME = "philox"
_CHUNK = 1 << 18
_CACHE_ROWS = 1 << 21
_DENSE_LOOKUP = 1 << 24
_MASK64 = (1 << 64) - 1


def derive_seed(seed: int, *keys: int) -> int:
    """``seed`` XOR a 64-bit BLAKE2b digest of ``keys``; stable across platforms."""
    digest = hashlib.blake2b(":".join(str(int(k)) for k in keys).encode(), digest_size=8).digest()
    return (int(seed) ^ int.from_bytes(digest, "little")) & _MASK64


@dataclass(frozen=True)
class SampleConfig:
    n: int
    D: int
    seed: int = 0
    rng: str = RNG_NAME

    def __post_init__(self):
        if self.rng != RNG_NAME:
            raise ValueError(f"only the {RNG_NAME!r} generator is supported")
        if self.D < 0:
            raise ValueError("D must be non-negative")
        if self.n < self.D + 1:
            raise ValueError(f"need at least D + 1 = {self.D + 1} nodes, got {self.n}")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(int(self.seed) & _MASK64))


class Sample(NamedTuple):
    complex: SimplicialComplex
    latent: np.ndarray


@dataclass(frozen=True)
class SampleStats:
    """Per-dimension tallies: eligible candidates, inclusions, summed probabilities."""

    eligible: dict[int, int]
    included: dict[int, int]
    prob_sum: dict[int, float]


@functools.lru_cache(maxsize=4)
def _all_combinations(n: int, k: int) -> np.ndarray:
    flat = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(n), k)), dtype=np.int64)
    out = flat.reshape(-1, k)
    out.setflags(write=False)
    return out


def _combinations(n: int, k: int):
    """k-subsets of ``range(n)`` in lexicographic order, in row blocks."""
    if math.comb(n, k) <= _CACHE_ROWS:
        yield _all_combinations(n, k)
        return
    it = itertools.combinations(range(n), k)
    while True:
        flat = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, _CHUNK)), dtype=np.int64)
        if flat.size == 0:
            return
        yield flat.reshape(-1, k)


def _encode(rows: np.ndarray, n: int) -> np.ndarray:
    keys = np.zeros(rows.shape[0], dtype=np.int64)
    for col in range(rows.shape[1]):
        keys = keys * n + rows[:, col]
    return keys


def sample_with_stats(W: Complexon, cfg: SampleConfig) -> tuple[Sample, SampleStats]:
    if cfg.D > W.D:
        raise ValueError(f"cannot sample dimension {cfg.D} from a {W.D}-dimensional complexon")
    n = cfg.n
    rng = cfg.generator()
    latent = rng.random(n)
    layers: list[np.ndarray] = []
    eligible, included, prob_sum = {}, {}, {}
    prev = np.arange(n, dtype=np.int64).reshape(n, 1)
    for d in range(1, cfg.D + 1):
        prev_keys = np.sort(_encode(prev, n))
        dense = None
        if n**d <= _DENSE_LOOKUP:
            dense = np.zeros(n**d, dtype=bool)
            dense[prev_keys] = True
        kept = []
        n_elig = n_inc = 0
        p_sum = 0.0
        for cand in _combinations(n, d + 1):
            draws = rng.random(cand.shape[0])
            ok = np.full(cand.shape[0], prev_keys.size > 0)
            if d > 1 and prev_keys.size:
                for drop in range(d + 1):
                    keys = _encode(np.delete(cand, drop, axis=1), n)
                    if dense is not None:
                        ok &= dense[keys]
                    else:
                        pos = np.minimum(np.searchsorted(prev_keys, keys), prev_keys.size - 1)
                        ok &= prev_keys[pos] == keys
            if not ok.any():
                continue
            cand, draws = cand[ok], draws[ok]
            probs = W.evaluate_rows(d, latent[cand])
            take = draws < probs
            kept.append(cand[take])
            n_elig += cand.shape[0]
            n_inc += int(take.sum())
            p_sum += float(probs.sum())
        prev = np.concatenate(kept) if kept else np.zeros((0, d + 1), dtype=np.int64)
        layers.append(prev + 1)
        eligible[d], included[d], prob_sum[d] = n_elig, n_inc, p_sum
    K = SimplicialComplex._from_arrays(n, layers)
    return Sample(K, latent), SampleStats(eligible, included, prob_sum)


def sample_complex(W: Complexon, cfg: SampleConfig) -> Sample:
    """Draw a complex and its latent points; see the module docstring for the stream order."""
    return sample_with_stats(W, cfg)[0]


def empirical_simplex_rate(W: Complexon, d: int, n: int, trials: int, seed: int = 0) -> float:
    """Mean over trials of the fraction of eligible d-subsets that were included.

    Trial ``t`` uses seed ``derive_seed(seed, n, t)``. Trials without any
    eligible candidate are left out of the average.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rates = []
    for t in range(trials):
        _, stats = sample_with_stats(W, SampleConfig(n=n, D=d, seed=derive_seed(seed, n, t)))
        if stats.eligible[d]:
            rates.append(stats.included[d] / stats.eligible[d])
    return float(np.mean(rates)) if rates else math.nan


def format_latent(latent: np.ndarray) -> str:
    """Sidecar text: one ``index value`` pair per line, 1-based, ``%.17g``."""
    return "".join(f"{i} {'%.17g' % x}\n" for i, x in enumerate(latent, 1))
