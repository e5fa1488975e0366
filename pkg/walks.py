"""Random walks on oracle groups: drift E[ℓ_S] and range E[R_n].

Every sample draws from its own counter-based stream keyed by
``(seed, sample index)``, so results do not depend on the thread count.
"""

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from errors import OracleError, UnknownLengthError
from oracles import word_length

logger = logging.getLogger(__name__)

MAX_RESAMPLES = 100


@dataclass(frozen=True)
class WalkFunctionalEstimate:
    n: int
    mean: float
    stderr: float
    samples: int
    seed: int
    functional: str
    invalid: int = 0
    length_method: str = ""


def sample_rng(seed, index):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def run_samples(sample, samples, seed, threads=1):
    """``sample(rng)`` for every sample index; results come back in index order."""
    if samples < 1:
        raise ValueError("at least one sample is required")

    def shard(indices):
        return [sample(sample_rng(seed, int(i))) for i in indices]

    threads = max(1, min(threads, samples))
    if threads == 1:
        return shard(range(samples))
    chunks = np.array_split(np.arange(samples), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(shard, chunks))
    return [x for part in parts for x in part]


def summarize(values):
    """Mean and standard error of the mean."""
    data = np.asarray(values, dtype=float)
    mean = float(data.mean())
    stderr = float(data.std(ddof=1) / math.sqrt(len(data))) if len(data) > 1 else 0.0
    return mean, stderr


def _require_symmetric(group):
    if not group.symmetric:
        raise OracleError(f"{group.name}: random walks need a symmetric generating set")


def walk_drift(group, n, samples, seed, threads=1, cap=None):
    """Monte Carlo estimate of E[ℓ_S] after n uniform steps."""
    _require_symmetric(group)
    k = len(group.generators)

    def sample(rng):
        invalid = 0
        while True:
            element = group.endpoint(rng.integers(0, k, size=n))
            try:
                return word_length(group, element, cap), invalid
            except UnknownLengthError:
                invalid += 1
                if invalid > MAX_RESAMPLES:
                    raise

    results = run_samples(sample, samples, seed, threads)
    mean, stderr = summarize([length for length, _ in results])
    invalid = sum(count for _, count in results)
    if invalid:
        logger.warning("%s n=%d: %d samples exceeded the length cap and were redrawn", group.name, n, invalid)
    logger.info("drift %s n=%d: %.4f ± %.4f", group.name, n, mean, stderr)
    return WalkFunctionalEstimate(n, mean, stderr, samples, seed, "drift", invalid, group.length_method)


def walk_range(group, n, samples, seed, threads=1):
    """Monte Carlo estimate of the number of distinct vertices visited in n steps.

    On wreath products the vertices counted are base positions.
    """
    _require_symmetric(group)
    k = len(group.generators)
    results = run_samples(lambda rng: group.range_size(rng.integers(0, k, size=n)), samples, seed, threads)
    mean, stderr = summarize(results)
    logger.info("range %s n=%d: %.4f ± %.4f", group.name, n, mean, stderr)
    return WalkFunctionalEstimate(n, mean, stderr, samples, seed, "range")


def simple_walk_mean_abs(n):
    """Exact E|S_n| for the simple symmetric walk on ℤ."""
    total = sum(math.comb(n, k) * abs(2 * k - n) for k in range(n + 1))
    return Fraction(total, 2**n)


def simple_walk_mean_range(n):
    """Exact E[R_n] for the simple symmetric walk on ℤ by dynamic programming over (min, max, position)."""
    paths = Counter({(0, 0, 0): 1})
    for _ in range(n):
        nxt = Counter()
        for (lo, hi, x), count in paths.items():
            for y in (x - 1, x + 1):
                nxt[(min(lo, y), max(hi, y), y)] += count
        paths = nxt
    total = sum((hi - lo + 1) * count for (lo, hi, _), count in paths.items())
    return Fraction(total, 2**n)
