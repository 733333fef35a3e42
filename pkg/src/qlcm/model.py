"""Random-set model and the lcm-degree statistic.

A set A is drawn from {1, ..., n} by including each element independently
with probability alpha.  The statistic of interest is the degree of
lcm{ [k]_q : k in A }, computed through the covered-divisor identity

    X = sum over 1 < d <= n of phi(d) * [some multiple of d lies in A],

which the polynomial oracles in ``qpoly`` verify independently.

Trials are keyed, not streamed: trial i of a run with seed s uses a Philox
generator keyed by (s, i), so any subset of trials can be regenerated in any
order, on any worker count, with identical bits.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .arith import ArithTables
from .errors import ResourceLimitError

ENUMERATION_LIMIT = 22


@dataclass(frozen=True)
class ModelParams:
    """Parameters of one simulation run."""

    n: int
    alpha: float
    seed: int
    trials: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class SampleResult:
    """One realized set (membership bitmap over 0..n) and its degree."""

    subset: np.ndarray
    degree: int


@dataclass(frozen=True)
class MonteCarloSummary:
    n: int
    alpha: float
    seed: int
    trials: int
    mean: float
    variance: float
    stderr: float
    degrees: np.ndarray


@dataclass(frozen=True)
class ExactDistribution:
    """Exact pmf of the degree statistic, all quantities rational."""

    n: int
    alpha: Fraction
    pmf: dict
    mean: Fraction
    variance: Fraction


def _trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed << 64) | trial_index))


def bitset(members, n: int) -> np.ndarray:
    """Membership bitmap of length n+1 (index 0 unused, always False)."""
    bits = np.zeros(n + 1, dtype=bool)
    for k in members:
        if not 1 <= k <= n:
            raise ValueError(f"element {k} outside 1..{n}")
        bits[k] = True
    return bits


def sample_set(params: ModelParams, trial_index: int) -> np.ndarray:
    """Membership bitmap for one keyed trial; independent of all others."""
    if not 0 <= trial_index < params.trials:
        raise ValueError(f"trial_index {trial_index} outside 0..{params.trials - 1}")
    rng = _trial_rng(params.seed, trial_index)
    bits = np.zeros(params.n + 1, dtype=bool)
    bits[1:] = rng.random(params.n) < params.alpha
    return bits


def indicator(subset: np.ndarray, d: int, n: int) -> int:
    """1 when some multiple of d in 1..n belongs to the set, else 0."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if d > n:
        return 0
    return int(subset[d::d].any())


def degree_statistic(subset: np.ndarray, n: int, tables: ArithTables) -> int:
    """Degree of the lcm of q-analogs of the set, by the covered-divisor sum."""
    if tables.limit < n:
        raise ValueError(f"tables cover 1..{tables.limit}, need {n}")
    phi = tables.phi
    total = 0
    for d in range(2, n + 1):
        if subset[d::d].any():
            total += int(phi[d])
    return total


def sample_stream(params: ModelParams, tables: ArithTables):
    """Yield SampleResult for trials 0..trials-1 in order."""
    for t in range(params.trials):
        bits = sample_set(params, t)
        yield SampleResult(bits, degree_statistic(bits, params.n, tables))


def _block_degrees(params: ModelParams, tables: ArithTables, start: int, stop: int) -> np.ndarray:
    n = params.n
    rows = stop - start
    bits = np.empty((rows, n + 1), dtype=bool)
    bits[:, 0] = False
    for i in range(rows):
        rng = _trial_rng(params.seed, start + i)
        bits[i, 1:] = rng.random(n) < params.alpha
    phi = tables.phi
    degs = np.zeros(rows, dtype=np.int64)
    for d in range(2, n + 1):
        covered = bits[:, d::d].any(axis=1)
        degs += phi[d] * covered
    return degs


def monte_carlo(
    params: ModelParams,
    tables: ArithTables,
    workers: int = 1,
    block_size: int = 256,
) -> MonteCarloSummary:
    """Simulate the degree statistic over keyed trials.

    Mean and variance come from exact integer sums of the per-trial degrees
    (converted through Fraction), so the summary is bit-identical for any
    worker count or block size.
    """
    if tables.limit < params.n:
        raise ValueError(f"tables cover 1..{tables.limit}, need {params.n}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    spans = [
        (s, min(s + block_size, params.trials))
        for s in range(0, params.trials, block_size)
    ]
    if workers == 1 or len(spans) == 1:
        parts = [_block_degrees(params, tables, a, b) for a, b in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: _block_degrees(params, tables, *ab), spans))
    degrees = np.concatenate(parts)
    t = params.trials
    s1 = int(degrees.sum())
    s2 = sum(int(x) * int(x) for x in degrees)
    mean = float(Fraction(s1, t))
    if t >= 2:
        variance = float(Fraction(t * s2 - s1 * s1, t * (t - 1)))
    else:
        variance = 0.0
    stderr = float(np.sqrt(variance / t))
    return MonteCarloSummary(
        n=params.n,
        alpha=params.alpha,
        seed=params.seed,
        trials=t,
        mean=mean,
        variance=variance,
        stderr=stderr,
        degrees=degrees,
    )


def _as_fraction(alpha) -> Fraction:
    if isinstance(alpha, float):
        raise TypeError(
            "exact enumeration needs a rational alpha (Fraction or int), not float"
        )
    if isinstance(alpha, Rational):
        return Fraction(alpha)
    raise TypeError(f"cannot interpret {alpha!r} as a rational probability")


def enumerate_exact(n: int, alpha, tables: ArithTables) -> ExactDistribution:
    """Exact distribution of the degree statistic over all 2^n sets.

    Walks the subset lattice once, carrying the covered-divisor mask, and
    weights each set size s by alpha^s (1-alpha)^(n-s) in exact rationals.
    Memory is O(n); time is O(2^n), capped at n = ENUMERATION_LIMIT.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > ENUMERATION_LIMIT:
        raise ResourceLimitError(
            f"exact enumeration over 2^{n} sets refused (limit n <= {ENUMERATION_LIMIT})"
        )
    if tables.limit < n:
        raise ValueError(f"tables cover 1..{tables.limit}, need {n}")
    a = _as_fraction(alpha)
    if not 0 <= a <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {a}")

    phi = [int(x) for x in tables.phi[: n + 1]]
    divs = [[] for _ in range(n + 1)]
    divmask = [0] * (n + 1)
    for k in range(1, n + 1):
        for d in range(2, k + 1):
            if k % d == 0:
                divs[k].append(d)
                divmask[k] |= 1 << (d - 2)

    counts: dict[tuple[int, int], int] = {}

    def walk(k: int, cov: int, x: int, size: int):
        if k > n:
            key = (x, size)
            counts[key] = counts.get(key, 0) + 1
            return
        walk(k + 1, cov, x, size)
        gain = 0
        for d in divs[k]:
            if not (cov >> (d - 2)) & 1:
                gain += phi[d]
        walk(k + 1, cov | divmask[k], x + gain, size + 1)

    walk(1, 0, 0, 0)

    b = 1 - a
    wt = [a**s * b ** (n - s) for s in range(n + 1)]
    pmf: dict[int, Fraction] = {}
    for (x, s), c in counts.items():
        w = c * wt[s]
        if w:
            pmf[x] = pmf.get(x, Fraction(0)) + w
    mean = sum((Fraction(x) * p for x, p in pmf.items()), Fraction(0))
    second = sum((Fraction(x * x) * p for x, p in pmf.items()), Fraction(0))
    return ExactDistribution(
        n=n,
        alpha=a,
        pmf=dict(sorted(pmf.items())),
        mean=mean,
        variance=second - mean * mean,
    )
