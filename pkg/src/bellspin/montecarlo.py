"""Trial-level simulation of the CHSH experiment.

Every trial consumes two uniforms. Trial ``i`` reads words ``2i`` and ``2i + 1``
of a Philox stream keyed by the seed, so any contiguous range of trials can be
regenerated on its own and shards reproduce the serial stream exactly.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from .bipartite import ChshSettings, born_probabilities, singlet
from .errors import DomainError
from .lhv import STRATEGIES, ConvexDecomposition

CONTEXTS = ((0, 0), (0, 1), (1, 0), (1, 1))
OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))
_PRODUCT = np.array([1, -1, -1, 1])
_WORDS_PER_BLOCK = 4  # Philox4x64 emits 4 words per counter increment


@dataclass(frozen=True)
class TrialRecord:
    x: int
    y: int
    a: int
    b: int


@dataclass(frozen=True)
class TrialBatch:
    """Trials ``start .. start + len - 1`` as parallel arrays."""

    start: int
    x: np.ndarray
    y: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __len__(self):
        return len(self.x)

    def records(self):
        for x, y, a, b in zip(self.x, self.y, self.a, self.b):
            yield TrialRecord(int(x), int(y), int(a), int(b))

    def counts(self) -> np.ndarray:
        ctx = 2 * self.x + self.y
        out = 2 * (self.a < 0) + (self.b < 0)
        return np.bincount(4 * ctx + out, minlength=16).reshape(4, 4)


def trial_uniforms(seed: int, start: int, stop: int) -> np.ndarray:
    """Uniforms for trials ``start <= i < stop``, shape ``(stop - start, 2)``."""
    if seed < 0:
        raise DomainError("seed must be a nonnegative integer")
    first_word = 2 * start
    block, offset = divmod(first_word, _WORDS_PER_BLOCK)
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(block)
    words = np.random.Generator(bitgen).random(offset + 2 * (stop - start))
    return words[offset:].reshape(-1, 2)


def _decode(u: np.ndarray, start: int, outcome_cdf: np.ndarray) -> TrialBatch:
    """Context from the first uniform; outcome index from the second via per-context CDFs."""
    ctx = np.minimum((u[:, 0] * 4).astype(np.int64), 3)
    out = np.empty(len(u), dtype=np.int64)
    for k in range(4):
        mask = ctx == k
        out[mask] = np.minimum(np.searchsorted(outcome_cdf[k], u[mask, 1], side="right"), 3)
    signs = np.array(OUTCOMES)[out]
    return TrialBatch(start, ctx // 2, ctx % 2, signs[:, 0], signs[:, 1])


def _quantum_cdf(s: ChshSettings, state) -> np.ndarray:
    probs = np.array([born_probabilities(state, s.alice(x), s.bob(y)).ravel() for x, y in CONTEXTS])
    return np.cumsum(probs, axis=1)


def quantum_trials(s: ChshSettings, seed: int, start: int, stop: int, state=None) -> TrialBatch:
    psi = singlet() if state is None else state
    return _decode(trial_uniforms(seed, start, stop), start, _quantum_cdf(s, psi))


def lhv_trials(d: ConvexDecomposition, seed: int, start: int, stop: int) -> TrialBatch:
    """Draw a strategy from the weights and a context, independently, per trial."""
    u = trial_uniforms(seed, start, stop)
    cdf = np.cumsum(d.weights)
    lam = np.minimum(np.searchsorted(cdf, u[:, 1] * cdf[-1], side="right"), 15)
    table = np.array(STRATEGIES)  # columns a0, a1, b0, b1
    ctx = np.minimum((u[:, 0] * 4).astype(np.int64), 3)
    x, y = ctx // 2, ctx % 2
    return TrialBatch(start, x, y, table[lam, x], table[lam, 2 + y])


@dataclass(frozen=True)
class EstimationReport:
    model: str
    seed: int
    n_trials: int
    counts: np.ndarray  # [context, outcome] with contexts (x, y) and outcomes (A, B) as in CONTEXTS/OUTCOMES
    correlations: np.ndarray  # [x, y]
    std_errors: np.ndarray  # [x, y]
    chsh: float
    chsh_std_error: float

    @property
    def context_sizes(self) -> np.ndarray:
        return self.counts.sum(axis=1)


def estimate(counts: np.ndarray, model: str, seed: int) -> EstimationReport:
    """Correlations, standard errors and CHSH statistic from outcome counts.

    Standard errors use the sample standard deviation of A*B within each context;
    contexts with fewer than 2 trials get an infinite error. The CHSH error adds
    the four context errors in quadrature, treating contexts as independent.
    """
    counts = np.asarray(counts, dtype=np.int64)
    n = counts.sum(axis=1)
    signed = counts @ _PRODUCT
    corr = np.divide(signed, n, out=np.zeros(4), where=n > 0)
    se = np.full(4, math.inf)
    ok = n >= 2
    var = n[ok] / (n[ok] - 1) * (1.0 - corr[ok] ** 2)
    se[ok] = np.sqrt(np.clip(var, 0.0, None) / n[ok])
    chsh = corr[0] + corr[1] + corr[2] - corr[3]
    chsh_se = math.sqrt(float(np.sum(se ** 2)))
    return EstimationReport(model, seed, int(n.sum()), counts, corr.reshape(2, 2),
                            se.reshape(2, 2), float(chsh), chsh_se)


def _run(make_batch, n_trials: int, shard_size: int | None, workers: int | None) -> np.ndarray:
    if n_trials < 1:
        raise DomainError("n_trials must be at least 1")
    shard = shard_size or n_trials
    bounds = [(lo, min(lo + shard, n_trials)) for lo in range(0, n_trials, shard)]

    def count(bound):
        return make_batch(*bound).counts()

    if workers and workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(count, bounds))
    else:
        parts = [count(bd) for bd in bounds]
    return np.sum(parts, axis=0)


def simulate_quantum(s: ChshSettings, n_trials: int, seed: int, state=None,
                     shard_size: int | None = 1_000_000, workers: int | None = None) -> EstimationReport:
    psi = singlet() if state is None else state
    cdf = _quantum_cdf(s, psi)
    counts = _run(lambda lo, hi: _decode(trial_uniforms(seed, lo, hi), lo, cdf),
                  n_trials, shard_size, workers)
    return estimate(counts, "quantum", seed)


def simulate_lhv(d: ConvexDecomposition, n_trials: int, seed: int,
                 shard_size: int | None = 1_000_000, workers: int | None = None) -> EstimationReport:
    if not isinstance(d, ConvexDecomposition):
        d = ConvexDecomposition(d)
    counts = _run(lambda lo, hi: lhv_trials(d, seed, lo, hi), n_trials, shard_size, workers)
    return estimate(counts, "lhv", seed)
