"""Ground-truth engines that the closed forms and fast paths are checked against.

* ``dense_reference``: explicit matrices built from the definitions
  (recursive Hadamard blocks, Walsh bit formula, ``np.kron``), never from the
  fast matvecs.
* ``brute_force_mse_dot``: exact expectation by enumerating every diagonal
  sign pattern and every row selection.
* ``monte_carlo_mse`` / ``estimate_angular_probs``: sampling estimates with
  standard errors, on keyed chunk streams so results do not depend on the
  number of worker threads.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .estimators import (
    AngularEstimatorSpec,
    DotEstimatorSpec,
    angle,
    angular_events,
    angular_kernel,
    angular_realizations,
    dot_realizations,
)
from .rng import chunk_sizes, stream
from .transforms import (
    FixedDiagonal,
    SdProductSpec,
    StructuredOrthogonal,
    SubsamplingPolicy,
    walsh_entry,
)

DENSE_CAP = 64
BRUTE_FORCE_CAP = 10 ** 8
_BATCH_KEY = 0xBA7C


# ------------------------------------------------------ dense matrices

def _hadamard_dense(n):
    # unnormalized +-1 recursion, scaled once so n = 4, 16, ... stay exact
    h = np.ones((1, 1))
    while h.shape[0] < n:
        h = np.block([[h, h], [h, -h]])
    return h / math.sqrt(n)


def dense_reference(obj, diagonals=None):
    """Dense matrix for a StructuredOrthogonal, or for an SD product.

    For an ``SdProductSpec`` pass the diagonals of a draw; when omitted, every
    law must be a ``FixedDiagonal``.
    """
    if isinstance(obj, StructuredOrthogonal):
        n = obj.n
        if n > DENSE_CAP:
            raise ValueError(f"dense reference capped at n={DENSE_CAP}")
        if obj.variant == "hadamard":
            return _hadamard_dense(n)
        if obj.variant == "walsh":
            return np.array([[walsh_entry(i, j, n) for j in range(n)] for i in range(n)])
        out = np.ones((1, 1))
        for b in obj.blocks:
            out = np.kron(out, b)
        return out
    if isinstance(obj, SdProductSpec):
        S = dense_reference(obj.s)
        if diagonals is None:
            if not all(isinstance(law, FixedDiagonal) for law in obj.laws):
                raise ValueError("random laws need explicit diagonals")
            diagonals = [np.array(law.entries) for law in obj.laws]
        M = np.eye(obj.n)
        for d in diagonals:
            M = S @ np.diag(d) @ M
        return M
    raise TypeError(f"no dense reference for {type(obj).__name__}")


# ---------------------------------------------------------- brute force

def _selections(policy, n, m):
    if policy is SubsamplingPolicy.WITHOUT_REPLACEMENT:
        return np.array(list(itertools.combinations(range(n), m)), dtype=np.int64)
    if policy is SubsamplingPolicy.WITH_REPLACEMENT:
        return np.array(list(itertools.product(range(n), repeat=m)), dtype=np.int64)
    return np.arange(m, dtype=np.int64)[None, :]


def brute_force_terms(spec):
    sd = spec.sd
    count = len(_selections(sd.policy, sd.n, sd.m)) if sd.n <= 16 else math.inf
    for law in sd.laws:
        sup = law.support()
        if sup is None:
            raise ValueError(f"cannot enumerate continuous law {law}")
        count *= len(sup) ** sd.n
    return count


def brute_force_mse_dot(spec, x, y, cap=BRUTE_FORCE_CAP):
    """Exact ``E[(K_hat - x.y)^2]`` for an SD estimator with finite diagonal laws."""
    if not isinstance(spec, DotEstimatorSpec) or spec.kind != "sd":
        raise ValueError("brute force needs an SD dot-product estimator")
    sd = spec.sd
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    terms = brute_force_terms(spec)
    if terms > cap:
        raise ValueError(f"state space of {terms} terms exceeds cap {cap}")
    sel = _selections(sd.policy, sd.n, sd.m)
    supports = [law.support() for law in sd.laws]
    width = max(len(s) for s in supports)
    vals = np.zeros((sd.k, width), dtype=np.complex128)
    counts = np.zeros(sd.k, dtype=np.int64)
    for b, s in enumerate(supports):
        vals[b, :len(s)] = s
        counts[b] = len(s)
    S = dense_reference(sd.s)
    return _kernels.brute_force(S, vals, counts, x, y, sel, sd.n / sd.m, float(x @ y))


# ---------------------------------------------------------- Monte Carlo

@dataclass(frozen=True)
class EstimateStats:
    mean: float
    mse: float
    se_mean: float
    se_mse: float
    trials: int


def _moments(values):
    # (count, mean, M2) with a two-pass centered sum
    mu = float(np.mean(values))
    return len(values), mu, float(np.sum((values - mu) ** 2))


def _combine(parts):
    n, mu, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in parts:
        if nb == 0:
            continue
        delta = mb - mu
        tot = n + nb
        mu += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    return n, mu, m2


def _run_chunks(fn, trials, seed, keys, threads):
    sizes = chunk_sizes(trials)
    jobs = [(i, size) for i, size in enumerate(sizes)]
    work = lambda job: fn(stream(seed, *keys, job[0]), job[1])
    if threads and threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, jobs))
    return [work(job) for job in jobs]


def truth_of(spec, x, y):
    if isinstance(spec, AngularEstimatorSpec):
        return angular_kernel(x, y)
    return float(np.dot(x, y))


def monte_carlo_mse(spec, x, y, trials, seed, keys=(), threads=1):
    """Sample mean and MSE of an estimator with standard errors.

    Works for both dot-product and angular specs.  Trials are split into
    fixed chunks, each on the stream keyed by ``(seed, *keys, chunk)``.
    """
    if trials < 2:
        raise ValueError("need at least 2 trials")
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    truth = truth_of(spec, x, y)
    realize = angular_realizations if isinstance(spec, AngularEstimatorSpec) else dot_realizations

    def chunk(rng, size):
        est = realize(spec, x, y, rng, size)
        return _moments(est), _moments((est - truth) ** 2)

    parts = _run_chunks(chunk, trials, seed, keys, threads)
    n, mu, m2 = _combine([p[0] for p in parts])
    _, mse, m2e = _combine([p[1] for p in parts])
    return EstimateStats(
        mean=mu,
        mse=mse,
        se_mean=math.sqrt(m2 / (n - 1) / n),
        se_mse=math.sqrt(m2e / (n - 1) / n),
        trials=n,
    )


@dataclass(frozen=True)
class AngularProbEstimate:
    probs: np.ndarray
    deltas: np.ndarray
    probs_se: np.ndarray
    deltas_se: np.ndarray
    trials: int


def estimate_angular_probs(spec, x, y, trials, seed, keys=(), threads=1):
    """Per-row P[A^i] and pairwise ``delta_ij = P[A^i A^j] - P[A^i] P[A^j]``.

    ``A^i`` is the event that row i puts x and y on different sides.  The
    delta standard errors use the influence function
    ``A_i A_j - p_j A_i - p_i A_j``.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if not np.any(x) or not np.any(y):
        raise ValueError("angular kernel is undefined for a zero vector")

    def chunk(rng, size):
        A = angular_events(spec, x, y, rng, size).astype(np.float64)
        return A.sum(axis=0), A.T @ A, size

    parts = _run_chunks(chunk, trials, seed, keys, threads)
    T = sum(p[2] for p in parts)
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    p = s1 / T
    joint = s2 / T
    deltas = joint - np.outer(p, p)
    np.fill_diagonal(deltas, 0.0)
    probs_se = np.sqrt(p * (1 - p) / T)
    # Var of A_i A_j - p_j A_i - p_i A_j from the first and second moments
    # (third moments reduce to joint/probs because the events are 0/1).
    pi, pj = p[:, None], p[None, :]
    var = (joint - joint ** 2
           + pj ** 2 * pi * (1 - pi) + pi ** 2 * pj * (1 - pj)
           - 2 * pj * (joint - joint * pi) - 2 * pi * (joint - joint * pj)
           + 2 * pi * pj * (joint - pi * pj))
    deltas_se = np.sqrt(np.clip(var, 0.0, None) / T)
    np.fill_diagonal(deltas_se, 0.0)
    return AngularProbEstimate(p, deltas, probs_se, deltas_se, T)


def plugin_angular_mse(spec, x, y, trials, seed, keys=(), batches=20, pairwise_bias=False, threads=1):
    """General angular MSE formula on estimated (probs, deltas), with a batch-means SE.

    The value uses all ``trials``; the standard error comes from the spread of
    the plug-in over ``batches`` disjoint sub-runs.
    """
    from .theory import mse_angular_general

    theta = angle(x, y)
    full = estimate_angular_probs(spec, x, y, trials, seed, keys, threads)
    value = mse_angular_general(full.probs, full.deltas, theta, spec.m, pairwise_bias)
    per = max(trials // batches, 2)
    reps = []
    for b in range(batches):
        part = estimate_angular_probs(spec, x, y, per, seed, (*keys, _BATCH_KEY, b), threads)
        reps.append(mse_angular_general(part.probs, part.deltas, theta, spec.m, pairwise_bias))
    se = float(np.std(reps, ddof=1) / math.sqrt(batches) * math.sqrt(per * batches / trials))
    return value, se
