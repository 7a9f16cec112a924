"""Closed-form mean squared errors of the dot-product and angular estimators.

Everything here is deterministic arithmetic on (x, y, n, m, k).  The dot
product formulas share three summary statistics of the pair:

    dot       = x.y
    normprod  = |x|^2 |y|^2
    overlap   = sum_i x_i^2 y_i^2
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .estimators import angle


@dataclass(frozen=True)
class MseFormulaInputs:
    x: np.ndarray
    y: np.ndarray
    m: int
    k: int = 1
    n: int | None = None

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if x.shape != y.shape or x.ndim != 1:
            raise ValueError("x and y must be vectors of equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if self.n is None:
            object.__setattr__(self, "n", len(x))
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.k < 1:
            raise ValueError("k must be at least 1")

    @property
    def dot(self):
        return float(self.x @ self.y)

    @property
    def normprod(self):
        return float((self.x @ self.x) * (self.y @ self.y))

    @property
    def overlap(self):
        return float(np.sum(self.x ** 2 * self.y ** 2))

    @property
    def theta(self):
        return angle(self.x, self.y)

    def with_(self, **kw):
        fields = dict(x=self.x, y=self.y, m=self.m, k=self.k, n=self.n)
        fields.update(kw)
        return MseFormulaInputs(**fields)


def mse_base_dot(inp):
    """Unstructured Gaussian projection: ``(dot^2 + normprod) / m``."""
    return (inp.dot ** 2 + inp.normprod) / inp.m


def _ort_pair_moment(inp):
    # E[(g1.x)(g1.y)(g2.x)(g2.y)] for two rows of one orthogonal block
    n = inp.n
    c2 = inp.dot ** 2 / inp.normprod if inp.normprod else 0.0
    return inp.normprod * n * (n - 2) / 2.0 * (
        (c2 + 0.5) / ((n + 2) * (n - 1)) + (c2 - 0.5) / ((n - 1) * (n - 2))
    )


def mse_ort_dot(inp):
    """MSE with a Gaussian-orthogonal matrix (needs n >= 4).

    For m <= n this is the base MSE plus ``(m-1)/m * (pair moment - dot^2)``.
    When m > n, rows from different stacked blocks are independent, so only
    the same-block row pairs carry the correction.
    """
    n, m = inp.n, inp.m
    if n < 4:
        raise ValueError("the orthogonal-Gaussian formula needs n >= 4")
    correction = _ort_pair_moment(inp) - inp.dot ** 2
    if m <= n:
        return mse_base_dot(inp) + (m - 1) / m * correction
    full, rest = divmod(m, n)
    same_block_pairs = full * n * (n - 1) + rest * (rest - 1)
    return mse_base_dot(inp) + same_block_pairs / m ** 2 * correction


def _check_sub(inp):
    if inp.m > inp.n:
        raise ValueError(f"m={inp.m} exceeds n={inp.n}")


def sd_rademacher_bracket(inp):
    """The bracketed series of the S-Rademacher MSE (no sampling factor)."""
    n, k = inp.n, inp.k
    a = inp.dot ** 2 + inp.normprod
    b = 2 * inp.dot ** 2 + inp.normprod
    series = sum((-1) ** r * 2 ** r / n ** r for r in range(1, k))
    return a + series * b + (-1) ** k * 2 ** k / n ** (k - 1) * inp.overlap


def sd_uniform_bracket(inp):
    n, k = inp.n, inp.k
    a = inp.dot ** 2 + inp.normprod
    b = 3 * inp.dot ** 2 + inp.normprod
    series = sum((-1) ** r / n ** r for r in range(1, k))
    return a + series * b + (-1) ** k * 2 / n ** (k - 1) * inp.overlap


def _without_factor(inp):
    return (inp.n - inp.m) / (inp.n - 1) if inp.n > 1 else 0.0


def mse_sd_rademacher(inp):
    """S-Rademacher MSE with k blocks and m rows sampled without replacement."""
    _check_sub(inp)
    return _without_factor(inp) * sd_rademacher_bracket(inp) / inp.m


def mse_sd_hybrid(inp):
    """S-Hybrid MSE: exactly half the S-Rademacher value.

    The final complex law may be uniform on the circle or on the fourth roots
    of unity; the value is the same.
    """
    return mse_sd_rademacher(inp) / 2.0


def mse_sd_uniform(inp):
    """S-Uniform (all blocks uniform on the circle) MSE."""
    _check_sub(inp)
    return _without_factor(inp) * sd_uniform_bracket(inp) / (2.0 * inp.m)


_BRACKETS = {
    "rademacher": (sd_rademacher_bracket, 1.0),
    "hybrid": (sd_rademacher_bracket, 0.5),
    "uniform": (sd_uniform_bracket, 0.5),
}


def mse_with_replacement(inp, family="rademacher"):
    """MSE when rows are drawn with replacement: ``bracket / m`` (halved for complex families).

    Equals the without-replacement value times ``(n-1)/(n-m)`` for m < n and
    stays finite at m = n.
    """
    bracket, half = _BRACKETS[family]
    return half * bracket(inp) / inp.m


def mse_sd(inp, family="rademacher", policy="without"):
    """Dispatch on family and policy ('without' / 'with'); first-m has no closed form."""
    if policy == "with":
        return mse_with_replacement(inp, family)
    if policy != "without":
        raise ValueError(f"no closed form for policy {policy!r}")
    return {"rademacher": mse_sd_rademacher, "hybrid": mse_sd_hybrid, "uniform": mse_sd_uniform}[family](inp)


# ------------------------------------------------------------ angular

def _check_theta(theta):
    if not (0.0 <= theta <= math.pi):
        raise ValueError(f"theta={theta} outside [0, pi]")


def mse_angular_base(theta, m):
    """``4 theta (pi - theta) / (m pi^2)`` for iid Gaussian sign features."""
    _check_theta(theta)
    if m < 1:
        raise ValueError("m must be at least 1")
    return 4.0 * theta * (math.pi - theta) / (m * math.pi ** 2)


def mse_angular_general(probs, deltas, theta, m, pairwise_bias=False):
    """Angular-estimator MSE from per-row disagreement probabilities and pair covariances.

    ``probs[i]`` is P(row i separates x and y); ``deltas[i, j]`` is the
    covariance of those events for i != j (diagonal ignored).  By default the
    bias enters only through ``sum_i (p_i - theta/pi)^2``; with
    ``pairwise_bias=True`` the cross terms ``(p_i - t)(p_j - t)`` are added,
    which gives the exact MSE for any p.  Both agree whenever every row is
    unbiased.
    """
    _check_theta(theta)
    probs = np.asarray(probs, dtype=np.float64)
    deltas = np.asarray(deltas, dtype=np.float64)
    if probs.shape != (m,) or deltas.shape != (m, m):
        raise ValueError(f"expected probs ({m},) and deltas ({m}, {m}), got {probs.shape}, {deltas.shape}")
    t = theta / math.pi
    off = deltas.sum() - np.trace(deltas)
    variance = (m - np.sum((1.0 - 2.0 * probs) ** 2)) / m ** 2
    bias = np.sum((probs - t) ** 2)
    if pairwise_bias:
        bias = np.sum(probs - t) ** 2
    return float(variance + 4.0 / m ** 2 * (bias + off))
