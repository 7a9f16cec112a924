"""Random-feature estimators of dot products and of the angular kernel.

Each estimator has a scalar entry point (``estimate_dot``,
``estimate_angular``) that draws one random matrix, and a batched
counterpart (``dot_realizations``, ``angular_realizations``) that draws
``trials`` independent matrices in one vectorized sweep.  The batched form is
what the Monte Carlo oracle and the CLI sweeps use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .transforms import (
    DimensionError,
    SdProductSpec,
    StructuredOrthogonal,
    SubsamplingPolicy,
    sample_gaussian,
    sample_gort,
)


# ------------------------------------------------------------- specs

@dataclass(frozen=True)
class DotEstimatorSpec:
    """``kind`` is 'base', 'ort' or 'sd'; ``sd`` carries the SD-product family."""

    kind: str
    m: int
    sd: SdProductSpec | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.kind == "sd":
            if self.sd is None or self.sd.m != self.m:
                raise ValueError("sd estimator needs an SdProductSpec with matching m")
        elif self.kind not in ("base", "ort"):
            raise ValueError(f"unknown dot estimator kind {self.kind!r}")

    @classmethod
    def base(cls, m):
        return cls("base", m)

    @classmethod
    def ort(cls, m):
        return cls("ort", m)

    @classmethod
    def from_sd(cls, sd):
        return cls("sd", sd.m, sd)

    @classmethod
    def sd_rademacher(cls, s, k, m, policy=SubsamplingPolicy.WITHOUT_REPLACEMENT):
        return cls.from_sd(SdProductSpec.rademacher(s, k, m, policy))

    @classmethod
    def sd_hybrid(cls, s, k, m, policy=SubsamplingPolicy.WITHOUT_REPLACEMENT, **kw):
        return cls.from_sd(SdProductSpec.hybrid(s, k, m, policy, **kw))

    @classmethod
    def sd_uniform(cls, s, k, m, policy=SubsamplingPolicy.WITHOUT_REPLACEMENT):
        return cls.from_sd(SdProductSpec.uniform(s, k, m, policy))

    @property
    def name(self):
        if self.kind != "sd":
            return self.kind
        return "sd_" + self.sd.family()

    @property
    def exact(self):
        # all n rows of a unitary product: the pairing is the identity
        return self.kind == "sd" and self.m == self.sd.n and self.sd.policy.distinct


@dataclass(frozen=True)
class AngularEstimatorSpec:
    """Sign-feature estimator; SD variants concatenate independent blocks when m > n."""

    kind: str
    m: int
    sd: SdProductSpec | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.kind == "sd":
            if self.sd is None:
                raise ValueError("sd estimator needs an SdProductSpec")
            if self.sd.is_complex:
                raise ValueError("sign features need real SD blocks")
        elif self.kind not in ("base", "ort"):
            raise ValueError(f"unknown angular estimator kind {self.kind!r}")

    @classmethod
    def base(cls, m):
        return cls("base", m)

    @classmethod
    def ort(cls, m):
        return cls("ort", m)

    @classmethod
    def sd_rademacher(cls, s, k, m, policy=SubsamplingPolicy.WITHOUT_REPLACEMENT):
        block_m = min(m, s.n)
        return cls("sd", m, SdProductSpec.rademacher(s, k, block_m, policy))

    @property
    def name(self):
        return self.kind if self.kind != "sd" else "sd_" + self.sd.family()

    def block_sizes(self):
        if self.kind != "sd":
            return [self.m]
        n = self.sd.n
        full, rest = divmod(self.m, n)
        return [n] * full + ([rest] if rest else [])


# ---------------------------------------------------------- features

def _check_pair(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape:
        raise DimensionError(f"x and y must be vectors of equal length, got {x.shape} and {y.shape}")
    return x, y


def _sd_features(sd, X, rng, trials=None):
    """Features of every row of ``X`` under one draw (or ``trials`` draws)."""
    if trials is None:
        return sd.draw(rng).embed(X).values
    draw = sd.draw(rng, size=trials)
    # X is (P, n); batch draws need (trials, P, n)
    Xb = np.broadcast_to(X, (trials, *X.shape))
    diagonals = tuple(d[:, None, :] for d in draw.diagonals)
    full = Xb
    for d in diagonals:
        full = sd.s.matvec(d * full)
    rows = np.broadcast_to(draw.rows[:, None, :], (trials, X.shape[0], sd.m))
    return math.sqrt(sd.n) * np.take_along_axis(full, rows, axis=-1)


def dot_features(spec, X, rng, trials=None):
    """Features ``(P, m)`` of the rows of ``X`` under one draw, or ``(trials, P, m)``."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    n = X.shape[-1]
    size = () if trials is None else (trials,)
    if spec.kind == "sd":
        if spec.sd.n != n:
            raise DimensionError(f"spec expects n={spec.sd.n}, got {n}")
        return _sd_features(spec.sd, X, rng, trials)
    if spec.kind == "base":
        M = sample_gaussian(spec.m, n, rng, size)
    else:
        M = sample_gort(spec.m, n, rng, size)
    return np.einsum("...mn,pn->...pm", M, X)


def _pair(fx, fy):
    if np.iscomplexobj(fx):
        return (np.conj(fx) * fy).real.sum(axis=-1)
    return (fx * fy).sum(axis=-1)


def dot_realizations(spec, x, y, rng, trials):
    """``trials`` independent realizations of the dot-product estimator."""
    x, y = _check_pair(x, y)
    if spec.exact:
        return np.full(trials, float(x @ y))
    F = dot_features(spec, np.stack([x, y]), rng, trials)
    return _pair(F[:, 0, :], F[:, 1, :]) / spec.m


def estimate_dot(spec, x, y, rng):
    """One realization ``(1/m) Re<F(x), F(y)>``; x and y share the random matrix."""
    x, y = _check_pair(x, y)
    if spec.exact:
        return float(x @ y)
    if spec.kind == "sd":
        draw = spec.sd.draw(rng)
        fx, fy = draw.embed(x), draw.embed(y)
        return float(fx.pairing(fy)) / spec.m
    F = dot_features(spec, np.stack([x, y]), rng)
    return float(_pair(F[0], F[1])) / spec.m


# ------------------------------------------------------------ angular

def sign(v):
    """+1 where strictly positive, -1 otherwise (zero maps to -1)."""
    return np.where(np.asarray(v) > 0, 1.0, -1.0)


def angular_projections(spec, X, rng, trials=None):
    """Pre-sign projections ``(..., P, m)`` of the rows of ``X``."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    n = X.shape[-1]
    size = () if trials is None else (trials,)
    if spec.kind == "base":
        return np.einsum("...mn,pn->...pm", sample_gaussian(spec.m, n, rng, size), X)
    if spec.kind == "ort":
        return np.einsum("...mn,pn->...pm", sample_gort(spec.m, n, rng, size), X)
    if spec.sd.n != n:
        raise DimensionError(f"spec expects n={spec.sd.n}, got {n}")
    parts = []
    for mb in spec.block_sizes():
        sd = SdProductSpec(spec.sd.s, spec.sd.laws, mb, spec.sd.policy)
        parts.append(_sd_features(sd, X, rng, trials))
    return np.concatenate(parts, axis=-1)


def _check_nonzero(*vs):
    for v in vs:
        if not np.any(v):
            raise ValueError("angular kernel is undefined for a zero vector")


def angular_realizations(spec, x, y, rng, trials):
    x, y = _check_pair(x, y)
    _check_nonzero(x, y)
    P = sign(angular_projections(spec, np.stack([x, y]), rng, trials))
    return (P[:, 0, :] * P[:, 1, :]).sum(axis=-1) / spec.m


def estimate_angular(spec, x, y, rng):
    """One realization of ``(1/m) sign(Mx) . sign(My)``."""
    x, y = _check_pair(x, y)
    _check_nonzero(x, y)
    P = sign(angular_projections(spec, np.stack([x, y]), rng))
    return float((P[0] * P[1]).sum()) / spec.m


def angular_events(spec, x, y, rng, trials):
    """Indicator array ``(trials, m)`` of the events sign(r.x) != sign(r.y)."""
    x, y = _check_pair(x, y)
    _check_nonzero(x, y)
    P = sign(angular_projections(spec, np.stack([x, y]), rng, trials))
    return P[:, 0, :] != P[:, 1, :]


# --------------------------------------------------------- kernels

def angle(x, y):
    """Angle between x and y, accurate near 0 and pi.

    Uses ``2 atan2(|u - v|, |u + v|)`` on the normalized vectors rather than
    ``acos`` of the cosine.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0 or ny == 0:
        raise ValueError("angle is undefined for a zero vector")
    u, v = x / nx, y / ny
    return 2.0 * math.atan2(np.linalg.norm(u - v), np.linalg.norm(u + v))


def angular_kernel(x, y):
    return 1.0 - 2.0 * angle(x, y) / math.pi


def gram_matrix(points, kernel="dot"):
    """Exact Gram matrix of the dot product or the angular kernel."""
    X = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if kernel == "dot":
        return X @ X.T
    if kernel != "angular":
        raise ValueError(f"unknown kernel {kernel!r}")
    norms = np.linalg.norm(X, axis=1)
    if np.any(norms == 0):
        raise ValueError("angular kernel is undefined for a zero vector")
    U = X / norms[:, None]
    p = len(U)
    diff = np.linalg.norm(U[:, None, :] - U[None, :, :], axis=-1)
    summ = np.linalg.norm(U[:, None, :] + U[None, :, :], axis=-1)
    theta = 2.0 * np.arctan2(diff, summ)
    K = 1.0 - 2.0 * theta / math.pi
    K[np.arange(p), np.arange(p)] = 1.0
    return K


def approx_gram(spec, points, rng, kernel="dot"):
    """Random-feature Gram matrix using a single matrix draw for all points."""
    X = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if kernel == "dot":
        if spec.exact:
            return X @ X.T
        F = dot_features(spec, X, rng)
        if np.iscomplexobj(F):
            return (np.conj(F) @ F.T).real / spec.m
        return F @ F.T / spec.m
    if kernel != "angular":
        raise ValueError(f"unknown kernel {kernel!r}")
    _check_nonzero(*X)
    Sg = sign(angular_projections(spec, X, rng))
    return Sg @ Sg.T / spec.m


def gram_error(exact, approx):
    """Normalized Frobenius error ``|K - K_hat|_F / |K|_F``."""
    exact = np.asarray(exact, dtype=np.float64)
    approx = np.asarray(approx, dtype=np.float64)
    if exact.shape != approx.shape:
        raise DimensionError(f"shape mismatch {exact.shape} vs {approx.shape}")
    denom = np.linalg.norm(exact)
    if denom == 0:
        raise ValueError("exact Gram matrix is zero")
    return float(np.linalg.norm(exact - approx) / denom)


def make_structure(name, n):
    """'hadamard' / 'walsh' structured matrix of size n (CLI helper)."""
    if name == "hadamard":
        return StructuredOrthogonal.hadamard(n)
    if name == "walsh":
        return StructuredOrthogonal.walsh(n)
    raise ValueError(f"unknown structure {name!r}")
