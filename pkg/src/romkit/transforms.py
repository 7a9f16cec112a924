"""Structured orthogonal matrices and random SD-product embeddings.

All apply functions work on the last axis and broadcast over any leading
batch axes, so one call can push a whole Monte Carlo batch (or a whole
dataset) through a transform.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels


class DimensionError(ValueError):
    pass


def batch_shape(size):
    if size is None:
        return ()
    if isinstance(size, (int, np.integer)):
        return (int(size),)
    return tuple(int(s) for s in size)


def is_pow2(n):
    return n >= 1 and (n & (n - 1)) == 0


def _log2(n):
    if not is_pow2(n):
        raise DimensionError(f"length {n} is not a power of 2")
    return n.bit_length() - 1


# ------------------------------------------------------------ Hadamard

def fwht(v):
    """Normalized Walsh-Hadamard transform ``H v`` along the last axis.

    Real or complex input; the result is a new array (the input is not
    touched).  Use :func:`fwht_` for the in-place variant.
    """
    v = np.asarray(v)
    dtype = np.complex128 if np.iscomplexobj(v) else np.float64
    return fwht_(np.array(v, dtype=dtype, copy=True))


def fwht_(a):
    """In-place normalized FWHT of a float64/complex128 array along its last axis."""
    n = a.shape[-1]
    _log2(n)
    flat = a.reshape(-1, n)
    _kernels.fwht_rows(flat)
    flat *= 1.0 / math.sqrt(n)
    return a


def bit_reverse(i, bits):
    out = 0
    for _ in range(bits):
        out = (out << 1) | (i & 1)
        i >>= 1
    return out


def _bit_reverse_perm(n):
    bits = _log2(n)
    return np.array([bit_reverse(i, bits) for i in range(n)], dtype=np.int64)


def walsh_entry(i, j, n):
    """Entry ``w_ij = n^{-1/2} (-1)^{i_{N-1} j_0 + ... + i_0 j_{N-1}}`` (0-based)."""
    bits = _log2(n)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"index ({i}, {j}) out of range for n={n}")
    e = sum(((i >> (bits - 1 - t)) & 1) * ((j >> t) & 1) for t in range(bits))
    return (-1.0) ** e / math.sqrt(n)


def walsh_matvec(v):
    """``W v``; row i of W is row bitrev(i) of H, so this is a permuted FWHT."""
    v = np.asarray(v)
    out = fwht(v)
    return out[..., _bit_reverse_perm(v.shape[-1])]


# ----------------------------------------------------------- Kronecker

def kron_matvec(blocks, v):
    """``(A_1 ⊗ ... ⊗ A_l) v`` without forming the Kronecker product."""
    v = np.asarray(v)
    dims = [np.shape(a)[0] for a in blocks]
    n = v.shape[-1]
    if math.prod(dims) != n:
        raise DimensionError(f"block sizes {dims} do not multiply to {n}")
    batch = v.shape[:-1]
    x = v.reshape(*batch, *dims)
    nb = len(batch)
    for i, a in enumerate(blocks):
        x = np.moveaxis(np.tensordot(np.asarray(a), x, axes=([1], [nb + i])), 0, nb + i)
    return x.reshape(*batch, n)


# ------------------------------------------------------- S matrix family

@dataclass(frozen=True, eq=False)
class StructuredOrthogonal:
    """One of the fixed orthogonal ``S`` matrices with entries of size ``1/sqrt(n)``."""

    variant: str
    n: int
    blocks: tuple = ()

    @classmethod
    def hadamard(cls, n):
        _log2(n)
        return cls("hadamard", n)

    @classmethod
    def walsh(cls, n):
        _log2(n)
        return cls("walsh", n)

    @classmethod
    def kronecker(cls, blocks, atol=1e-12):
        """Normalized Kronecker product of small equal-magnitude orthogonal-row blocks.

        Each block is rescaled so its rows have unit norm.  Blocks whose
        entries differ in magnitude or whose rows are not orthogonal are
        rejected.
        """
        normed = []
        for a in blocks:
            a = np.array(a, dtype=np.float64)
            if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
                raise DimensionError("Kronecker blocks must be square")
            mag = np.abs(a)
            if mag[0, 0] == 0 or not np.allclose(mag, mag[0, 0], rtol=0, atol=atol * mag[0, 0]):
                raise ValueError("Kronecker block entries must share one magnitude")
            a = a / (mag[0, 0] * math.sqrt(a.shape[0]))
            if not np.allclose(a @ a.T, np.eye(a.shape[0]), rtol=0, atol=atol * 10):
                raise ValueError("Kronecker block rows must be pairwise orthogonal")
            normed.append(a)
        if not normed:
            raise ValueError("need at least one Kronecker block")
        return cls("kronecker", math.prod(b.shape[0] for b in normed), tuple(normed))

    @property
    def is_hadamard(self):
        return self.variant == "hadamard"

    def matvec(self, v):
        v = np.asarray(v)
        if v.shape[-1] != self.n:
            raise DimensionError(f"expected last axis {self.n}, got {v.shape[-1]}")
        if self.variant == "hadamard":
            return fwht(v)
        if self.variant == "walsh":
            return walsh_matvec(v)
        return kron_matvec(self.blocks, v)

    def dense(self):
        from .oracle import dense_reference
        return dense_reference(self)

    def __repr__(self):
        return f"StructuredOrthogonal({self.variant}, n={self.n})"


# ------------------------------------------------------ diagonal laws

_FOURTH_ROOTS = np.array([1, -1, 1j, -1j], dtype=np.complex128)


class DiagonalLaw(enum.Enum):
    RADEMACHER = "rademacher"
    FOURTH_ROOTS = "fourth_roots"
    UNIT_CIRCLE = "unit_circle"

    @property
    def is_complex(self):
        return self is not DiagonalLaw.RADEMACHER

    def support(self):
        """Finite support as an array, or None for the continuous circle law."""
        if self is DiagonalLaw.RADEMACHER:
            return np.array([1.0, -1.0])
        if self is DiagonalLaw.FOURTH_ROOTS:
            return _FOURTH_ROOTS.copy()
        return None

    def sample(self, n, rng, size=()):
        shape = (*size, n)
        if self is DiagonalLaw.RADEMACHER:
            return rng.integers(0, 2, size=shape).astype(np.float64) * 2.0 - 1.0
        if self is DiagonalLaw.FOURTH_ROOTS:
            return _FOURTH_ROOTS[rng.integers(0, 4, size=shape)]
        return np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, size=shape))


@dataclass(frozen=True)
class FixedDiagonal:
    """Deterministic diagonal; a test hook standing in for a random law."""

    entries: tuple

    @property
    def is_complex(self):
        return any(isinstance(e, complex) and e.imag != 0 for e in self.entries)

    def support(self):
        return None

    def sample(self, n, rng, size=()):
        if len(self.entries) != n:
            raise DimensionError(f"fixed diagonal has {len(self.entries)} entries, need {n}")
        dtype = np.complex128 if self.is_complex else np.float64
        return np.broadcast_to(np.array(self.entries, dtype=dtype), (*size, n)).copy()


def sample_diagonal(law, n, rng, size=()):
    """``n`` iid unit-magnitude diagonal entries (with optional leading batch shape)."""
    return law.sample(n, rng, size=batch_shape(size))


# -------------------------------------------------------- subsampling

class SubsamplingPolicy(enum.Enum):
    WITHOUT_REPLACEMENT = "without"
    WITH_REPLACEMENT = "with"
    FIRST_M = "first"

    @property
    def distinct(self):
        return self is not SubsamplingPolicy.WITH_REPLACEMENT


def subsample_rows(policy, n, m, rng, size=()):
    """Row indices of length ``m`` (batched over ``size``).

    Without replacement uses a partial Fisher-Yates shuffle: ``m`` swap
    rounds over an index array, vectorized across the batch.
    """
    size = batch_shape(size)
    if m < 1:
        raise ValueError("m must be at least 1")
    if policy.distinct and m > n:
        raise ValueError(f"cannot pick {m} distinct rows out of {n}")
    if policy is SubsamplingPolicy.FIRST_M:
        return np.broadcast_to(np.arange(m), (*size, m)).copy()
    if policy is SubsamplingPolicy.WITH_REPLACEMENT:
        return rng.integers(0, n, size=(*size, m))
    count = math.prod(size)
    idx = np.tile(np.arange(n), (count, 1))
    rows = np.arange(count)
    for t in range(m):
        j = rng.integers(t, n, size=count)
        tmp = idx[rows, t].copy()
        idx[rows, t] = idx[rows, j]
        idx[rows, j] = tmp
    return idx[:, :m].reshape(*size, m)


def expected_pair_count(n, m):
    """Expected number of sampled row pairs ``(i, n/2 + i)``: ``m(m-1) / (2(n-1))``."""
    if n % 2 or m > n or m < 0:
        raise ValueError("need even n and 0 <= m <= n")
    if n == 1:
        return Fraction(0)
    return Fraction(m * (m - 1), 2 * (n - 1))


def pair_count(rows, n):
    """Number of complementary pairs ``(i, n/2 + i)`` present in ``rows`` (last axis)."""
    rows = np.asarray(rows)
    half = n // 2
    mask = np.zeros((*rows.shape[:-1], n), dtype=bool)
    np.put_along_axis(mask, rows, True, axis=-1)
    return (mask[..., :half] & mask[..., half:]).sum(axis=-1)


def measure_pair_count(n, m, rng, size=()):
    return pair_count(subsample_rows(SubsamplingPolicy.WITHOUT_REPLACEMENT, n, m, rng, size), n)


# ----------------------------------------------------------- SD product

@dataclass(frozen=True)
class SdProductSpec:
    """A random ``(S D_k) ... (S D_1)`` family followed by row subsampling."""

    s: StructuredOrthogonal
    laws: tuple
    m: int
    policy: SubsamplingPolicy = SubsamplingPolicy.WITHOUT_REPLACEMENT

    def __post_init__(self):
        object.__setattr__(self, "laws", tuple(self.laws))
        if not self.laws:
            raise ValueError("need at least one SD block")
        if self.m < 1 or self.m > self.s.n:
            raise ValueError(f"m={self.m} outside [1, {self.s.n}]")

    @property
    def n(self):
        return self.s.n

    @property
    def k(self):
        return len(self.laws)

    @property
    def is_complex(self):
        return any(law.is_complex for law in self.laws)

    @classmethod
    def rademacher(cls, s, k, m, policy=SubsamplingPolicy.WITHOUT_REPLACEMENT):
        return cls(s, (DiagonalLaw.RADEMACHER,) * k, m, policy)

    @classmethod
    def hybrid(cls, s, k, m, policy=SubsamplingPolicy.WITHOUT_REPLACEMENT, final=DiagonalLaw.UNIT_CIRCLE):
        if not final.is_complex:
            raise ValueError("the final hybrid law must be complex")
        return cls(s, (DiagonalLaw.RADEMACHER,) * (k - 1) + (final,), m, policy)

    @classmethod
    def uniform(cls, s, k, m, policy=SubsamplingPolicy.WITHOUT_REPLACEMENT):
        return cls(s, (DiagonalLaw.UNIT_CIRCLE,) * k, m, policy)

    def family(self):
        """'rademacher', 'hybrid', 'uniform' or 'custom', read off the laws."""
        R, U = DiagonalLaw.RADEMACHER, DiagonalLaw.UNIT_CIRCLE
        if all(law is R for law in self.laws):
            return "rademacher"
        if all(law is R for law in self.laws[:-1]) and self.laws[-1] in (U, DiagonalLaw.FOURTH_ROOTS):
            if self.k > 1 or self.laws[-1] is DiagonalLaw.FOURTH_ROOTS:
                return "hybrid"
        if all(law is U for law in self.laws):
            return "uniform"
        return "custom"

    def draw(self, rng, size=()):
        """Draw diagonals then rows, in that order, from ``rng``."""
        size = batch_shape(size)
        diagonals = tuple(law.sample(self.n, rng, size) for law in self.laws)
        rows = subsample_rows(self.policy, self.n, self.m, rng, size)
        return SdDraw(self, diagonals, rows)


def apply_blocks(s, diagonals, x):
    """``(S D_k) ... (S D_1) x`` for explicit diagonals (broadcasting)."""
    v = np.asarray(x)
    for d in diagonals:
        v = s.matvec(d * v)
    return v


def sd_product_apply(spec, x, rng):
    """Full (unsubsampled) SD-product image of ``x`` under a fresh draw."""
    x = np.asarray(x)
    if x.shape[-1] != spec.n:
        raise DimensionError(f"expected length {spec.n}, got {x.shape[-1]}")
    return apply_blocks(spec.s, spec.draw(rng).diagonals, x)


@dataclass(frozen=True)
class FeatureMap:
    """Random features of one vector (or a batch of vectors along leading axes)."""

    values: np.ndarray

    @property
    def kind(self):
        return "complex" if np.iscomplexobj(self.values) else "real"

    @property
    def m(self):
        return self.values.shape[-1]

    def pairing(self, other):
        """``Re(conj(self) . other)`` summed over features."""
        a, b = self.values, other.values
        if np.iscomplexobj(a) or np.iscomplexobj(b):
            return (np.conj(a) * b).real.sum(axis=-1)
        return (a * b).sum(axis=-1)


@dataclass(frozen=True)
class SdDraw:
    """One realized SD-product matrix (or a batch of them)."""

    spec: SdProductSpec
    diagonals: tuple
    rows: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def batched(self):
        return self.rows.ndim > 1

    def embed(self, x, method="auto"):
        """``sqrt(n)`` times the selected coordinates of the SD-product image.

        ``method`` is ``"transform"`` (all k blocks by fast matvec, then pick
        rows), ``"paired"`` (Hadamard only: k-1 full transforms, then only the
        sampled rows of the last block, sharing half-sums between rows ``i``
        and ``n/2 + i``), ``"rowwise"`` (same but every row from scratch), or
        ``"auto"``.
        """
        spec = self.spec
        x = np.asarray(x)
        if x.shape[-1] != spec.n:
            raise DimensionError(f"expected length {spec.n}, got {x.shape[-1]}")
        if method == "auto":
            single = not self.batched and x.ndim == 1
            method = "paired" if (single and spec.s.is_hadamard and spec.policy.distinct) else "transform"
        if method in ("paired", "rowwise"):
            if not spec.s.is_hadamard or self.batched or x.ndim != 1:
                raise ValueError("row-level evaluation needs a single Hadamard draw and a single vector")
            if not spec.policy.distinct:
                raise ValueError("row-level evaluation needs distinct rows")
            v = apply_blocks(spec.s, self.diagonals[:-1], x)
            v = self.diagonals[-1] * v
            dtype = np.complex128 if np.iscomplexobj(v) else np.float64
            v = np.ascontiguousarray(v, dtype=dtype)
            # sqrt(n) * (1/sqrt(n)) * (+-1 row) leaves a plain signed sum
            return FeatureMap(_kernels.hadamard_rows(v, self.rows, paired=(method == "paired")))
        if method != "transform":
            raise ValueError(f"unknown method {method!r}")
        full = apply_blocks(spec.s, self.diagonals, x)
        if self.batched:
            picked = np.take_along_axis(full, self.rows, axis=-1)
        else:
            picked = full[..., self.rows]
        return FeatureMap(math.sqrt(spec.n) * picked)


def embed(spec, x, rng, method="auto"):
    """Draw an SD-product matrix from ``spec`` and return the features of ``x``."""
    return spec.draw(rng).embed(x, method=method)


def final_block_cost(rows, n):
    """Multiply-adds for the last block under the paired-row scheme.

    ``n`` per unpaired row, ``n + 1`` per complementary pair.
    """
    r = int(pair_count(np.asarray(rows), n))
    return n * (len(rows) - 2 * r) + (n + 1) * r


# ---------------------------------------------------------- Gaussians

def sample_gort(m_rows, n, rng, size=()):
    """Stacked Gaussian-orthogonal matrix with ``m_rows`` rows.

    Each block of ``n`` rows is a Haar orthonormal basis (QR of a Gaussian
    matrix with the sign of diag(R) forced positive), each row rescaled by an
    independent chi_n variable.  Extra rows of the last block are dropped.
    """
    size = batch_shape(size)
    blocks = -(-m_rows // n)
    g = rng.standard_normal((*size, blocks, n, n))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    signs[signs == 0] = 1.0
    q = q * signs[..., None, :]
    # columns of q are the orthonormal basis; use them as rows
    basis = np.swapaxes(q, -1, -2)
    scales = np.sqrt(rng.chisquare(n, size=(*size, blocks, n)))
    out = (basis * scales[..., None]).reshape(*size, blocks * n, n)
    return out[..., :m_rows, :]


def sample_gaussian(m_rows, n, rng, size=()):
    size = batch_shape(size)
    return rng.standard_normal((*size, m_rows, n))


def pad_to_pow2(x):
    """Zero-pad the last axis to the next power of 2."""
    x = np.asarray(x)
    n = x.shape[-1]
    if n == 0:
        raise DimensionError("cannot pad an empty vector")
    if is_pow2(n):
        return x
    target = 1 << (n - 1).bit_length()
    pad = [(0, 0)] * (x.ndim - 1) + [(0, target - n)]
    return np.pad(x, pad)
