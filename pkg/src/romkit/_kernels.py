"""Hot inner loops, each with a numba body and a pure-numpy twin.

The public dispatchers at the bottom pick the numba version unless
``ROMKIT_DISABLE_NUMBA`` is set.  The numpy twins are kept importable
(``*_np``) so tests and ``benchmarks/bench_kernels.py`` can compare them.
"""
import numpy as np

from ._accel import njit, use_numba


# ---------------------------------------------------------------- FWHT

@njit(cache=True)
def _fwht_rows_nb(a):
    # unnormalized butterflies along axis 1, in place
    rows, n = a.shape
    for r in range(rows):
        h = 1
        while h < n:
            for i in range(0, n, 2 * h):
                for j in range(i, i + h):
                    u = a[r, j]
                    v = a[r, j + h]
                    a[r, j] = u + v
                    a[r, j + h] = u - v
            h *= 2
    return a


def _fwht_rows_np(a):
    rows, n = a.shape
    h = 1
    while h < n:
        view = a.reshape(rows, n // (2 * h), 2, h)
        u = view[:, :, 0, :].copy()
        view[:, :, 0, :] += view[:, :, 1, :]
        view[:, :, 1, :] *= -1
        view[:, :, 1, :] += u
        h *= 2
    return a


# ------------------------------------------- final-block row evaluation

@njit(cache=True)
def _parity(x):
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


@njit(cache=True)
def _half_partials_nb(v, row):
    # (first-half, second-half) partial sums of sum_j (-1)^{<row, j>} v_j
    n = v.shape[0]
    half = n // 2
    a = v[0] * 0
    b = v[0] * 0
    if half == 0:
        return v[0], b
    for j in range(half):
        if _parity(row & j):
            a -= v[j]
        else:
            a += v[j]
    for j in range(half, n):
        if _parity(row & j):
            b -= v[j]
        else:
            b += v[j]
    return a, b


@njit(cache=True)
def _hadamard_rows_nb(v, rows, paired):
    m = rows.shape[0]
    n = v.shape[0]
    half = n // 2
    out = np.empty(m, dtype=v.dtype)
    done = np.zeros(m, dtype=np.bool_)
    slot = -np.ones(n, dtype=np.int64)
    for p in range(m):
        slot[rows[p]] = p
    for p in range(m):
        if done[p]:
            continue
        r = rows[p]
        q = -1
        if paired and half > 0:
            q = slot[r - half] if r >= half else slot[r + half]
        if q >= 0:
            # rows i and i + n/2 share both half partials of row i
            low = r - half if r >= half else r
            a, b = _half_partials_nb(v, low)
            lo, hi = (q, p) if r >= half else (p, q)
            out[lo] = a + b
            out[hi] = a - b
            done[q] = True
        else:
            a, b = _half_partials_nb(v, r)
            out[p] = a + b
        done[p] = True
    return out


def _row_signs(row, cols):
    bits = np.bitwise_count(np.uint64(row) & cols.astype(np.uint64)) & 1
    return np.where(bits == 1, -1.0, 1.0)


def _half_partials_np(v, row):
    n = v.shape[0]
    half = n // 2
    cols = np.arange(n)
    if half == 0:
        return v[0] * _row_signs(row, cols[:1])[0], v[0] * 0
    return (np.dot(_row_signs(row, cols[:half]), v[:half]),
            np.dot(_row_signs(row, cols[half:]), v[half:]))


def _hadamard_rows_np(v, rows, paired):
    half = v.shape[0] // 2
    out = np.empty(len(rows), dtype=v.dtype)
    slot = {int(r): p for p, r in enumerate(rows)}
    done = set()
    for p, r in enumerate(rows):
        if p in done:
            continue
        r = int(r)
        q = -1
        if paired and half:
            q = slot.get(r - half if r >= half else r + half, -1)
        if q >= 0:
            a, b = _half_partials_np(v, r - half if r >= half else r)
            lo, hi = (q, p) if r >= half else (p, q)
            out[lo] = a + b
            out[hi] = a - b
            done.add(q)
        else:
            a, b = _half_partials_np(v, r)
            out[p] = a + b
        done.add(p)
    return out


# ----------------------------------------------------- brute-force MSE

@njit(cache=True)
def _brute_force_nb(S, vals, counts, x, y, selections, scale, truth):
    k = vals.shape[0]
    n = x.shape[0]
    digits = np.zeros(k * n, dtype=np.int64)
    total = 0.0
    terms = 0
    vx = np.empty(n, dtype=np.complex128)
    vy = np.empty(n, dtype=np.complex128)
    tx = np.empty(n, dtype=np.complex128)
    ty = np.empty(n, dtype=np.complex128)
    while True:
        for i in range(n):
            vx[i] = x[i]
            vy[i] = y[i]
        for b in range(k):
            for i in range(n):
                d = vals[b, digits[b * n + i]]
                tx[i] = d * vx[i]
                ty[i] = d * vy[i]
            for r in range(n):
                sx = 0j
                sy = 0j
                for c in range(n):
                    sx += S[r, c] * tx[c]
                    sy += S[r, c] * ty[c]
                vx[r] = sx
                vy[r] = sy
        for p in range(selections.shape[0]):
            est = 0.0
            for q in range(selections.shape[1]):
                j = selections[p, q]
                est += (vx[j].conjugate() * vy[j]).real
            err = scale * est - truth
            total += err * err
            terms += 1
        # odometer increment over all k*n diagonal digits
        pos = 0
        while pos < k * n:
            digits[pos] += 1
            if digits[pos] < counts[pos // n]:
                break
            digits[pos] = 0
            pos += 1
        if pos == k * n:
            break
    return total / terms


def _assignments(vals, counts, n):
    k = vals.shape[0]
    grids = np.meshgrid(*[np.arange(counts[b]) for b in range(k) for _ in range(n)], indexing="ij")
    idx = np.stack([g.ravel(order="F") for g in grids], axis=1) if grids else np.zeros((1, 0), dtype=int)
    return np.stack([vals[b][idx[:, b * n:(b + 1) * n]] for b in range(k)], axis=1)


def _brute_force_np(S, vals, counts, x, y, selections, scale, truth):
    n = x.shape[0]
    diags = _assignments(vals, counts, n)  # (A, k, n)
    vx = np.broadcast_to(x.astype(np.complex128), (diags.shape[0], n))
    vy = np.broadcast_to(y.astype(np.complex128), (diags.shape[0], n))
    for b in range(diags.shape[1]):
        vx = (diags[:, b, :] * vx) @ S.T
        vy = (diags[:, b, :] * vy) @ S.T
    pair = (np.conj(vx) * vy).real  # (A, n)
    est = scale * pair[:, selections].sum(axis=2)  # (A, P)
    return float(np.mean((est - truth) ** 2))


# ---------------------------------------------------------- dispatchers

def fwht_rows(a):
    if use_numba():
        return _fwht_rows_nb(a)
    return _fwht_rows_np(a)


def hadamard_rows(v, rows, paired=True):
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    if use_numba():
        return _hadamard_rows_nb(v, rows, paired)
    return _hadamard_rows_np(v, rows, paired)


def brute_force(S, vals, counts, x, y, selections, scale, truth):
    args = (
        np.ascontiguousarray(S, dtype=np.complex128),
        np.ascontiguousarray(vals, dtype=np.complex128),
        np.ascontiguousarray(counts, dtype=np.int64),
        np.ascontiguousarray(x, dtype=np.complex128),
        np.ascontiguousarray(y, dtype=np.complex128),
        np.ascontiguousarray(selections, dtype=np.int64),
        float(scale),
        float(truth),
    )
    if use_numba():
        return _brute_force_nb(*args)
    return _brute_force_np(*args)
