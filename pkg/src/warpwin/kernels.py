"""Inner-loop kernels shared by the window and spectrum code.

Every kernel exists twice: a loop form compiled with numba and a vectorized
numpy form. The public names dispatch to one of them according to
:data:`warpwin._accel.USE_NUMBA`; both forms stay importable under the
``*_numba`` / ``*_numpy`` names so tests and the benchmark can pit them
against each other.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

# Relative size at which the I0 power series is truncated.
I0_SERIES_RTOL = 1e-17


# ---------------------------------------------------------------------------
# Modified Bessel function I0 by power series
# ---------------------------------------------------------------------------

def _bessel_i0_loop(x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        q = 0.25 * x[i] * x[i]
        term = 1.0
        total = 1.0
        k = 0
        while term > I0_SERIES_RTOL * total:
            k += 1
            term *= q / (k * k)
            total += term
        out[i] = total
    return out


def bessel_i0_numpy(x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    q = 0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    k = 0
    while active.any():
        k += 1
        term[active] *= q[active] / (k * k)
        total[active] += term[active]
        active &= term > I0_SERIES_RTOL * total
    return total


bessel_i0_numba = njit(_bessel_i0_loop)


# ---------------------------------------------------------------------------
# Local maxima (strict, plateaus resolved to their leftmost bin)
# ---------------------------------------------------------------------------

def _local_maxima_loop(y):
    n = y.shape[0]
    out = np.empty(n, dtype=np.int64)
    m = 0
    i = 1
    while i < n - 1:
        if y[i] > y[i - 1]:
            j = i
            while j < n - 1 and y[j + 1] == y[i]:
                j += 1
            if j < n - 1 and y[j + 1] < y[i]:
                out[m] = i
                m += 1
            i = j + 1
        else:
            i += 1
    return out[:m]


def local_maxima_numpy(y):
    y = np.asarray(y, dtype=np.float64)
    if y.size < 3:
        return np.empty(0, dtype=np.int64)
    starts = np.flatnonzero(np.concatenate(([True], y[1:] != y[:-1])))
    v = y[starts]
    if v.size < 3:
        return np.empty(0, dtype=np.int64)
    peak = (v[1:-1] > v[:-2]) & (v[1:-1] > v[2:])
    return starts[1:-1][peak].astype(np.int64)


local_maxima_numba = njit(_local_maxima_loop)


# ---------------------------------------------------------------------------
# Sign changes, skipping exact zeros and ignoring sub-guard flips
# ---------------------------------------------------------------------------

def _sign_changes_loop(values, guard):
    n = values.shape[0]
    out = np.empty(n, dtype=np.int64)
    m = 0
    prev_sign = 0
    prev_idx = -1
    for k in range(n):
        v = values[k]
        if v > 0.0:
            sg = 1
        elif v < 0.0:
            sg = -1
        else:
            continue
        if prev_sign != 0 and sg != prev_sign:
            if max(abs(values[prev_idx]), abs(v)) > guard:
                out[m] = k
                m += 1
        prev_sign = sg
        prev_idx = k
    return out[:m]


def sign_changes_numpy(values, guard):
    values = np.asarray(values, dtype=np.float64)
    nz = np.flatnonzero(values != 0.0)
    if nz.size < 2:
        return np.empty(0, dtype=np.int64)
    sg = np.sign(values[nz])
    flip = sg[1:] != sg[:-1]
    before, after = nz[:-1][flip], nz[1:][flip]
    loud = np.maximum(np.abs(values[before]), np.abs(values[after])) > guard
    return after[loud].astype(np.int64)


sign_changes_numba = njit(_sign_changes_loop)


# ---------------------------------------------------------------------------
# Running maximum over a fixed half-width in a sorted coordinate
# ---------------------------------------------------------------------------

def _running_max_loop(x, v, half_width):
    # Both window edges only move right, so a deque of indices with
    # decreasing values gives each maximum in amortized O(1).
    n = x.shape[0]
    out = np.empty(n)
    dq = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    lo = 0
    hi = 0
    for i in range(n):
        b = x[i] + half_width
        while hi < n and x[hi] <= b:
            while tail > head and v[dq[tail - 1]] <= v[hi]:
                tail -= 1
            dq[tail] = hi
            tail += 1
            hi += 1
        a = x[i] - half_width
        while x[lo] < a:
            lo += 1
        while dq[head] < lo:
            head += 1
        out[i] = v[dq[head]]
    return out


def running_max_numpy(x, v, half_width):
    x = np.asarray(x, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if x.size == 0:
        return np.empty(0)
    lo = np.searchsorted(x, x - half_width, side="left")
    hi = np.searchsorted(x, x + half_width, side="right")
    padded = np.append(v, -np.inf)
    idx = np.empty(2 * x.size, dtype=np.intp)
    idx[0::2] = lo
    idx[1::2] = hi
    return np.maximum.reduceat(padded, idx)[0::2]


running_max_numba = njit(_running_max_loop)


# ---------------------------------------------------------------------------
# Local four-point cubic interpolation of integer-grid samples
# ---------------------------------------------------------------------------

def _local_cubic_loop(u_ext, pad):
    # u_ext carries one mirrored sample at each end: u_ext[i + 1] == u[i].
    last = u_ext.shape[0] - 3
    m_total = last * pad + 1
    out = np.empty(m_total)
    for m in range(m_total):
        i = m // pad
        if i > last - 1:
            i = last - 1
        t = (m - i * pad) / pad
        w0 = -t * (t - 1.0) * (t - 2.0) / 6.0
        w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0
        w2 = -(t + 1.0) * t * (t - 2.0) / 2.0
        w3 = (t + 1.0) * t * (t - 1.0) / 6.0
        out[m] = w0 * u_ext[i] + w1 * u_ext[i + 1] + w2 * u_ext[i + 2] + w3 * u_ext[i + 3]
    return out


def local_cubic_numpy(u_ext, pad):
    u_ext = np.asarray(u_ext, dtype=np.float64)
    last = u_ext.shape[0] - 3
    m = np.arange(last * pad + 1)
    i = np.minimum(m // pad, last - 1)
    t = (m - i * pad) / pad
    w0 = -t * (t - 1.0) * (t - 2.0) / 6.0
    w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0
    w2 = -(t + 1.0) * t * (t - 2.0) / 2.0
    w3 = (t + 1.0) * t * (t - 1.0) / 6.0
    return w0 * u_ext[i] + w1 * u_ext[i + 1] + w2 * u_ext[i + 2] + w3 * u_ext[i + 3]


local_cubic_numba = njit(_local_cubic_loop)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def bessel_i0(x):
    """I0 of each element of ``x`` (1-D float array)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if USE_NUMBA:
        return bessel_i0_numba(x)
    return bessel_i0_numpy(x)


def local_maxima(y):
    """Indices of strict local maxima of ``y``; a plateau reports its leftmost bin."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    if USE_NUMBA:
        return local_maxima_numba(y)
    return local_maxima_numpy(y)


def sign_changes(values, guard=0.0):
    """Indices where the sign differs from the previous nonzero sample.

    Flips where both sides are no larger than ``guard`` in magnitude are
    treated as noise and not reported.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    if USE_NUMBA:
        return sign_changes_numba(values, float(guard))
    return sign_changes_numpy(values, guard)


def running_max(x, v, half_width):
    """Max of ``v`` over all points within ``half_width`` of each sorted ``x``."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    v = np.ascontiguousarray(v, dtype=np.float64)
    if x.size == 0:
        return np.empty(0)
    if USE_NUMBA:
        return running_max_numba(x, v, float(half_width))
    return running_max_numpy(x, v, half_width)


def local_cubic(u_ext, pad):
    """Evaluate the 4-point cubic through integer samples on a grid ``pad`` times finer."""
    u_ext = np.ascontiguousarray(u_ext, dtype=np.float64)
    if USE_NUMBA:
        return local_cubic_numba(u_ext, int(pad))
    return local_cubic_numpy(u_ext, pad)
