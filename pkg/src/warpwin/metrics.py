"""Spectra of sampled windows and the three figures of merit.

ENBW, highest sidelobe and roll-off are all read off a zero-padded DFT of a
:class:`~warpwin.windows.SampledWindow`. Roll-off values are quoted as the
log-log slope of the *amplitude* envelope (top hat -1, Hann -3), so the
power envelope falls by about ``6 |r|`` dB per octave.
"""
import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernels import local_maxima, running_max, sign_changes
from .windows import ParameterError, SampledWindow, zero_pad

DB_FLOOR = -400.0
# Sign flips where both neighbours sit below this amplitude (-300 dB power)
# are rounding noise, not zero crossings.
NOISE_GUARD = 1e-15
# Envelope points below this power mean the roll-off span has hit the floor.
FLOOR_GUARD_DB = -320.0

DEFAULT_N = 4096
DEFAULT_PAD = 16
ROLLOFF_CENTER = 150.0
ROLLOFF_HALF_SPAN = 1.0
ROLLOFF_MIN_PEAKS = 6
ROLLOFF_REJECT_DB = 3.0
ROLLOFF_MAX_ITER = 10
# Half-width, in octaves, of the running max that turns peaks into an upper envelope.
ENVELOPE_HALF_WIDTH = 0.125
FLAT_SLOPE = 0.5

_DB_PER_OCTAVE = 20.0 * math.log10(2.0)


class EstimationError(RuntimeError):
    """A spectral quantity could not be estimated from the data at hand."""


class RolloffSource(enum.Enum):
    TOTAL = "total"
    RESIDUAL = "residual"


def to_db(values):
    """``10 log10(values**2)`` clamped at :data:`DB_FLOOR`."""
    p = np.square(np.asarray(values, dtype=np.float64))
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(p)
    return np.maximum(out, DB_FLOOR)


@dataclass(frozen=True)
class Spectrum:
    """Real amplitude spectrum on the grid ``Tf = k / pad``, ``k = 0 .. n*pad/2``.

    ``values`` is normalized so that ``values[0] == 1``.
    """

    n: int
    pad: int
    values: np.ndarray = field(repr=False)
    imag_residue: float = 0.0

    @property
    def tf(self):
        return np.arange(self.values.shape[0]) / self.pad

    @property
    def power_db(self):
        return to_db(self.values)

    def bin_of(self, tf):
        return int(round(tf * self.pad))

    def with_values(self, values):
        values = np.array(values, dtype=np.float64)
        values.setflags(write=False)
        return Spectrum(self.n, self.pad, values, self.imag_residue)


@dataclass(frozen=True)
class WindowMetrics:
    enbw: float
    sidelobe_db: Optional[float]
    rolloff: Optional[float]
    rolloff_source: RolloffSource


@dataclass(frozen=True)
class RolloffFit:
    slope: float
    intercept_db: float
    n_points: int
    n_used: int
    iterations: int


def enbw(w):
    """Equivalent noise bandwidth ``N sum(w^2) / (sum w)^2`` in bins."""
    x = np.asarray(w.samples if isinstance(w, SampledWindow) else w, dtype=np.float64)
    total = x.sum()
    if total == 0.0:
        raise ParameterError("samples", "window is identically zero")
    return float(x.shape[0] * np.dot(x, x) / (total * total))


def sequence_spectrum(x, pad):
    """Spectrum of a raw length-n sequence stored centre-first (as a sampled window is)."""
    x = np.asarray(x, dtype=np.float64)
    padded = zero_pad(x, pad)
    f = np.fft.rfft(padded)
    peak = f.real[0]
    if peak == 0.0:
        raise ParameterError("samples", "sequence has zero sum")
    values = f.real / peak
    values.setflags(write=False)
    return Spectrum(n=x.shape[0], pad=int(pad), values=values,
                    imag_residue=float(np.max(np.abs(f.imag)) / abs(peak)))


def spectrum(w, pad=DEFAULT_PAD):
    """Zero-padded DFT of a sampled window, normalized to 1 at ``Tf = 0``."""
    return sequence_spectrum(w.samples, pad)


# ---------------------------------------------------------------------------
# Zero crossing and sidelobe
# ---------------------------------------------------------------------------

def _crossing_tf(values, k, pad):
    if abs(values[k]) <= NOISE_GUARD:
        return k / pad
    p = k - 1
    while values[p] == 0.0:
        p -= 1
    if p < k - 1:
        return (p + 1) / pad
    a, b = values[p], values[k]
    return (p + a / (a - b)) / pad


def zero_touches(values, guard=NOISE_GUARD):
    """Isolated bins where ``|W|`` dips to within ``guard`` of zero without a sign change.

    These are the double zeros of transforms such as the Vallee-Poussin's,
    which reach zero and turn back. Both neighbours must sit above the guard
    so that rounding noise on the floor does not qualify.
    """
    a = np.abs(np.asarray(values, dtype=np.float64))
    if a.size < 3:
        return np.empty(0, dtype=np.int64)
    mid = a[1:-1]
    hit = (mid <= guard) & (a[:-2] > guard) & (a[2:] > guard)
    k = np.flatnonzero(hit) + 1
    v = np.asarray(values)
    same = np.sign(v[k - 1]) == np.sign(v[k + 1])
    return k[same].astype(np.int64)


def main_lobe_crossing(values):
    """Bin index at or just past the main-lobe zero, or ``None``.

    Zeros are sign changes plus isolated touches of zero. The transform only
    counts as oscillatory when it falls monotonically from its peak into the
    first zero and reaches zero at least once more beyond it.
    """
    zeros = np.union1d(sign_changes(values, NOISE_GUARD), zero_touches(values))
    if zeros.size < 2:
        return None
    k = int(zeros[0])
    if local_maxima(-np.asarray(values[:k])).size:
        return None
    return k


def first_zero_crossing(sp):
    """Tf of the first zero crossing of the signed transform, or ``None``.

    ``None`` when the transform never reaches zero, or when it stops being
    oscillatory at the main lobe (a positive dip before the first crossing,
    or a single crossing with no return). A transform that touches zero and
    turns back, as sinc**4 does, has its first zero at the touch.
    """
    k = main_lobe_crossing(sp.values)
    if k is None:
        return None
    return float(_crossing_tf(sp.values, k, sp.pad))


def max_sidelobe_db(sp):
    """Highest power beyond the first zero crossing, in dB relative to the peak."""
    f0 = first_zero_crossing(sp)
    if f0 is None:
        return None
    k0 = int(math.ceil(f0 * sp.pad - 1e-9))
    tail = np.abs(sp.values[k0:])
    if local_maxima(tail).size == 0:
        return None
    return float(to_db(tail.max()))


# ---------------------------------------------------------------------------
# Roll-off
# ---------------------------------------------------------------------------

def envelope_points(sp, lo, hi):
    """Bins sampling the envelope of ``|W|`` in ``[lo, hi]`` (Tf units).

    These are the local maxima of ``|W|``. A span with no zero crossing and
    too few maxima is a smooth curve that is its own envelope, and every bin
    is returned.
    """
    tf = sp.tf
    idx = np.flatnonzero((tf >= lo) & (tf <= hi))
    seg = sp.values[idx]
    pk = idx[local_maxima(np.abs(seg))]
    if pk.size < ROLLOFF_MIN_PEAKS and sign_changes(seg, NOISE_GUARD).size == 0:
        return idx
    return pk


def fit_rolloff(sp, f_center=ROLLOFF_CENTER, half_span_octaves=ROLLOFF_HALF_SPAN):
    """Iterative log-log fit to the envelope of ``|W|`` around ``f_center``.

    Local maxima in ``[f_center / 2**h, f_center * 2**h]`` are lifted to their
    upper envelope (running max over +-1/8 octave, which leaves a power law's
    slope unchanged but bridges the beat nulls of spliced windows), then a
    straight line is fitted in dB against log frequency. Points more than
    3 dB off the line are dropped and the fit repeated until the kept set is
    stable or ten passes have run.
    """
    if half_span_octaves <= 0:
        raise ParameterError("half_span_octaves", f"must be positive, got {half_span_octaves}")
    lo = f_center / 2.0 ** half_span_octaves
    hi = f_center * 2.0 ** half_span_octaves
    if f_center <= 0 or hi > sp.tf[-1]:
        raise ParameterError("f_center", f"span [{lo:g}, {hi:g}] must lie inside (0, {sp.tf[-1]:g}]")
    pk = envelope_points(sp, lo, hi)
    if pk.size < ROLLOFF_MIN_PEAKS:
        raise EstimationError(
            f"only {pk.size} envelope peaks in Tf [{lo:g}, {hi:g}]; "
            "use a larger pad factor or a wider span")
    y = to_db(sp.values[pk])
    if y.min() < FLOOR_GUARD_DB:
        raise EstimationError(
            f"envelope in Tf [{lo:g}, {hi:g}] reaches {y.min():.0f} dB, inside the rounding noise floor; "
            "measure at a lower frequency")
    x = np.log2(sp.tf[pk])
    y = running_max(x, y, ENVELOPE_HALF_WIDTH)

    keep = np.ones(x.shape, dtype=bool)
    it = 0
    while True:
        it += 1
        slope, icpt = np.polyfit(x[keep], y[keep], 1)
        if it >= ROLLOFF_MAX_ITER:
            break
        nxt = np.abs(y - (slope * x + icpt)) <= ROLLOFF_REJECT_DB
        if nxt.sum() < 3 or np.array_equal(nxt, keep):
            break
        keep = nxt
    return RolloffFit(slope=float(slope / _DB_PER_OCTAVE), intercept_db=float(icpt),
                      n_points=int(pk.size), n_used=int(keep.sum()), iterations=it)


def estimate_rolloff(sp, f_center=ROLLOFF_CENTER, half_span_octaves=ROLLOFF_HALF_SPAN):
    """Roll-off exponent ``r`` with ``|W| ~ Tf**r`` near ``f_center``."""
    return fit_rolloff(sp, f_center, half_span_octaves).slope


def noise_floor_db(sp):
    """Median power over the top octave if it is flat there, else ``None``.

    Flat means the log-log slope of the top octave is below 0.5 in
    roll-off units (about 3 dB per octave).
    """
    tf = sp.tf
    top = tf >= tf[-1] / 2.0
    y = sp.power_db[top]
    slope = np.polyfit(np.log2(tf[top]), y, 1)[0] / _DB_PER_OCTAVE
    if abs(slope) >= FLAT_SLOPE:
        return None
    return float(np.median(y))
