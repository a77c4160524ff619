"""Analysis specific to the variable-width hyperbolic window.

Covers the warp/ENBW inversion, the small-warp perturbation series, the
split of the transform into a smooth (DC) curve plus an oscillatory
residual, the critical ENBW where the transform stops oscillating, the
comparison against a Planck taper of equal ENBW and the faint-tone
demonstration.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import optimize

from .kernels import local_cubic, local_maxima, sign_changes
from .metrics import (DEFAULT_N, DEFAULT_PAD, FLOOR_GUARD_DB, NOISE_GUARD, ROLLOFF_CENTER,
                      EstimationError, RolloffSource, Spectrum, enbw, first_zero_crossing,
                      sequence_spectrum, spectrum, to_db)
from .windows import MAX_WARP, Family, ParameterError, WindowSpec, sample_window

ENBW_TOL = 1e-6
MAX_BISECTIONS = 200
PLANCK_EPS_RANGE = (0.001, 0.5)
CRITICAL_SCAN_STEP = 0.01
CRITICAL_RESOLUTION = 1e-4
ONSET_RUN = 3
PERSIST = 3


class ConvergenceError(EstimationError):
    """A root search failed to meet its tolerance."""


def hyperbolic(alpha, s):
    return WindowSpec(Family.HYPERBOLIC, alpha=alpha, warp=s)


def planck(eps):
    return WindowSpec(Family.PLANCK, planck_epsilon=eps)


def hyperbolic_enbw(alpha, s, n=DEFAULT_N):
    return enbw(sample_window(hyperbolic(alpha, s), n))


# ---------------------------------------------------------------------------
# ENBW inversion
# ---------------------------------------------------------------------------

def _bisect(func, lo, hi, what):
    try:
        return optimize.bisect(func, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=MAX_BISECTIONS)
    except RuntimeError as exc:
        raise ConvergenceError(f"{what}: bisection did not converge in {MAX_BISECTIONS} steps") from exc


def solve_warp_for_enbw(alpha, target_enbw, n=DEFAULT_N):
    """Warp ``s`` at which the hyperbolic window of exponent ``alpha`` has the given ENBW.

    ENBW falls monotonically as ``s`` rises, from very large near ``s = -1``
    to 1 at the top-hat end, so plain bisection on ``[-0.9999, 0.9999]``
    suffices.
    """
    hyperbolic(alpha, 0.0)  # validates alpha
    if not target_enbw > 1.0:
        raise ParameterError("target_enbw", f"must exceed 1 (only the top hat reaches 1), got {target_enbw}")
    lo_e = hyperbolic_enbw(alpha, MAX_WARP, n)
    hi_e = hyperbolic_enbw(alpha, -MAX_WARP, n)
    if not lo_e <= target_enbw <= hi_e:
        raise ParameterError("target_enbw",
                             f"{target_enbw} is outside [{lo_e:.6g}, {hi_e:.6g}] reachable with |s| <= {MAX_WARP}")
    s = _bisect(lambda s: hyperbolic_enbw(alpha, s, n) - target_enbw, -MAX_WARP, MAX_WARP, "warp")
    got = hyperbolic_enbw(alpha, s, n)
    if abs(got - target_enbw) > ENBW_TOL:
        raise ConvergenceError(f"warp: ENBW {got} at s={s} misses target {target_enbw}")
    return float(s)


@lru_cache(maxsize=8)
def _planck_enbw_bounds(n):
    grid = np.linspace(*PLANCK_EPS_RANGE, 25)
    vals = np.array([enbw(sample_window(planck(e), n)) for e in grid])
    if np.any(np.diff(vals) <= 0):
        raise EstimationError("Planck ENBW is not monotone in epsilon on the coarse grid")
    return float(vals[0]), float(vals[-1])


def solve_planck_for_enbw(target_enbw, n=DEFAULT_N):
    """Planck taper fraction ``eps`` giving the requested ENBW."""
    lo_e, hi_e = _planck_enbw_bounds(n)
    if not lo_e <= target_enbw <= hi_e:
        raise ParameterError("enbw", f"{target_enbw} is outside the Planck range [{lo_e:.6g}, {hi_e:.6g}]")
    eps = _bisect(lambda e: enbw(sample_window(planck(e), n)) - target_enbw, *PLANCK_EPS_RANGE, "planck_epsilon")
    return float(eps)


# ---------------------------------------------------------------------------
# Small-warp perturbation
# ---------------------------------------------------------------------------

def perturbation_delta_w(alpha, s, tau):
    """First-order change of the window when the warp moves from 0 to ``s``.

    Valid for integer ``alpha``::

        dw = 2**(2 - 2a) pi a s tau (1 - tau)
             * sum_{k<a} C(2a, k) (a - k)/a sin((a - k) pi tau)
    """
    if float(alpha) != int(alpha) or alpha < 1:
        raise ParameterError("alpha", f"perturbation series needs an integer alpha >= 1, got {alpha}")
    a = int(alpha)
    tau = np.asarray(tau, dtype=np.float64)
    if np.any((tau < 0.0) | (tau > 1.0)):
        raise ParameterError("tau", "must lie in [0, 1]")
    series = sum(math.comb(2 * a, k) * (a - k) / a * np.sin((a - k) * np.pi * tau) for k in range(a))
    out = 2.0 ** (2 - 2 * a) * np.pi * a * s * tau * (1.0 - tau) * series
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# DC / residual split
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Padded transform split as ``total = dc + residual``.

    ``dc`` interpolates the unpadded DFT (integer Tf) with a local four-point
    cubic; since the oscillatory part nearly vanishes at integer Tf, that
    traces the smooth component.
    """

    total: Spectrum
    dc: np.ndarray = field(repr=False)
    residual: np.ndarray = field(repr=False)

    @property
    def dc_spectrum(self):
        return self.total.with_values(self.dc)

    @property
    def residual_spectrum(self):
        return self.total.with_values(self.residual)


def unpadded_transform(w):
    """Real DFT of the bare samples at integer Tf, normalized to 1 at Tf = 0."""
    f = np.fft.rfft(np.asarray(w.samples, dtype=np.float64)).real
    return f / f[0]


def dc_curve(w, pad):
    u = unpadded_transform(w)
    # mirror across Tf = 0 and Tf = n/2; both are symmetry points of a real even sequence
    u_ext = np.concatenate(([u[1]], u, [u[-2]]))
    return local_cubic(u_ext, pad)


def decompose(w, pad=DEFAULT_PAD):
    if isinstance(pad, bool) or int(pad) != pad or pad < 4:
        raise ParameterError("pad", f"decomposition needs an integer pad >= 4, got {pad!r}")
    total = spectrum(w, int(pad))
    dc = dc_curve(w, int(pad))
    residual = total.values - dc
    dc.setflags(write=False)
    residual.setflags(write=False)
    return Decomposition(total=total, dc=dc, residual=residual)


def residual_spectrum(sp, dec):
    """Subtract a window's DC curve from another spectrum on the same grid."""
    if sp.values.shape != dec.dc.shape:
        raise ParameterError("pad", "spectrum and decomposition grids differ")
    return sp.with_values(sp.values - dec.dc)


def dc_dominance_onset(sp):
    """Lowest integer Tf past the main lobe from which the transform holds its sign.

    The test is the absence of any zero crossing over three consecutive
    unit-Tf intervals. Returns 0.0 when the transform never crosses zero and
    ``None`` when it keeps oscillating all the way to Nyquist.
    """
    flips = sign_changes(sp.values, NOISE_GUARD)
    if flips.size == 0:
        return 0.0
    pad = sp.pad
    kmax = (sp.values.shape[0] - 1) // pad
    k = int(math.ceil(flips[0] / pad))
    while k + ONSET_RUN <= kmax:
        lo, hi = k * pad, (k + ONSET_RUN) * pad
        j = np.searchsorted(flips, lo, side="right")
        if j == flips.size or flips[j] > hi:
            return float(k)
        # jump to the integer bin holding the next flip
        k = max(k + 1, int(math.ceil(flips[j] / pad)))
    return None


def rolloff_source(sp, f_center=ROLLOFF_CENTER):
    onset = dc_dominance_onset(sp)
    if onset is not None and onset < f_center:
        return RolloffSource.RESIDUAL
    return RolloffSource.TOTAL


# ---------------------------------------------------------------------------
# Critical ENBW
# ---------------------------------------------------------------------------

def _oscillates(alpha, s, n, pad):
    return first_zero_crossing(spectrum(sample_window(hyperbolic(alpha, s), n), pad)) is not None


def find_critical_enbw(alpha, n=DEFAULT_N, pad=DEFAULT_PAD):
    """Largest ENBW, approached from the wide-window side, with an oscillatory transform.

    Scans the warp downward from the top-hat end until the main-lobe zero
    crossing disappears, then bisects the bracket to 1e-4 in ENBW. The
    scan direction matters: near ``s = 0`` the pure Hann**alpha shape
    briefly oscillates again for ``alpha >= 2``.
    """
    hyperbolic(alpha, 0.0)
    prev = MAX_WARP
    if not _oscillates(alpha, prev, n, pad):
        return hyperbolic_enbw(alpha, prev, n)
    s = prev
    while True:
        s = max(s - CRITICAL_SCAN_STEP, -MAX_WARP)
        if not _oscillates(alpha, s, n, pad):
            break
        if s == -MAX_WARP:
            return hyperbolic_enbw(alpha, s, n)
        prev = s
    good, bad = prev, s
    while hyperbolic_enbw(alpha, bad, n) - hyperbolic_enbw(alpha, good, n) > CRITICAL_RESOLUTION:
        mid = 0.5 * (good + bad)
        if _oscillates(alpha, mid, n, pad):
            good = mid
        else:
            bad = mid
    return hyperbolic_enbw(alpha, good, n)


# ---------------------------------------------------------------------------
# Crossover against the Planck taper
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossoverResult:
    enbw: float
    alpha: float
    warp: float
    planck_epsilon: float
    crossover_tf: float
    source: RolloffSource
    max_advantage_db: float


def main_lobe_end(values):
    """Tf index of the first local minimum of ``|W|`` (the first null)."""
    mins = local_maxima(-np.abs(values))
    return int(mins[0]) if mins.size else 0


def _envelope(tf, values, start):
    a = np.abs(values)
    pk = local_maxima(a)
    pk = pk[pk > start]
    db = to_db(a[pk])
    below = np.flatnonzero(db < FLOOR_GUARD_DB)
    if below.size:
        pk, db = pk[: below[0]], db[: below[0]]
    return tf[pk], db


def _first_run(mask, length):
    run = 0
    for i, flag in enumerate(mask):
        run = run + 1 if flag else 0
        if run == length:
            return i - length + 1
    return None


def envelope_crossover(tf, hyp_values, planck_values, start=0):
    """First Tf where the Planck envelope drops persistently below the hyperbolic one.

    Envelopes are the local maxima of each ``|W|`` beyond bin ``start``,
    linearly interpolated in dB onto the union of both peak positions and
    cut where either reaches the noise guard. The search begins once the
    hyperbolic envelope has itself been lower for three points running;
    if that never happens the crossover is the first comparison point.

    Returns ``(crossover_tf, max_advantage_db)``, the advantage being the
    largest margin by which the hyperbolic envelope undercuts the Planck
    one before the crossover.
    """
    fh, dh = _envelope(tf, hyp_values, start)
    fp, dp = _envelope(tf, planck_values, start)
    if fh.size < 2 or fp.size < 2:
        raise EstimationError("too few envelope peaks to compare")
    top = min(fh[-1], fp[-1])
    bottom = max(fh[0], fp[0])
    grid = np.union1d(fh, fp)
    grid = grid[(grid >= bottom) & (grid <= top)]
    if grid.size == 0:
        raise EstimationError("envelopes do not overlap")
    eh = np.interp(grid, fh, dh)
    ep = np.interp(grid, fp, dp)
    i0 = _first_run(eh < ep, PERSIST)
    if i0 is None:
        return float(grid[0]), 0.0
    j = _first_run(ep[i0:] < eh[i0:], PERSIST)
    if j is None:
        raise EstimationError(f"Planck envelope never drops below the hyperbolic one before Tf {top:g}")
    j += i0
    return float(grid[j]), float(np.max(ep[i0:j] - eh[i0:j]))


def crossover_vs_planck(alpha, enbw_target, n=DEFAULT_N, pad=DEFAULT_PAD, f_center=ROLLOFF_CENTER):
    """Compare a hyperbolic window with the Planck taper of the same ENBW."""
    eps = solve_planck_for_enbw(enbw_target, n)
    s = solve_warp_for_enbw(alpha, enbw_target, n)
    dec = decompose(sample_window(hyperbolic(alpha, s), n), pad)
    source = rolloff_source(dec.total, f_center)
    hyp_vals = dec.residual if source is RolloffSource.RESIDUAL else dec.total.values
    pl = spectrum(sample_window(planck(eps), n), pad)
    start = max(main_lobe_end(dec.total.values), main_lobe_end(pl.values))
    tf_cross, adv = envelope_crossover(dec.total.tf, hyp_vals, pl.values, start)
    return CrossoverResult(enbw=float(enbw_target), alpha=float(alpha), warp=s, planck_epsilon=eps,
                           crossover_tf=tf_cross, source=source, max_advantage_db=adv)


# ---------------------------------------------------------------------------
# Faint secondary tone
# ---------------------------------------------------------------------------

def tone_sequence(w, tone_tf, rel_amplitude):
    """``w_j (1 + 2 A cos(2 pi f t_j))`` with ``t_j`` the signed sample time."""
    n = w.n
    j = np.arange(n)
    t = np.where(j <= n // 2, j, j - n)
    return w.samples * (1.0 + 2.0 * rel_amplitude * np.cos(2.0 * np.pi * tone_tf * t / n))


def tone_demo(primary_window, tone_tf, rel_amplitude, n=DEFAULT_N, pad=DEFAULT_PAD):
    """Spectrum of a window times unit DC plus a cosine of peak-relative amplitude ``A``.

    The factor 2 on the cosine puts the tone's spectral peak at ``A`` times
    the Tf = 0 peak.
    """
    if not 0.0 < tone_tf < n / 2:
        raise ParameterError("tone_tf", f"must lie in (0, {n // 2}), got {tone_tf}")
    if not rel_amplitude >= 0.0:
        raise ParameterError("rel_amplitude", f"must be non-negative, got {rel_amplitude}")
    w = sample_window(primary_window, n)
    return sequence_spectrum(tone_sequence(w, tone_tf, rel_amplitude), pad)
