"""Record generators behind the CLI: each returns a list of flat dicts.

Rows come out ordered by parameter value whatever the worker count, so
output is deterministic.
"""
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .assess import window_metrics
from .hyperbolic import (_planck_enbw_bounds, crossover_vs_planck, decompose, hyperbolic,
                         hyperbolic_enbw, planck, solve_warp_for_enbw, tone_demo)
from .metrics import (DEFAULT_N, DEFAULT_PAD, EstimationError, enbw, estimate_rolloff,
                      max_sidelobe_db, spectrum, to_db)
from .windows import MAX_WARP, Family, ParameterError, WindowSpec, sample_window

DEFAULT_POINTS = 100
WARP_CURVE_POINTS = 201
FIXED_WINDOWS = (Family.TOPHAT, Family.HANNPOW, Family.VALLEE_POUSSIN, Family.BOHMAN,
                 Family.KAISER, Family.NUTTALL3, Family.NUTTALL4A, Family.NUTTALL4B)
SIDELOBE_ALPHAS = (1.0, 2.0, 3.0)
ROLLOFF_ALPHA = 3.0
CROSSOVER_ALPHAS = (2.0, 3.0, 4.0)
HANN_ENBW = 1.5

PARAM_COLUMNS = ("alpha", "warp", "tukey_fraction", "planck_epsilon")


def _map(func, items, jobs=1):
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _params(spec):
    p = spec.params()
    return {k: p.get(k) for k in PARAM_COLUMNS}


def _maybe(func, *args):
    try:
        return func(*args)
    except EstimationError:
        return None


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

def metrics_record(spec, n=DEFAULT_N, pad=DEFAULT_PAD):
    m = window_metrics(spec, n, pad)
    return {"family": spec.family.value, **_params(spec), "enbw": m.enbw, "sidelobe_db": m.sidelobe_db,
            "rolloff": m.rolloff, "rolloff_source": m.rolloff_source.value}


# ---------------------------------------------------------------------------
# warp curve: 1/ENBW against s
# ---------------------------------------------------------------------------

def warp_grid(points=WARP_CURVE_POINTS):
    """Open grid on (-1, 1); an odd count puts a point on s = 0."""
    if points < 2:
        raise ParameterError("points", f"need at least 2, got {points}")
    s = np.linspace(-1.0, 1.0, points + 2)[1:-1]
    return np.clip(s, -MAX_WARP, MAX_WARP)


def _warp_row(args):
    alpha, s, n = args
    return {"alpha": alpha, "warp": float(s), "inv_enbw": 1.0 / hyperbolic_enbw(alpha, float(s), n)}


def warp_curve(alphas, n=DEFAULT_N, points=WARP_CURVE_POINTS, jobs=1):
    for a in alphas:
        hyperbolic(a, 0.0)
    grid = warp_grid(points)
    return _map(_warp_row, [(float(a), s, n) for a in alphas for s in grid], jobs)


# ---------------------------------------------------------------------------
# sidelobe against ENBW
# ---------------------------------------------------------------------------

def _point_row(series, spec, n, pad):
    w = sample_window(spec, n)
    return {"series": series, "family": spec.family.value, **_params(spec),
            "enbw": enbw(w), "sidelobe_db": max_sidelobe_db(spectrum(w, pad))}


def _spec_sidelobe(args):
    series, spec, n, pad = args
    return _point_row(series, spec, n, pad)


def _hyp_sidelobe(args):
    series, alpha, target, n, pad = args
    try:
        s = solve_warp_for_enbw(alpha, target, n)
    except ParameterError:
        return None
    return _point_row(series, hyperbolic(alpha, s), n, pad)


def hyperbolic_enbw_grid(alpha, n, points, top):
    lo = hyperbolic_enbw(alpha, 0.99, n)
    return np.linspace(lo, top, points)


def sidelobe_sweep(n=DEFAULT_N, pad=DEFAULT_PAD, points=DEFAULT_POINTS, jobs=1, alphas=SIDELOBE_ALPHAS):
    """Sidelobe height against ENBW for fixed windows, Tukey, Planck and hyperbolic curves.

    A hyperbolic curve stops at the first ENBW whose transform no longer
    has a sidelobe.
    """
    tasks = [("fixed", WindowSpec(f), n, pad) for f in FIXED_WINDOWS]
    tasks += [("tukey", WindowSpec(Family.TUKEY, tukey_fraction=r), n, pad) for r in np.linspace(0.01, 1.0, points)]
    tasks += [("planck", planck(e), n, pad) for e in np.linspace(0.01, 0.5, points)]
    rows = _map(_spec_sidelobe, tasks, jobs)
    for a in alphas:
        grid = hyperbolic_enbw_grid(a, n, points, 2.0)
        curve = _map(_hyp_sidelobe, [(f"hyperbolic alpha={a:g}", a, e, n, pad) for e in grid], jobs)
        for row in curve:
            if row is None:
                continue
            if row["sidelobe_db"] is None:
                break
            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# roll-off against ENBW and against alpha
# ---------------------------------------------------------------------------

def _rolloff_fields(spec, n, pad, with_residual):
    w = sample_window(spec, n)
    if with_residual:
        dec = decompose(w, pad)
        total = _maybe(estimate_rolloff, dec.total)
        residual = _maybe(estimate_rolloff, dec.residual_spectrum)
    else:
        total = _maybe(estimate_rolloff, spectrum(w, pad))
        residual = None
    return {"enbw": enbw(w), "rolloff_total": total, "rolloff_residual": residual}


def _spec_rolloff(args):
    series, spec, n, pad = args
    with_residual = spec.family is Family.HYPERBOLIC
    return {"series": series, "family": spec.family.value, **_params(spec),
            **_rolloff_fields(spec, n, pad, with_residual)}


def _hyp_rolloff(args):
    series, alpha, target, n, pad = args
    try:
        s = solve_warp_for_enbw(alpha, target, n)
    except ParameterError:
        return None
    return _spec_rolloff((series, hyperbolic(alpha, s), n, pad))


def rolloff_sweep(n=DEFAULT_N, pad=DEFAULT_PAD, points=DEFAULT_POINTS, jobs=1,
                  alpha=ROLLOFF_ALPHA, alphas=None):
    """Roll-off against ENBW (hyperbolic total and residual, Tukey, Planck,
    fixed windows) plus roll-off against alpha at the Hann ENBW of 1.5."""
    tasks = [("fixed", WindowSpec(f), n, pad) for f in FIXED_WINDOWS]
    tasks += [("tukey", WindowSpec(Family.TUKEY, tukey_fraction=r), n, pad) for r in np.linspace(0.01, 1.0, points)]
    tasks += [("planck", planck(e), n, pad) for e in np.linspace(0.01, 0.5, points)]
    rows = _map(_spec_rolloff, tasks, jobs)
    grid = hyperbolic_enbw_grid(alpha, n, points, 3.0)
    rows += [r for r in _map(_hyp_rolloff, [(f"hyperbolic alpha={alpha:g}", alpha, e, n, pad) for e in grid], jobs)
             if r is not None]
    if alphas is None:
        alphas = np.linspace(1.0, 8.0, 29)
    rows += [r for r in _map(_hyp_rolloff, [("hyperbolic at enbw=1.5", float(a), HANN_ENBW, n, pad) for a in alphas],
                             jobs) if r is not None]
    return rows


# ---------------------------------------------------------------------------
# spectrum dump
# ---------------------------------------------------------------------------

def spectrum_records(spec, n=DEFAULT_N, pad=DEFAULT_PAD, decomposed=False, tone=None, fmax=None):
    """Power spectrum rows ``Tf, total_db`` with optional ``dc_db, residual_db``.

    ``tone`` is a ``(tone_tf, rel_amplitude)`` pair added to the signal; the
    residual then removes the plain window's smooth part, leaving the tone.
    """
    w = sample_window(spec, n)
    if tone is not None:
        total = tone_demo(spec, tone[0], tone[1], n, pad)
    else:
        total = spectrum(w, pad)
    cols = {"Tf": total.tf, "total_db": total.power_db}
    if decomposed:
        dec = decompose(w, pad)
        cols["dc_db"] = to_db(dec.dc)
        cols["residual_db"] = to_db(total.values - dec.dc)
    if fmax is not None:
        if not fmax > 0:
            raise ParameterError("fmax", f"must be positive, got {fmax}")
        keep = total.tf <= fmax
        cols = {k: v[keep] for k, v in cols.items()}
    names = list(cols)
    return [dict(zip(names, map(float, row))) for row in zip(*cols.values())]


# ---------------------------------------------------------------------------
# crossover against Planck
# ---------------------------------------------------------------------------

def _cross_row(args):
    alpha, target, n, pad = args
    row = {"alpha": alpha, "enbw": float(target), "warp": None, "planck_epsilon": None,
           "crossover_tf": None, "source": None, "max_advantage_db": None}
    try:
        r = crossover_vs_planck(alpha, target, n, pad)
    except (EstimationError, ParameterError):
        return row
    row.update(warp=r.warp, planck_epsilon=r.planck_epsilon, crossover_tf=r.crossover_tf,
               source=r.source.value, max_advantage_db=r.max_advantage_db)
    return row


def crossover_sweep(alphas=CROSSOVER_ALPHAS, n=DEFAULT_N, pad=DEFAULT_PAD, points=DEFAULT_POINTS, jobs=1,
                    enbw_range=None):
    """Crossover Tf against ENBW for each alpha, over the Planck-reachable ENBW range."""
    for a in alphas:
        hyperbolic(a, 0.0)
    if enbw_range is None:
        lo, hi = _planck_enbw_bounds(n)
        enbw_range = (max(lo, 1.05), hi)
    grid = np.linspace(enbw_range[0], enbw_range[1], points)
    return _map(_cross_row, [(float(a), float(e), n, pad) for a in alphas for e in grid], jobs)
