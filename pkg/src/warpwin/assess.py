"""One-call assessment of a window configuration."""
from .hyperbolic import decompose, rolloff_source
from .metrics import (DEFAULT_N, DEFAULT_PAD, ROLLOFF_CENTER, EstimationError, RolloffSource,
                      WindowMetrics, enbw, estimate_rolloff, max_sidelobe_db, spectrum)
from .windows import Family, ParameterError, sample_window


def window_metrics(spec, n=DEFAULT_N, pad=DEFAULT_PAD, f_center=ROLLOFF_CENTER, strict=False):
    """ENBW, highest sidelobe and roll-off of ``spec``.

    For the hyperbolic window the roll-off is read from the oscillatory
    residual whenever the smooth part of the transform takes over below
    ``f_center``. A roll-off that cannot be estimated comes back as ``None``
    unless ``strict`` is set.
    """
    w = sample_window(spec, n)
    sp = spectrum(w, pad)
    source = RolloffSource.TOTAL
    curve = sp
    if spec.family is Family.HYPERBOLIC:
        source = rolloff_source(sp, f_center)
        if source is RolloffSource.RESIDUAL:
            curve = decompose(w, pad).residual_spectrum
    try:
        r = estimate_rolloff(curve, f_center)
    except (EstimationError, ParameterError) as exc:
        if strict or (isinstance(exc, ParameterError) and exc.param != "f_center"):
            raise
        r = None
    return WindowMetrics(enbw=enbw(w), sidelobe_db=max_sidelobe_db(sp), rolloff=r, rolloff_source=source)
