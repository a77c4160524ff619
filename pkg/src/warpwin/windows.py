"""Window families on normalized time and their sampled, zero-padded forms.

Every window is written as a function of the half-interval coordinate
``tau = 2|t|/T`` in ``[0, 1]``: ``tau = 0`` is the window centre and
``tau = 1`` its edge. All work uses ``T = 1`` so frequencies come out as the
dimensionless product ``Tf``.

Tukey convention: ``tukey_fraction`` is the fraction ``r`` of each half
occupied by the cosine taper, so ``r = 1`` is the Hann window and ``r = 0``
the top hat.
"""
import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernels import bessel_i0

MAX_WARP = 0.9999
MAX_ALPHA = 64.0
KAISER_BETA = 3.0 * np.pi

# Nuttall's cosine-sum coefficients, centred form (all positive, sum 1).
NUTTALL_COEFFS = {
    "nuttall3": (0.40897, 0.5, 0.09103),
    "nuttall4a": (0.338946, 0.481973, 0.161054, 0.018027),
    "nuttall4b": (0.355768, 0.487396, 0.144232, 0.012604),
}


class ParameterError(ValueError):
    """A window or run parameter is out of range; ``param`` names it."""

    def __init__(self, param, message):
        super().__init__(f"{param}: {message}")
        self.param = param


class Family(enum.Enum):
    TOPHAT = "tophat"
    HANNPOW = "hann"
    HYPERBOLIC = "hyperbolic"
    TUKEY = "tukey"
    PLANCK = "planck"
    VALLEE_POUSSIN = "vallee-poussin"
    BOHMAN = "bohman"
    KAISER = "kaiser"
    NUTTALL3 = "nuttall3"
    NUTTALL4A = "nuttall4a"
    NUTTALL4B = "nuttall4b"

    @classmethod
    def parse(cls, name):
        key = str(name).strip().lower().replace("_", "-")
        key = _FAMILY_ALIASES.get(key, key)
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(f.value for f in cls)
            raise ParameterError("family", f"unknown window {name!r} (choose from {choices})") from None


_FAMILY_ALIASES = {
    "top-hat": "tophat",
    "rect": "tophat",
    "rectangular": "tophat",
    "hannpow": "hann",
    "hann-pow": "hann",
    "hanning": "hann",
    "parzen": "vallee-poussin",
    "valleepoussin": "vallee-poussin",
    "de-la-vallee-poussin": "vallee-poussin",
    "nuttall-3": "nuttall3",
    "nuttall-4a": "nuttall4a",
    "nuttall-4b": "nuttall4b",
}

# Parameters each family reads; everything else must stay unset.
APPLICABLE = {
    Family.HANNPOW: ("alpha",),
    Family.HYPERBOLIC: ("alpha", "warp"),
    Family.TUKEY: ("tukey_fraction",),
    Family.PLANCK: ("planck_epsilon",),
}

_DEFAULTS = {"warp": 0.0, "tukey_fraction": 0.5, "planck_epsilon": 0.4}

# Families whose value at the edge is not zero.
_OPEN_EDGE = (Family.TOPHAT, Family.KAISER)


@dataclass(frozen=True)
class WindowSpec:
    """A window family plus the parameters it uses.

    Unused parameters must be left at their defaults (``alpha=1``, others
    ``None``); setting one raises :class:`ParameterError` naming it and
    listing the parameters the family does accept.
    """

    family: Family
    alpha: float = 1.0
    warp: Optional[float] = None
    tukey_fraction: Optional[float] = None
    planck_epsilon: Optional[float] = None

    def __post_init__(self):
        family = self.family if isinstance(self.family, Family) else Family.parse(self.family)
        object.__setattr__(self, "family", family)
        used = self.applicable_parameters()

        given = {
            "alpha": self.alpha != 1.0,
            "warp": self.warp is not None,
            "tukey_fraction": self.tukey_fraction is not None,
            "planck_epsilon": self.planck_epsilon is not None,
        }
        for name, is_set in given.items():
            if is_set and name not in used:
                accepted = ", ".join(used) if used else "none"
                raise ParameterError(name, f"not used by the {family.value} window (accepted: {accepted})")
        for name in used:
            if name in _DEFAULTS and getattr(self, name) is None:
                object.__setattr__(self, name, _DEFAULTS[name])
        for name in ("alpha", "warp", "tukey_fraction", "planck_epsilon"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, float(value))

        if not np.isfinite(self.alpha) or self.alpha <= 0:
            raise ParameterError("alpha", f"must be positive, got {self.alpha}")
        if self.alpha > MAX_ALPHA:
            raise ParameterError("alpha", f"must not exceed {MAX_ALPHA:g}, got {self.alpha}")
        if self.warp is not None and not (abs(self.warp) <= MAX_WARP):
            raise ParameterError("warp", f"must lie strictly inside (-1, 1) with |s| <= {MAX_WARP}, got {self.warp}")
        if self.tukey_fraction is not None and not (0.0 <= self.tukey_fraction <= 1.0):
            raise ParameterError("tukey_fraction", f"must lie in [0, 1], got {self.tukey_fraction}")
        if self.planck_epsilon is not None and not (0.0 < self.planck_epsilon <= 0.5):
            raise ParameterError("planck_epsilon", f"must lie in (0, 0.5], got {self.planck_epsilon}")

    def applicable_parameters(self):
        return APPLICABLE.get(self.family, ())

    def params(self):
        """The parameters in use, as an ordered dict."""
        return {name: getattr(self, name) for name in self.applicable_parameters()}

    def label(self):
        bits = [f"{k}={v:g}" for k, v in self.params().items()]
        return self.family.value + (f"({', '.join(bits)})" if bits else "")

    @property
    def tapers_to_zero(self):
        if self.family is Family.TUKEY:
            return self.tukey_fraction > 0.0
        return self.family not in _OPEN_EDGE


@dataclass(frozen=True)
class SampledWindow:
    """``n`` samples stored with the centre at index 0 and ``w[j] == w[n - j]``."""

    n: int
    samples: np.ndarray = field(repr=False)
    spec: WindowSpec

    def half(self):
        """Samples 0 .. n/2, i.e. tau = 0 .. 1."""
        return self.samples[: self.n // 2 + 1]


# ---------------------------------------------------------------------------
# Continuous window shapes
# ---------------------------------------------------------------------------

def hyperbolic_z(s, tau):
    """Warped coordinate ``tau (1 - s) / (1 - s (2 tau - 1))``.

    A linear-fractional map of ``tau`` fixing 0 and 1; ``s = 0`` is the
    identity.
    """
    tau = np.asarray(tau, dtype=np.float64)
    return tau * (1.0 - s) / (1.0 - s * (2.0 * tau - 1.0))


def _logistic_of(u):
    # 1 / (1 + exp(u)) without overflow.
    u = np.asarray(u, dtype=np.float64)
    out = np.empty_like(u)
    pos = u > 0
    e = np.exp(-u[pos])
    out[pos] = e / (1.0 + e)
    out[~pos] = 1.0 / (1.0 + np.exp(u[~pos]))
    return out


def _planck(tau, eps):
    # Taper coordinate x runs from 0 at the outer edge to eps where the flat part starts.
    x = 0.5 * (1.0 - tau)
    out = np.ones_like(tau)
    taper = x < eps
    xt = x[taper]
    vals = np.zeros_like(xt)
    inner = xt > 0
    xi = xt[inner]
    vals[inner] = _logistic_of(eps / xi - eps / (eps - xi))
    out[taper] = vals
    return out


def _tukey(tau, r):
    out = np.ones_like(tau)
    if r <= 0.0:
        return out
    taper = tau > 1.0 - r
    out[taper] = np.cos(0.5 * np.pi * (tau[taper] - 1.0 + r) / r) ** 2
    return out


def _vallee_poussin(tau):
    return np.where(tau <= 0.5, 1.0 - 6.0 * tau * tau * (1.0 - tau), 2.0 * (1.0 - tau) ** 3)


def _bohman(tau):
    return (1.0 - tau) * np.cos(np.pi * tau) + np.sin(np.pi * tau) / np.pi


def _kaiser(tau):
    arg = KAISER_BETA * np.sqrt(np.clip(1.0 - tau * tau, 0.0, None))
    return bessel_i0(arg.ravel()).reshape(tau.shape) / bessel_i0(np.array([KAISER_BETA]))[0]


def _cosine_sum(tau, coeffs):
    total = np.zeros_like(tau)
    for k, a in enumerate(coeffs):
        total += a * np.cos(np.pi * k * tau)
    return total / sum(coeffs)


def _shape(spec, tau):
    fam = spec.family
    if fam is Family.TOPHAT:
        return np.ones_like(tau)
    if fam is Family.HANNPOW:
        return np.cos(0.5 * np.pi * tau) ** (2.0 * spec.alpha)
    if fam is Family.HYPERBOLIC:
        return np.cos(0.5 * np.pi * hyperbolic_z(spec.warp, tau)) ** (2.0 * spec.alpha)
    if fam is Family.TUKEY:
        return _tukey(tau, spec.tukey_fraction)
    if fam is Family.PLANCK:
        return _planck(tau, spec.planck_epsilon)
    if fam is Family.VALLEE_POUSSIN:
        return _vallee_poussin(tau)
    if fam is Family.BOHMAN:
        return _bohman(tau)
    if fam is Family.KAISER:
        return _kaiser(tau)
    return _cosine_sum(tau, NUTTALL_COEFFS[fam.value])


def window_values(spec, tau):
    """Vectorized window evaluation on ``tau`` in [0, 1]."""
    tau = np.atleast_1d(np.asarray(tau, dtype=np.float64))
    if np.any((tau < 0.0) | (tau > 1.0)) or not np.all(np.isfinite(tau)):
        raise ParameterError("tau", "must lie in [0, 1]")
    w = _shape(spec, tau)
    if spec.tapers_to_zero:
        w = np.where(tau >= 1.0, 0.0, w)
    return np.clip(w, 0.0, 1.0)


def window_value(spec, tau):
    """Window value at one point ``tau`` in [0, 1]."""
    return float(window_values(spec, float(tau))[0])


# ---------------------------------------------------------------------------
# Sampling and zero padding
# ---------------------------------------------------------------------------

def sample_window(spec, n):
    """Sample ``spec`` at ``n`` points: ``w[j] = w(tau = 2j/n)`` for ``j <= n/2``, mirrored above."""
    if isinstance(n, bool) or int(n) != n:
        raise ParameterError("n", f"must be an even integer, got {n!r}")
    n = int(n)
    if n < 4 or n % 2:
        raise ParameterError("n", f"must be an even integer >= 4, got {n}")
    half = n // 2
    tau = 2.0 * np.arange(half + 1) / n
    h = window_values(spec, tau)
    samples = np.concatenate((h, h[half - 1:0:-1]))
    samples.setflags(write=False)
    return SampledWindow(n=n, samples=samples, spec=spec)


def zero_pad(w, a):
    """Embed ``w`` in a zero vector of length ``a * n`` keeping the centre at index 0.

    Samples ``0 .. n/2`` go to the front and ``n/2+1 .. n-1`` to the back.
    When ``a > 1`` a non-zero edge sample (top hat, Kaiser) is split evenly
    between positions ``n/2`` and ``a*n - n/2``.
    """
    if isinstance(a, bool) or int(a) != a or a < 1:
        raise ParameterError("pad", f"must be an integer >= 1, got {a!r}")
    a = int(a)
    x = np.asarray(w.samples if isinstance(w, SampledWindow) else w, dtype=np.float64)
    n = x.shape[0]
    if n % 2:
        raise ParameterError("n", f"must be even, got {n}")
    m = a * n
    half = n // 2
    out = np.zeros(m)
    out[: half + 1] = x[: half + 1]
    out[m - half + 1:] = x[half + 1:]
    if a > 1:
        # The edge sample w[n/2] is its own mirror image before padding; share
        # it between +n/2 and -n/2 so the padded sequence stays even. Bins at
        # multiples of a see the same sum either way.
        out[half] *= 0.5
        out[m - half] = out[half]
    return out
