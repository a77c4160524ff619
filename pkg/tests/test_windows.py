import itertools

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from warpwin import (Family, ParameterError, WindowSpec, hyperbolic_z, sample_window, window_value,
                     window_values, zero_pad)

# Direct 40-digit evaluation of cos(pi z / 2)**8 with z = tau (1 - s) / (1 - s (2 tau - 1)).
HYP_4_0606_025 = 0.9450347329009259

ALL_DEFAULT = [WindowSpec(f) for f in Family]
TAPERING = [s for s in ALL_DEFAULT if s.family not in (Family.TOPHAT, Family.KAISER)]

warps = st.floats(-0.99, 0.99)
alphas = st.floats(0.25, 10.0)


def hyp(alpha, s):
    return WindowSpec(Family.HYPERBOLIC, alpha=alpha, warp=s)


# -- point values ------------------------------------------------------------

def test_hyperbolic_alpha1_s0_at_half_is_hann():
    assert window_value(hyp(1, 0.0), 0.5) == pytest.approx(0.5, abs=1e-15)
    assert window_value(WindowSpec("hann"), 0.5) == pytest.approx(0.5, abs=1e-15)


@given(alphas, warps)
def test_hyperbolic_vanishes_at_edge(a, s):
    assert window_value(hyp(a, s), 1.0) == 0.0


def test_hyperbolic_frozen_high_precision_value():
    assert window_value(hyp(4, 0.606), 0.25) == pytest.approx(HYP_4_0606_025, rel=1e-12)


def test_frozen_value_against_mpmath():
    mpmath.mp.dps = 40
    s, tau = mpmath.mpf("0.606"), mpmath.mpf("0.25")
    z = tau * (1 - s) / (1 - s * (2 * tau - 1))
    ref = mpmath.cos(mpmath.pi * z / 2) ** 8
    assert float(ref) == pytest.approx(HYP_4_0606_025, rel=1e-15)


def test_tophat_is_one():
    assert window_value(WindowSpec("tophat"), 0.9) == 1.0
    assert window_value(WindowSpec("tophat"), 1.0) == 1.0


def test_hyperbolic_z_examples():
    assert hyperbolic_z(0.0, 0.3) == pytest.approx(0.3, abs=1e-16)
    assert hyperbolic_z(0.5, 0.5) == pytest.approx(0.25, abs=1e-16)
    for s in (-0.99, -0.3, 0.4, 0.9999):
        assert hyperbolic_z(s, 1.0) == 1.0
        assert hyperbolic_z(s, 0.0) == 0.0


@given(st.floats(-0.999, 0.999))
def test_hyperbolic_z_increasing(s):
    z = hyperbolic_z(s, np.linspace(0, 1, 101))
    assert np.all(np.diff(z) > 0)


@pytest.mark.parametrize("s", [-0.9, -0.5, -0.1, 0.2, 0.6, 0.95])
def test_hyperbolic_z_is_mobius(s):
    # linear-fractional maps preserve the cross-ratio of any four points
    def cross(a, b, c, d):
        return (a - c) * (b - d) / ((a - d) * (b - c))
    for t in itertools.combinations([0.0, 0.13, 0.4, 0.77, 1.0], 4):
        z = hyperbolic_z(s, np.array(t))
        assert cross(*z) == pytest.approx(cross(*t), rel=1e-9)


def test_known_family_values():
    # Vallee-Poussin joins its two cubics at 1/4, Bohman at 0 and 1
    assert window_value(WindowSpec("vallee-poussin"), 0.5) == pytest.approx(0.25)
    assert window_value(WindowSpec("bohman"), 0.0) == pytest.approx(1.0)
    assert window_value(WindowSpec("kaiser"), 1.0) == pytest.approx(1.0 / np.i0(3 * np.pi))
    assert window_value(WindowSpec(Family.TUKEY, tukey_fraction=0.5), 0.4) == 1.0
    assert window_value(WindowSpec(Family.TUKEY, tukey_fraction=0.5), 0.75) == pytest.approx(0.5)
    assert window_value(WindowSpec(Family.PLANCK, planck_epsilon=0.4), 0.2) == 1.0
    # taper midpoint x = eps / 2 sits at exactly 1/2
    assert window_value(WindowSpec(Family.PLANCK, planck_epsilon=0.4), 0.6) == pytest.approx(0.5)


def test_tukey_limits():
    tau = np.linspace(0, 1, 33)
    np.testing.assert_allclose(window_values(WindowSpec(Family.TUKEY, tukey_fraction=1.0), tau),
                               window_values(WindowSpec("hann"), tau), atol=1e-15)
    assert np.all(window_values(WindowSpec(Family.TUKEY, tukey_fraction=0.0), tau) == 1.0)


@pytest.mark.parametrize("name", ["nuttall3", "nuttall4a", "nuttall4b"])
def test_nuttall_endpoints(name):
    assert window_value(WindowSpec(name), 0.0) == pytest.approx(1.0, abs=1e-15)
    assert window_values(WindowSpec(name), np.array([1.0 - 1e-9]))[0] < 1e-12


@pytest.mark.parametrize("spec", TAPERING, ids=lambda s: s.family.value)
def test_zero_endpoint(spec):
    assert window_value(spec, 1.0) <= 1e-15


# -- sampling -----------------------------------------------------------------

def test_sample_examples():
    assert sample_window(WindowSpec("tophat"), 8).samples.tolist() == [1.0] * 8
    np.testing.assert_allclose(sample_window(WindowSpec("hann"), 4).samples, [1, 0.5, 0, 0.5], atol=1e-16)


@pytest.mark.parametrize("alpha", [1, 2, 3, 4])
def test_hann_reduction(alpha):
    a = sample_window(hyp(alpha, 0.0), 4096).samples
    b = sample_window(WindowSpec(Family.HANNPOW, alpha=alpha), 4096).samples
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


@pytest.mark.parametrize("spec", ALL_DEFAULT, ids=lambda s: s.family.value)
@pytest.mark.parametrize("n", [4, 10, 256])
def test_symmetry_bounds_and_monotone(spec, n):
    w = sample_window(spec, n)
    x = w.samples
    assert x.shape == (n,)
    assert x[0] == 1.0
    for j in range(1, n // 2):
        assert x[j] == x[n - j]
    assert np.all((x >= 0) & (x <= 1))
    assert np.all(np.diff(w.half()) <= 0)
    assert not x.flags.writeable


@given(st.integers(1, 10), st.floats(-0.9, 0.9))
def test_hyperbolic_monotone(alpha, s):
    assert np.all(np.diff(sample_window(hyp(alpha, s), 512).half()) <= 0)


def test_top_hat_limit():
    tau = np.linspace(0.0, 0.99, 100)
    assert np.all(window_values(hyp(1, 0.999), tau) > 0.95)


@pytest.mark.parametrize("n", [3, 7, 2, 0, -4, 4.5, True])
def test_bad_n(n):
    with pytest.raises(ParameterError) as ei:
        sample_window(WindowSpec("hann"), n)
    assert ei.value.param == "n"


# -- zero padding ---------------------------------------------------------------

def test_zero_pad_examples():
    w = sample_window(WindowSpec("hann"), 4)
    np.testing.assert_array_equal(zero_pad(w, 1), w.samples)
    np.testing.assert_allclose(zero_pad(w, 2), [1, 0.5, 0, 0, 0, 0, 0, 0.5], atol=1e-16)


def test_zero_pad_dft_subsamples_unpadded():
    rng = np.random.default_rng(1)
    h = np.sort(rng.random(17))[::-1]
    x = np.concatenate((h, h[15:0:-1]))
    full = np.fft.fft(zero_pad(x, 4))[::4]
    np.testing.assert_allclose(full, np.fft.fft(x), rtol=1e-10, atol=1e-12)


def test_zero_pad_rejects_bad_factor():
    for a in (0, 1.5, -1):
        with pytest.raises(ParameterError):
            zero_pad(np.ones(4), a)


# -- validation -----------------------------------------------------------------

@pytest.mark.parametrize("kw,param", [
    (dict(family="hyperbolic", warp=1.0), "warp"),
    (dict(family="hyperbolic", warp=-1.0), "warp"),
    (dict(family="hyperbolic", warp=0.99995), "warp"),
    (dict(family="hyperbolic", alpha=0.0), "alpha"),
    (dict(family="hann", alpha=-1.0), "alpha"),
    (dict(family="hann", alpha=65.0), "alpha"),
    (dict(family="tukey", tukey_fraction=1.5), "tukey_fraction"),
    (dict(family="planck", planck_epsilon=0.0), "planck_epsilon"),
    (dict(family="planck", planck_epsilon=0.6), "planck_epsilon"),
    (dict(family="hann", warp=0.1), "warp"),
    (dict(family="tophat", alpha=2.0), "alpha"),
    (dict(family="kaiser", planck_epsilon=0.1), "planck_epsilon"),
    (dict(family="triangle"), "family"),
])
def test_validation_names_parameter(kw, param):
    with pytest.raises(ParameterError) as ei:
        WindowSpec(**kw)
    assert ei.value.param == param
    assert param in str(ei.value)


def test_applicable_parameters_reported():
    with pytest.raises(ParameterError, match="accepted: alpha, warp"):
        WindowSpec("hyperbolic", tukey_fraction=0.3)
    assert WindowSpec("planck").params() == {"planck_epsilon": 0.4}
    assert WindowSpec("tophat").applicable_parameters() == ()


def test_family_aliases():
    assert WindowSpec("Parzen").family is Family.VALLEE_POUSSIN
    assert WindowSpec("rectangular").family is Family.TOPHAT


def test_tau_out_of_range():
    with pytest.raises(ParameterError):
        window_value(WindowSpec("hann"), 1.1)
