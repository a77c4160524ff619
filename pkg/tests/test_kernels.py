import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy import special

from warpwin import kernels as K

finite = st.floats(-1e3, 1e3, allow_nan=False)


def test_i0_matches_scipy():
    x = np.linspace(0.0, 3.0 * np.pi, 200)
    for fn in (K.bessel_i0_numpy, K.bessel_i0_numba, K.bessel_i0):
        np.testing.assert_allclose(fn(x), special.i0(x), rtol=2e-15)


def test_i0_at_zero_is_one():
    assert K.bessel_i0(np.zeros(3)).tolist() == [1.0, 1.0, 1.0]


@given(arrays(np.float64, st.integers(0, 60), elements=st.integers(-3, 3).map(float)))
def test_local_maxima_parity(y):
    a = K.local_maxima_numpy(y)
    b = K.local_maxima_numba(np.ascontiguousarray(y))
    np.testing.assert_array_equal(a, b)


def test_local_maxima_plateau_takes_leftmost():
    y = np.array([0.0, 1.0, 2.0, 2.0, 2.0, 1.0, 3.0, 3.0])
    assert K.local_maxima(y).tolist() == [2]


@given(arrays(np.float64, st.integers(0, 60), elements=st.sampled_from([-2.0, -1e-20, 0.0, 1e-20, 1.0])),
       st.sampled_from([0.0, 1e-15]))
def test_sign_changes_parity(v, guard):
    np.testing.assert_array_equal(K.sign_changes_numpy(v, guard), K.sign_changes_numba(v, guard))


def test_sign_changes_skip_exact_zeros_and_guard():
    v = np.array([1.0, 0.0, -1.0, 0.0, 0.0, 2.0, -1e-20, 1e-20])
    assert K.sign_changes(v).tolist() == [2, 5, 6, 7]
    assert K.sign_changes(v, 1e-15).tolist() == [2, 5, 6]


@given(arrays(np.float64, st.integers(1, 50), elements=finite), st.floats(0.0, 5.0))
def test_running_max_parity_and_brute_force(v, hw):
    x = np.cumsum(np.abs(v) % 1.0) * 0.7
    brute = np.array([v[np.abs(x - xi) <= hw].max() for xi in x])
    np.testing.assert_array_equal(K.running_max_numpy(x, v, hw), brute)
    np.testing.assert_array_equal(K.running_max_numba(x, v, hw), brute)


@pytest.mark.parametrize("fn", [K.local_cubic_numpy, K.local_cubic_numba, K.local_cubic])
def test_local_cubic_reproduces_cubics_and_knots(fn):
    u = np.arange(-1.0, 12.0)
    poly = 0.3 * u**3 - u**2 + 2.0 * u - 5.0
    out = fn(poly, 8)
    t = np.arange(out.size) / 8.0
    np.testing.assert_allclose(out, 0.3 * t**3 - t**2 + 2.0 * t - 5.0, rtol=1e-12, atol=1e-10)
    rng = np.random.default_rng(3)
    r = rng.normal(size=20)
    np.testing.assert_array_equal(fn(r, 4)[::4], r[1:-1])


def test_local_cubic_parity():
    r = np.random.default_rng(7).normal(size=100)
    np.testing.assert_allclose(K.local_cubic_numpy(r, 16), K.local_cubic_numba(r, 16), rtol=0, atol=1e-15)
