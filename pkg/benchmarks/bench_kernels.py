"""Time the numba and numpy forms of each kernel, plus one full assessment.

    python3 benchmarks/bench_kernels.py [--repeat 20]

The full-assessment line runs in a subprocess per backend so the
``WARPWIN_DISABLE_NUMBA`` switch takes effect.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from warpwin import WindowSpec, kernels, sample_window, spectrum

ASSESS = ("from warpwin import WindowSpec, window_metrics; "
          "import timeit; "
          "spec = WindowSpec('hyperbolic', alpha=4, warp=0.606); window_metrics(spec); "
          "print(min(timeit.repeat(lambda: window_metrics(spec), number=1, repeat={r})))")


def inputs():
    sp = spectrum(sample_window(WindowSpec("hyperbolic", alpha=4, warp=0.606), 4096), 16)
    v = np.ascontiguousarray(sp.values)
    a = np.abs(v)
    x = np.log2(np.linspace(75, 300, 2000))
    y = np.random.default_rng(0).normal(size=x.size)
    u = np.fft.rfft(sample_window(WindowSpec("hann"), 4096).samples).real
    return {
        "bessel_i0": (np.linspace(0, 3 * np.pi, 2049),),
        "local_maxima": (a,),
        "sign_changes": (v, 1e-15),
        "running_max": (x, y, 0.125),
        "local_cubic": (np.concatenate(([u[1]], u, [u[-2]])), 16),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)
    print(f"{'kernel':<16}{'numba ms':>12}{'numpy ms':>12}{'speed-up':>10}")
    for name, call_args in inputs().items():
        fast = getattr(kernels, name + "_numba")
        slow = getattr(kernels, name + "_numpy")
        fast(*call_args)  # compile
        tf = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        ts = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        print(f"{name:<16}{tf * 1e3:>12.3f}{ts * 1e3:>12.3f}{ts / tf:>10.1f}")
    times = {}
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, WARPWIN_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", ASSESS.format(r=max(3, args.repeat // 4))],
                             env=env, capture_output=True, text=True, check=True)
        times[label] = float(out.stdout.strip())
    print(f"{'window_metrics':<16}{times['numba'] * 1e3:>12.3f}{times['numpy'] * 1e3:>12.3f}"
          f"{times['numpy'] / times['numba']:>10.1f}")


if __name__ == "__main__":
    main()
