"""Spectral windows, their figures of merit and the variable-width hyperbolic window."""
from ._accel import backend_name
from .assess import window_metrics
from .hyperbolic import (ConvergenceError, CrossoverResult, Decomposition, crossover_vs_planck,
                         dc_dominance_onset, decompose, envelope_crossover, find_critical_enbw,
                         perturbation_delta_w, residual_spectrum, solve_planck_for_enbw,
                         solve_warp_for_enbw, tone_demo)
from .metrics import (EstimationError, RolloffFit, RolloffSource, Spectrum, WindowMetrics, enbw,
                      estimate_rolloff, first_zero_crossing, fit_rolloff, max_sidelobe_db,
                      noise_floor_db, sequence_spectrum, spectrum, to_db)
from .windows import (Family, ParameterError, SampledWindow, WindowSpec, hyperbolic_z, sample_window,
                      window_value, window_values, zero_pad)

__version__ = "0.1.0"
