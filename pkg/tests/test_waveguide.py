import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from evmodes.units import NORMALIZED, SI
from evmodes.waveguide import (
    WaveguideConfig,
    cutoff_frequency,
    make_mode,
    scatter_coeffs,
)

# frozen: 60-digit mpmath evaluation of the sinh/cosh transmission
# formula at k_c = 1, L = 1, k = 0.5 (beta = sqrt(3)/2)
T_RE = 0.42037912693640362
T_IM = -0.51242013931491943
T2 = 0.43929300953933439
A_RE = 0.15938437804222149
A_IM = 0.022435903391237410
B_RE = 0.56026212672744571
B_IM = -0.71677653173787346


def test_config_validation():
    with pytest.raises(ValueError):
        WaveguideConfig(a=1.0, b=2.0, L=1.0)  # b must stay below a
    with pytest.raises(ValueError):
        WaveguideConfig(a=-1.0, b=0.5, L=1.0)
    with pytest.raises(ValueError):
        WaveguideConfig(a=1.0, b=0.5, L=0.0)


def test_normalized_geometry():
    cfg = WaveguideConfig.normalized(2.5)
    assert cfg.k_c == pytest.approx(1.0, rel=1e-15)
    assert cfg.L == 2.5
    assert cutoff_frequency(cfg) == pytest.approx(1.0, rel=1e-15)


def test_cutoff_in_si_units():
    # WR-90: a = 22.86 mm -> f_c ~ 6.557 GHz
    cfg = WaveguideConfig(a=0.02286, b=0.01016, L=0.01, units=SI)
    f_c = cutoff_frequency(cfg) / (2.0 * math.pi)
    assert f_c == pytest.approx(6.5572e9, rel=1e-4)


def test_mode_rejects_propagating_band():
    cfg = WaveguideConfig.normalized(1.0)
    with pytest.raises(ValueError):
        make_mode(cfg, 1.0)  # at cutoff
    with pytest.raises(ValueError):
        make_mode(cfg, 1.5)
    with pytest.raises(ValueError):
        make_mode(cfg, 0.0)


def test_decay_constant_near_cutoff():
    # frozen: sqrt((1 - 0.99)(1 + 0.99)) to 60 digits; the factored
    # difference keeps full precision where k_c^2 - k^2 would cancel
    cfg = WaveguideConfig.normalized(1.0)
    mode = make_mode(cfg, 0.99)
    assert mode.beta == pytest.approx(0.14106735979665884, rel=1e-15)


def test_frozen_midband_coefficients():
    cfg = WaveguideConfig.normalized(1.0)
    mode = make_mode(cfg, 0.5)
    co = scatter_coeffs(mode)
    assert co.T.real == pytest.approx(T_RE, rel=1e-14)
    assert co.T.imag == pytest.approx(T_IM, rel=1e-14)
    assert co.T2 == pytest.approx(T2, rel=1e-14)
    assert co.A.real == pytest.approx(A_RE, rel=1e-14)
    assert co.A.imag == pytest.approx(A_IM, rel=1e-13)
    assert co.B.real == pytest.approx(B_RE, rel=1e-14)
    assert co.B.imag == pytest.approx(B_IM, rel=1e-14)
    assert co.ln_abs_T == pytest.approx(math.log(abs(co.T)), rel=1e-14)
    assert co.phase_T == pytest.approx(cmath.phase(co.T), rel=1e-14)


def test_thin_barrier_limit():
    # L -> 0 removes the barrier: T -> 1
    cfg = WaveguideConfig.normalized(1e-8)
    co = scatter_coeffs(make_mode(cfg, 0.5))
    assert abs(co.T - 1.0) < 1e-7


def test_deep_barrier_log_magnitude():
    # frozen: asymptotic -beta L + log(4u/(1+u^2)) at k = 0.6
    # (corrections are O(e^{-2 beta L}), far below double precision)
    cfg = WaveguideConfig.normalized(300.0)
    co = scatter_coeffs(make_mode(cfg, 0.6))
    assert co.ln_abs_T == pytest.approx(-239.34767481396031, rel=1e-13)
    assert co.T2 < 1e-200
    assert co.R2 == 1.0

    # at beta L = 1600 the transmitted amplitude underflows outright,
    # yet the log, the phase, and the reflection-side coefficients
    # must stay finite
    cfg = WaveguideConfig.normalized(2000.0)
    co = scatter_coeffs(make_mode(cfg, 0.6))
    assert co.T2 == 0.0
    assert co.R2 == 1.0
    assert co.ln_abs_T == pytest.approx(-1599.34767481396031, rel=1e-13)
    assert math.isfinite(co.phase_T)
    assert abs(co.B) == pytest.approx(1.2, rel=1e-12)


@given(
    f=st.floats(1e-6, 1.0 - 1e-9, allow_nan=False, exclude_max=True),
    kc_l=st.floats(1e-3, 300.0, allow_nan=False),
)
@settings(max_examples=200, deadline=None)
def test_unitarity_everywhere(f, kc_l):
    cfg = WaveguideConfig.normalized(kc_l)
    mode = make_mode(cfg, f * cutoff_frequency(cfg))
    co = scatter_coeffs(mode)
    assert abs(co.T2 + co.R2 - 1.0) <= 1e-12
    assert 0.0 <= co.T2 <= 1.0
    assert math.isfinite(co.ln_abs_T)
    assert math.isfinite(co.phase_T)


@given(f=st.floats(0.01, 0.99, allow_nan=False),
       kc_l=st.floats(0.1, 30.0, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_interior_matches_transmitted_wave_at_exit(f, kc_l):
    cfg = WaveguideConfig.normalized(kc_l)
    mode = make_mode(cfg, f * cutoff_frequency(cfg))
    co = scatter_coeffs(mode)
    grow = math.exp(mode.beta * cfg.L)
    decay = math.exp(-mode.beta * cfg.L)
    rhs = co.T * cmath.exp(1j * mode.k * cfg.L)
    assert abs(co.A * grow + co.B * decay - rhs) / abs(rhs) < 1e-10
    lhs_d = mode.beta * (co.A * grow - co.B * decay)
    assert abs(lhs_d - 1j * mode.k * rhs) / abs(rhs) < 1e-10


def test_units_travel_with_the_mode():
    cfg = WaveguideConfig(a=0.02286, b=0.01016, L=0.02, units=SI)
    omega = 0.5 * cutoff_frequency(cfg)
    mode = make_mode(cfg, omega)
    assert mode.config.units is SI
    assert mode.k == pytest.approx(omega / SI.c, rel=1e-15)
    assert NORMALIZED.c == 1.0
