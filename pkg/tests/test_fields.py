import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from evmodes.fields import (
    _stable_densities,
    eval_fields,
    integrated_transport,
    poynting_density,
    subluminality_sweep,
    transport_by_quadrature,
)
from evmodes.units import SI
from evmodes.waveguide import (
    WaveguideConfig,
    cutoff_frequency,
    make_mode,
    scatter_coeffs,
)


def _mode(kc_l=1.0, f=0.5):
    cfg = WaveguideConfig.normalized(kc_l)
    mode = make_mode(cfg, f * cutoff_frequency(cfg))
    return mode, scatter_coeffs(mode)


def test_frozen_transport_values():
    # frozen: 60-digit mpmath of the closed forms at k_c L = 1,
    # k = 0.5, z = 0.3, h0 = 1, normalized units
    mode, co = _mode()
    full = integrated_transport(mode, co, 0.3, "full")
    var = integrated_transport(mode, co, 0.3, "variant")
    assert full.P_z == pytest.approx(0.13548900688491263, rel=1e-14)
    assert full.W == pytest.approx(0.70619293330961894, rel=1e-14)
    assert full.v_bar == pytest.approx(0.19185834422037420, rel=1e-14)
    assert var.W == pytest.approx(0.28535196321235315, rel=1e-14)
    assert var.v_bar == pytest.approx(0.47481364893951845, rel=1e-14)
    assert var.P_z == full.P_z


def test_closed_form_agrees_with_field_integration():
    for kc_l in (0.5, 2.0, 10.0):
        mode, co = _mode(kc_l, 0.35)
        for z in (0.11 * mode.config.L, 0.73 * mode.config.L, mode.config.L):
            for density in ("full", "variant"):
                cf = integrated_transport(mode, co, z, density)
                qd = transport_by_quadrature(mode, co, z, density)
                assert cf.P_z == pytest.approx(qd.P_z, rel=1e-11)
                assert cf.W == pytest.approx(qd.W, rel=1e-11)
                assert cf.v_bar == pytest.approx(qd.v_bar, rel=1e-11)


def test_power_flux_does_not_depend_on_z():
    mode, co = _mode(5.0, 0.9)
    values = [transport_by_quadrature(mode, co, z, "full").P_z
              for z in np.linspace(0.01, 0.99, 15) * mode.config.L]
    spread = (max(values) - min(values)) / abs(np.mean(values))
    assert spread < 1e-10


def test_variant_velocity_reaches_c_at_exit():
    # the variant bracket collapses to (k_c^2/beta^2)(1 - (1-k^2/k_c^2)^2
    # / ...) such that v_bar(L) = c for every frequency
    for f in (0.05, 0.3, 1.0 / math.sqrt(2.0), 0.95):
        mode, co = _mode(2.0, f)
        tr = integrated_transport(mode, co, mode.config.L, "variant")
        assert tr.v_bar == pytest.approx(mode.config.units.c, rel=1e-12)


def test_midband_exit_spot_values():
    # k^2 = k_c^2 / 2 at z = L: full density gives c/2, variant gives c
    mode, co = _mode(1.0, 1.0 / math.sqrt(2.0))
    L = mode.config.L
    assert integrated_transport(mode, co, L, "full").v_bar \
        == pytest.approx(0.5, rel=1e-12)
    assert integrated_transport(mode, co, L, "variant").v_bar \
        == pytest.approx(1.0, rel=1e-12)


def test_fields_vanish_on_side_walls():
    mode, co = _mode()
    a = mode.config.a
    s = eval_fields(mode, co, np.array([0.0, a]), 0.4, 0.0)
    assert np.max(np.abs(s.E_y)) < 1e-15
    assert np.max(np.abs(s.H_x)) < 1e-15
    assert np.min(np.abs(s.H_z)) > 0.0


def test_position_validation():
    mode, co = _mode()
    with pytest.raises(ValueError):
        eval_fields(mode, co, -0.1, 0.5, 0.0)
    with pytest.raises(ValueError):
        eval_fields(mode, co, 0.5, 1.5 * mode.config.L, 0.0)
    with pytest.raises(ValueError):
        integrated_transport(mode, co, -0.2, "full")
    with pytest.raises(ValueError):
        integrated_transport(mode, co, 0.5, "bogus")


def test_pointwise_densities_match_field_products():
    # the stabilized four-product split must agree with the direct
    # |field|^2 assembly where no cancellation is in play
    mode, co = _mode(1.0, 0.5)
    x, z = 0.7, 0.4
    sample = eval_fields(mode, co, x, z, 0.0)
    direct = poynting_density(sample)
    stable = _stable_densities(mode, co, x, z)
    assert direct.S_z == pytest.approx(stable.S_z, rel=1e-9)
    assert direct.w == pytest.approx(stable.w, rel=1e-12)
    assert direct.w_variant == pytest.approx(stable.w_variant, rel=1e-12)


def test_full_density_dominates_variant():
    # w = w_variant + mu0 |H_z|^2 / 4, so the full form can't be smaller
    mode, co = _mode(3.0, 0.6)
    for z in (0.2, 0.9, 2.4):
        dens = _stable_densities(mode, co, np.linspace(0.0, mode.config.a, 33), z)
        assert np.all(dens.w >= dens.w_variant)
        tr_full = integrated_transport(mode, co, z, "full")
        tr_var = integrated_transport(mode, co, z, "variant")
        assert tr_full.W >= tr_var.W


@given(h0=st.floats(1e-3, 1e3, allow_nan=False),
       f=st.floats(0.05, 0.95, allow_nan=False))
@settings(max_examples=50, deadline=None)
def test_amplitude_scaling(h0, f):
    mode, co = _mode(1.5, f)
    base = integrated_transport(mode, co, 0.8, "full", h0=1.0)
    scaled = integrated_transport(mode, co, 0.8, "full", h0=h0)
    # v_bar is a ratio of two h0^2 quantities, so it can't move at all
    assert scaled.v_bar == base.v_bar
    assert scaled.P_z == pytest.approx(h0 * h0 * base.P_z, rel=1e-13)
    assert scaled.W == pytest.approx(h0 * h0 * base.W, rel=1e-13)


def test_sweep_grid_validation():
    cfg = WaveguideConfig.normalized(1.0)
    with pytest.raises(ValueError):
        subluminality_sweep(cfg, [0.5, 1.0], [0.5])  # omega at cutoff
    with pytest.raises(ValueError):
        subluminality_sweep(cfg, [0.5], [0.0])  # z = 0 excluded
    with pytest.raises(ValueError):
        subluminality_sweep(cfg, [], [0.5])


def test_sweep_is_thread_count_invariant():
    cfg = WaveguideConfig.normalized(2.0)
    ofr = np.linspace(0.05, 0.95, 12)
    zfr = np.linspace(0.1, 1.0, 7)
    serial = subluminality_sweep(cfg, ofr, zfr, density="variant", threads=1)
    parallel = subluminality_sweep(cfg, ofr, zfr, density="variant", threads=4)
    assert serial.rows == parallel.rows
    assert serial.max_ratio == parallel.max_ratio


def test_sweep_stays_subluminal_for_both_densities():
    cfg = WaveguideConfig.normalized(1.0)
    ofr = np.linspace(0.01, 0.99, 33)
    zfr = np.linspace(0.05, 1.0, 9)
    for density in ("full", "variant"):
        res = subluminality_sweep(cfg, ofr, zfr, density=density)
        assert res.passed
        assert res.max_ratio <= 1.0 + 1e-9


def test_si_units_keep_velocity_below_c():
    cfg = WaveguideConfig(a=0.02286, b=0.01016, L=0.03, units=SI)
    mode = make_mode(cfg, 0.6 * cutoff_frequency(cfg))
    co = scatter_coeffs(mode)
    tr = integrated_transport(mode, co, 0.8 * cfg.L, "full")
    assert 0.0 < tr.v_bar < SI.c
