"""Acceptance gate: the eleven product-level criteria.

One test per criterion, each printing a PASS/FAIL line with the
measured margin.  Criteria 1-10 read the consolidated verification
report (criterion 5 spans two checks, criterion 10 three); criterion 11
exercises the CLI end to end.  The whole file completes well inside the
desk-scale budget.
"""

import json

import pytest

from evmodes.cli import main
from evmodes.verify import run_verification


@pytest.fixture(scope="module")
def report():
    return run_verification()


def _check(report, name, criterion):
    by_name = {c.name: c for c in report.checks}
    c = by_name[name]
    state = "PASS" if c.passed else "FAIL"
    print(f"criterion {criterion:>2} [{name}]: {state} "
          f"(measured {c.measured:.3e}, tolerance {c.tolerance:.3e})")
    return c


def test_criterion_01_unitarity(report):
    c = _check(report, "scatter_unitarity", 1)
    assert c.tolerance == 1e-12
    assert c.measured <= 1e-12
    assert c.passed


def test_criterion_02_boundary_matching(report):
    c = _check(report, "boundary_matching", 2)
    assert c.tolerance == 1e-10
    assert c.measured <= 1e-10
    assert c.passed


def test_criterion_03_power_conservation(report):
    c = _check(report, "power_conservation", 3)
    assert c.tolerance == 1e-10
    assert c.measured <= 1e-10
    assert c.passed


def test_criterion_04_closed_form_oracle_agreement(report):
    c = _check(report, "transport_closed_form", 4)
    assert c.tolerance == 1e-10
    assert c.measured <= 1e-10
    assert c.passed


def test_criterion_05_subluminality(report):
    c = _check(report, "subluminality", 5)
    assert c.tolerance == 1.0 + 1e-9
    assert c.measured <= 1.0 + 1e-9
    assert c.passed
    spots = _check(report, "midband_exit_velocities", 5)
    assert spots.tolerance == 1e-6
    assert spots.measured <= 1e-6
    assert spots.passed


def test_criterion_06_propagator_anchor(report):
    c = _check(report, "coincidence_anchor", 6)
    assert c.tolerance == 1e-8
    assert c.measured <= 1e-8
    assert c.passed


def test_criterion_07_spacelike_nonvanishing(report):
    c = _check(report, "spacelike_nonvanishing", 7)
    assert c.tolerance == 10.0
    assert c.measured > 10.0
    assert c.passed


def test_criterion_08_timelike_asymptotics(report):
    c = _check(report, "timelike_decay_fit", 8)
    # measured is the worst of |p + 0.5|/0.05 and |rate|/0.01
    assert c.measured <= 1.0
    assert c.passed


def test_criterion_09_spacelike_fit_reported_not_asserted(report):
    c = _check(report, "spacelike_decay_fit", 9)
    assert c.measured <= 0.05  # residual: the fit must complete cleanly
    assert c.passed
    note = next(n for n in report.notes if n.startswith("spacelike axis fit"))
    assert "exponent" in note and "rate" in note
    assert "not asserted" in note


def test_criterion_10_special_function_identities(report):
    for name in ("bessel_wronskian", "bessel_recurrence"):
        c = _check(report, name, 10)
        assert c.tolerance == 1e-10
        assert c.measured <= 1e-10
        assert c.passed
    c = _check(report, "phase_integral_real_part", 10)
    assert c.measured <= 1.0  # within max(10 est_error, 1e-12) everywhere
    assert c.passed


def test_criterion_11_determinism(tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["verify", "--out", str(r1)]) == 0
    assert main(["verify", "--out", str(r2)]) == 0
    identical = r1.read_bytes() == r2.read_bytes()
    print(f"criterion 11 [verify_determinism]: "
          f"{'PASS' if identical else 'FAIL'} "
          f"({r1.stat().st_size} bytes each)")
    assert identical
    doc = json.loads(r1.read_text())
    assert doc["meta"]["passed"] is True
