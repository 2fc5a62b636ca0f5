"""Cycle energetics: corner energies, heats, mode classification, invariants.

Frozen expected values were computed independently with mpmath at 40 digits.
"""

import math

import numpy as np
import pytest

from ottokit.cycle import (
    Adiabaticity,
    Drive,
    Frequencies,
    OperationMode,
    Reservoirs,
    TempRegime,
    cop,
    coth_half,
    cycle_heats,
    efficiency,
    heats_and_work,
    mean_energies,
    operation_mode,
    sudden_switch_lambda,
)
from ottokit.errors import DomainError, OperationModeError


def test_reservoirs_validation():
    r = Reservoirs(beta_c=2.0, beta_h=1.0)
    assert r.tau == 0.5
    assert r.eta_carnot == 0.5
    assert r.zeta_carnot == 1.0
    with pytest.raises(DomainError):
        Reservoirs(beta_c=1.0, beta_h=1.0)  # degenerate baths rejected
    with pytest.raises(DomainError):
        Reservoirs(beta_c=0.5, beta_h=1.0)
    with pytest.raises(DomainError):
        Reservoirs(beta_c=1.0, beta_h=0.0)


def test_frequencies_validation():
    f = Frequencies(omega_c=1.0, omega_h=4.0)
    assert f.z == 0.25
    with pytest.raises(DomainError):
        Frequencies(omega_c=2.0, omega_h=2.0)
    with pytest.raises(DomainError):
        Frequencies(omega_c=-1.0, omega_h=2.0)


def test_adiabaticity_validation():
    assert Adiabaticity.adiabatic().value == 1.0
    lam = Adiabaticity.sudden_switch(Frequencies(1.0, 2.0))
    assert lam.value == pytest.approx(1.25, abs=0)
    assert lam.source is Drive.SUDDEN_SWITCH
    with pytest.raises(DomainError):
        Adiabaticity(0.99)


def test_coth_half_accuracy():
    # against math.cosh/sinh at moderate arguments
    for x in [1e-8, 1e-3, 0.5, 1.0, 10.0, 50.0]:
        assert coth_half(x) == pytest.approx(math.cosh(x / 2) / math.sinh(x / 2), rel=1e-14)
    assert coth_half(1e3) == 1.0
    arr = coth_half(np.array([1.0, 2.0, 800.0]))
    assert arr[0] == pytest.approx(coth_half(1.0))
    assert arr[2] == 1.0


def test_mean_energies_equal_frequency_boundary():
    # z = 1 is rejected by Frequencies; the raw core covers the boundary
    q_h, q_c, w = cycle_heats(2.0, 1.0, 1.0, 1.0, 1.0)
    assert w == pytest.approx(0.0, abs=1e-15)
    assert q_h == -q_c
    # corner energies at the boundary, lam = 1
    assert 0.5 * coth_half(2.0) == pytest.approx(0.6565176427496656, rel=1e-14)
    assert 0.5 * coth_half(1.0) == pytest.approx(1.0819767068693264, rel=1e-14)


def test_mean_energy_ratio_adiabatic():
    r = Reservoirs(2.0, 0.5)
    f = Frequencies(1.0, 3.0)
    h_a, h_b, _, _ = mean_energies(r, f, Adiabaticity.adiabatic())
    assert h_b / h_a == pytest.approx(f.omega_h / f.omega_c, rel=1e-14)


def test_mean_energies_frozen():
    # omega_c=1, omega_h=2, beta_c=1, beta_h=0.2, lam=1.25 (mpmath, 40 digits)
    r = Reservoirs(1.0, 0.2)
    f = Frequencies(1.0, 2.0)
    h = mean_energies(r, f, Adiabaticity(1.25))
    assert h[0] == pytest.approx(1.0819767068693264, rel=1e-14)
    assert h[1] == pytest.approx(2.7049417671733161, rel=1e-14)
    assert h[2] == pytest.approx(5.0664895634394727, rel=1e-14)
    assert h[3] == pytest.approx(3.1665559771496704, rel=1e-14)


def test_heats_and_work_frozen():
    # beta_c=1, beta_h=1/12, omega_c=3, omega_h=9, sudden lam=5/3
    r = Reservoirs(1.0, 1.0 / 12.0)
    f = Frequencies(3.0, 9.0)
    lam = Adiabaticity.sudden_switch(f)
    assert lam.value == pytest.approx(5.0 / 3.0, rel=1e-15)
    e = heats_and_work(r, f, lam)
    assert e.q_h == pytest.approx(4.2713607622522524, rel=1e-13)
    assert e.q_c == pytest.approx(-5.3190885825379497, rel=1e-13)
    assert e.w_ext == pytest.approx(-1.0477278202856974, rel=1e-13)
    assert e.w_in == -e.w_ext


def test_hight_max_work_at_sqrt_tau():
    # with lam=1 in the high-T limit the work (1-z)(z-tau)/z peaks at z=sqrt(tau)
    r = Reservoirs(2.0, 1.0)
    tau = r.tau

    def w_of_z(z):
        q_h, q_c, w = cycle_heats(r.beta_c, r.beta_h, z, 1.0, 1.0, TempRegime.HIGH_T)
        return w

    zs = np.linspace(tau + 1e-6, 1 - 1e-6, 20001)
    grid_best = max(w_of_z(z) for z in zs)
    assert w_of_z(math.sqrt(tau)) == pytest.approx(grid_best, rel=1e-7)


def test_efficiency_adiabatic_is_one_minus_z():
    r = Reservoirs(1.0, 0.1)
    f = Frequencies(2.0, 5.0)
    e = heats_and_work(r, f, Adiabaticity.adiabatic())
    assert efficiency(e) == pytest.approx(0.6, rel=1e-13)


def test_efficiency_requires_positive_work():
    r = Reservoirs(1.0, 0.9)
    f = Frequencies(1.0, 1.2)  # z = 0.8333 < tau = 0.9: no work extracted
    e = heats_and_work(r, f, Adiabaticity.adiabatic())
    with pytest.raises(OperationModeError):
        efficiency(e)


def test_cop_adiabatic_simple_form():
    r = Reservoirs(2.0, 1.0)
    f = Frequencies(1.0, 4.0)
    e = heats_and_work(r, f, Adiabaticity.adiabatic())
    assert cop(e) == pytest.approx(1.0 / 3.0, rel=1e-13)


def test_cop_at_half_compression():
    # z = 0.5 with cooling gives COP 1
    r = Reservoirs(4.0, 3.0)  # tau = 0.75 > z
    f = Frequencies(1.0, 2.0)
    e = heats_and_work(r, f, Adiabaticity.adiabatic())
    assert cop(e) == pytest.approx(1.0, rel=1e-13)


def test_cop_requires_cooling():
    r = Reservoirs(1.0, 0.5)
    f = Frequencies(3.0, 4.0)  # z = 0.75 > tau: engine, not fridge
    e = heats_and_work(r, f, Adiabaticity.adiabatic())
    with pytest.raises(OperationModeError):
        cop(e)


def test_operation_mode_examples():
    # adiabatic high-T, tau < z < 1 -> engine
    q = cycle_heats(2.0, 1.0, 0.7, 1.0, 1.0, TempRegime.HIGH_T)
    from ottokit.cycle import CycleEnergetics
    e = CycleEnergetics(0, 0, 0, 0, q[0], q[1], q[2])
    assert operation_mode(e) is OperationMode.ENGINE
    # sudden switch high-T, z^2 + 1 < 2 tau -> refrigerator
    z, tau = 0.5, 0.75
    lam = sudden_switch_lambda(z, 1.0)
    q = cycle_heats(1.0, tau, z, 1.0, lam, TempRegime.HIGH_T)
    e = CycleEnergetics(0, 0, 0, 0, q[0], q[1], q[2])
    assert operation_mode(e) is OperationMode.REFRIGERATOR
    # z = tau exactly: boundary, no work extracted
    q = cycle_heats(2.0, 1.0, 0.5, 1.0, 1.0, TempRegime.HIGH_T)
    e = CycleEnergetics(0, 0, 0, 0, q[0], q[1], q[2])
    assert operation_mode(e) is not OperationMode.ENGINE
    assert abs(e.w_ext) < 1e-15


def test_first_law_random_inputs():
    rng = np.random.default_rng(20240811)
    for _ in range(100):
        beta_h, beta_c = np.sort(rng.uniform(0.05, 5.0, 2))
        omega_c, omega_h = np.sort(rng.uniform(0.05, 20.0, 2))
        if beta_c == beta_h or omega_c == omega_h:
            continue
        lam = rng.uniform(1.0, 3.0)
        for regime in TempRegime:
            e = heats_and_work(Reservoirs(beta_c, beta_h),
                               Frequencies(omega_c, omega_h),
                               Adiabaticity(lam), regime)
            scale = max(abs(e.q_h), abs(e.q_c), 1e-300)
            assert abs(e.q_h + e.q_c - e.w_ext) <= 1e-12 * scale
            assert e.q_h == pytest.approx(e.h_c - e.h_b, rel=1e-12, abs=1e-15)
            assert e.q_c == pytest.approx(e.h_a - e.h_d, rel=1e-12, abs=1e-15)


def test_regime_convergence():
    # exact -> high-T as beta*omega -> 0
    r = Reservoirs(2e-4, 1e-4)
    f = Frequencies(1.0, 5.0)
    lam = Adiabaticity(1.1)
    exact = np.array(mean_energies(r, f, lam, TempRegime.EXACT))
    hight = np.array(mean_energies(r, f, lam, TempRegime.HIGH_T))
    assert np.all(np.abs(exact - hight) / np.abs(exact) < 1e-3)
    # exact -> low-T as beta*omega -> inf
    r = Reservoirs(30.0, 15.0)
    f = Frequencies(1.0, 2.0)
    exact = np.array(mean_energies(r, f, lam, TempRegime.EXACT))
    lowt = np.array(mean_energies(r, f, lam, TempRegime.LOW_T))
    assert np.all(np.abs(exact - lowt) < 1e-8)


def test_adiabatic_efficiency_temperature_independent():
    rng = np.random.default_rng(7)
    f = Frequencies(1.3, 2.6)  # z = 0.5
    for _ in range(100):
        beta_h = rng.uniform(0.01, 2.0)
        beta_c = beta_h * rng.uniform(2.01, 50.0)  # tau < 1/2 keeps z > tau
        e = heats_and_work(Reservoirs(beta_c, beta_h), f, Adiabaticity.adiabatic())
        assert efficiency(e) == pytest.approx(0.5, rel=1e-12)


def test_work_strictly_decreasing_in_lambda():
    r = Reservoirs(2.0, 0.4)
    f = Frequencies(1.0, 3.0)
    lams = np.linspace(1.0, 4.0, 40)
    works = [heats_and_work(r, f, Adiabaticity(l)).w_ext for l in lams]
    assert all(a > b for a, b in zip(works, works[1:]))


def test_carnot_bounds_adiabatic():
    rng = np.random.default_rng(99)
    n_engine = n_fridge = 0
    while n_engine < 60 or n_fridge < 60:
        beta_h, beta_c = np.sort(rng.uniform(0.05, 5.0, 2))
        omega_c, omega_h = np.sort(rng.uniform(0.05, 15.0, 2))
        if beta_c == beta_h or omega_c == omega_h:
            continue
        r = Reservoirs(beta_c, beta_h)
        e = heats_and_work(r, Frequencies(omega_c, omega_h), Adiabaticity.adiabatic())
        mode = operation_mode(e)
        if mode is OperationMode.ENGINE:
            assert efficiency(e) <= r.eta_carnot + 1e-12
            n_engine += 1
        elif mode is OperationMode.REFRIGERATOR:
            assert cop(e) <= r.zeta_carnot + 1e-12
            n_fridge += 1
