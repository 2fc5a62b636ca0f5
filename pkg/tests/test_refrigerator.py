"""Refrigerator-branch closed forms vs oracles, cooling window, cubic machinery."""

import math

import numpy as np
import pytest

from ottokit import refrigerator as fr
from ottokit.cycle import Reservoirs, TempRegime, cycle_heats, sudden_switch_lambda
from ottokit.errors import (
    CoolingWindowError,
    DomainError,
    TauTooSmallError,
    ValidityRegionError,
)
from ottokit.numerics import Bracket, is_unimodal, maximize_1d, maximize_2d


# ---------------------------------------------------------------------------
# quasistatic limits
# ---------------------------------------------------------------------------

def test_zeta_chi_ht_values():
    assert fr.zeta_chi_ht(3.0) == pytest.approx(1.0, rel=1e-15)
    assert fr.zeta_chi_ht(1e-14) == pytest.approx(0.0, abs=1e-7)
    assert fr.zeta_chi_ht(1.0) == pytest.approx(math.sqrt(2.0) - 1.0, rel=1e-15)
    with pytest.raises(DomainError):
        fr.zeta_chi_ht(0.0)


def test_zeta_chi_ht_matches_oracle():
    for zeta_c in (0.3, 1.0, 4.0):
        tau = zeta_c / (1.0 + zeta_c)
        res = maximize_1d(lambda z: fr.chi_ht(z, tau), Bracket(1e-12, tau), tol=1e-9)
        zeta_at_opt = res.arg[0] / (1.0 - res.arg[0])
        assert fr.zeta_chi_ht(zeta_c) == pytest.approx(zeta_at_opt, abs=1e-8)


def test_chi_lt_values():
    r = Reservoirs(1.0, 0.5)
    # matched occupation exponents: no flux asymmetry
    assert fr.chi_lt(6.0, 12.0, r) == pytest.approx(0.0, abs=1e-18)
    # frozen: beta_c=1, beta_h=0.5, omega_c=6, omega_h=14
    assert fr.chi_lt(6.0, 14.0, r) == pytest.approx(0.0070509159500033, rel=1e-13)
    with pytest.raises(ValidityRegionError):
        fr.chi_lt(1.0, 3.0, r)
    # omega_c -> 0 kills the cooling load (guard off to reach the region)
    assert fr.chi_lt(1e-8, 12.0, r, guard=False) == pytest.approx(0.0, abs=1e-15)


def test_zeta_chi_lt_frozen_roots():
    assert fr.zeta_chi_lt(1.0) == pytest.approx(0.4306249038211613, rel=1e-12)
    assert fr.zeta_chi_lt(5.0) == pytest.approx(1.4882924624707286, rel=1e-12)
    assert fr.zeta_chi_lt(0.2) == pytest.approx(0.0998596245560323, rel=1e-12)
    assert fr.zeta_chi_lt(5.0) < 5.0


def test_zeta_chi_lt_ordering_vs_ht():
    # low-T root sits slightly above the high-T optimum
    for zeta_c in (0.2, 1.0, 5.0):
        lt, ht = fr.zeta_chi_lt(zeta_c), fr.zeta_chi_ht(zeta_c)
        assert lt > ht
        assert lt - ht < 0.1 * max(ht, 1.0)


def test_zeta_chi_lt_against_two_parameter_optimum():
    r = Reservoirs(1.0, 0.5)
    zeta_c = r.zeta_carnot

    def objective(p):
        wc, wh = p
        if not (0.0 < wc < wh):
            return -1e30
        return fr.chi_lt(wc, wh, r, guard=False)

    res = maximize_2d(objective, start=(5.0, 10.0), scale=1.0, tol=1e-13)
    wc, wh = res.arg
    zeta_2d = wc / (wh - wc)
    assert zeta_2d == pytest.approx(fr.zeta_chi_lt(zeta_c), abs=1e-6)
    # stationarity conditions at the optimum
    big_e = math.exp(r.beta_h * wh - r.beta_c * wc)
    cond_h = 1.0 + r.beta_c * wc * zeta_c / (zeta_2d * (1.0 + zeta_c))
    cond_c = 1.0 + r.beta_c * wc / (2.0 + zeta_2d - r.beta_c * wc)
    assert abs(big_e - cond_h) < 1e-6
    assert abs(big_e - cond_c) < 1e-6


# ---------------------------------------------------------------------------
# sudden switch
# ---------------------------------------------------------------------------

def test_ss_cooling_values():
    q_c, w_in = fr.ss_cooling(0.3, 0.6)  # frozen
    assert q_c == pytest.approx(0.055, rel=1e-14)
    assert w_in == pytest.approx(2.5783333333333333, rel=1e-14)
    # window boundary: cooling load vanishes
    tau = 0.7
    q_c, _ = fr.ss_cooling(math.sqrt(2 * tau - 1.0), tau)
    assert q_c == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(TauTooSmallError):
        fr.ss_cooling(0.1, 0.5)
    with pytest.raises(CoolingWindowError):
        fr.ss_cooling(0.8, 0.6)


def test_ss_cooling_consistent_with_cycle_core():
    tau, z, beta_h = 0.6, 0.3, 2.0
    beta_c = beta_h / tau
    lam = sudden_switch_lambda(z, 1.0)
    q_h, q_c, w = cycle_heats(beta_c, beta_h, z, 1.0, lam, TempRegime.HIGH_T)
    q_c_ss, w_in_ss = fr.ss_cooling(z, tau)
    assert q_c * beta_h == pytest.approx(q_c_ss, rel=1e-12)
    assert -w * beta_h == pytest.approx(w_in_ss, rel=1e-12)


def test_zeta_ss_values():
    tau = 0.75
    assert fr.zeta_ss(math.sqrt(2 * tau - 1.0), tau) == pytest.approx(0.0, abs=1e-15)
    assert fr.zeta_ss(0.5, tau) == pytest.approx(1.0 / 6.0, rel=1e-14)
    q_c, w_in = fr.ss_cooling(0.5, tau)
    assert fr.zeta_ss(0.5, tau) == pytest.approx(q_c / w_in, rel=1e-13)


def test_zeta_max_ss_values():
    assert fr.zeta_max_ss(1.0) == 0.0
    assert fr.zeta_max_ss(3.0) == pytest.approx(10.0 - 4.0 * math.sqrt(6.0), rel=1e-13)
    with pytest.raises(TauTooSmallError):
        fr.zeta_max_ss(0.99)
    for zeta_c in np.linspace(1.001, 40.0, 50):
        assert fr.zeta_max_ss(zeta_c) < zeta_c


def test_zeta_max_ss_matches_oracle():
    for zeta_c in (1.5, 3.0, 9.0):
        tau = zeta_c / (1.0 + zeta_c)
        hi = math.sqrt(2.0 * tau - 1.0)
        res = maximize_1d(lambda z: fr.zeta_ss(z, tau),
                          Bracket(1e-9, hi * (1 - 1e-12)), tol=1e-9)
        assert fr.zeta_max_ss(zeta_c) == pytest.approx(res.value, abs=1e-8)
    # argmax COP at tau=0.75 equals the closed form at zeta_c = 3
    tau = 0.75
    res = maximize_1d(lambda z: fr.zeta_ss(z, tau),
                      Bracket(1e-9, math.sqrt(0.5) * (1 - 1e-12)), tol=1e-9)
    assert res.value == pytest.approx(fr.zeta_max_ss(3.0), abs=1e-8)


def test_chi_ss_optimum_z():
    # frozen cubic root at tau = 0.75: y in (0, 0.5)
    assert fr.chi_ss_optimum_z(0.75) ** 2 == pytest.approx(0.2339555568810220, rel=1e-12)
    y = fr.chi_ss_optimum_z(0.500001) ** 2
    assert 0.0 < y < 2 * 0.500001 - 1.0
    with pytest.raises(TauTooSmallError):
        fr.chi_ss_optimum_z(0.5)


def test_chi_ss_optimum_matches_oracle():
    for tau in (0.6, 0.75, 0.9):
        hi = math.sqrt(2.0 * tau - 1.0)
        res = maximize_1d(lambda z: fr.chi_ss(z, tau),
                          Bracket(1e-9, hi * (1 - 1e-12)), tol=1e-9)
        assert fr.chi_ss_optimum_z(tau) == pytest.approx(res.arg[0], abs=1e-8)


def test_ss_compression_from_cop_roundtrip():
    tau = 0.75
    for zeta in (0.05, 0.1, 0.2):
        y = fr.ss_compression_from_cop(zeta, tau)
        assert fr.zeta_ss(math.sqrt(y), tau) == pytest.approx(zeta, rel=1e-12)


def test_zeta_chi_ss_two_path():
    assert fr.zeta_chi_ss(0.75) == pytest.approx(0.1574513848532023, rel=1e-12)
    assert fr.zeta_chi_ss(0.9) == pytest.approx(0.7247546841131468, rel=1e-12)
    for tau in np.linspace(0.51, 0.99, 25):
        direct = fr.zeta_ss(fr.chi_ss_optimum_z(tau), tau)
        assert abs(fr.zeta_chi_ss(tau) - direct) < 1e-8
    assert fr.zeta_chi_ss(0.5001) == pytest.approx(0.0, abs=1e-3)


def test_zeta_chi_ss_below_adiabatic():
    for tau in (0.6, 0.75, 0.9):
        zeta_c = tau / (1.0 - tau)
        assert fr.zeta_chi_ss(tau) < fr.zeta_chi_ht(zeta_c)


def test_residual_root_unique_in_window():
    # dense scan: exactly one sign change of the COP residual inside the window
    tau = 0.75
    hi = fr.zeta_max_ss(tau / (1 - tau))
    zs = np.linspace(1e-6, hi - 1e-9, 20001)
    vals = np.array([fr.chi_ss_cop_residual(z, tau) for z in zs])
    assert np.count_nonzero(np.diff(np.sign(vals))) == 1


def test_cubic_discriminant_positive():
    for tau in np.linspace(0.001, 0.999, 1000):
        d = 108.0 * (1.0 - tau) ** 3 * tau
        assert d > 0.0


def test_cop_bound_on_random_window_sample():
    rng = np.random.default_rng(23)
    taus = rng.uniform(0.501, 0.999, 100000)
    ys = (2 * taus - 1.0) * rng.uniform(0.0, 1.0, taus.size)
    ys = np.maximum(ys, 1e-12)
    zetas = ys * (2 * taus - ys - 1.0) / ((ys - 1.0) * (ys - taus))
    bounds = np.array([fr.zeta_max_ss(t / (1 - t)) for t in taus])
    assert np.all(zetas <= bounds + 1e-12)


def test_chi_objectives_unimodal():
    assert is_unimodal(lambda z: fr.chi_ht(z, 0.5), 1e-9, 0.5)
    assert is_unimodal(lambda z: fr.chi_ss(z, 0.75), 1e-9, math.sqrt(0.5) - 1e-9)
    assert is_unimodal(lambda z: fr.zeta_ss(z, 0.75), 1e-9, math.sqrt(0.5) - 1e-9)
