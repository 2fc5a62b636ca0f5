"""Engine-branch trade-off analysis: efficient-work objectives and their optima.

The trade-off objective for the engine is the efficient work W_eta =
efficiency x extracted work.  Closed forms are provided for both driving
limits (quasistatic and instantaneous quench) and both temperature limits;
each has an independent numerical oracle in :mod:`ottokit.numerics` and the
two are held to agree by the test suite.

Reduced (dimensionless) objectives carry units of 1/beta_h, which cancels
in every efficiency, ratio and ordering statement.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cycle import Drive, Reservoirs
from .errors import ComplexResidueError, DomainError, ValidityRegionError

_COMPLEX_RESIDUE_TOL = 1e-9
_VALIDITY_MIN_EXPONENT = 5.0


# ---------------------------------------------------------------------------
# quasistatic driving, high-temperature limit
# ---------------------------------------------------------------------------

def work_ht(z: float, tau: float) -> float:
    """Extracted work (units 1/beta_h), quasistatic high-T: (1-z)(z-tau)/z."""
    return (1.0 - z) * (z - tau) / z


def efficient_work_ht(z: float, r: Reservoirs) -> float:
    """W_eta = (1-z) [ (1-z)/beta_h + (z-1)/(beta_c z) ] on z in [tau, 1]."""
    tau = r.tau
    if not (tau <= z <= 1.0):
        raise DomainError("positive_work_window", f"z={z} outside [{tau}, 1]")
    return (1.0 - z) * ((1.0 - z) / r.beta_h + (z - 1.0) / (r.beta_c * z))


def efficient_work_ht_reduced(z: float, tau: float) -> float:
    """(1-z)^2 (z-tau)/z, the 1/beta_h-reduced efficient work."""
    return (1.0 - z) ** 2 * (z - tau) / z


def eta_mew_ht(eta_c: float) -> float:
    """Efficiency at maximum efficient work, quasistatic high-T limit.

    1 - (1/4)(1-eta_c)(1 + sqrt(1 + 8/(1-eta_c))); expands as
    2 eta_c/3 + 2 eta_c^2/27 + 10 eta_c^3/243 + O(eta_c^4).
    """
    _check_eta_c(eta_c)
    c = 1.0 - eta_c
    return 1.0 - 0.25 * c * (1.0 + math.sqrt(1.0 + 8.0 / c))


def eta_w_ht(eta_c: float) -> float:
    """Efficiency at maximum work, high-T limit: 1 - sqrt(1 - eta_c)."""
    _check_eta_c(eta_c)
    return 1.0 - math.sqrt(1.0 - eta_c)


# ---------------------------------------------------------------------------
# quasistatic driving, low-temperature limit
# ---------------------------------------------------------------------------

def efficient_work_lt(omega_c: float, omega_h: float, r: Reservoirs, *,
                      guard: bool = True) -> float:
    """W_eta = (omega_h-omega_c)^2/omega_h (e^{-beta_h omega_h} - e^{-beta_c omega_c}).

    Valid where both occupation exponents beta_i omega_i are large; with
    ``guard`` (the default) violations of beta_i omega_i >= 5 raise.  The
    formula's own stationary point lies at beta_i omega_i of order 2, so
    the oracle cross-checks evaluate with guard=False.
    """
    _check_lt_inputs(omega_c, omega_h, r, guard)
    return ((omega_h - omega_c) ** 2 / omega_h
            * (math.exp(-r.beta_h * omega_h) - math.exp(-r.beta_c * omega_c)))


def work_lt(omega_c: float, omega_h: float, r: Reservoirs, *,
            guard: bool = True) -> float:
    """Extracted work in the low-T limit: (omega_h-omega_c)(e^{-x_h} - e^{-x_c})."""
    _check_lt_inputs(omega_c, omega_h, r, guard)
    return ((omega_h - omega_c)
            * (math.exp(-r.beta_h * omega_h) - math.exp(-r.beta_c * omega_c)))


def mew_lt_residual(eta: float, eta_c: float) -> float:
    """Stationarity residual whose root is the low-T efficiency at max W_eta.

    (2 eta_c - eta)(eta - eta_c)/(eta (1-eta_c)) - ln[2(1-eta_c)/(2-eta)].
    """
    return ((2.0 * eta_c - eta) * (eta - eta_c) / (eta * (1.0 - eta_c))
            - math.log(2.0 * (1.0 - eta_c) / (2.0 - eta)))


def eta_mew_lt(eta_c: float, tol: float = 1e-14) -> float:
    """Efficiency at maximum efficient work, low-T limit (transcendental root).

    Unique root in (0, eta_c); expands as 2 eta_c/3 + 2 eta_c^2/27
    + 11 eta_c^3/243 + O(eta_c^4).
    """
    from .numerics import Bracket, find_root
    _check_eta_c(eta_c)
    return find_root(lambda e: mew_lt_residual(e, eta_c),
                     Bracket(1e-9 * eta_c, eta_c * (1.0 - 1e-12)), tol=tol)


def eta_w_lt(eta_c: float) -> float:
    """Efficiency at maximum work, low-T limit.

    eta_c^2 / (eta_c - (1-eta_c) ln(1-eta_c)); expands as eta_c/2
    + eta_c^2/8 + 7 eta_c^3/96 + O(eta_c^4).
    """
    _check_eta_c(eta_c)
    return eta_c ** 2 / (eta_c - (1.0 - eta_c) * math.log(1.0 - eta_c))


# ---------------------------------------------------------------------------
# instantaneous quench (sudden switch), high-temperature limit
# ---------------------------------------------------------------------------

def ss_energetics(z: float, tau: float):
    """(q_h, w_ext) in units 1/beta_h for sudden-switch driving.

    q_h = 1 - tau (z^2+1)/(2 z^2),  w_ext = (1-z^2)(z^2-tau)/(2 z^2);
    positive work requires z^2 >= tau.
    """
    _check_ss_window(z, tau)
    y = z * z
    q_h = 1.0 - tau * (y + 1.0) / (2.0 * y)
    w_ext = (1.0 - y) * (y - tau) / (2.0 * y)
    return q_h, w_ext


def eta_ss(z: float, tau: float) -> float:
    """Sudden-switch efficiency (1-z^2)(z^2-tau)/((2-tau) z^2 - tau)."""
    _check_ss_window(z, tau)
    y = z * z
    return (1.0 - y) * (y - tau) / ((2.0 - tau) * y - tau)


def efficient_work_ss(z: float, tau: float) -> float:
    """Sudden-switch efficient work (units 1/beta_h)."""
    _check_ss_window(z, tau)
    y = z * z
    return (1.0 - y) ** 2 * (y - tau) ** 2 / (2.0 * y * ((2.0 - tau) * y - tau))


def work_ss(z: float, tau: float) -> float:
    """Sudden-switch extracted work (units 1/beta_h)."""
    _check_ss_window(z, tau)
    y = z * z
    return (1.0 - y) * (y - tau) / (2.0 * y)


def eta_ss_max(eta_c: float) -> float:
    """Largest sudden-switch efficiency at given eta_c.

    (3 - eta_c - 2 sqrt(2(1-eta_c))) eta_c / (1+eta_c)^2; never exceeds
    eta_c/2, with equality only in the eta_c -> 1 limit.
    """
    _check_eta_c(eta_c)
    return ((3.0 - eta_c - 2.0 * math.sqrt(2.0 * (1.0 - eta_c))) * eta_c
            / (1.0 + eta_c) ** 2)


def eta_w_ss(eta_c: float) -> float:
    """Sudden-switch efficiency at maximum work: (1-s)/(2+s), s=sqrt(1-eta_c)."""
    _check_eta_c(eta_c)
    s = math.sqrt(1.0 - eta_c)
    return (1.0 - s) / (2.0 + s)


def _ss_radical_scale(tau: float) -> complex:
    # (13-8 tau) tau - 16 < 0 on (0,1): the cube root only exists as the
    # principal value of a complex radical.
    rad = (13.0 - 8.0 * tau) * tau - 16.0
    inner = ((1.0 - tau) * (2.0 - tau) * cmath.sqrt(rad) * tau ** 1.5
             + tau ** 4 - 2.0 * tau ** 2)
    return inner ** (1.0 / 3.0)


def _optimal_y_ss_complex(tau: float) -> complex:
    a = _ss_radical_scale(tau)
    return ((5.0 * tau ** 2 - 2.0 * tau ** 3 - 4.0 * tau - tau * a - a * a)
            / (2.0 * (tau - 2.0) * a))


def optimal_z_ss(tau: float) -> float:
    """Compression ratio maximizing the sudden-switch efficient work.

    Evaluated through a complex cube root (principal branch); the imaginary
    residue of z^2 must stay below 1e-9 or ComplexResidueError is raised.
    """
    _check_tau(tau)
    y = _optimal_y_ss_complex(tau)
    if abs(y.imag) > _COMPLEX_RESIDUE_TOL:
        raise ComplexResidueError("real_result", f"imag(z^2)={y.imag} at tau={tau}")
    return math.sqrt(y.real)


def _eta_mew_ss_complex(tau: float) -> complex:
    a = _ss_radical_scale(tau)
    b = tau * (2.0 * tau - 5.0) + 4.0
    return (-(a * a + a * tau * (2.0 * tau - 3.0) + b * tau)
            * (a * a + a * (3.0 * tau - 4.0) + b * tau)
            / (2.0 * a * (tau - 2.0) ** 2 * (a * a - a * tau + b * tau)))


def eta_mew_ss(tau: float) -> float:
    """Sudden-switch efficiency at maximum efficient work (closed form).

    Equals eta_ss(optimal_z_ss(tau), tau); kept as an independent expression
    so the two-path identity is a real check.
    """
    _check_tau(tau)
    v = _eta_mew_ss_complex(tau)
    if abs(v.imag) > _COMPLEX_RESIDUE_TOL:
        raise ComplexResidueError("real_result", f"imag(eta)={v.imag} at tau={tau}")
    return v.real


# ---------------------------------------------------------------------------
# fractional loss of work and work-ratio comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LossReport:
    """Fractional loss of work R = eta_c/eta - 1 at an operating point."""

    ratio: float
    eta: float
    eta_carnot: float


def loss_report(eta: float, eta_c: float) -> LossReport:
    """R = work lost / work extracted = eta_c/eta - 1, for 0 < eta <= eta_c < 1."""
    if not (0.0 < eta <= eta_c < 1.0):
        raise DomainError("efficiency_order", f"need 0 < eta <= eta_c < 1, "
                          f"got eta={eta}, eta_c={eta_c}")
    return LossReport(ratio=eta_c / eta - 1.0, eta=eta, eta_carnot=eta_c)


def loss_ew_ad(eta_c: float) -> float:
    """R at maximum efficient work, quasistatic high-T:
    (1/4)[sqrt((1-eta_c)(9-eta_c)) - (1-eta_c)]."""
    _check_eta_c(eta_c)
    c = 1.0 - eta_c
    return 0.25 * (math.sqrt(c * (9.0 - eta_c)) - c)


def loss_w_ad(eta_c: float) -> float:
    """R at maximum work, quasistatic high-T: sqrt(1-eta_c)."""
    _check_eta_c(eta_c)
    return math.sqrt(1.0 - eta_c)


def work_ratio_curve(drive: Drive, tau_grid) -> np.ndarray:
    """Work at the efficient-work optimum over the maximum work, per tau.

    Quasistatic: W(z_ew)/W(sqrt(tau)) with z_ew = 1 - eta_mew_ht; sudden
    switch: W_ss(z_ew)/W_ss(tau^(1/4)) with z_ew from optimal_z_ss.  Both
    numerator and denominator come from the closed forms; the test suite
    re-derives the optima by dense scan.
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if np.any(tau_grid <= 0.0) or np.any(tau_grid >= 1.0):
        raise DomainError("tau_range", "tau grid must lie inside (0, 1)")
    out = np.empty_like(tau_grid)
    for i, tau in enumerate(tau_grid):
        if drive is Drive.ADIABATIC:
            z_ew = 1.0 - eta_mew_ht(1.0 - tau)
            out[i] = work_ht(z_ew, tau) / work_ht(math.sqrt(tau), tau)
        elif drive is Drive.SUDDEN_SWITCH:
            z_ew = optimal_z_ss(tau)
            out[i] = work_ss(z_ew, tau) / work_ss(tau ** 0.25, tau)
        else:
            raise DomainError("drive_kind", f"no closed-form curve for {drive}")
    return out


# ---------------------------------------------------------------------------
# shared validation
# ---------------------------------------------------------------------------

def _check_eta_c(eta_c: float):
    if not (0.0 < eta_c < 1.0):
        raise DomainError("eta_c_range", f"eta_c={eta_c} outside (0, 1)")


def _check_tau(tau: float):
    if not (0.0 < tau < 1.0):
        raise DomainError("tau_range", f"tau={tau} outside (0, 1)")


def _check_ss_window(z: float, tau: float):
    # 1e-12 slack admits boundary points reconstructed through sqrt round-trips
    _check_tau(tau)
    if not (tau <= z * z + 1e-12 and z <= 1.0 + 1e-12):
        raise DomainError("positive_work_window",
                          f"need sqrt(tau) <= z <= 1, got z={z}, tau={tau}")


def _check_lt_inputs(omega_c: float, omega_h: float, r: Reservoirs, guard: bool):
    if not (0.0 < omega_c < omega_h):
        raise DomainError("frequency_order",
                          f"need 0 < omega_c < omega_h, got ({omega_c}, {omega_h})")
    if guard:
        x_c, x_h = r.beta_c * omega_c, r.beta_h * omega_h
        if min(x_c, x_h) < _VALIDITY_MIN_EXPONENT:
            raise ValidityRegionError("validity_region",
                                      f"beta_c*omega_c={x_c}, beta_h*omega_h={x_h} "
                                      f"below {_VALIDITY_MIN_EXPONENT}")
