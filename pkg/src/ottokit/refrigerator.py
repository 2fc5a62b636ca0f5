"""Refrigerator-branch trade-off analysis: chi-function optima and COP bounds.

The refrigerator trade-off objective is chi = COP x cooling load.  As on the
engine side, closed forms for the quasistatic high-/low-temperature limits
and for the sudden-switch regime are paired with numerical oracles.  Sudden
quenching closes the cooling window entirely unless the cold bath is warmer
than half the hot bath (tau > 1/2), and the window-interior optimum is the
root of a three-real-root cubic solved trigonometrically.

Reduced sudden-switch quantities carry units of 1/beta_h.
"""

from __future__ import annotations

import math

from .cycle import Reservoirs
from .errors import (
    CoolingWindowError,
    DomainError,
    NoRootInWindowError,
    TauTooSmallError,
    ValidityRegionError,
)
from .numerics import Bracket, find_root, solve_cubic_trig

_VALIDITY_MIN_EXPONENT = 5.0


# ---------------------------------------------------------------------------
# quasistatic driving
# ---------------------------------------------------------------------------

def chi_ht(z: float, tau: float) -> float:
    """chi in the high-T limit (units 1/beta_h): z (tau - z)/(1 - z), z in (0, tau)."""
    if not (0.0 < z < 1.0):
        raise DomainError("compression_range", f"z={z} outside (0, 1)")
    return z * (tau - z) / (1.0 - z)


def zeta_chi_ht(zeta_c: float) -> float:
    """COP at maximum chi, quasistatic high-T: sqrt(1 + zeta_c) - 1."""
    _check_zeta_c(zeta_c)
    return math.sqrt(1.0 + zeta_c) - 1.0


def chi_lt(omega_c: float, omega_h: float, r: Reservoirs, *,
           guard: bool = True) -> float:
    """chi in the low-T limit:
    omega_c^2/(omega_h-omega_c) (e^{-beta_c omega_c} - e^{-beta_h omega_h}).

    Validity wants beta_i omega_i large; as with the engine objective the
    stationary point of the formula itself sits near beta_c omega_c ~ 2,
    so oracle cross-checks pass guard=False.
    """
    if not (0.0 < omega_c < omega_h):
        raise DomainError("frequency_order",
                          f"need 0 < omega_c < omega_h, got ({omega_c}, {omega_h})")
    if guard:
        x_c, x_h = r.beta_c * omega_c, r.beta_h * omega_h
        if min(x_c, x_h) < _VALIDITY_MIN_EXPONENT:
            raise ValidityRegionError("validity_region",
                                      f"beta_c*omega_c={x_c}, beta_h*omega_h={x_h} "
                                      f"below {_VALIDITY_MIN_EXPONENT}")
    return (omega_c ** 2 / (omega_h - omega_c)
            * (math.exp(-r.beta_c * omega_c) - math.exp(-r.beta_h * omega_h)))


def chi_lt_cop_residual(zeta: float, zeta_c: float) -> float:
    """Stationarity residual whose root is the low-T COP at maximum chi.

    Combining the two partial-derivative conditions of the low-T chi gives

        (2 zeta_c - zeta)(zeta_c - zeta) / (zeta zeta_c (1 + zeta_c))
            = ln[(2 + zeta) zeta_c / (zeta (1 + zeta_c))].

    (Eliminating beta_c omega_c between the conditions fixes it to
    2 - zeta/zeta_c, which makes the 1 + zeta_c denominator on the left
    unavoidable; the independent two-parameter optimization of chi_lt
    confirms this root and not any variant.)
    """
    return ((2.0 * zeta_c - zeta) * (zeta_c - zeta)
            / (zeta * zeta_c * (1.0 + zeta_c))
            - math.log((2.0 + zeta) * zeta_c / (zeta * (1.0 + zeta_c))))


def zeta_chi_lt(zeta_c: float, tol: float = 1e-14) -> float:
    """COP at maximum chi, quasistatic low-T limit (transcendental root)."""
    _check_zeta_c(zeta_c)
    return find_root(lambda zt: chi_lt_cop_residual(zt, zeta_c),
                     Bracket(1e-9 * zeta_c, zeta_c * (1.0 - 1e-12)), tol=tol)


# ---------------------------------------------------------------------------
# sudden switch
# ---------------------------------------------------------------------------

def ss_cooling(z: float, tau: float):
    """(q_c, w_in) in units 1/beta_h for sudden-switch refrigeration.

    q_c = tau - (z^2+1)/2,  w_in = (z^2-1)(z^2-tau)/(2 z^2); cooling
    requires z^2 + 1 <= 2 tau, hence tau > 1/2.
    """
    _check_cooling_window(z, tau)
    y = z * z
    q_c = tau - 0.5 * (y + 1.0)
    w_in = (y - 1.0) * (y - tau) / (2.0 * y)
    return q_c, w_in


def zeta_ss(z: float, tau: float) -> float:
    """Sudden-switch COP: z^2 (2 tau - z^2 - 1)/((z^2-1)(z^2-tau))."""
    _check_cooling_window(z, tau)
    y = z * z
    return y * (2.0 * tau - y - 1.0) / ((y - 1.0) * (y - tau))


def chi_ss(z: float, tau: float) -> float:
    """Sudden-switch chi = zeta * q_c (units 1/beta_h)."""
    _check_cooling_window(z, tau)
    y = z * z
    return y * (2.0 * tau - y - 1.0) ** 2 / (2.0 * (y - 1.0) * (y - tau))


def zeta_max_ss(zeta_c: float) -> float:
    """Largest sudden-switch COP: 1 + 3 zeta_c - 2 sqrt(2 zeta_c (1 + zeta_c)).

    Defined for zeta_c >= 1 (tau >= 1/2); exactly zero at zeta_c = 1 where
    the cooling window closes, and always strictly below zeta_c.
    """
    if zeta_c < 1.0:
        raise TauTooSmallError("tau_above_half",
                               f"zeta_c={zeta_c} < 1 means tau <= 1/2: no cooling window")
    return 1.0 + 3.0 * zeta_c - 2.0 * math.sqrt(2.0 * zeta_c * (1.0 + zeta_c))


def chi_ss_optimum_z(tau: float) -> float:
    """Compression ratio maximizing the sudden-switch chi.

    With y = z^2 the stationarity of chi factors into the window boundary
    and the cubic y^3 - 3 y^2 + 3 tau y + tau (1 - 2 tau) = 0, whose
    discriminant 108 (1-tau)^3 tau > 0 puts all three roots on the real
    line; exactly one lies inside the cooling window (0, 2 tau - 1).
    """
    _check_tau_cooling(tau)
    roots = solve_cubic_trig(1.0, -3.0, 3.0 * tau, tau * (1.0 - 2.0 * tau))
    hi = 2.0 * tau - 1.0
    inside = [y for y in roots.roots if 0.0 < y <= hi]
    if len(inside) != 1:
        raise NoRootInWindowError("window_root",
                                  f"{len(inside)} cubic roots in (0, {hi}) at tau={tau}")
    return math.sqrt(inside[0])


def ss_compression_from_cop(zeta: float, tau: float) -> float:
    """z^2 realizing a given sudden-switch COP (smaller branch).

    Inverts zeta_ss:  z^2 = [zeta tau - F + zeta + 2 tau - 1]/(2(zeta+1))
    with F = sqrt(((zeta+2) tau + zeta - 1)^2 - 4 zeta (zeta+1) tau).
    """
    f = _cop_radical(zeta, tau)
    return (zeta * tau - f + zeta + 2.0 * tau - 1.0) / (2.0 * (zeta + 1.0))


def _cop_radical(zeta: float, tau: float) -> float:
    return math.sqrt(((zeta + 2.0) * tau + zeta - 1.0) ** 2
                     - 4.0 * zeta * (zeta + 1.0) * tau)


def chi_ss_cop_residual(zeta: float, tau: float) -> float:
    """Stationarity residual whose root is the sudden-switch COP at max chi.

    zeta (zeta+1)(tau-1)[3F + zeta(tau-1) + 2 tau + 1]
        + F [F + 3 zeta (tau-1) + 2 tau - 1] = 0,
    with F as in :func:`ss_compression_from_cop`.
    """
    f = _cop_radical(zeta, tau)
    return (zeta * (zeta + 1.0) * (tau - 1.0)
            * (3.0 * f + zeta * (tau - 1.0) + 2.0 * tau + 1.0)
            + f * (f + 3.0 * zeta * (tau - 1.0) + 2.0 * tau - 1.0))


def zeta_chi_ss(tau: float, tol: float = 1e-14) -> float:
    """Sudden-switch COP at maximum chi (root of the residual above).

    Agrees with zeta_ss(chi_ss_optimum_z(tau), tau); both routes are kept
    so the cubic and the COP-parametrized stationarity check each other.
    """
    _check_tau_cooling(tau)
    zeta_c = tau / (1.0 - tau)
    hi = zeta_max_ss(zeta_c)
    return find_root(lambda zt: chi_ss_cop_residual(zt, tau),
                     Bracket(1e-9 * hi, hi * (1.0 - 1e-9)), tol=tol * max(hi, 1.0))


# ---------------------------------------------------------------------------
# shared validation
# ---------------------------------------------------------------------------

def _check_zeta_c(zeta_c: float):
    if not (zeta_c > 0.0):
        raise DomainError("zeta_c_range", f"zeta_c={zeta_c} must be positive")


def _check_tau_cooling(tau: float):
    if not (tau < 1.0):
        raise DomainError("tau_range", f"tau={tau} outside (0, 1)")
    if not (tau > 0.5):
        raise TauTooSmallError("tau_above_half",
                               f"tau={tau} <= 1/2: sudden-switch cooling impossible")


def _check_cooling_window(z: float, tau: float):
    # 1e-12 slack admits boundary points reconstructed through sqrt round-trips
    _check_tau_cooling(tau)
    if not (0.0 < z and z * z <= 2.0 * tau - 1.0 + 1e-12):
        raise CoolingWindowError("cooling_window",
                                 f"need 0 < z^2 <= 2*tau - 1, got z={z}, tau={tau}")
