"""Nonadiabaticity of an arbitrary frequency ramp omega(t).

For a harmonic oscillator driven from omega(0) to omega(T), the excess-
excitation factor lam follows from the two fundamental solutions of the
classical auxiliary equation

    u'' + omega(t)^2 u = 0,   X(0)=0, X'(0)=1,   Y(0)=1, Y'(0)=0,

evaluated at the end of the stroke:

    lam = [w0^2 (w1^2 X^2 + X'^2) + (w1^2 Y^2 + Y'^2)] / (2 w0 w1)

with w0 = omega(0), w1 = omega(T).  lam = 1 exactly for a constant ramp and
tends to (w0^2 + w1^2)/(2 w0 w1) in the instantaneous-quench limit T -> 0;
quantum mechanics guarantees lam >= 1 for every ramp in between.

The auxiliary system is integrated by an embedded Dormand-Prince 5(4) pair
with proportional step control.  The shipped ramp library interpolates
omega^2 linearly, quadratically, or geometrically in time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, IntegrationFailureError

_ENDPOINT_RTOL = 1e-9


@dataclass(frozen=True)
class FrequencyRamp:
    """Positive frequency profile omega(t) on [0, duration].

    Declared endpoints are checked against the evaluator at construction;
    omega(t) must stay positive throughout (spot-checked on a coarse grid).
    """

    omega_of_t: Callable[[float], float]
    duration: float
    omega_start: float
    omega_end: float

    def __post_init__(self):
        if not (self.duration > 0.0):
            raise DomainError("positive_duration", f"duration={self.duration}")
        if not (self.omega_start > 0.0 and self.omega_end > 0.0):
            raise DomainError("positive_frequency",
                              f"endpoints ({self.omega_start}, {self.omega_end})")
        for t, declared in ((0.0, self.omega_start), (self.duration, self.omega_end)):
            got = self.omega_of_t(t)
            if abs(got - declared) > _ENDPOINT_RTOL * declared:
                raise DomainError("endpoint_mismatch",
                                  f"omega({t})={got}, declared {declared}")
        for k in range(1, 8):
            t = self.duration * k / 8.0
            if not (self.omega_of_t(t) > 0.0):
                raise DomainError("positive_frequency", f"omega({t}) <= 0")


def linear_ramp(omega_start: float, omega_end: float, duration: float) -> FrequencyRamp:
    """omega^2 interpolated linearly in t."""
    w0sq, w1sq = omega_start ** 2, omega_end ** 2

    def omega(t, _a=w0sq, _b=w1sq - w0sq, _T=duration):
        return math.sqrt(_a + _b * (t / _T))

    return FrequencyRamp(omega, duration, omega_start, omega_end)


def quadratic_ramp(omega_start: float, omega_end: float, duration: float) -> FrequencyRamp:
    """omega^2 interpolated quadratically in t (flat start)."""
    w0sq, w1sq = omega_start ** 2, omega_end ** 2

    def omega(t, _a=w0sq, _b=w1sq - w0sq, _T=duration):
        s = t / _T
        return math.sqrt(_a + _b * s * s)

    return FrequencyRamp(omega, duration, omega_start, omega_end)


def exp_ramp(omega_start: float, omega_end: float, duration: float) -> FrequencyRamp:
    """omega^2 interpolated geometrically in t."""
    rate = math.log(omega_end / omega_start)

    def omega(t, _w0=omega_start, _r=rate, _T=duration):
        return _w0 * math.exp(_r * (t / _T))

    return FrequencyRamp(omega, duration, omega_start, omega_end)


RAMP_FACTORIES = {
    "linear": linear_ramp,
    "quadratic": quadratic_ramp,
    "exp": exp_ramp,
}


@dataclass(frozen=True)
class LambdaResult:
    """Nonadiabaticity factor with integrator bookkeeping.

    ``value`` is clamped to >= 1 for reporting (the bound is exact; any
    sub-unity residue is integration noise).  ``raw`` keeps the unclamped
    number for diagnostics and the deficit is folded into
    ``estimated_error`` alongside the accumulated local-error estimate.
    """

    value: float
    raw: float
    integrator_steps: int
    estimated_error: float


# Dormand-Prince 5(4) tableau (FSAL: stage 7 of an accepted step is stage 1
# of the next).
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


def _integrate_auxiliary(ramp: FrequencyRamp, rtol: float, atol: float,
                         max_steps: int, wronskian_log=None):
    """Integrate (X, X', Y, Y') over the ramp; returns (state, steps, err_sum).

    The derivative couples the pairs only through omega^2(t), so the four
    components are advanced with unrolled scalar arithmetic (much faster
    than array temporaries at this size).
    """
    om = ramp.omega_of_t
    T = ramp.duration
    t = 0.0
    x, xd, y, yd = 0.0, 1.0, 1.0, 0.0

    def omega_sq(tt):
        w = om(tt)
        return w * w

    o2 = omega_sq(0.0)
    # FSAL seed: k1 = f(t, u)
    k1 = (xd, -o2 * x, yd, -o2 * y)
    h = min(T, 0.1 / max(ramp.omega_start, ramp.omega_end))
    steps = 0
    err_sum = 0.0
    while t < T:
        if steps >= max_steps:
            raise IntegrationFailureError("step_cap",
                                          f"exceeded {max_steps} steps at t={t}")
        if t + h > T:
            h = T - t
        u = (x, xd, y, yd)

        s2 = tuple(u[i] + h * _A21 * k1[i] for i in range(4))
        o2 = omega_sq(t + _C2 * h)
        k2 = (s2[1], -o2 * s2[0], s2[3], -o2 * s2[2])

        s3 = tuple(u[i] + h * (_A31 * k1[i] + _A32 * k2[i]) for i in range(4))
        o2 = omega_sq(t + _C3 * h)
        k3 = (s3[1], -o2 * s3[0], s3[3], -o2 * s3[2])

        s4 = tuple(u[i] + h * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i]) for i in range(4))
        o2 = omega_sq(t + _C4 * h)
        k4 = (s4[1], -o2 * s4[0], s4[3], -o2 * s4[2])

        s5 = tuple(u[i] + h * (_A51 * k1[i] + _A52 * k2[i] + _A53 * k3[i] + _A54 * k4[i])
                   for i in range(4))
        o2 = omega_sq(t + _C5 * h)
        k5 = (s5[1], -o2 * s5[0], s5[3], -o2 * s5[2])

        s6 = tuple(u[i] + h * (_A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i]
                               + _A64 * k4[i] + _A65 * k5[i]) for i in range(4))
        o2_end = omega_sq(t + h)  # c6 = c7 = 1
        k6 = (s6[1], -o2_end * s6[0], s6[3], -o2_end * s6[2])

        u5 = tuple(u[i] + h * (_B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i]
                               + _B5 * k5[i] + _B6 * k6[i]) for i in range(4))
        k7 = (u5[1], -o2_end * u5[0], u5[3], -o2_end * u5[2])

        err_norm = 0.0
        err_abs = 0.0
        for i in range(4):
            e = h * (_E1 * k1[i] + _E3 * k3[i] + _E4 * k4[i]
                     + _E5 * k5[i] + _E6 * k6[i] + _E7 * k7[i])
            sc = atol + rtol * max(abs(u[i]), abs(u5[i]))
            err_norm += (e / sc) ** 2
            err_abs += e * e
        err_norm = math.sqrt(err_norm / 4.0)

        if err_norm <= 1.0:
            t += h
            x, xd, y, yd = u5
            k1 = k7  # FSAL
            steps += 1
            err_sum += math.sqrt(err_abs / 4.0)
            if wronskian_log is not None:
                wronskian_log.append(x * yd - y * xd)
        factor = 0.9 * err_norm ** -0.2 if err_norm > 0.0 else 5.0
        h *= min(5.0, max(0.2, factor))
        if h <= 1e-15 * T:
            raise IntegrationFailureError("step_underflow", f"h={h} at t={t}")
    return (x, xd, y, yd), steps, err_sum


def solve_auxiliary(ramp: FrequencyRamp, rtol: float = 1e-10, atol: float = 1e-10,
                    max_steps: int = 1_000_000):
    """(X(T), X'(T), Y(T), Y'(T)) for the ramp's auxiliary equation."""
    _check_tols(rtol, atol)
    state, _, _ = _integrate_auxiliary(ramp, rtol, atol, max_steps)
    return state


def lambda_of_ramp(ramp: FrequencyRamp, rtol: float = 1e-10, atol: float = 1e-10,
                   max_steps: int = 1_000_000) -> LambdaResult:
    """Nonadiabaticity factor of a ramp from the endpoint auxiliary solutions."""
    _check_tols(rtol, atol)
    (x, xd, y, yd), steps, err = _integrate_auxiliary(ramp, rtol, atol, max_steps)
    w0, w1 = ramp.omega_start, ramp.omega_end
    raw = (w0 * w0 * (w1 * w1 * x * x + xd * xd)
           + (w1 * w1 * y * y + yd * yd)) / (2.0 * w0 * w1)
    if raw < 1.0 - 1e-3:
        raise IntegrationFailureError("lambda_lower_bound",
                                      f"lambda={raw} grossly violates the adiabatic "
                                      f"bound; integration is untrustworthy")
    return LambdaResult(value=max(raw, 1.0), raw=raw, integrator_steps=steps,
                        estimated_error=err + max(0.0, 1.0 - raw))


def wronskian_drift(ramp: FrequencyRamp, rtol: float = 1e-10, atol: float = 1e-10,
                    max_steps: int = 1_000_000) -> float:
    """Max deviation of |X Y' - Y X'| from 1 along the integration."""
    log: list = []
    _integrate_auxiliary(ramp, rtol, atol, max_steps, wronskian_log=log)
    if not log:
        return 0.0
    return max(abs(abs(w) - 1.0) for w in log)


def _check_tols(rtol, atol):
    if not (0.0 < rtol <= 1e-3 and 0.0 < atol <= 1e-3):
        raise DomainError("tolerance_range",
                          f"rtol={rtol}, atol={atol} must lie in (0, 1e-3]")
