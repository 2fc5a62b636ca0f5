"""Energetics of the four-stroke harmonic quantum Otto cycle.

The working medium is a single harmonic oscillator whose frequency is
switched between omega_c and omega_h (unitary strokes) while it fully
thermalizes with a cold/hot bath at fixed frequency (isochoric strokes).
In units k_B = hbar = 1 the mean energies at the four cycle corners are

    <H>_A = (omega_c/2) coth(beta_c omega_c / 2)
    <H>_B = lam * (omega_h/2) coth(beta_c omega_c / 2)
    <H>_C = (omega_h/2) coth(beta_h omega_h / 2)
    <H>_D = lam * (omega_c/2) coth(beta_h omega_h / 2)

where lam >= 1 measures how nonadiabatically the frequency was driven
(lam = 1 for an infinitely slow ramp, (z^2+1)/(2z) for an instantaneous
quench at compression ratio z = omega_c/omega_h).  Heats follow as
Q_h = <H>_C - <H>_B and Q_c = <H>_A - <H>_D with fluxes into the system
positive, and W_ext = Q_h + Q_c.

High- and low-temperature limits replace coth(x/2) by 2/x and by
1 + 2 exp(-x) respectively; the raw array helpers accept numpy arrays so the
Monte Carlo sampler can reuse the exact same energetics code path.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OperationModeError


class Drive(enum.Enum):
    """How the frequency ramp was executed."""

    ADIABATIC = "adiabatic"
    SUDDEN_SWITCH = "sudden_switch"
    CUSTOM = "custom"


class TempRegime(enum.Enum):
    EXACT = "exact"
    HIGH_T = "high_t"
    LOW_T = "low_t"


class OperationMode(enum.Enum):
    ENGINE = "engine"
    REFRIGERATOR = "refrigerator"
    ACCELERATOR = "accelerator"
    HEATER = "heater"


@dataclass(frozen=True)
class Reservoirs:
    """Cold/hot bath inverse temperatures, beta_c > beta_h > 0."""

    beta_c: float
    beta_h: float

    def __post_init__(self):
        if not (self.beta_h > 0.0):
            raise DomainError("positive_beta", f"beta_h={self.beta_h}")
        if not (self.beta_c > self.beta_h):
            raise DomainError("bath_order", f"need beta_c > beta_h, got "
                              f"beta_c={self.beta_c}, beta_h={self.beta_h}")

    @property
    def tau(self) -> float:
        """Temperature ratio T_c/T_h = beta_h/beta_c, in (0, 1)."""
        return self.beta_h / self.beta_c

    @property
    def eta_carnot(self) -> float:
        return 1.0 - self.tau

    @property
    def zeta_carnot(self) -> float:
        return self.tau / (1.0 - self.tau)


@dataclass(frozen=True)
class Frequencies:
    """Oscillator frequencies on the two isochores, omega_h > omega_c > 0."""

    omega_c: float
    omega_h: float

    def __post_init__(self):
        if not (self.omega_c > 0.0):
            raise DomainError("positive_frequency", f"omega_c={self.omega_c}")
        if not (self.omega_h > self.omega_c):
            raise DomainError("frequency_order", f"need omega_h > omega_c, got "
                              f"omega_c={self.omega_c}, omega_h={self.omega_h}")

    @property
    def z(self) -> float:
        """Compression ratio omega_c/omega_h, in (0, 1)."""
        return self.omega_c / self.omega_h


_LAMBDA_SLACK = 1e-9


@dataclass(frozen=True)
class Adiabaticity:
    """Nonadiabaticity factor lam >= 1 plus how it was obtained."""

    value: float
    source: Drive = Drive.CUSTOM

    def __post_init__(self):
        if not (self.value >= 1.0 - _LAMBDA_SLACK):
            raise DomainError("adiabaticity_lower_bound", f"lambda={self.value} < 1")

    @classmethod
    def adiabatic(cls) -> "Adiabaticity":
        return cls(1.0, Drive.ADIABATIC)

    @classmethod
    def sudden_switch(cls, f: Frequencies) -> "Adiabaticity":
        z = f.z
        return cls((z * z + 1.0) / (2.0 * z), Drive.SUDDEN_SWITCH)


@dataclass(frozen=True)
class CycleEnergetics:
    """Corner energies, heats and work for one full cycle."""

    h_a: float
    h_b: float
    h_c: float
    h_d: float
    q_h: float
    q_c: float
    w_ext: float

    @property
    def w_in(self) -> float:
        return -self.w_ext


def coth_half(x):
    """coth(x/2) = 1 + 2/(e^x - 1) for x > 0, scalar or array.

    expm1 keeps the small-x branch fully accurate (no cancellation); above
    x ~ 700 the correction underflows and the exact limit 1 is returned.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        xf = float(arr)
        return 1.0 + 2.0 / math.expm1(xf) if xf <= 700.0 else 1.0
    out = np.ones_like(arr)
    small = arr <= 700.0
    out[small] += 2.0 / np.expm1(arr[small])
    return out


def thermal_factor(x, regime: TempRegime):
    """coth(x/2) or its high-/low-temperature surrogate, x = beta*omega."""
    if regime is TempRegime.EXACT:
        return coth_half(x)
    if regime is TempRegime.HIGH_T:
        return 2.0 / np.asarray(x, dtype=float)
    return 1.0 + 2.0 * np.exp(-np.asarray(x, dtype=float))


def cycle_heats(beta_c, beta_h, omega_c, omega_h, lam, regime: TempRegime = TempRegime.EXACT):
    """(q_h, q_c, w_ext) for scalars or aligned arrays; no input validation.

    This is the raw code path shared by the typed API and the Monte Carlo
    sampler; callers are responsible for positivity of betas and omegas.
    """
    cc = thermal_factor(np.asarray(beta_c, dtype=float) * omega_c, regime)
    ch = thermal_factor(np.asarray(beta_h, dtype=float) * omega_h, regime)
    q_h = 0.5 * omega_h * (ch - lam * cc)
    q_c = 0.5 * omega_c * (cc - lam * ch)
    return q_h, q_c, q_h + q_c


def mean_energies(r: Reservoirs, f: Frequencies, lam: Adiabaticity,
                  regime: TempRegime = TempRegime.EXACT):
    """Corner mean energies (h_a, h_b, h_c, h_d)."""
    cc = thermal_factor(r.beta_c * f.omega_c, regime)
    ch = thermal_factor(r.beta_h * f.omega_h, regime)
    h_a = 0.5 * f.omega_c * cc
    h_b = 0.5 * f.omega_h * lam.value * cc
    h_c = 0.5 * f.omega_h * ch
    h_d = 0.5 * f.omega_c * lam.value * ch
    return float(h_a), float(h_b), float(h_c), float(h_d)


def heats_and_work(r: Reservoirs, f: Frequencies, lam: Adiabaticity,
                   regime: TempRegime = TempRegime.EXACT) -> CycleEnergetics:
    """Full single-cycle energetics; first law holds by construction."""
    h_a, h_b, h_c, h_d = mean_energies(r, f, lam, regime)
    q_h = h_c - h_b
    q_c = h_a - h_d
    return CycleEnergetics(h_a=h_a, h_b=h_b, h_c=h_c, h_d=h_d,
                           q_h=q_h, q_c=q_c, w_ext=q_h + q_c)


def efficiency(energetics: CycleEnergetics) -> float:
    """w_ext/q_h; requires engine operation (q_h > 0 and w_ext > 0).

    For lam = 1 this reduces to 1 - z, independent of bath temperatures.
    """
    if not (energetics.q_h > 0.0 and energetics.w_ext > 0.0):
        raise OperationModeError("positive_work",
                                 f"q_h={energetics.q_h}, w_ext={energetics.w_ext}")
    return energetics.w_ext / energetics.q_h


def cop(energetics: CycleEnergetics) -> float:
    """q_c/w_in; requires refrigeration (q_c > 0, q_h < 0, w_in > 0).

    For lam = 1 this reduces to z/(1 - z).
    """
    w_in = energetics.w_in
    if not (energetics.q_c > 0.0 and energetics.q_h < 0.0 and w_in > 0.0):
        raise OperationModeError("cooling_condition",
                                 f"q_c={energetics.q_c}, q_h={energetics.q_h}, w_in={w_in}")
    return energetics.q_c / w_in


def operation_mode(energetics: CycleEnergetics) -> OperationMode:
    """Classify the cycle by the signs of its energy fluxes."""
    q_h, q_c, w = energetics.q_h, energetics.q_c, energetics.w_ext
    if w > 0.0 and q_h > 0.0:
        return OperationMode.ENGINE
    if q_c > 0.0 and q_h < 0.0 and w < 0.0:
        return OperationMode.REFRIGERATOR
    if q_h > 0.0 and q_c < 0.0:
        return OperationMode.ACCELERATOR
    return OperationMode.HEATER


def sudden_switch_lambda(omega_c, omega_h):
    """(omega_c^2 + omega_h^2)/(2 omega_c omega_h), scalar or array."""
    return (omega_c * omega_c + omega_h * omega_h) / (2.0 * omega_c * omega_h)
