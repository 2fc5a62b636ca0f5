"""Seeded Monte Carlo verification of the sudden-switch performance bounds.

Frequencies (omega_c, omega_h) are drawn uniformly, the full (exact-coth)
cycle energetics are evaluated with the sudden-switch nonadiabaticity
factor, and every accepted efficiency (or COP) is binned and compared
against the high-temperature closed-form bound.  The point of using the
exact energetics is that the bound was derived in the high-temperature
limit but holds across all operational regimes.

Reproducibility contract: the stream is a counter-based Philox generator
keyed by (seed, chunk_index) over a fixed chunk partition, so results are
bit-identical for a given spec regardless of how many workers process the
chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cycle import cycle_heats, sudden_switch_lambda, TempRegime
from .engine import eta_ss_max
from .errors import BoundViolationError, DomainError, TauTooSmallError
from .refrigerator import zeta_max_ss

CHUNK_SAMPLES = 1 << 19  # fixed partition; must not depend on worker count


@dataclass(frozen=True)
class SampleSpec:
    """Sampling configuration; seed is a non-negative 64-bit integer."""

    beta_c: float
    beta_h: float
    omega_min: float
    omega_max: float
    n_samples: int
    seed: int
    bin_width: float

    def __post_init__(self):
        if not (self.beta_c > self.beta_h > 0.0):
            raise DomainError("bath_order",
                              f"beta_c={self.beta_c}, beta_h={self.beta_h}")
        if not (self.omega_min < self.omega_max):
            raise DomainError("omega_range",
                              f"[{self.omega_min}, {self.omega_max}]")
        if self.n_samples < 0:
            raise DomainError("sample_count", f"n_samples={self.n_samples}")
        if not (0 <= self.seed < 2 ** 64):
            raise DomainError("seed_range", f"seed={self.seed}")
        if not (self.bin_width > 0.0):
            raise DomainError("bin_width", f"bin_width={self.bin_width}")

    @property
    def tau(self) -> float:
        return self.beta_h / self.beta_c


@dataclass(frozen=True)
class Histogram:
    """Fixed-width bins from 0 covering [0, bound + bin_width]."""

    bin_width: float
    origin: float
    counts: np.ndarray
    n_accepted: int
    n_rejected: int
    max_observed: float  # nan when nothing was accepted
    bound: float

    def bin_edges(self) -> np.ndarray:
        return self.origin + self.bin_width * np.arange(len(self.counts) + 1)


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    key = np.array([seed, chunk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def chunk_samples(spec: SampleSpec, machine: str, chunk_index: int):
    """Raw per-chunk draws and figures of merit; introspection hook for tests.

    Returns (omega_lo, omega_hi, values, accepted) where ``values`` holds
    the efficiency (machine='engine') or COP (machine='fridge') and is only
    meaningful where ``accepted`` is True.
    """
    start = chunk_index * CHUNK_SAMPLES
    n = min(CHUNK_SAMPLES, spec.n_samples - start)
    rng = _chunk_rng(spec.seed, chunk_index)
    draw_a = rng.uniform(spec.omega_min, spec.omega_max, n)
    draw_b = rng.uniform(spec.omega_min, spec.omega_max, n)
    omega_lo = np.minimum(draw_a, draw_b)
    omega_hi = np.maximum(draw_a, draw_b)
    finite = (omega_lo > 0.0) & (omega_hi > omega_lo)  # endpoints are singular

    lam = np.where(finite, sudden_switch_lambda(np.where(finite, omega_lo, 1.0),
                                                np.where(finite, omega_hi, 2.0)), np.inf)
    q_h, q_c, w = cycle_heats(spec.beta_c, spec.beta_h,
                              np.where(finite, omega_lo, 1.0),
                              np.where(finite, omega_hi, 2.0),
                              lam, TempRegime.EXACT)
    if machine == "engine":
        accepted = finite & (w > 0.0) & (q_h > 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            values = np.where(accepted, w / q_h, 0.0)
    elif machine == "fridge":
        accepted = finite & (q_c > 0.0) & (q_h < 0.0) & (w < 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            values = np.where(accepted, q_c / np.where(accepted, -w, 1.0), 0.0)
    else:
        raise DomainError("machine_kind", f"unknown machine {machine!r}")
    return omega_lo, omega_hi, values, accepted


def _reduce_chunk(spec, machine, chunk_index, nbins, bound):
    omega_lo, omega_hi, values, accepted = chunk_samples(spec, machine, chunk_index)
    vals = values[accepted]
    n_acc = int(vals.size)
    n_rej = int(accepted.size - n_acc)
    if n_acc == 0:
        return np.zeros(nbins, dtype=np.int64), n_acc, n_rej, math.nan, None
    over = vals > bound
    violation = None
    if np.any(over):
        k = int(np.argmax(over))
        idx = np.flatnonzero(accepted)[k]
        violation = (float(omega_lo[idx]), float(omega_hi[idx]), float(vals[k]))
    idx = np.minimum((vals / spec.bin_width).astype(np.int64), nbins - 1)
    counts = np.bincount(idx, minlength=nbins).astype(np.int64)
    return counts, n_acc, n_rej, float(vals.max()), violation


def _run_sampler(spec: SampleSpec, machine: str, bound: float,
                 threads: int = 1) -> Histogram:
    nbins = max(1, int(math.ceil((bound + spec.bin_width) / spec.bin_width)))
    n_chunks = (spec.n_samples + CHUNK_SAMPLES - 1) // CHUNK_SAMPLES
    counts = np.zeros(nbins, dtype=np.int64)
    n_accepted = 0
    n_rejected = 0
    max_observed = math.nan

    def work(c):
        return _reduce_chunk(spec, machine, c, nbins, bound)

    if threads > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, range(n_chunks)))
    else:
        results = [work(c) for c in range(n_chunks)]

    for c, (chunk_counts, n_acc, n_rej, chunk_max, violation) in enumerate(results):
        if violation is not None:
            raise BoundViolationError(
                "bound_safety",
                f"{machine} sample exceeded bound {bound}: omega_lo={violation[0]}, "
                f"omega_hi={violation[1]}, value={violation[2]}, chunk={c}, "
                f"seed={spec.seed}")
        counts += chunk_counts
        n_accepted += n_acc
        n_rejected += n_rej
        if not math.isnan(chunk_max):
            max_observed = chunk_max if math.isnan(max_observed) \
                else max(max_observed, chunk_max)

    return Histogram(bin_width=spec.bin_width, origin=0.0, counts=counts,
                     n_accepted=n_accepted, n_rejected=n_rejected,
                     max_observed=max_observed, bound=bound)


def sample_engine_efficiencies(spec: SampleSpec, threads: int = 1) -> Histogram:
    """Histogram of sudden-switch engine efficiencies against eta_ss_max."""
    eta_c = 1.0 - spec.tau
    return _run_sampler(spec, "engine", eta_ss_max(eta_c), threads)


def sample_fridge_cops(spec: SampleSpec, threads: int = 1) -> Histogram:
    """Histogram of sudden-switch COPs against zeta_max_ss; needs tau > 1/2."""
    tau = spec.tau
    if tau <= 0.5:
        raise TauTooSmallError("tau_above_half",
                               f"tau={tau} <= 1/2: cooling window is empty")
    zeta_c = tau / (1.0 - tau)
    return _run_sampler(spec, "fridge", zeta_max_ss(zeta_c), threads)


def histogram_csv_rows(hist: Histogram):
    """Yield (bin_lo, bin_hi, count) triples."""
    edges = hist.bin_edges()
    for i, count in enumerate(hist.counts):
        yield float(edges[i]), float(edges[i + 1]), int(count)


def sidecar_payload(spec: SampleSpec, hist: Histogram) -> dict:
    """JSON-ready summary written next to the histogram CSV."""
    return {
        "spec": {
            "beta_c": spec.beta_c,
            "beta_h": spec.beta_h,
            "omega_min": spec.omega_min,
            "omega_max": spec.omega_max,
            "n_samples": spec.n_samples,
            "seed": spec.seed,
            "bin_width": spec.bin_width,
        },
        "max_observed": None if math.isnan(hist.max_observed) else hist.max_observed,
        "bound": hist.bound,
        "n_accepted": hist.n_accepted,
        "n_rejected": hist.n_rejected,
    }
