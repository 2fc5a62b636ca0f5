"""Self-contained numerical routines used as oracles throughout the package.

Every closed-form optimum shipped by the analysis modules is cross-checked
against one of these: a bracketed root finder, a golden-section maximizer
with a parabolic polish, a restarted Nelder-Mead simplex for two-parameter
objectives, a trigonometric cubic solver for the three-real-root case, and
a least-squares extractor for leading Taylor coefficients.

The routines are deliberately dependency-light (numpy only) so the oracle
side of every check stays independent of any third-party optimizer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateCubicError,
    DivergenceError,
    DomainError,
    FitResidualError,
    MaxIterationsError,
    NoSignChangeError,
)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Bracket:
    """Closed interval [lo, hi] with lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise DomainError("bracket_order", f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class OptimumResult:
    """Outcome of a 1D or 2D maximization."""

    arg: tuple
    value: float
    iterations: int
    converged: bool
    tolerance_met: float


@dataclass(frozen=True)
class CubicRoots:
    """Real roots (with multiplicity) of a*y^3 + b*y^2 + c*y + d = 0."""

    a: float
    b: float
    c: float
    d: float
    discriminant: float
    roots: tuple


@dataclass(frozen=True)
class SeriesFit:
    """Leading Taylor coefficients of f(x) = a0*x + a1*x^2 + a2*x^3 + ..."""

    coefficients: tuple
    residual: float


def find_root(f: Callable[[float], float], bracket: Bracket, tol: float = 1e-12,
              max_iter: int = 256) -> float:
    """Root of f on a sign-change bracket via a secant/bisection hybrid.

    The secant proposal is rejected in favor of a bisection whenever it
    falls outside the open bracket, or whenever the previous step failed
    to halve the bracket; this guarantees convergence in O(log(width/tol))
    iterations regardless of how badly the secant behaves.
    """
    a, b = float(bracket.lo), float(bracket.hi)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise NoSignChangeError("sign_change", f"f({a})={fa}, f({b})={fb}")
    bisect_next = False
    for _ in range(max_iter):
        width = b - a
        if width <= tol:
            return a + 0.5 * width
        if bisect_next or fb == fa:
            x = a + 0.5 * width
        else:
            x = b - fb * (b - a) / (fb - fa)
            if not (a < x < b):
                x = a + 0.5 * width
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        bisect_next = (b - a) > 0.5 * width
    raise MaxIterationsError("max_iterations",
                             f"bracket width {b - a} after {max_iter} iterations, tol {tol}")


def maximize_1d(f: Callable[[float], float], bracket: Bracket, tol: float = 1e-9,
                max_iter: int = 200) -> OptimumResult:
    """Maximum of a unimodal f on a bracket: golden section plus polish.

    Golden-section narrows the bracket to ``tol``; a final three-point
    parabolic fit (at a spacing chosen for finite-precision balance, not at
    the bracket scale) then pins the argmax well below the roundoff plateau
    that pure section search bottoms out on.
    """
    lo, hi = float(bracket.lo), float(bracket.hi)
    a, b = lo, hi
    h = b - a
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc, fd = f(c), f(d)
    it = 0
    while (b - a) > tol:
        if it >= max_iter:
            raise MaxIterationsError("max_iterations",
                                     f"golden section width {b - a} after {max_iter} iterations")
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = f(d)
        it += 1
    x0 = c if fc >= fd else d
    x, fx = _parabolic_polish(f, x0, lo, hi)
    return OptimumResult(arg=(x,), value=fx, iterations=it, converged=True,
                         tolerance_met=b - a)


def _parabolic_polish(f, x0, lo, hi):
    """Two parabolic-vertex steps around x0, constrained to [lo, hi].

    The sampling offset shrinks between passes; it must stay well above the
    roundoff plateau sqrt(eps)*scale or the vertex estimate would be noise.
    """
    x, fx = x0, f(x0)
    for h in (1e-5 * max(abs(x0), 1.0), 1e-6 * max(abs(x0), 1.0)):
        if x - h <= lo or x + h >= hi:
            h = 0.25 * min(x - lo, hi - x)
        if h <= 0.0:
            return x, fx
        fm, fp = f(x - h), f(x + h)
        denom = fp - 2.0 * fx + fm
        if denom >= 0.0:  # no downward curvature resolved; keep current point
            return x, fx
        step = -0.5 * h * (fp - fm) / denom
        if abs(step) > h:
            return x, fx
        cand = x + step
        if not (lo < cand < hi):
            return x, fx
        x, fx = cand, f(cand)
    return x, fx


def _initial_simplices(start, scale):
    sx, sy = float(start[0]), float(start[1])
    s = float(scale)
    return (
        ((sx, sy), (sx + s, sy), (sx, sy + s)),
        ((sx, sy), (sx - s, sy), (sx, sy - s)),
        ((sx, sy), (sx + 0.5 * s, sy + 0.5 * s), (sx - 0.5 * s, sy + 0.5 * s)),
    )


def maximize_2d(f: Callable[[Sequence[float]], float], start: Sequence[float],
                scale: float, tol: float = 1e-12, max_iter: int = 4000,
                region: Optional[Callable[[Sequence[float]], bool]] = None) -> OptimumResult:
    """Maximum of f over two variables by restarted Nelder-Mead descent on -f.

    Three deterministic initial simplices are tried and the best outcome is
    returned.  If ``region`` is given, the incumbent best vertex must satisfy
    it at every iteration, otherwise DivergenceError is raised; leave it None
    when the objective itself confines the search (e.g. via -inf outside).
    """
    best = None
    for simplex in _initial_simplices(start, scale):
        res = _nelder_mead(f, simplex, tol, max_iter, region)
        if best is None or res.value > best.value:
            best = res
    return best


def _nelder_mead(f, simplex, tol, max_iter, region):
    # standard coefficients: reflect 1, expand 2, contract 1/2, shrink 1/2
    pts = [np.array(p, dtype=float) for p in simplex]
    vals = [-f(p) for p in pts]  # minimize g = -f
    it = 0
    while it < max_iter:
        order = np.argsort(vals)
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        if region is not None and not region(pts[0]):
            raise DivergenceError("validity_region",
                                  f"best vertex {tuple(pts[0])} left the declared region")
        diam = max(np.linalg.norm(pts[1] - pts[0]), np.linalg.norm(pts[2] - pts[0]))
        if diam <= tol:
            return OptimumResult(arg=tuple(pts[0]), value=-vals[0], iterations=it,
                                 converged=True, tolerance_met=diam)
        centroid = 0.5 * (pts[0] + pts[1])
        xr = centroid + (centroid - pts[2])
        fr = -f(xr)
        if fr < vals[0]:
            xe = centroid + 2.0 * (centroid - pts[2])
            fe = -f(xe)
            if fe < fr:
                pts[2], vals[2] = xe, fe
            else:
                pts[2], vals[2] = xr, fr
        elif fr < vals[1]:
            pts[2], vals[2] = xr, fr
        else:
            xc = centroid + 0.5 * (pts[2] - centroid)
            fc = -f(xc)
            if fc < vals[2]:
                pts[2], vals[2] = xc, fc
            else:
                pts[1] = pts[0] + 0.5 * (pts[1] - pts[0])
                pts[2] = pts[0] + 0.5 * (pts[2] - pts[0])
                vals[1], vals[2] = -f(pts[1]), -f(pts[2])
        it += 1
    order = np.argsort(vals)
    pts = [pts[i] for i in order]
    vals = [vals[i] for i in order]
    diam = max(np.linalg.norm(pts[1] - pts[0]), np.linalg.norm(pts[2] - pts[0]))
    return OptimumResult(arg=tuple(pts[0]), value=-vals[0], iterations=it,
                         converged=False, tolerance_met=diam)


def cubic_discriminant(a: float, b: float, c: float, d: float) -> float:
    """Discriminant 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2."""
    return (18.0 * a * b * c * d - 4.0 * b ** 3 * d + b ** 2 * c ** 2
            - 4.0 * a * c ** 3 - 27.0 * a ** 2 * d ** 2)


def solve_cubic_trig(a: float, b: float, c: float, d: float) -> CubicRoots:
    """All real roots of a cubic, via the triple-angle identity when D > 0.

    A positive discriminant means three distinct real roots whose radical
    expressions are irreducibly complex; the trigonometric substitution
    y = m*cos(theta) sidesteps complex arithmetic entirely.  For D <= 0 a
    single real root comes from Cardano (plus the double/triple root cases).
    Roots are Newton-polished and returned sorted ascending.
    """
    if a == 0.0:
        raise DegenerateCubicError("leading_coefficient", "a must be nonzero")
    disc = cubic_discriminant(a, b, c, d)
    # depressed form t^3 + p t + q with y = t - b/(3a)
    p = (3.0 * a * c - b * b) / (3.0 * a * a)
    q = (2.0 * b ** 3 - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a ** 3)
    shift = -b / (3.0 * a)
    if disc > 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (2.0 * p) * math.sqrt(-3.0 / p)
        theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        ts = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
    elif disc < 0.0:
        half_q = -0.5 * q
        s = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
        ts = [_cbrt(half_q + s) + _cbrt(half_q - s)]
    else:
        if p == 0.0:
            ts = [0.0, 0.0, 0.0]
        else:
            ts = [3.0 * q / p, -1.5 * q / p, -1.5 * q / p]
    roots = sorted(_newton_polish(t + shift, a, b, c, d) for t in ts)
    return CubicRoots(a=a, b=b, c=c, d=d, discriminant=disc, roots=tuple(roots))


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _newton_polish(y, a, b, c, d, steps=2):
    for _ in range(steps):
        py = ((a * y + b) * y + c) * y + d
        dy = (3.0 * a * y + 2.0 * b) * y + c
        if dy == 0.0 or abs(py) < 1e-300:
            break
        step = py / dy
        if abs(step) > 1e-2 * max(abs(y), 1.0):  # keep multiple roots intact
            break
        y -= step
    return y


def fit_leading_series(f: Callable[[float], float], order: int = 3, *,
                       x_hi: float = 1e-2, x_lo: float = 1e-4, n_points: int = 64,
                       guard_terms: int = 2, fit_tol: float = 1e-3) -> SeriesFit:
    """Leading coefficients of f(x) = a0*x + a1*x^2 + ... near x = 0.

    f(x)/x is fitted by least squares to a polynomial with ``guard_terms``
    extra nuisance coefficients that absorb the truncation tail, on a
    geometric grid in [x_lo, x_hi].  The fit is repeated on the half-scale
    grid [x_lo/2, x_hi/2]; the half-scale coefficients are returned, and a
    Richardson-style cross-scale difference serves as the error estimate.
    """
    if order < 1:
        raise DomainError("series_order", "need at least one coefficient")

    def fit_at(hi, lo):
        x = np.geomspace(lo, hi, n_points)
        g = np.array([f(v) for v in x]) / x
        u = x / hi  # unit-scaled for conditioning
        vander = np.vander(u, order + guard_terms, increasing=True)
        coef, *_ = np.linalg.lstsq(vander, g, rcond=None)
        return coef[:order] / hi ** np.arange(order)

    a_full = fit_at(x_hi, x_lo)
    a_half = fit_at(0.5 * x_hi, 0.5 * x_lo)
    scales = np.maximum(np.abs(a_half), 1e-30)
    residual = float(np.max(np.abs(a_half - a_full) / scales))
    if residual > fit_tol:
        raise FitResidualError("fit_residual",
                               f"cross-scale coefficient drift {residual:.3e} > {fit_tol:.3e}")
    return SeriesFit(coefficients=tuple(float(v) for v in a_half), residual=residual)


def grid_max(f: Callable[[float], float], lo: float, hi: float, n: int = 10001) -> tuple:
    """Brute-force (argmax, max) of f on a dense uniform grid; test oracle."""
    xs = np.linspace(lo, hi, n)
    vals = np.array([f(x) for x in xs])
    k = int(np.argmax(vals))
    return float(xs[k]), float(vals[k])


def is_unimodal(f: Callable[[float], float], lo: float, hi: float, n: int = 1024,
                atol: float = 0.0) -> bool:
    """Coarse-scan unimodality check: rises (weakly) then falls (weakly)."""
    xs = np.linspace(lo, hi, n)
    vals = np.array([f(x) for x in xs])
    diffs = np.diff(vals)
    signs = [1 if d > atol else -1 for d in diffs if abs(d) > atol]
    seen_down = False
    for s in signs:
        if s < 0:
            seen_down = True
        elif seen_down:
            return False
    return True


def log_dense_grid(lo: float, hi: float, n: int = 512) -> np.ndarray:
    """Grid on (lo, hi) logarithmically clustered toward both endpoints."""
    if not (0.0 <= lo < hi):
        raise DomainError("grid_order", f"need 0 <= lo < hi, got [{lo}, {hi}]")
    half = n // 2
    mid = 0.5 * (lo + hi)
    eps = 1e-4 * (hi - lo)
    left = lo + np.geomspace(eps, mid - lo, half)
    right = hi - np.geomspace(eps, hi - mid, n - half)
    return np.unique(np.concatenate([left, right[::-1]]))
