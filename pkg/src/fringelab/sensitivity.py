"""Phase-uncertainty and Fisher-information calculus.

A detected thermal fringe N(phi) = a + sign*b*cos(phi) with variance
N(1 + N) propagates to the phase uncertainty

    sigma^2(phi) = N (1 + N) / (dN/dphi)^2,

whose minimum over phi has the closed form implemented in
:func:`sigma_min_thermal`.  Differential detection replaces the thermal
variance by the two-exit difference law.  The classical Fisher information
of thermal counting is the exact inverse of sigma^2, which this module
exposes both in closed form and as a direct photon-number series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .analytic import FringeModel, hybrid_fringes, mandel_fringe, yurke_fringe
from .errors import (
    BranchDomainError,
    DegenerateSlopeError,
    DomainError,
    NoFringeError,
    NoMinimumError,
    TruncationCapError,
)

#: |sin(phi)| below this counts as a vanishing fringe slope.
SLOPE_TOL = 1e-12

#: Width of the clamping band around the arccos boundary.
_CLAMP_TOL = 1e-12

#: Pre-clamp excursions beyond 1 + this are treated as genuine domain errors.
_BRANCH_TOL = 1e-9

#: Hard cap on the photon-number summation index of the Fisher series.
FISHER_SERIES_CAP = 10_000_000

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class SensitivityResult:
    """Phase working point, variance sigma^2, Fisher information and F/n.

    ``normalized_fisher`` is populated only when the photon budget n of the
    setup is known to the caller.
    """

    phase: float
    variance: float
    fisher: float
    normalized_fisher: Optional[float] = None


@dataclass(frozen=True)
class HighGainExpansion:
    """Coefficients of n^0, n^-1, n^-2 in the minimal Yurke phase variance."""

    constant_term: float
    inverse_n_term: float
    inverse_n2_term: float

    def value(self, n: float) -> float:
        return self.constant_term + self.inverse_n_term / n + self.inverse_n2_term / (n * n)


def _require_fringe(fringe: FringeModel) -> None:
    if fringe.amplitude == 0.0:
        raise NoFringeError("fringe amplitude is zero; no phase information")


def sigma_thermal(fringe: FringeModel, phase: float,
                  photons: Optional[float] = None) -> SensitivityResult:
    """Phase variance of a thermal single-port fringe at a given phase.

    sigma^2 = N(1+N) / (b sin phi)^2 with N = a + sign*b*cos(phi).
    """
    _require_fringe(fringe)
    if abs(math.sin(phase)) < SLOPE_TOL:
        raise DegenerateSlopeError(f"fringe slope vanishes at phase {phase}")
    n_det = fringe.mean(phase)
    if n_det < 0.0:
        raise DomainError("fringe mean is negative; not a thermal photon-number pattern")
    slope = fringe.slope(phase)
    var = n_det * (1.0 + n_det) / (slope * slope)
    fisher = 1.0 / var
    return SensitivityResult(phase, var, fisher,
                             None if photons is None else fisher / photons)


def phi_min_thermal(fringe: FringeModel) -> float:
    """Phase of minimal thermal phase variance, on the branch in (0, pi].

    cos(phi_min) = sign * x* with
    x* = -[a(1+a) + b^2] / [b(1+2a)] + sqrt([a(1+a) + b^2]^2 / [b(1+2a)]^2 - 1),
    clamped into [-1, 1] when within rounding distance of the boundary.
    For a = b (perfect contrast) this collapses to the dark fringe phi = pi.
    """
    _require_fringe(fringe)
    a, b = fringe.baseline, fringe.amplitude
    ratio = (a * (1.0 + a) + b * b) / (b * (1.0 + 2.0 * a))
    disc = ratio * ratio - 1.0
    if disc < 0.0:
        # Rounding can push the perfect-contrast case a hair below the boundary.
        if disc < -_BRANCH_TOL * max(1.0, ratio * ratio):
            raise BranchDomainError(
                f"optimal-phase branch undefined (a={a}, b={b}); requires a >= b")
        disc = 0.0
    x = -ratio + math.sqrt(disc)
    if x < -1.0:
        if x < -1.0 - _BRANCH_TOL:
            raise BranchDomainError(f"arccos argument {x} out of range")
        x = -1.0
    elif x > 1.0:
        if x > 1.0 + _BRANCH_TOL:
            raise BranchDomainError(f"arccos argument {x} out of range")
        x = 1.0
    return math.acos(fringe.sign * x)


def sigma_min_thermal(fringe: FringeModel,
                      photons: Optional[float] = None) -> SensitivityResult:
    """Minimal thermal phase variance over the working phase.

    sigma^2_min = [a(1+a) - b^2 + sqrt((a^2-b^2)((1+a)^2-b^2))] / (2 b^2),
    evaluated in the cancellation-free grouping a + (a-b)(a+b).  It equals
    sigma_thermal at phi_min_thermal and, for perfect contrast a = b,
    collapses to 1/(2a).
    """
    _require_fringe(fringe)
    a, b = fringe.baseline, fringe.amplitude
    amb = a - b
    if amb < 0.0:
        if amb < -_CLAMP_TOL * max(a, b):
            raise DomainError(f"baseline {a} below amplitude {b}; not a single-port pattern")
        amb = 0.0
    apb = a + b
    radicand = amb * apb * (1.0 + amb) * (1.0 + apb)
    var = (a + amb * apb + math.sqrt(radicand)) / (2.0 * b * b)
    fisher = 1.0 / var
    return SensitivityResult(phi_min_thermal(fringe), var, fisher,
                             None if photons is None else fisher / photons)


def yurke_highgain(t_s: float, t_i: float) -> HighGainExpansion:
    """High-gain expansion coefficients of the minimal Yurke phase variance.

    constant  = (T_s - T_i)^2 / (4 T_s T_i)        (loss-imbalance floor)
    1/n term  = (T_s + T_i)(1 - T_s) / (2 T_s T_i) (shot-noise coefficient)
    1/n^2     = [1 - (3 T_i + T_s)(1 - T_i)] / (4 T_s T_i)
    The lossless limit is (0, 0, 1/4), the Heisenberg coefficient.
    """
    if not (0.0 < t_s <= 1.0 and 0.0 < t_i <= 1.0):
        raise DomainError("transmittances must lie in (0, 1] for the high-gain expansion")
    denom4 = 4.0 * t_s * t_i
    return HighGainExpansion(
        constant_term=(t_s - t_i) ** 2 / denom4,
        inverse_n_term=(t_s + t_i) * (1.0 - t_s) / (2.0 * t_s * t_i),
        inverse_n2_term=(1.0 - (3.0 * t_i + t_s) * (1.0 - t_i)) / denom4,
    )


def _check_photons(n: float) -> None:
    if not (n > 0.0):
        raise DomainError("sensitivity requires a positive mean photon number")


def sigma_sm_min(n: float, t_s: float = 1.0, t_i: float = 1.0) -> SensitivityResult:
    """Minimal phase variance of single-exit Mandel detection at equal gain.

    Lossless, the minimum has the closed form
    (n+2)/(4n(n+1)) + [n^2 + sqrt(4(n+1)^2 + n^4)] / (8(n+1)),
    which grows as T_i n / (4 T_s) in the lossy high-gain regime.
    """
    _check_photons(n)
    fringe = mandel_fringe(n, n, t_s, t_i)
    if t_s == 1.0 and t_i == 1.0:
        var = ((n + 2.0) / (4.0 * n * (n + 1.0))
               + (n * n + math.sqrt(4.0 * (n + 1.0) ** 2 + n ** 4)) / (8.0 * (n + 1.0)))
        return SensitivityResult(phi_min_thermal(fringe), var, 1.0 / var, 1.0 / (n * var))
    return sigma_min_thermal(fringe, photons=n)


def sigma_diff(n: float, t_s: float, t_i: float, phase: float) -> SensitivityResult:
    """Phase variance of differential Mandel detection at equal gain.

    sigma^2 = [N_+ + N_-^2 + 2(1-T_i) T_s n^2] / (dN_-/dphi)^2 with
    N_- = 2n sqrt((n+1) T_i T_s) cos(phi) and N_+ = n[1 + T_s + n T_i].
    The minimum sits at mid fringe phi = pi/2 for every transmittance and
    keeps shot-noise scaling at high gain.
    """
    _check_photons(n)
    if not (0.0 < t_s <= 1.0 and 0.0 < t_i <= 1.0):
        raise DomainError("differential detection requires transmittances in (0, 1]")
    if abs(math.sin(phase)) < SLOPE_TOL:
        raise DegenerateSlopeError(f"difference-fringe slope vanishes at phase {phase}")
    amp = 2.0 * n * math.sqrt((n + 1.0) * t_i * t_s)
    n_minus = amp * math.cos(phase)
    n_plus = n * (1.0 + t_s + n * t_i)
    var_counts = n_plus + n_minus * n_minus + 2.0 * (1.0 - t_i) * t_s * n * n
    slope = amp * math.sin(phase)
    var = var_counts / (slope * slope)
    return SensitivityResult(phase, var, 1.0 / var, 1.0 / (n * var))


def sigma_hybrid(n: float, mixing: float, phase: float) -> SensitivityResult:
    """Phase variance of differential detection in the lossless hybrid.

    Var(N_-) = N_+ + N_-^2 with both exit patterns from hybrid_fringes;
    mixing = 0 reproduces the Yurke variance pointwise and mixing = 1 the
    lossless differential Mandel result.  For 0 < mixing < 1 the variance
    diverges at the dark fringe, where the difference slope vanishes while
    photons remain.
    """
    _check_photons(n)
    total, diff = hybrid_fringes(n, mixing)
    slope = diff.slope(phase)
    if abs(math.sin(phase)) < SLOPE_TOL or slope == 0.0:
        raise DegenerateSlopeError(f"difference-fringe slope vanishes at phase {phase}")
    n_plus = total.mean(phase)
    n_minus = diff.mean(phase)
    var = (n_plus + n_minus * n_minus) / (slope * slope)
    return SensitivityResult(phase, var, 1.0 / var, 1.0 / (n * var))


def fisher_thermal(photon_mean: float, slope: float) -> float:
    """Classical Fisher information of thermal counting: slope^2 / [N(1+N)]."""
    if not (photon_mean > 0.0):
        raise DomainError("thermal Fisher information requires a positive photon mean")
    return slope * slope / (photon_mean * (1.0 + photon_mean))


def fisher_series(fringe: FringeModel, phase: float, truncation_tail: float) -> float:
    """Classical Fisher information summed directly over photon numbers.

    Computes F = sum_m p_m (d ln p_m / d phi)^2 for the thermal distribution
    p_m = N^m / (1+N)^(m+1), where d ln p_m / d phi = (m - N) N' / [N(1+N)].
    The sum is truncated once a geometric bound on the remaining Fisher mass
    drops below ``truncation_tail`` of the accumulated value, so the result
    matches the closed form slope^2/[N(1+N)] to well within
    10 * truncation_tail relative.
    """
    if not (0.0 < truncation_tail <= 1e-6):
        raise DomainError("truncation_tail must lie in (0, 1e-6]")
    n_det = fringe.mean(phase)
    if not (n_det > 0.0):
        raise DomainError("thermal Fisher series requires a positive photon mean")
    slope = fringe.slope(phase)
    if slope == 0.0:
        return 0.0
    q = n_det / (1.0 + n_det)
    scale = slope / (n_det * (1.0 + n_det))
    p = 1.0 / (1.0 + n_det)  # p_0
    total = 0.0
    m = 0
    # Terms t_m = p_m [(m - N) scale]^2 peak near m ~ N and then decay
    # geometrically; past the peak, t_{m+1}/t_m <= q (1 + 1/(m-N))^2 < 1
    # bounds the tail by a geometric series.
    while True:
        dev = (m - n_det) * scale
        total += p * dev * dev
        if m > n_det + 2.0 * (1.0 + n_det) and total > 0.0:
            growth = 1.0 + 1.0 / (m - n_det)
            ratio = q * growth * growth
            if ratio < 1.0:
                next_term = p * q * ((m + 1 - n_det) * scale) ** 2
                if next_term / (1.0 - ratio) < truncation_tail * total:
                    return total
        m += 1
        if m > FISHER_SERIES_CAP:
            raise TruncationCapError(
                f"Fisher series exceeded {FISHER_SERIES_CAP} terms before convergence")
        p *= q


def _golden_section(f: Callable[[float], float], lo: float, hi: float,
                    tol: float) -> tuple[float, float]:
    a, b = lo, hi
    h = b - a
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    yc, yd = f(c), f(d)
    while h > tol:
        if yc < yd:
            b, d, yd = d, c, yc
            h = _INVPHI * h
            c = a + _INVPHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = _INVPHI * h
            d = a + _INVPHI * h
            yd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def numeric_phi_min(objective: Callable[[float], float],
                    bracket: tuple[float, float],
                    tol: float = 1e-10) -> tuple[float, float]:
    """Derivative-free minimum of a phase objective over a bracket.

    A 256-point coarse scan selects the best cell; golden-section search
    refines it to the requested phase tolerance.  Objective evaluations that
    raise a domain/slope error or return non-finite values count as +inf, so
    isolated divergences inside the bracket are tolerated.  The returned
    variance never exceeds the best coarse-grid value.
    """
    lo, hi = bracket
    if not (hi > lo):
        raise DomainError("bracket must satisfy lo < hi")
    if tol < 1e-12:
        raise DomainError("tolerance below 1e-12 is not resolvable")

    def guarded(x: float) -> float:
        try:
            y = objective(x)
        except (DomainError, ZeroDivisionError):
            return math.inf
        return y if math.isfinite(y) else math.inf

    xs = [lo + k * (hi - lo) / 255.0 for k in range(256)]
    ys = [guarded(x) for x in xs]
    best = min(range(256), key=lambda k: ys[k])
    if not math.isfinite(ys[best]):
        raise NoMinimumError("objective is non-finite across the whole bracket")
    x, y = _golden_section(guarded, xs[max(best - 1, 0)], xs[min(best + 1, 255)], tol)
    if ys[best] < y:
        return xs[best], ys[best]
    return x, y
