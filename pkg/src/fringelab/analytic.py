"""Closed-form interference patterns and photon-number variance laws.

All detected intensities of the three topologies are plain fringes
N(phi) = a + sign * b * cos(phi); this module provides the coefficients
(a, b) for general gains and arm transmittances, plus the thermal and
difference variance laws that go with them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class FringeModel:
    """Baseline a, amplitude b and sign of an N = a + sign*b*cos(phi) pattern."""

    baseline: float
    amplitude: float
    sign: int = +1

    def __post_init__(self) -> None:
        if self.baseline < 0.0 or self.amplitude < 0.0:
            raise DomainError("fringe baseline and amplitude must be nonnegative")
        if self.sign not in (+1, -1):
            raise DomainError(f"fringe sign must be +1 or -1, got {self.sign}")

    def mean(self, phi: float) -> float:
        # Grouped as (a - b) + b (1 +- cos phi) with the half-angle identity,
        # which stays fully accurate at the dark fringe where a ~ b.
        if self.sign > 0:
            half = math.cos(0.5 * phi)
        else:
            half = math.sin(0.5 * phi)
        return (self.baseline - self.amplitude) + 2.0 * self.amplitude * half * half

    def slope(self, phi: float) -> float:
        return -self.sign * self.amplitude * math.sin(phi)

    @property
    def contrast(self) -> float:
        if self.baseline == 0.0:
            return math.inf if self.amplitude > 0.0 else 0.0
        return self.amplitude / self.baseline


def _check_gain_loss(v_a: float, v_b: float, t_s: float, t_i: float) -> None:
    if v_a < 0.0 or v_b < 0.0:
        raise DomainError("mean photon numbers must be nonnegative")
    if not (0.0 <= t_s <= 1.0 and 0.0 <= t_i <= 1.0):
        raise DomainError("transmittances must lie in [0, 1]")


def yurke_fringe(v_a: float, v_b: float, t_s: float = 1.0, t_i: float = 1.0) -> FringeModel:
    """Signal-photon fringe of the Yurke setup.

    a = T_s V_A + V_B + (T_s + T_i) V_A V_B,
    b = 2 sqrt(T_s T_i V_A V_B (1 + V_A)(1 + V_B)).
    Equal gains reduce to a = n(1 + T_s) + n^2 (T_s + T_i), b = 2n(n+1) sqrt(T_s T_i).
    """
    _check_gain_loss(v_a, v_b, t_s, t_i)
    a = t_s * v_a + v_b + (t_s + t_i) * v_a * v_b
    b = 2.0 * math.sqrt(t_s * t_i * v_a * v_b * (1.0 + v_a) * (1.0 + v_b))
    return FringeModel(a, b, +1)


def mandel_fringe(v_a: float, v_b: float, t_s: float = 1.0, t_i: float = 1.0,
                  exit: str = "plus") -> FringeModel:
    """Single-exit fringe of the Mandel setup (plus exit: sign +, minus: sign -).

    a = (T_s V_A + V_B + T_i V_A V_B) / 2, b = sqrt(T_s T_i V_A V_B (1 + V_A)).
    """
    _check_gain_loss(v_a, v_b, t_s, t_i)
    if exit not in ("plus", "minus"):
        raise DomainError(f"exit must be 'plus' or 'minus', got {exit!r}")
    a = (t_s * v_a + v_b + t_i * v_a * v_b) / 2.0
    b = math.sqrt(t_s * t_i * v_a * v_b * (1.0 + v_a))
    return FringeModel(a, b, +1 if exit == "plus" else -1)


def mandel_sum_diff(v_a: float, v_b: float, t_s: float = 1.0,
                    t_i: float = 1.0) -> tuple[FringeModel, FringeModel]:
    """Sum and difference patterns of the two Mandel exits.

    The sum is phase independent, N_+ = T_s V_A + V_B + T_i V_A V_B; the
    difference is a pure cosine, N_- = 2 sqrt(T_s T_i V_A V_B (1+V_A)) cos(phi).
    """
    single = mandel_fringe(v_a, v_b, t_s, t_i)
    total = FringeModel(2.0 * single.baseline, 0.0, +1)
    diff = FringeModel(0.0, 2.0 * single.amplitude, +1)
    return total, diff


def hybrid_fringes(n: float, mixing: float) -> tuple[FringeModel, FringeModel]:
    """Sum and difference patterns of the lossless equal-gain hybrid.

    With tau = 1 - mixing:
      N_+ = n [n + 2 + n tau] + 2 n (1+n) sqrt(tau) cos(phi)
      N_- = a + b cos(phi) with
      a = 2 n rho sqrt((n+1)(tau + tau^2)) + n^2 tau + n (2+n) tau^2,
      b = 2 n [(1+n) tau^(3/2) + rho sqrt((1+n)(1+tau))].
    mixing = 0 gives the Yurke pattern 2n(1+n)(1 + cos phi) for both; mixing = 1
    gives the phase-independent Mandel sum and the pure-cosine difference.
    """
    if n < 0.0:
        raise DomainError("mean photon number must be nonnegative")
    if not (0.0 <= mixing <= 1.0):
        raise DomainError(f"mixing must lie in [0, 1], got {mixing}")
    tau = 1.0 - mixing
    total = FringeModel(n * (n + 2.0 + n * tau), 2.0 * n * (1.0 + n) * math.sqrt(tau), +1)
    a = (2.0 * n * mixing * math.sqrt((n + 1.0) * (tau + tau * tau))
         + n * n * tau + n * (2.0 + n) * tau * tau)
    b = 2.0 * n * ((1.0 + n) * tau ** 1.5 + mixing * math.sqrt((1.0 + n) * (1.0 + tau)))
    return total, FringeModel(a, b, +1)


def thermal_variance(photon_mean: float) -> float:
    """Photon-number variance N(1 + N) of thermal counting statistics."""
    if photon_mean < 0.0:
        raise DomainError("photon mean must be nonnegative")
    return photon_mean * (1.0 + photon_mean)


def diff_variance(n_plus: float, n_minus: float, v_a: float, v_b: float,
                  t_s: float, t_i: float) -> float:
    """Variance of the Mandel exit difference under internal loss.

    Var(N_-) = N_+ + N_-^2 + 2 V_A V_B T_s (1 - T_i); the excess over the
    lossless value is the idler-loss decorrelation of the two exits.
    """
    _check_gain_loss(v_a, v_b, t_s, t_i)
    return n_plus + n_minus * n_minus + 2.0 * v_a * v_b * t_s * (1.0 - t_i)
