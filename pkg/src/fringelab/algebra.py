"""Input-output operator algebra of nonlinear interferometers.

Each two-mode squeezer is a Bogoliubov (SU(1,1)) transformation
``b_s/i = u a_s/i + v a_i/s^dag`` with ``|u|^2 - |v|^2 = 1``; loss on an arm
is an SU(2) beam splitter coupling to a vacuum channel.  Composing these
elements for a given topology yields, per detected output port, one linear
form in the five vacuum input modes.  The coefficients of that form are all
that downstream moment or sensitivity calculations ever need.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError

#: Canonical (sorted) mode-label order used for every deterministic sum.
MODES = ("i", "loss_i", "loss_s", "sA", "sB")

#: Recognized interferometer topologies.
VARIANTS = ("yurke", "mandel", "hybrid")

_SQRT_HALF = math.sqrt(0.5)


def _abs2(z: complex) -> float:
    return z.real * z.real + z.imag * z.imag


@dataclass(frozen=True)
class SqueezerGain:
    """One parametric amplifier: mean photons per mode and pump phase.

    The mean photon number V fixes the Bogoliubov pair as u = sqrt(1+V)
    (real positive) and v = sqrt(V) * exp(i * pump_phase), which satisfies
    the hyperbolic identity |u|^2 - |v|^2 = 1 by construction.
    """

    mean_photons: float
    pump_phase: float = 0.0

    def __post_init__(self) -> None:
        if not (self.mean_photons >= 0.0):
            raise DomainError(f"mean_photons must be >= 0, got {self.mean_photons}")


@dataclass(frozen=True)
class ArmChannel:
    """Transmittance and acquired phase of one interferometer arm.

    The complex transmission is t = sqrt(T) * exp(i * arm_phase); the
    reflection into the loss channel is r = sqrt(1 - T), real.
    """

    transmittance: float
    arm_phase: float = 0.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.transmittance <= 1.0):
            raise DomainError(f"transmittance must lie in [0, 1], got {self.transmittance}")

    @property
    def t(self) -> complex:
        return cmath.rect(math.sqrt(self.transmittance), self.arm_phase)

    @property
    def r(self) -> float:
        return math.sqrt(1.0 - self.transmittance)


@dataclass(frozen=True)
class InterferometerSpec:
    """Topology variant plus all physical parameters of one setup.

    ``mixing`` is the out-coupling fraction of the tunable hybrid and is
    meaningful only for that variant; 0 reproduces the Yurke layout and 1
    the Mandel layout.  The hybrid transformation is lossless: it uses the
    arm phases but ignores arm transmittances below one.
    """

    variant: str
    gain_a: SqueezerGain
    gain_b: SqueezerGain
    signal_channel: ArmChannel
    idler_channel: ArmChannel
    mixing: float = 0.0

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise DomainError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if not (0.0 <= self.mixing <= 1.0):
            raise DomainError(f"mixing must lie in [0, 1], got {self.mixing}")


@dataclass(frozen=True)
class PortCoefficients:
    """Complex coefficients of one output port over the five input modes.

    ``annihilation[m]`` multiplies the input annihilation operator of mode m
    and ``creation[m]`` the corresponding creation operator.  Absent
    couplings are stored as exact zeros so that moment contractions are
    dense five-mode sums.
    """

    annihilation: Mapping[str, complex]
    creation: Mapping[str, complex] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        ann = {m: complex(self.annihilation.get(m, 0.0)) for m in MODES}
        cre = {m: complex((self.creation or {}).get(m, 0.0)) for m in MODES}
        object.__setattr__(self, "annihilation", ann)
        object.__setattr__(self, "creation", cre)

    def commutator_defect(self) -> float:
        """Deviation of sum|ann|^2 - sum|cre|^2 from the bosonic value 1."""
        s = 0.0
        for m in MODES:
            s += _abs2(self.annihilation[m])
        for m in MODES:
            s -= _abs2(self.creation[m])
        return s - 1.0


def bogoliubov_pair(gain: SqueezerGain) -> tuple[complex, complex]:
    """Bogoliubov coefficients (u, v) of one squeezer, u real positive."""
    u = complex(math.sqrt(1.0 + gain.mean_photons))
    v = cmath.rect(math.sqrt(gain.mean_photons), gain.pump_phase)
    return u, v


def yurke_spec(v_a: float, v_b: float, t_s: float = 1.0, t_i: float = 1.0,
               phi: float = 0.0) -> InterferometerSpec:
    """Yurke setup with the full phase budget placed on the idler arm."""
    return InterferometerSpec("yurke", SqueezerGain(v_a), SqueezerGain(v_b),
                              ArmChannel(t_s), ArmChannel(t_i, phi))


def mandel_spec(v_a: float, v_b: float, t_s: float = 1.0, t_i: float = 1.0,
                phi: float = 0.0) -> InterferometerSpec:
    """Mandel setup with the full phase budget placed on the idler arm."""
    return InterferometerSpec("mandel", SqueezerGain(v_a), SqueezerGain(v_b),
                              ArmChannel(t_s), ArmChannel(t_i, phi))


def hybrid_spec(n: float, mixing: float, phi: float = 0.0) -> InterferometerSpec:
    """Equal-gain lossless hybrid with out-coupling fraction ``mixing``."""
    return InterferometerSpec("hybrid", SqueezerGain(n), SqueezerGain(n),
                              ArmChannel(1.0), ArmChannel(1.0, phi), mixing)


def yurke_ports(spec: InterferometerSpec) -> PortCoefficients:
    """Signal output port of the Yurke setup.

    Both squeezer outputs seed the second medium; the detected signal mode is
    alpha a_sA + kappa l_s + beta a_i^dag + lambda l_i^dag with
    alpha = u_B t_s u_A + v_B t_i* v_A*, kappa = u_B r_s,
    beta  = u_B t_s v_A + v_B t_i* u_A*, lambda = v_B r_i*.
    """
    if spec.variant != "yurke":
        raise DomainError(f"yurke_ports requires a yurke spec, got {spec.variant!r}")
    u_a, v_a = bogoliubov_pair(spec.gain_a)
    u_b, v_b = bogoliubov_pair(spec.gain_b)
    t_s, r_s = spec.signal_channel.t, spec.signal_channel.r
    t_i, r_i = spec.idler_channel.t, spec.idler_channel.r
    alpha = u_b * t_s * u_a + v_b * t_i.conjugate() * v_a.conjugate()
    kappa = u_b * r_s
    beta = u_b * t_s * v_a + v_b * t_i.conjugate() * u_a.conjugate()
    lam = v_b * r_i
    return PortCoefficients({"sA": alpha, "loss_s": kappa},
                            {"i": beta, "loss_i": lam})


def mandel_ports(spec: InterferometerSpec) -> tuple[PortCoefficients, PortCoefficients]:
    """Both exits of the Mandel setup's 50:50 signal recombiner.

    Only the idler seeds the second medium; the signal modes of both media
    interfere on the splitter, so each exit couples to a_sA, a_sB, the
    signal-loss vacuum, and the creation operators of idler and idler loss.
    """
    if spec.variant != "mandel":
        raise DomainError(f"mandel_ports requires a mandel spec, got {spec.variant!r}")
    u_a, v_a = bogoliubov_pair(spec.gain_a)
    u_b, v_b = bogoliubov_pair(spec.gain_b)
    t_s, r_s = spec.signal_channel.t, spec.signal_channel.r
    t_i, r_i = spec.idler_channel.t, spec.idler_channel.r
    ports = []
    for sgn in (+1.0, -1.0):
        alpha = (t_s * u_a + sgn * v_b * t_i.conjugate() * v_a.conjugate()) * _SQRT_HALF
        gamma = sgn * u_b * _SQRT_HALF
        kappa = r_s * _SQRT_HALF
        beta = (t_s * v_a + sgn * v_b * t_i.conjugate() * u_a.conjugate()) * _SQRT_HALF
        lam = sgn * v_b * r_i * _SQRT_HALF
        ports.append(PortCoefficients({"sA": alpha, "sB": gamma, "loss_s": kappa},
                                      {"i": beta, "loss_i": lam}))
    return ports[0], ports[1]


def hybrid_ports(spec: InterferometerSpec) -> tuple[PortCoefficients, PortCoefficients]:
    """Both exits of the lossless tunable hybrid.

    An out-coupler of transmittance tau = 1 - mixing diverts part of the
    first medium's signal around the second medium; the diverted beam and
    the second medium's signal output recombine on a splitter with
    |t|^2 = (1 + tau) / 2.  The out-coupler reflection carries an extra pi
    phase so that mixing = 1 reproduces the Mandel exits without the two
    outputs swapping roles; mixing = 0 leaves the plus exit as the plain
    Yurke signal and routes pure vacuum to the minus exit.

    Arm transmittances below one are ignored here (no lossy closed form is
    claimed for this topology); arm phases are honored, with both internal
    phases locked to the common interferometer phase.
    """
    if spec.variant != "hybrid":
        raise DomainError(f"hybrid_ports requires a hybrid spec, got {spec.variant!r}")
    rho = spec.mixing
    tau = 1.0 - rho
    u_a, v_a = bogoliubov_pair(spec.gain_a)
    u_b, v_b = bogoliubov_pair(spec.gain_b)
    # Arm phases survive; transmittances are forced to one (lossless contract).
    phase_s = cmath.rect(1.0, spec.signal_channel.arm_phase)
    t_i = cmath.rect(1.0, spec.idler_channel.arm_phase)
    t_out = math.sqrt(tau) * phase_s
    r_out = -math.sqrt(rho)  # pi shift imprinted on the out-coupled beam
    t_mix = math.sqrt((1.0 + tau) / 2.0)
    r_mix = math.sqrt(rho / 2.0)

    # Second medium's signal output (the Yurke branch, out-coupler vacuum as seed).
    y_sA = u_b * t_out * u_a + v_b * t_i.conjugate() * v_a.conjugate()
    y_sB = u_b * r_out
    y_i = u_b * t_out * v_a + v_b * t_i.conjugate() * u_a.conjugate()
    # Out-coupled bypass beam.
    byp_sA = -r_out * phase_s * u_a
    byp_sB = t_out.conjugate()
    byp_i = -r_out * phase_s * v_a

    plus = PortCoefficients(
        {"sA": t_mix * y_sA + r_mix * byp_sA, "sB": t_mix * y_sB + r_mix * byp_sB},
        {"i": t_mix * y_i + r_mix * byp_i})
    minus = PortCoefficients(
        {"sA": -r_mix * y_sA + t_mix * byp_sA, "sB": -r_mix * y_sB + t_mix * byp_sB},
        {"i": -r_mix * y_i + t_mix * byp_i})
    return plus, minus


def ports_for(spec: InterferometerSpec):
    """Dispatch to the port constructor of the spec's topology."""
    if spec.variant == "yurke":
        return (yurke_ports(spec),)
    if spec.variant == "mandel":
        return mandel_ports(spec)
    return hybrid_ports(spec)
