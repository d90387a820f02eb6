"""Gaussian-moment oracle for photon counting on vacuum input.

Every quantity here is obtained by Wick contractions of the port
coefficients over the five vacuum input modes; no closed-form interference
pattern is ever consulted.  That independence is what makes agreement with
the analytic module a meaningful verification.

For a port ``b = sum_m A_m a_m + B_m a_m^dag`` the only nonzero vacuum
contraction is <a_m a_k^dag> = delta_mk, which reduces everything to three
pairwise correlators:

    normal:     G_pq = <b_p^dag b_q> = sum_m B_p,m* B_q,m
    exchange:   D_pq = <b_p b_q^dag> = sum_m A_p,m A_q,m*
    anomalous:  S_pq = <b_p b_q>     = sum_m A_p,m B_q,m
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import MODES, PortCoefficients, _abs2


def _normal(p: PortCoefficients, q: PortCoefficients) -> complex:
    s = 0j
    for m in MODES:
        s += p.creation[m].conjugate() * q.creation[m]
    return s


def _anomalous(p: PortCoefficients, q: PortCoefficients) -> complex:
    s = 0j
    for m in MODES:
        s += p.annihilation[m] * q.creation[m]
    return s


def port_mean(port: PortCoefficients) -> float:
    """Mean photon number of one port: the creation-coefficient weight."""
    n = 0.0
    for m in MODES:
        n += _abs2(port.creation[m])
    return n


def port_variance(port: PortCoefficients) -> float:
    """Photon-number variance of one port from Wick contractions.

    Var = N (1 + N) + |S_pp|^2.  The anomalous self-term S_pp vanishes for
    all three topologies built here (annihilation and creation coefficients
    live on disjoint mode sets), leaving the thermal law N(1 + N).
    """
    n = port_mean(port)
    return n * (1.0 + n) + _abs2(_anomalous(port, port))


def port_covariance(p: PortCoefficients, q: PortCoefficients) -> float:
    """Photon-number covariance of two ports of the same network.

    Cov = |G_pq|^2 + |S_pq|^2 for commuting output ports.  The anomalous
    factor is symmetrized, (S_pq + S_qp)/2, which is exact for any proper
    bosonic network and makes the result bit-for-bit symmetric in (p, q).
    """
    g = _normal(p, q)
    s = (_anomalous(p, q) + _anomalous(q, p)) / 2.0
    return _abs2(g) + _abs2(s)


@dataclass(frozen=True)
class MomentReport:
    """First and second photon-counting moments of a designated port pair."""

    mean: tuple[float, float]
    variance: tuple[float, float]
    covariance: float
    sum_mean: float
    diff_mean: float
    diff_variance: float


def diff_moments(p: PortCoefficients, q: PortCoefficients) -> MomentReport:
    """Sum/difference photon statistics of two ports.

    Var(N_p - N_q) = Var_p + Var_q - 2 Cov(p, q).
    """
    mp, mq = port_mean(p), port_mean(q)
    vp, vq = port_variance(p), port_variance(q)
    c = port_covariance(p, q)
    return MomentReport(
        mean=(mp, mq),
        variance=(vp, vq),
        covariance=c,
        sum_mean=mp + mq,
        diff_mean=mp - mq,
        diff_variance=vp + vq - 2.0 * c,
    )
