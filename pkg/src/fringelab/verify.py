"""Seeded self-verification: closed forms against the Gaussian-moment oracle.

For randomly drawn setups of every topology, the analytic fringe and
variance laws are compared with Wick-contraction moments computed from the
port coefficients alone, the closed-form optimal phase is compared with a
derivative-free numeric minimization, and the thermal Fisher identity is
exercised.  The report is a pure function of (seed, count), so repeated
runs are byte-identical.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .algebra import hybrid_spec, hybrid_ports, mandel_ports, mandel_spec, yurke_ports, yurke_spec
from .analytic import diff_variance, hybrid_fringes, mandel_fringe, mandel_sum_diff, yurke_fringe
from .errors import ConfigError
from .moments import diff_moments, port_mean, port_variance, _anomalous
from .sensitivity import fisher_thermal, numeric_phi_min, sigma_min_thermal, sigma_thermal

#: Values smaller than this are compared on an absolute scale (x100 stricter).
_NEAR_ZERO = 1e-2

ORACLE_TOL = 1e-10
NUMERIC_MIN_TOL = 1e-9
FISHER_TOL = 1e-10
ANOMALOUS_TOL = 1e-12


def _deviation(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), _NEAR_ZERO)


@dataclass
class _Check:
    tolerance: float
    max_deviation: float = 0.0
    worst_spec: Optional[dict] = None

    def feed(self, x: float, y: float, spec: dict) -> float:
        d = _deviation(x, y)
        if d > self.max_deviation:
            self.max_deviation = d
            self.worst_spec = spec
        return d

    @property
    def ok(self) -> bool:
        return self.max_deviation <= self.tolerance


@dataclass
class VerifyReport:
    seed: int
    count: int
    checks: dict[str, _Check] = field(default_factory=dict)
    failure: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failure is None and all(c.ok for c in self.checks.values())

    def to_json(self) -> str:
        doc = {
            "tool": "fringelab",
            "version": __version__,
            "seed": self.seed,
            "count": self.count,
            "checks": {
                name: {
                    "max_deviation": c.max_deviation,
                    "tolerance": c.tolerance,
                    "pass": c.ok,
                }
                for name, c in self.checks.items()
            },
            "pass": self.ok,
            "failure": self.failure,
        }
        return json.dumps(doc, indent=2) + "\n"


def run_verify(seed: int, count: int) -> VerifyReport:
    """Run every cross-check class on ``count`` random setups per topology."""
    if count < 1:
        raise ConfigError("count must be >= 1")
    rng = random.Random(seed)
    report = VerifyReport(seed=seed, count=count)
    checks = {
        "commutator": _Check(ORACLE_TOL),
        "anomalous_self_term": _Check(ANOMALOUS_TOL),
        "thermal_law": _Check(ORACLE_TOL),
        "yurke_mean": _Check(ORACLE_TOL),
        "yurke_variance": _Check(ORACLE_TOL),
        "mandel_mean": _Check(ORACLE_TOL),
        "mandel_variance": _Check(ORACLE_TOL),
        "mandel_sum_diff": _Check(ORACLE_TOL),
        "mandel_diff_variance": _Check(ORACLE_TOL),
        "hybrid_mean": _Check(ORACLE_TOL),
        "hybrid_diff_variance": _Check(ORACLE_TOL),
        "sigma_min_vs_numeric": _Check(NUMERIC_MIN_TOL),
        "fisher_identity": _Check(FISHER_TOL),
    }
    report.checks = checks

    def feed(name: str, x: float, y: float, spec: dict) -> None:
        d = checks[name].feed(x, y, spec)
        if d > checks[name].tolerance and report.failure is None:
            report.failure = {"check": name, "deviation": d, "spec": spec}

    for _ in range(count):
        v_a, v_b = rng.uniform(0.0, 50.0), rng.uniform(0.0, 50.0)
        t_s, t_i = rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        spec = {"v_a": v_a, "v_b": v_b, "t_s": t_s, "t_i": t_i, "phi": phi}

        port = yurke_ports(yurke_spec(v_a, v_b, t_s, t_i, phi))
        y_spec = {"variant": "yurke", **spec}
        feed("commutator", 1.0 + port.commutator_defect(), 1.0, y_spec)
        feed("anomalous_self_term", abs(_anomalous(port, port)), 0.0, y_spec)
        mean = port_mean(port)
        var = port_variance(port)
        feed("thermal_law", var, mean * (1.0 + mean), y_spec)
        fringe = yurke_fringe(v_a, v_b, t_s, t_i)
        feed("yurke_mean", mean, fringe.mean(phi), y_spec)
        feed("yurke_variance", var, fringe.mean(phi) * (1.0 + fringe.mean(phi)), y_spec)

        plus, minus = mandel_ports(mandel_spec(v_a, v_b, t_s, t_i, phi))
        m_spec = {"variant": "mandel", **spec}
        for p, exit in ((plus, "plus"), (minus, "minus")):
            feed("commutator", 1.0 + p.commutator_defect(), 1.0, m_spec)
            feed("anomalous_self_term", abs(_anomalous(p, p)), 0.0, m_spec)
            f = mandel_fringe(v_a, v_b, t_s, t_i, exit=exit)
            feed("mandel_mean", port_mean(p), f.mean(phi), m_spec)
            feed("mandel_variance", port_variance(p), f.mean(phi) * (1.0 + f.mean(phi)), m_spec)
        rep = diff_moments(plus, minus)
        total, diff = mandel_sum_diff(v_a, v_b, t_s, t_i)
        feed("mandel_sum_diff", rep.sum_mean, total.mean(phi), m_spec)
        feed("mandel_sum_diff", rep.diff_mean, diff.mean(phi), m_spec)
        feed("mandel_diff_variance", rep.diff_variance,
             diff_variance(rep.sum_mean, rep.diff_mean, v_a, v_b, t_s, t_i), m_spec)

        n = rng.uniform(0.0, 50.0)
        rho = rng.uniform(0.0, 1.0)
        h_spec = {"variant": "hybrid", "n": n, "rho": rho, "phi": phi}
        h_plus, h_minus = hybrid_ports(hybrid_spec(n, rho, phi))
        feed("commutator", 1.0 + h_plus.commutator_defect(), 1.0, h_spec)
        feed("commutator", 1.0 + h_minus.commutator_defect(), 1.0, h_spec)
        h_rep = diff_moments(h_plus, h_minus)
        h_total, h_diff = hybrid_fringes(n, rho)
        feed("hybrid_mean", h_rep.sum_mean, h_total.mean(phi), h_spec)
        feed("hybrid_mean", h_rep.diff_mean, h_diff.mean(phi), h_spec)
        feed("hybrid_diff_variance", h_rep.diff_variance,
             h_total.mean(phi) + h_diff.mean(phi) ** 2, h_spec)

        n_opt = rng.uniform(0.1, 1000.0)
        ts2, ti2 = rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0)
        o_spec = {"variant": "yurke", "n": n_opt, "t_s": ts2, "t_i": ti2}
        fr = yurke_fringe(n_opt, n_opt, ts2, ti2)
        closed = sigma_min_thermal(fr)
        _, numeric = numeric_phi_min(lambda p: sigma_thermal(fr, p).variance,
                                     (1e-4, 2.0 * math.pi - 1e-4))
        feed("sigma_min_vs_numeric", closed.variance, numeric, o_spec)

        phi_f = rng.uniform(0.3, math.pi - 0.3)
        res = sigma_thermal(fr, phi_f)
        fisher = fisher_thermal(fr.mean(phi_f), fr.slope(phi_f))
        feed("fisher_identity", fisher * res.variance, 1.0, {**o_spec, "phi": phi_f})

    return report
