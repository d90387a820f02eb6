"""Closed-form fringes and variance laws against the moment oracle."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fringelab.algebra import (
    hybrid_ports,
    hybrid_spec,
    mandel_ports,
    mandel_spec,
    yurke_ports,
    yurke_spec,
)
from fringelab.analytic import (
    FringeModel,
    diff_variance,
    hybrid_fringes,
    mandel_fringe,
    mandel_sum_diff,
    thermal_variance,
    yurke_fringe,
)
from fringelab.errors import DomainError
from fringelab.moments import diff_moments, port_mean, port_variance

from helpers import agree


class TestFringeModel:
    def test_mean_and_slope(self):
        fr = FringeModel(4.0, 2.0, -1)
        assert fr.mean(0.0) == 2.0
        assert fr.slope(math.pi / 2) == pytest.approx(2.0)
        assert fr.contrast == 0.5

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            FringeModel(-1.0, 0.0)
        with pytest.raises(DomainError):
            FringeModel(1.0, 1.0, 2)


class TestYurkeFringe:
    def test_lossless_perfect_contrast(self):
        fr = yurke_fringe(1.0, 1.0)
        assert (fr.baseline, fr.amplitude) == (4.0, 4.0)
        assert fr.mean(math.pi) == pytest.approx(0.0, abs=1e-15)

    def test_lossy_example(self):
        fr = yurke_fringe(1.0, 1.0, 0.8, 0.7)
        assert fr.baseline == pytest.approx(3.3, rel=1e-15)
        assert fr.amplitude == pytest.approx(2.993325909419153, rel=1e-13)
        assert fr.contrast == pytest.approx(0.9070684573997434, rel=1e-12)

    def test_no_first_squeezer_no_interference(self):
        fr = yurke_fringe(0.0, 2.5, 0.9, 0.9)
        assert fr.baseline == 2.5
        assert fr.amplitude == 0.0

    def test_equal_gain_grouping_identity(self):
        # n[1 + T_s + 2 sqrt(TsTi) cos] + n^2[T_s + T_i + 2 sqrt(TsTi) cos]
        # is the same pattern regrouped by photon order.
        rng = random.Random(5)
        for _ in range(200):
            n = rng.uniform(0, 30)
            t_s, t_i = rng.uniform(0.05, 1), rng.uniform(0.05, 1)
            phi = rng.uniform(0, 2 * math.pi)
            c = math.cos(phi)
            root = 2.0 * math.sqrt(t_s * t_i) * c
            grouped = n * (1 + t_s + root) + n * n * (t_s + t_i + root)
            assert agree(yurke_fringe(n, n, t_s, t_i).mean(phi), grouped, rel=1e-12)


class TestMandelFringe:
    def test_lossless_equal_gain(self):
        fr = mandel_fringe(1.0, 1.0)
        assert fr.baseline == pytest.approx(1.5)
        assert fr.amplitude == pytest.approx(math.sqrt(2.0), rel=1e-15)
        # First-moment oracle pins the bright-fringe value.
        plus, _ = mandel_ports(mandel_spec(1.0, 1.0, 1.0, 1.0, 0.0))
        assert fr.mean(0.0) == pytest.approx(port_mean(plus), rel=1e-13)

    def test_contrast_below_unity(self):
        fr = mandel_fringe(1.0, 1.0)
        assert fr.contrast == pytest.approx(2.0 * math.sqrt(2.0) / 3.0, rel=1e-14)
        assert fr.contrast < 1.0

    def test_minus_exit_sign(self):
        plus = mandel_fringe(2.0, 3.0, 0.9, 0.8, exit="plus")
        minus = mandel_fringe(2.0, 3.0, 0.9, 0.8, exit="minus")
        assert plus.sign == 1 and minus.sign == -1
        assert plus.mean(0.7) + minus.mean(0.7) == pytest.approx(2 * plus.baseline)

    def test_no_first_squeezer(self):
        fr = mandel_fringe(0.0, 3.0, 0.8, 0.8)
        assert fr.baseline == 1.5
        assert fr.amplitude == 0.0


class TestMandelSumDiff:
    def test_lossy_sum_example(self):
        total, _ = mandel_sum_diff(10.0, 10.0, 0.8, 0.7)
        assert total.baseline == pytest.approx(88.0, rel=1e-13)
        assert total.amplitude == 0.0

    def test_lossless_sum_and_midfringe(self):
        total, diff = mandel_sum_diff(3.0, 3.0)
        assert total.baseline == pytest.approx(15.0, rel=1e-14)  # n(n+2)
        assert diff.mean(math.pi / 2) == pytest.approx(0.0, abs=1e-14)

    def test_dark_idler_kills_difference(self):
        _, diff = mandel_sum_diff(2.0, 2.0, 0.9, 0.0)
        assert diff.amplitude == 0.0


class TestHybridFringes:
    def test_mandel_endpoint(self):
        total, diff = hybrid_fringes(4.0, 1.0)
        assert total.amplitude == 0.0
        assert total.baseline == pytest.approx(24.0)  # n(n+2)
        assert diff.baseline == 0.0
        assert diff.amplitude == pytest.approx(2 * 4.0 * math.sqrt(5.0), rel=1e-14)

    def test_yurke_endpoint(self):
        total, diff = hybrid_fringes(4.0, 0.0)
        ref = yurke_fringe(4.0, 4.0)
        for phi in (0.0, 1.1, math.pi):
            assert agree(diff.mean(phi), ref.mean(phi), rel=1e-13)
            assert agree(total.mean(phi), ref.mean(phi), rel=1e-13)

    def test_halfway_coefficients(self):
        _, diff = hybrid_fringes(10.0, 0.5)
        assert diff.baseline == pytest.approx(108.72281323269014, rel=1e-12)
        assert diff.amplitude == pytest.approx(118.40193795370004, rel=1e-12)

    def test_rejects_bad_mixing(self):
        with pytest.raises(DomainError):
            hybrid_fringes(1.0, -0.2)
        with pytest.raises(DomainError):
            hybrid_fringes(1.0, 1.2)


class TestVarianceLaws:
    def test_thermal_variance_values(self):
        assert thermal_variance(0.0) == 0.0
        assert thermal_variance(8.0) == 72.0
        assert thermal_variance(2.2071) == pytest.approx(2.2071 * 3.2071, rel=1e-15)
        with pytest.raises(DomainError):
            thermal_variance(-0.5)

    def test_diff_variance_examples(self):
        assert diff_variance(3.0, 0.0, 1.0, 1.0, 1.0, 1.0) == 3.0
        assert diff_variance(5.0, 1.0, 2.0, 3.0, 0.7, 1.0) == 6.0  # no excess at T_i = 1
        assert diff_variance(88.0, 0.0, 10.0, 10.0, 0.8, 0.7) == pytest.approx(136.0, rel=1e-14)


@settings(max_examples=150, deadline=None)
@given(v_a=st.floats(0.0, 50.0), v_b=st.floats(0.0, 50.0),
       t_s=st.floats(0.05, 1.0), t_i=st.floats(0.05, 1.0),
       phi=st.floats(0.0, 2.0 * math.pi))
def test_fringes_match_oracle(v_a, v_b, t_s, t_i, phi):
    y = yurke_ports(yurke_spec(v_a, v_b, t_s, t_i, phi))
    fr = yurke_fringe(v_a, v_b, t_s, t_i)
    assert agree(port_mean(y), fr.mean(phi))
    assert agree(port_variance(y), thermal_variance(fr.mean(phi)))

    plus, minus = mandel_ports(mandel_spec(v_a, v_b, t_s, t_i, phi))
    for port, exit in ((plus, "plus"), (minus, "minus")):
        f = mandel_fringe(v_a, v_b, t_s, t_i, exit=exit)
        assert agree(port_mean(port), f.mean(phi))
    rep = diff_moments(plus, minus)
    total, diff = mandel_sum_diff(v_a, v_b, t_s, t_i)
    assert agree(rep.sum_mean, total.mean(phi))
    assert agree(rep.diff_mean, diff.mean(phi))
    assert agree(rep.diff_variance,
                 diff_variance(total.mean(phi), diff.mean(phi), v_a, v_b, t_s, t_i))


@settings(max_examples=100, deadline=None)
@given(n=st.floats(0.0, 50.0), rho=st.floats(0.0, 1.0),
       phi=st.floats(0.0, 2.0 * math.pi))
def test_hybrid_fringes_match_oracle(n, rho, phi):
    plus, minus = hybrid_ports(hybrid_spec(n, rho, phi))
    rep = diff_moments(plus, minus)
    total, diff = hybrid_fringes(n, rho)
    assert agree(rep.sum_mean, total.mean(phi))
    assert agree(rep.diff_mean, diff.mean(phi))
    assert agree(rep.diff_variance, total.mean(phi) + diff.mean(phi) ** 2)


def test_single_port_fringes_nonnegative():
    rng = random.Random(9)
    for _ in range(300):
        v_a, v_b = rng.uniform(0, 50), rng.uniform(0, 50)
        t_s, t_i = rng.uniform(0.05, 1), rng.uniform(0.05, 1)
        for fr in (yurke_fringe(v_a, v_b, t_s, t_i),
                   mandel_fringe(v_a, v_b, t_s, t_i),
                   mandel_fringe(v_a, v_b, t_s, t_i, exit="minus")):
            assert fr.baseline - fr.amplitude >= -1e-12


def test_yurke_mean_monotone_in_loss():
    # Bright-fringe mean never decreases when either transmittance improves.
    grid = [0.05 + 0.95 * k / 20 for k in range(21)]
    for n in (0.3, 2.0, 25.0):
        for t_i in (0.2, 0.9):
            means = [yurke_fringe(n, n, t_s, t_i).mean(0.0) for t_s in grid]
            assert all(b >= a - 1e-12 for a, b in zip(means, means[1:]))
        for t_s in (0.2, 0.9):
            means = [yurke_fringe(n, n, t_s, t_i).mean(0.0) for t_i in grid]
            assert all(b >= a - 1e-12 for a, b in zip(means, means[1:]))
