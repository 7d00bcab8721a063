"""Tests for the mixture-attack local weight in all three scenarios."""

import math

import numpy as np
import pytest

from mdiqkd import attack, noise, thresholds
from mdiqkd.errors import DomainError
from mdiqkd.svetlichny import CLASSICAL_BOUND_PROB, QUANTUM_BOUND_PROB

import oracles

SQRT2 = math.sqrt(2)


def mixture_value(q):
    """Left side of the mimicry equation for local weight q."""
    return CLASSICAL_BOUND_PROB * q + QUANTUM_BOUND_PROB * (1 - q)


class TestThreeParty:
    def test_perfect_measurement_gives_zero(self):
        result = attack.local_weight_3party(1.0)
        assert result.q_l_raw == 0.0
        assert result.q_l == 0.0
        assert not result.aborts

    def test_weight_is_one_at_critical_accuracy(self):
        p_cr = thresholds.critical_accuracy(3)
        result = attack.local_weight_3party(p_cr)
        assert result.q_l_raw == pytest.approx(1.0, abs=1e-5)
        # cross-check: invert the degraded value back to the classical bound
        p_root = oracles.bisect(
            lambda p: attack.local_weight_3party(p).q_l_raw - 1.0, 0.9, 0.9999
        )
        assert p_root == pytest.approx(p_cr, abs=1e-9)

    def test_known_value(self):
        # frozen from a 40-digit evaluation of the cubic closed form
        result = attack.local_weight_3party(0.96)
        assert result.q_l_raw == pytest.approx(0.755606431916, abs=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            attack.local_weight_3party(0.4)
        with pytest.raises(DomainError):
            attack.local_weight_3party(1.2)

    def test_clamping_below_critical_accuracy(self):
        result = attack.local_weight_3party(0.6)
        assert result.q_l_raw > 1.0
        assert result.q_l == 1.0
        assert result.aborts


class TestNParty:
    def test_perfect_measurement_gives_zero(self):
        for n in range(3, 11):
            assert attack.local_weight_nparty(1.0, n).q_l_raw == 0.0

    def test_matches_three_party_form(self):
        for p in np.linspace(0.5, 1.0, 1000):
            cubic = attack.local_weight_3party(float(p)).q_l_raw
            power = attack.local_weight_nparty(float(p), 3).q_l_raw
            assert abs(cubic - power) < 1e-12

    def test_known_value_five_parties(self):
        result = attack.local_weight_nparty(0.98, 5)
        assert result.q_l_raw == pytest.approx(0.630357039838, abs=1e-10)

    def test_party_count_domain(self):
        with pytest.raises(DomainError):
            attack.local_weight_nparty(0.9, 2)

    def test_accepts_accuracy_objects(self):
        assert attack.local_weight_nparty(noise.Accuracy(0.97), 4) == \
            attack.local_weight_nparty(0.97, 4)


class TestWerner:
    def test_full_visibility_reduces_to_three_party(self):
        for p in np.linspace(0.5, 1.0, 200):
            werner = attack.local_weight_werner(float(p), 1.0).q_l_raw
            plain = attack.local_weight_3party(float(p)).q_l_raw
            assert abs(werner - plain) < 1e-12

    def test_perfect_everything_gives_zero(self):
        assert attack.local_weight_werner(1.0, 1.0).q_l_raw == 0.0

    def test_visibility_deficit_value(self):
        result = attack.local_weight_werner(1.0, 0.9)
        assert result.q_l_raw == pytest.approx((2 + SQRT2) * 0.1, abs=1e-12)
        assert result.q_l_raw == pytest.approx(0.341421356237, abs=1e-10)
        # cross-check by solving the mimicry equation numerically
        observed = noise.degrade_success_prob(
            0.9 * QUANTUM_BOUND_PROB + 0.1 / 2, 1.0, 3
        )
        q_root = oracles.bisect(lambda q: mixture_value(q) - observed, 0.0, 1.0)
        assert result.q_l_raw == pytest.approx(q_root, abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            attack.local_weight_werner(0.9, 1.3)
        with pytest.raises(DomainError):
            attack.local_weight_werner(0.3, 0.9)


class TestSharedProperties:
    def test_strictly_decreasing_in_accuracy(self):
        grid = np.linspace(0.5, 1.0, 1000)
        for weights in (
            [attack.local_weight_3party(float(p)).q_l_raw for p in grid],
            [attack.local_weight_nparty(float(p), 5).q_l_raw for p in grid],
            [attack.local_weight_werner(float(p), 0.9).q_l_raw for p in grid],
        ):
            assert all(a > b for a, b in zip(weights, weights[1:]))

    def test_mimicry_equation_consistency(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            p = float(rng.uniform(0.5, 1.0))
            n = int(rng.integers(3, 9))
            v = float(rng.uniform(0.0, 1.0))

            q = attack.local_weight_nparty(p, n).q_l_raw
            observed = noise.degraded_si_value(p, n)
            assert mixture_value(q) == pytest.approx(observed, abs=1e-12)

            q = attack.local_weight_werner(p, v).q_l_raw
            observed = noise.degrade_success_prob(
                v * QUANTUM_BOUND_PROB + (1 - v) / 2, p, 3
            )
            assert mixture_value(q) == pytest.approx(observed, abs=1e-12)

    def test_raw_weight_at_most_one_iff_violation(self):
        for n in (3, 4, 6):
            for p in np.linspace(0.5, 1.0, 400):
                raw = attack.local_weight_nparty(float(p), n).q_l_raw
                violated = noise.degraded_si_value(float(p), n) >= 0.75
                assert (raw <= 1.0) == violated

    def test_mixture_components_fixed(self):
        result = attack.local_weight_nparty(0.97, 4)
        assert result.local_value == CLASSICAL_BOUND_PROB
        assert result.nonlocal_value == QUANTUM_BOUND_PROB

    def test_scenario_labels(self):
        assert attack.local_weight_3party(0.96).scenario == "three-party"
        assert attack.local_weight_nparty(0.96, 5).scenario == "n-party(n=5)"
        assert attack.local_weight_werner(0.96, 0.8).scenario == "werner(v=0.8)"
