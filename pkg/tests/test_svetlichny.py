"""Tests for both test forms and the deterministic-strategy oracle."""

import math

import numpy as np
import pytest

from mdiqkd import qstate, svetlichny
from mdiqkd.errors import (
    DimensionError,
    DomainError,
    EnumerationCapError,
    IncompleteModelError,
)

import oracles

QB = svetlichny.QUANTUM_BOUND_PROB


class TestSuccessTargets:
    def test_matches_double_loop(self):
        for n in (2, 3, 4, 5):
            targets = svetlichny.success_targets(n)
            for code in range(2**n):
                bits = [(code >> (n - 1 - i)) & 1 for i in range(n)]
                assert targets[code] == oracles.pairwise_target(bits)


class TestCorrelationModel:
    def test_isotropy_flag(self):
        flat = svetlichny.CorrelationModel(3, np.full(8, 0.8))
        assert flat.isotropic
        bumpy = np.full(8, 0.8)
        bumpy[3] = 0.7
        assert not svetlichny.CorrelationModel(3, bumpy).isotropic

    def test_from_mapping_complete(self):
        entries = {}
        for code in range(8):
            bits = tuple((code >> (2 - i)) & 1 for i in range(3))
            entries[bits] = 0.5 + 0.01 * code
        model = svetlichny.CorrelationModel.from_mapping(3, entries)
        assert model.probability((0, 1, 1)) == pytest.approx(0.53)

    def test_from_mapping_missing_entry(self):
        entries = {(0, 0, 0): 0.9}
        with pytest.raises(IncompleteModelError):
            svetlichny.CorrelationModel.from_mapping(3, entries)

    def test_rejects_out_of_range_probability(self):
        with pytest.raises(DomainError):
            svetlichny.CorrelationModel(3, np.full(8, 1.2))

    def test_wrong_length(self):
        with pytest.raises(IncompleteModelError):
            svetlichny.CorrelationModel(3, np.full(4, 0.5))


class TestProbabilityFormValue:
    def test_uniform_randomness(self):
        model = svetlichny.CorrelationModel(3, np.full(8, 0.5))
        value = svetlichny.si_probability_value(model)
        assert value.value == pytest.approx(0.5)
        assert not value.violated

    def test_quantum_bound_entries(self):
        model = svetlichny.CorrelationModel(3, np.full(8, QB))
        value = svetlichny.si_probability_value(model)
        assert value.value == pytest.approx(QB, abs=1e-12)
        assert value.value == pytest.approx(0.8535533905932737, abs=1e-12)
        assert value.violated

    def test_ghz_with_protocol_settings(self):
        model = svetlichny.probability_form_from_settings(
            qstate.ghz_state(3), svetlichny.max_violation_settings(3)
        )
        value = svetlichny.si_probability_value(model)
        assert value.value == pytest.approx(QB, abs=1e-10)

    def test_bounds_attached(self):
        model = svetlichny.CorrelationModel(3, np.full(8, 0.5))
        value = svetlichny.si_probability_value(model)
        assert value.classical_bound == 0.75
        assert value.quantum_bound == pytest.approx(0.5 + math.sqrt(2) / 4)


class TestCorrelatorFormValue:
    def test_all_plus_one_cancels(self):
        correlators = {}
        for code in range(8):
            bits = tuple((code >> (2 - i)) & 1 for i in range(3))
            correlators[bits] = 1.0
        value = svetlichny.si_correlator_value(correlators)
        assert value.value == pytest.approx(0.0)
        assert not value.violated

    def test_protocol_reaches_quantum_bound(self):
        state = qstate.ghz_state(3)
        pairs = svetlichny.max_violation_settings(3)
        correlators = {
            (x, y, z): qstate.correlator(
                state, [pairs[0][x], pairs[1][y], pairs[2][z]]
            )
            for x in (0, 1) for y in (0, 1) for z in (0, 1)
        }
        value = svetlichny.si_correlator_value(correlators)
        assert value.value == pytest.approx(4 * math.sqrt(2), abs=1e-10)
        assert value.violated

    def test_missing_term(self):
        with pytest.raises(IncompleteModelError):
            svetlichny.si_correlator_value({(0, 0, 0): 1.0})

    def test_deterministic_strategy_within_bound(self):
        # constant +1 outputs for every setting
        correlators = {
            (x, y, z): 1.0 for x in (0, 1) for y in (0, 1) for z in (0, 1)
        }
        value = svetlichny.si_correlator_value(correlators)
        assert abs(value.value) <= svetlichny.deterministic_bound(3) + 1e-12


class TestProbabilityFormFromSettings:
    def test_isotropic_at_quantum_bound(self):
        model = svetlichny.probability_form_from_settings(
            qstate.ghz_state(3), svetlichny.max_violation_settings(3)
        )
        assert model.isotropic
        assert np.allclose(model.success_prob, QB, atol=1e-10)

    def test_werner_entries_shrink_linearly(self):
        for v in (0.0, 0.4, 0.9):
            model = svetlichny.probability_form_from_settings(
                qstate.werner_state(v), svetlichny.max_violation_settings(3)
            )
            assert np.allclose(model.success_prob, v * QB + (1 - v) / 2, atol=1e-10)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_generalized_protocol_larger_party_counts(self, n):
        model = svetlichny.probability_form_from_settings(
            qstate.ghz_state(n), svetlichny.max_violation_settings(n)
        )
        assert model.isotropic
        assert np.allclose(model.success_prob, QB, atol=1e-10)

    def test_pair_count_mismatch(self):
        with pytest.raises(DimensionError):
            svetlichny.probability_form_from_settings(
                qstate.ghz_state(3), svetlichny.max_violation_settings(4)
            )

    def test_pair_arity(self):
        with pytest.raises(DimensionError):
            svetlichny.probability_form_from_settings(
                qstate.ghz_state(2), [(0.0,), (0.0, 1.0)]
            )


class TestAffineFormConsistency:
    def test_random_correlator_models(self):
        # value_prob = 1/2 + value_corr / 2^(n+1) and identical verdicts
        rng = np.random.default_rng(11)
        targets = svetlichny.success_targets(3)
        for _ in range(20):
            corr = rng.uniform(-1, 1, size=8)
            mapping = {}
            probs = np.empty(8)
            for code in range(8):
                bits = tuple((code >> (2 - i)) & 1 for i in range(3))
                mapping[bits] = corr[code]
                sign = 1.0 - 2.0 * targets[code]
                probs[code] = (1.0 + sign * corr[code]) / 2.0
            corr_value = svetlichny.si_correlator_value(mapping)
            prob_value = svetlichny.si_probability_value(
                svetlichny.CorrelationModel(3, probs)
            )
            assert prob_value.value == pytest.approx(
                0.5 + corr_value.value / 2**4, abs=1e-12
            )
            if corr_value.value > 0:
                assert prob_value.violated == corr_value.violated


class TestDeterministicBound:
    def test_three_party_value(self):
        assert svetlichny.deterministic_bound(3) == pytest.approx(4.0, abs=1e-12)

    def test_two_party_reduction(self):
        assert svetlichny.deterministic_bound(2) == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_naive_enumeration(self, n):
        assert svetlichny.deterministic_bound(n) == pytest.approx(
            oracles.naive_deterministic_bound(n), abs=1e-12
        )

    def test_four_party_stays_below_hybrid_bound(self):
        # fully deterministic strategies reach only 4 at n = 4 (probability
        # form 0.625); bipartition models are strictly stronger there, so
        # the enumerated bound must not exceed the hybrid bound 3/4
        bound = svetlichny.deterministic_bound(4)
        assert bound == pytest.approx(4.0, abs=1e-12)
        assert 0.5 + bound / 2**5 <= 0.75 + 1e-12

    def test_enumeration_cap(self):
        with pytest.raises(EnumerationCapError):
            svetlichny.deterministic_bound(11)
        with pytest.raises(EnumerationCapError):
            svetlichny.deterministic_bound(5, cap=4)

    def test_product_states_respect_bound(self):
        rng = np.random.default_rng(12)
        n = 3
        bound_prob = 0.5 + svetlichny.deterministic_bound(n) / 2 ** (n + 1)
        for _ in range(10):
            amplitudes = oracles.random_product_state(n, rng)
            state = qstate.StateVector(n, amplitudes)
            pairs = [tuple(rng.uniform(-math.pi, math.pi, size=2)) for _ in range(n)]
            model = svetlichny.probability_form_from_settings(state, pairs)
            value = svetlichny.si_probability_value(model)
            assert value.value <= bound_prob + 1e-9
