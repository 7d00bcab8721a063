"""Genuine-multipartite-nonlocality test in correlator and probability form.

The three-party correlator expression carries the classical bound 4 and the
quantum bound 4*sqrt(2).  The equivalent probability form - the average,
over all 2^n choice vectors, of the probability that the outcome parity
matches the pairwise product of choices - carries the classical bound 3/4
and the quantum bound 1/2 + sqrt(2)/4 for every party count.  Both forms
are evaluated here, together with an exhaustive deterministic-strategy
oracle for the classical bound.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import qstate
from .errors import (
    DimensionError,
    DomainError,
    EnumerationCapError,
    IncompleteModelError,
)

CLASSICAL_BOUND_PROB = 0.75
QUANTUM_BOUND_PROB = 0.5 + math.sqrt(2.0) / 4.0
CLASSICAL_BOUND_CORR = 4.0
QUANTUM_BOUND_CORR = 4.0 * math.sqrt(2.0)

PROBABILITY_FORM = "probability"
CORRELATOR_FORM = "correlator"

#: Largest party count for which deterministic_bound will enumerate all
#: 2^(2n) strategies.
ENUMERATION_CAP = 10

_ISOTROPY_TOL = 1e-12


def success_targets(n: int) -> np.ndarray:
    """Target parity sum_{i<j} x_i x_j (mod 2) for every n-bit choice vector.

    Only the Hamming weight k of the vector matters: the pairwise sum is
    k(k-1)/2.
    """
    weights = np.zeros(2**n, dtype=np.int64)
    for bit in range(n):
        weights += (np.arange(2**n) >> bit) & 1
    return ((weights * (weights - 1)) // 2 % 2).astype(np.int8)


@dataclass(frozen=True)
class CorrelationModel:
    """Success probabilities P(outcome parity = choice target | choices).

    ``success_prob[x]`` is indexed by the integer whose bits are the choice
    vector (party 1 most significant).  ``isotropic`` records whether all
    entries coincide; it is informational and never enforced on evaluation.
    """

    n: int
    success_prob: np.ndarray
    isotropic: bool = False

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise DimensionError(f"party count must be at least 2, got {n}")
        probs = np.asarray(self.success_prob, dtype=np.float64)
        if probs.shape != (2**n,):
            raise IncompleteModelError(
                f"expected {2**n} success probabilities for n={n}, "
                f"got shape {probs.shape}"
            )
        if np.any(np.isnan(probs)) or np.any(probs < 0.0) or np.any(probs > 1.0):
            raise DomainError("success probabilities must lie in [0, 1]")
        probs.setflags(write=False)
        isotropic = float(probs.max() - probs.min()) <= _ISOTROPY_TOL
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "success_prob", probs)
        object.__setattr__(self, "isotropic", isotropic)

    @classmethod
    def from_mapping(cls, n: int, entries) -> "CorrelationModel":
        """Build a model from a {choice tuple: probability} mapping.

        Raises IncompleteModelError if any of the 2^n choice vectors is
        missing.
        """
        probs = np.full(2**int(n), np.nan)
        for key, value in entries.items():
            code = _choice_code(n, key)
            probs[code] = float(value)
        missing = np.flatnonzero(np.isnan(probs))
        if missing.size:
            raise IncompleteModelError(
                f"missing success probabilities for {missing.size} of "
                f"{2**int(n)} choice vectors (first: {_code_bits(n, missing[0])})"
            )
        return cls(n, probs)

    def probability(self, choices) -> float:
        """Success probability for one choice vector (tuple of 0/1)."""
        return float(self.success_prob[_choice_code(self.n, choices)])


def _choice_code(n: int, choices) -> int:
    bits = tuple(int(b) for b in choices)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise IncompleteModelError(f"choice vector {choices!r} is not {n} bits")
    code = 0
    for b in bits:
        code = (code << 1) | b
    return code


def _code_bits(n: int, code: int) -> tuple:
    return tuple((int(code) >> (n - 1 - i)) & 1 for i in range(n))


@dataclass(frozen=True)
class SvetlichnyValue:
    """An evaluated test value together with the bounds of its form."""

    value: float
    form: str
    classical_bound: float
    quantum_bound: float

    @property
    def violated(self) -> bool:
        if self.form == CORRELATOR_FORM:
            return abs(self.value) > self.classical_bound
        return self.value > self.classical_bound


def si_probability_value(model: CorrelationModel) -> SvetlichnyValue:
    """Evaluate the probability form: the mean success probability.

    Violation means the value exceeds 3/4; the quantum maximum is
    1/2 + sqrt(2)/4 independent of the party count.
    """
    probs = model.success_prob
    if probs.shape != (2**model.n,) or np.any(np.isnan(probs)):
        raise IncompleteModelError("correlation model is incomplete")
    return SvetlichnyValue(
        value=float(probs.mean()),
        form=PROBABILITY_FORM,
        classical_bound=CLASSICAL_BOUND_PROB,
        quantum_bound=QUANTUM_BOUND_PROB,
    )


def si_correlator_value(correlators) -> SvetlichnyValue:
    """Evaluate the three-party correlator form.

    Parameters
    ----------
    correlators : mapping
        {(x, y, z): <A_x B_y C_z>} for all eight choice triples.  Terms
        whose choice triple has pairwise-product parity 1 enter with a
        minus sign.

    Returns
    -------
    SvetlichnyValue
        Signed sum; violation means |value| > 4.
    """
    targets = success_targets(3)
    total = 0.0
    for code in range(8):
        key = _code_bits(3, code)
        if key not in correlators:
            raise IncompleteModelError(f"missing correlator for choices {key}")
        sign = 1.0 - 2.0 * float(targets[code])
        total += sign * float(correlators[key])
    return SvetlichnyValue(
        value=total,
        form=CORRELATOR_FORM,
        classical_bound=CLASSICAL_BOUND_CORR,
        quantum_bound=QUANTUM_BOUND_CORR,
    )


def max_violation_settings(n: int):
    """Per-party setting pairs that reach the quantum bound on the GHZ state.

    Party 1 measures at -pi/4 or +pi/4; every other party at 0 or pi/2.
    For n = 3 these are the standard maximal-violation angles; for larger n
    the same pattern keeps the total angle at -pi/4 + (pi/2) * (choice sum),
    which stays aligned with the sign pattern of the probability form.
    """
    if int(n) < 2:
        raise DimensionError(f"party count must be at least 2, got {n}")
    pairs = [(-math.pi / 4.0, math.pi / 4.0)]
    pairs.extend((0.0, math.pi / 2.0) for _ in range(int(n) - 1))
    return pairs


def probability_form_from_settings(state, setting_pairs) -> CorrelationModel:
    """Build the probability-form model of a state under two-setting parties.

    Parameters
    ----------
    state : qstate.StateVector or qstate.DensityMatrix
    setting_pairs : sequence of (setting, setting)
        Exactly two angles (or MeasurementSetting objects) per party; entry
        x_i of a choice vector selects the corresponding angle of party i.

    Returns
    -------
    CorrelationModel
        Success probability for each of the 2^n choice vectors, computed
        from the exact outcome distribution of the state.
    """
    n = state.n
    if len(setting_pairs) != n:
        raise DimensionError(f"expected {n} setting pairs, got {len(setting_pairs)}")
    for pair in setting_pairs:
        if len(pair) != 2:
            raise DimensionError(f"each party needs exactly two settings, got {pair!r}")
    targets = success_targets(n)
    parities = qstate.bit_parities(n)
    probs = np.empty(2**n)
    for code in range(2**n):
        bits = _code_bits(n, code)
        angles = [setting_pairs[i][bits[i]] for i in range(n)]
        table = qstate.joint_outcome_probs(state, angles)
        probs[code] = float(table[parities == targets[code]].sum())
    return CorrelationModel(n, probs)


def deterministic_bound(n: int, cap: int = ENUMERATION_CAP) -> float:
    """Exhaustive maximum of the correlator form over deterministic strategies.

    Every party assigns a fixed value of +/-1 to each of its two settings;
    all 2^(2n) assignments are enumerated and the signed correlator sum is
    maximized.  This is the classical (deterministic) bound oracle; for
    n = 3 it returns exactly 4.

    Parameters
    ----------
    n : int
        Party count, 2 <= n <= cap.
    cap : int
        Enumeration cap; party counts above it raise EnumerationCapError.
    """
    n = int(n)
    if n < 2:
        raise DimensionError(f"party count must be at least 2, got {n}")
    if n > cap:
        raise EnumerationCapError(
            f"deterministic enumeration for n={n} needs 2^{2*n} assignments; "
            f"cap is n={cap}"
        )
    signs = 1.0 - 2.0 * success_targets(n).astype(np.float64)
    # bit i of the column index is choice x_i of party i (party 1 MSB)
    choice_bits = [
        ((np.arange(2**n) >> (n - 1 - i)) & 1).astype(bool) for i in range(n)
    ]
    best = -math.inf
    total = 1 << (2 * n)
    chunk = min(total, 8192)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        terms = np.ones((idx.size, 2**n))
        for i in range(n):
            a0 = 1.0 - 2.0 * ((idx >> i) & 1)
            a1 = 1.0 - 2.0 * ((idx >> (n + i)) & 1)
            terms *= np.where(choice_bits[i][None, :], a1[:, None], a0[:, None])
        best = max(best, float((terms @ signs).max()))
    return best
