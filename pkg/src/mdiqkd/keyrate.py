"""Conditional entropies and the extractable-key-rate lower bound.

The rate is H(A|E) - H(A|rest) in bits per raw-key bit: what the
eavesdropper does not know about party 1's outcome, minus what the other
legitimate parties are still missing.  Both conditional entropies are
binary entropies of agreement probabilities, so the whole computation is a
handful of closed forms on top of the attack module's local weight.
"""

import math
from dataclasses import dataclass

from .attack import (
    AttackDecomposition,
    local_weight_nparty,
    local_weight_werner,
)
from .errors import DomainError
from .noise import accuracy_value


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary entropy argument must lie in [0, 1], got {x!r}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def h_a_given_e(attack: AttackDecomposition) -> float:
    """Eavesdropper's uncertainty about party 1: h((1 + q_l)/2).

    Uses the clamped weight; she guesses correctly on local rounds and
    coin-flips on the rest, so her agreement probability is (1 + q_l)/2.
    """
    return binary_entropy((1.0 + attack.q_l) / 2.0)


def h_a_given_rest(p, n: int) -> float:
    """Other parties' uncertainty about party 1: h((1 + (2p-1)^n)/2).

    For n = 3 the argument equals p^3 + 3p(1-p)^2, the probability that an
    even number of the three instruments err on a raw-key round.
    """
    n = int(n)
    if n < 3:
        raise DomainError(f"party count must be at least 3, got {n}")
    p = accuracy_value(p)
    if p < 0.5:
        raise DomainError(f"accuracy must be at least 1/2, got {p!r}")
    return binary_entropy((1.0 + (2.0 * p - 1.0) ** n) / 2.0)


@dataclass(frozen=True)
class KeyRateReport:
    """Entropies and rate bound for one (scenario, accuracy) evaluation.

    ``r_dw`` may be negative (no extractable key); ``r_effective`` clamps it
    at zero.  ``aborts`` marks accuracies at which the observed correlation
    no longer violates the test and the protocol would stop regardless.
    """

    h_a_given_e: float
    h_a_given_rest: float
    r_dw: float
    r_effective: float
    scenario: str
    p: float
    n: int
    v: float | None = None
    aborts: bool = False


def _report(attack: AttackDecomposition, rest: float, p: float, n: int, v=None):
    known = h_a_given_e(attack)
    rate = known - rest
    return KeyRateReport(
        h_a_given_e=known,
        h_a_given_rest=rest,
        r_dw=rate,
        r_effective=max(0.0, rate),
        scenario=attack.scenario,
        p=p,
        n=n,
        v=v,
        aborts=attack.aborts,
    )


def dw_rate(p, n: int) -> KeyRateReport:
    """Key-rate lower bound for n parties sharing the maximal state.

    r = h((1 + q_l)/2) - h((1 + (2p-1)^n)/2); exactly 1 at p = 1 and
    positive only above the threshold accuracy of the thresholds module.
    """
    attack = local_weight_nparty(p, n)
    return _report(attack, h_a_given_rest(p, n), accuracy_value(p), int(n))


def dw_rate_werner(p, v: float) -> KeyRateReport:
    """Key-rate lower bound for three parties sharing a visibility-v state.

    The raw-key agreement probability shrinks to (1 + v(2p-1)^3)/2; at
    v = 1 the report coincides with dw_rate(p, 3).
    """
    attack = local_weight_werner(p, v)
    p_value = accuracy_value(p)
    rest = binary_entropy((1.0 + float(v) * (2.0 * p_value - 1.0) ** 3) / 2.0)
    return _report(attack, rest, p_value, 3, v=float(v))
