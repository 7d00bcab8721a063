"""Measurement-accuracy model: detector parameters, degradation, flip noise.

Accuracy ``p`` is the probability that a party's instrument detects its
qubit and reports the correct outcome.  It is assumed identical for every
party and every setting.  Independent per-party errors turn any parity
statistic with perfect-measurement success probability ``s`` into

    (2p - 1)^n * s + (1 - (2p - 1)^n) / 2,

which is the single map everything in this module revolves around.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .svetlichny import QUANTUM_BOUND_PROB

POLICY_FAIR_SAMPLING = "fair-sampling"
POLICY_BIND_UNDETECTED = "bind-undetected"
POLICIES = (POLICY_FAIR_SAMPLING, POLICY_BIND_UNDETECTED)


def _check_unit_interval(value, name: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class Accuracy:
    """Measurement accuracy p in [0, 1].

    The analytic degradation maps are defined on the whole interval, but
    only p >= 1/2 is physically meaningful for the protocol; the attack and
    key-rate routines reject smaller values.
    """

    p: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_unit_interval(self.p, "accuracy p"))


def accuracy_value(p) -> float:
    """Coerce a float or Accuracy into a validated probability."""
    if isinstance(p, Accuracy):
        return p.p
    return _check_unit_interval(p, "accuracy p")


@dataclass(frozen=True)
class DetectorParams:
    """Raw detector figures: state-reflection rate q1 and efficiency q2.

    ``policy`` selects how undetected events are treated when composing the
    two figures into a single accuracy.
    """

    q1: float
    q2: float
    policy: str = POLICY_BIND_UNDETECTED

    def __post_init__(self):
        object.__setattr__(self, "q1", _check_unit_interval(self.q1, "q1"))
        object.__setattr__(self, "q2", _check_unit_interval(self.q2, "q2"))
        if self.policy not in POLICIES:
            raise DomainError(f"policy must be one of {POLICIES}, got {self.policy!r}")


def accuracy_from_detector(detector: DetectorParams) -> Accuracy:
    """Compose detector figures into a measurement accuracy.

    Under fair sampling undetected events are discarded and p = q1.  Under
    the bind-undetected policy every undetected event is assigned an
    unbiased outcome, giving p = q1*q2 + (1 - q2)/2.
    """
    if detector.policy == POLICY_FAIR_SAMPLING:
        return Accuracy(detector.q1)
    return Accuracy(detector.q1 * detector.q2 + (1.0 - detector.q2) / 2.0)


def degrade_success_prob(p_perfect: float, p, n: int) -> float:
    """Parity success probability after n independent accuracy-p parties.

    Parameters
    ----------
    p_perfect : float
        Success probability under perfect measurements.
    p : float or Accuracy
        Measurement accuracy.
    n : int
        Party count.

    Returns
    -------
    float
        (2p-1)^n * p_perfect + (1 - (2p-1)^n)/2.  Affine in p_perfect with
        slope (2p-1)^n; fixed point 1/2 at p = 1/2.
    """
    p_perfect = _check_unit_interval(p_perfect, "p_perfect")
    shrink = (2.0 * accuracy_value(p) - 1.0) ** int(n)
    return shrink * p_perfect + (1.0 - shrink) / 2.0


def degraded_si_value(p, n: int) -> float:
    """Probability-form test value at accuracy p, starting from the quantum bound.

    Assumes the perfect-measurement correlation sits exactly at
    1/2 + sqrt(2)/4; the result crosses the classical bound 3/4 at the
    critical accuracy computed by the thresholds module.
    """
    return degrade_success_prob(QUANTUM_BOUND_PROB, p, n)


def flip_channel(outcomes, p, rng: np.random.Generator) -> np.ndarray:
    """Flip each outcome bit independently with probability 1 - p.

    Parameters
    ----------
    outcomes : array-like of 0/1
        Any shape; one entry per party-measurement.
    p : float or Accuracy
        Measurement accuracy; p = 1 leaves the input untouched.
    rng : numpy.random.Generator
        Caller-owned random stream; consuming exactly one uniform draw per
        bit keeps the channel reproducible for a given stream state.

    Returns
    -------
    numpy.ndarray
        New array of the same shape, dtype int8.
    """
    accuracy = accuracy_value(p)
    bits = np.asarray(outcomes)
    flips = rng.random(bits.shape) < (1.0 - accuracy)
    return (bits.astype(np.int8) ^ flips.astype(np.int8)).astype(np.int8)
