"""Convex-combination attack: the eavesdropper's local weight.

The eavesdropper reproduces the correlation the legitimate users observe by
mixing the maximal deterministic-local correlation (probability-form value
3/4, fully known to her) with the maximal quantum correlation (value
1/2 + sqrt(2)/4, invisible to her).  Matching the observed, accuracy-
degraded value fixes the local mixing weight, and that weight is all the
key-rate analysis needs.

The closed forms can exceed 1 once the observed correlation drops to the
classical bound; the raw value is kept for diagnostics, a clamped copy for
entropy arguments, and runs in that regime are flagged as aborts (the users
would not distribute a key without a violation).
"""

import math
from dataclasses import dataclass

from .errors import DomainError
from .noise import accuracy_value
from .svetlichny import CLASSICAL_BOUND_PROB, QUANTUM_BOUND_PROB

_SQRT2 = math.sqrt(2.0)


def _violation_domain(p) -> float:
    p = accuracy_value(p)
    if p < 0.5:
        raise DomainError(f"accuracy must be at least 1/2, got {p!r}")
    return p


@dataclass(frozen=True)
class AttackDecomposition:
    """Local weight of the mimicking mixture, raw and clamped to [0, 1]."""

    q_l_raw: float
    q_l: float
    scenario: str
    local_value: float = CLASSICAL_BOUND_PROB
    nonlocal_value: float = QUANTUM_BOUND_PROB

    @property
    def aborts(self) -> bool:
        """True when even a fully local mixture over-shoots the observation."""
        return self.q_l_raw > 1.0


def _decomposition(raw: float, scenario: str) -> AttackDecomposition:
    return AttackDecomposition(
        q_l_raw=raw, q_l=min(1.0, max(0.0, raw)), scenario=scenario
    )


def local_weight_3party(p) -> AttackDecomposition:
    """Local weight for three parties at accuracy p (cubic closed form).

    q_raw = 2*sqrt(2)*(1 - 3p + 6p^2 - 4p^3) / (sqrt(2) - 1); zero at p = 1,
    exactly 1 at the critical accuracy, above 1 below it.
    """
    p = _violation_domain(p)
    raw = 2.0 * _SQRT2 * (1.0 - 3.0 * p + 6.0 * p**2 - 4.0 * p**3) / (_SQRT2 - 1.0)
    return _decomposition(raw, "three-party")


def local_weight_nparty(p, n: int) -> AttackDecomposition:
    """Local weight for n >= 3 parties: sqrt(2)*(1 - (2p-1)^n)/(sqrt(2)-1)."""
    n = int(n)
    if n < 3:
        raise DomainError(f"party count must be at least 3, got {n}")
    p = _violation_domain(p)
    raw = _SQRT2 * (1.0 - (2.0 * p - 1.0) ** n) / (_SQRT2 - 1.0)
    return _decomposition(raw, f"n-party(n={n})")


def local_weight_werner(p, v: float) -> AttackDecomposition:
    """Local weight when three parties share a visibility-v noisy state.

    q_raw = (2 + sqrt(2)) * (1 - (2p-1)^3 * v); reduces to the three-party
    form at v = 1 since (2 + sqrt(2)) = sqrt(2)/(sqrt(2) - 1).
    """
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"visibility must lie in [0, 1], got {v!r}")
    p = _violation_domain(p)
    raw = (2.0 + _SQRT2) * (1.0 - (2.0 * p - 1.0) ** 3 * v)
    return _decomposition(raw, f"werner(v={v:g})")
