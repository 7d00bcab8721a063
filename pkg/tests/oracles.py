"""Independent brute-force oracles used to cross-check the library.

Everything here recomputes quantities through a different route than the
package: full Kronecker-product matrices instead of per-qubit tensor
contractions, explicit projectors instead of basis rotations, and plain
nested loops instead of vectorized enumeration.  Slow by design.
"""

import itertools
import math

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def equatorial_observable(angle):
    """cos(a) sigma_x + sin(a) sigma_y as an explicit 2x2 matrix."""
    return math.cos(angle) * SIGMA_X + math.sin(angle) * SIGMA_Y


def kron_all(mats):
    out = np.array([[1.0 + 0j]])
    for mat in mats:
        out = np.kron(out, mat)
    return out


def expectation(state, angles):
    """<product of equatorial observables> via the full matrix."""
    obs = kron_all([equatorial_observable(a) for a in angles])
    if state.ndim == 1:
        return float(np.real(state.conj() @ obs @ state))
    return float(np.real(np.trace(state @ obs)))


def outcome_projector(angles, bits):
    """Projector onto the given outcome of each equatorial measurement."""
    kets = []
    for angle, bit in zip(angles, bits):
        sign = 1.0 if bit == 0 else -1.0
        kets.append(np.array([1.0, sign * np.exp(1j * angle)]) / math.sqrt(2.0))
    ket = kron_all([k.reshape(2, 1) for k in kets]).reshape(-1)
    return np.outer(ket, ket.conj())


def outcome_probabilities(state, angles):
    """Full outcome table via explicit projectors, party 1 MSB."""
    n = len(angles)
    probs = np.empty(2**n)
    for code in range(2**n):
        bits = [(code >> (n - 1 - i)) & 1 for i in range(n)]
        proj = outcome_projector(angles, bits)
        if state.ndim == 1:
            probs[code] = float(np.real(state.conj() @ proj @ state))
        else:
            probs[code] = float(np.real(np.trace(state @ proj)))
    return probs


def pairwise_target(bits):
    """sum_{i<j} x_i x_j mod 2 by explicit double loop."""
    total = 0
    for i in range(len(bits)):
        for j in range(i + 1, len(bits)):
            total += bits[i] * bits[j]
    return total % 2


def naive_deterministic_bound(n):
    """Max signed correlator sum over deterministic strategies, by loops."""
    best = -math.inf
    for assignment in itertools.product((1.0, -1.0), repeat=2 * n):
        total = 0.0
        for code in range(2**n):
            bits = [(code >> (n - 1 - i)) & 1 for i in range(n)]
            term = 1.0
            for i, x in enumerate(bits):
                term *= assignment[2 * i + x]
            total += (1.0 - 2.0 * pairwise_target(bits)) * term
        best = max(best, total)
    return best


def random_product_state(n, rng):
    """Haar-random single-qubit states tensored together, as a vector."""
    kets = []
    for _ in range(n):
        ket = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        kets.append(ket / np.linalg.norm(ket))
    return kron_all([k.reshape(2, 1) for k in kets]).reshape(-1)


def bisect(f, lo, hi, tol=1e-12, iterations=200):
    """Plain bisection for cross-checking root finds."""
    f_lo = f(lo)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return mid
        if (f(mid) > 0) == (f_lo > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
