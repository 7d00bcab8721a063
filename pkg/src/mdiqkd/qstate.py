"""Dense n-qubit state simulation with equatorial spin measurements.

Everything here is exact linear algebra on explicit amplitude vectors and
density matrices.  The rest of the package treats these routines as ground
truth: every closed-form prediction is checked against probabilities and
expectation values computed by this module.

Measurements are restricted to the equatorial plane of the Bloch sphere,
i.e. observables of the form ``cos(angle)*sigma_x + sin(angle)*sigma_y``.
Their eigenvectors are known in closed form, so outcome probabilities are
obtained by a basis rotation rather than a numerical eigensolver.

Outcome encoding is fixed globally: bit 0 corresponds to eigenvalue +1 and
bit 1 to eigenvalue -1.  In an n-bit outcome (or basis) index, party 1
occupies the most significant bit.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError

#: Hard cap on the party count; a 2^12 x 2^12 density matrix is the largest
#: object the dense representation is allowed to build.
MAX_QUBITS = 12

_NORM_TOL = 1e-12
_HERMITIAN_TOL = 1e-12
_TRACE_TOL = 1e-12
_EIGENVALUE_TOL = -1e-10


def _normalize_angle(angle: float) -> float:
    # map into (-pi, pi]
    a = math.remainder(float(angle), math.tau)
    if a <= -math.pi:
        a += math.tau
    return a


@dataclass(frozen=True)
class MeasurementSetting:
    """Azimuthal angle of an equatorial spin observable for one party.

    The observable is ``cos(angle)*sigma_x + sin(angle)*sigma_y``; the angle
    is normalized into (-pi, pi] on construction.
    """

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", _normalize_angle(self.angle))


def _angle_of(setting) -> float:
    """Accept either a MeasurementSetting or a bare angle in radians."""
    if isinstance(setting, MeasurementSetting):
        return setting.angle
    return _normalize_angle(setting)


def _check_party_count(n: int) -> int:
    n = int(n)
    if n < 2 or n > MAX_QUBITS:
        raise DimensionError(f"party count must be in [2, {MAX_QUBITS}], got {n}")
    return n


@dataclass(frozen=True)
class StateVector:
    """Pure n-qubit state as a dense, unit-norm amplitude vector."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = _check_party_count(self.n)
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2**n,):
            raise DimensionError(
                f"expected {2**n} amplitudes for n={n}, got shape {amps.shape}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise DomainError(f"state vector is not normalized: |psi|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed n-qubit state as a dense Hermitian, unit-trace, PSD matrix."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        n = _check_party_count(self.n)
        rho = np.asarray(self.matrix, dtype=np.complex128)
        dim = 2**n
        if rho.shape != (dim, dim):
            raise DimensionError(
                f"expected a {dim}x{dim} matrix for n={n}, got shape {rho.shape}"
            )
        if np.max(np.abs(rho - rho.conj().T)) > _HERMITIAN_TOL:
            raise DomainError("density matrix is not Hermitian")
        trace = complex(np.trace(rho))
        if abs(trace - 1.0) > _TRACE_TOL:
            raise DomainError(f"density matrix trace is {trace!r}, expected 1")
        smallest = float(np.min(np.linalg.eigvalsh(rho)))
        if smallest < _EIGENVALUE_TOL:
            raise DomainError(
                f"density matrix is not positive semidefinite "
                f"(smallest eigenvalue {smallest:g})"
            )
        rho.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", rho)


def ghz_state(n: int) -> StateVector:
    """The n-party GHZ state (|0...0> + |1...1>)/sqrt(2).

    Parameters
    ----------
    n : int
        Party count, 2 <= n <= MAX_QUBITS.

    Returns
    -------
    StateVector
    """
    n = _check_party_count(n)
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return StateVector(n, amps)


def werner_state(v: float) -> DensityMatrix:
    """Three-qubit mixture of the GHZ projector with white noise.

    rho = v * |GHZ><GHZ| + (1 - v) * I/8, with visibility v in [0, 1].
    """
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"visibility must lie in [0, 1], got {v!r}")
    ghz = ghz_state(3).amplitudes
    projector = np.outer(ghz, ghz.conj())
    rho = v * projector + (1.0 - v) * np.eye(8, dtype=np.complex128) / 8.0
    return DensityMatrix(3, rho)


def _measurement_basis(angle: float) -> np.ndarray:
    """Rows are the +1 / -1 eigenvectors (bras) of cos(a) sx + sin(a) sy.

    The +1 eigenvector is (|0> + e^{ia}|1>)/sqrt(2), the -1 eigenvector is
    (|0> - e^{ia}|1>)/sqrt(2); applying this matrix to a qubit maps outcome
    b of the rotated measurement onto computational basis state |b>.
    """
    phase = np.exp(-1j * angle)
    return np.array([[1.0, phase], [1.0, -phase]], dtype=np.complex128) / math.sqrt(2.0)


def _apply_to_qubit(amps: np.ndarray, n: int, qubit: int, u: np.ndarray) -> np.ndarray:
    """Apply a 2x2 matrix to one qubit of a 2^n amplitude vector."""
    t = amps.reshape((2,) * n)
    t = np.tensordot(u, t, axes=([1], [qubit]))
    t = np.moveaxis(t, 0, qubit)
    return np.ascontiguousarray(t).reshape(-1)


def _settings_to_angles(state, settings) -> list[float]:
    angles = [_angle_of(s) for s in settings]
    if len(angles) != state.n:
        raise DimensionError(
            f"expected {state.n} measurement settings, got {len(angles)}"
        )
    return angles


def joint_outcome_probs(state, settings) -> np.ndarray:
    """Outcome distribution of equatorial measurements on every party.

    Parameters
    ----------
    state : StateVector or DensityMatrix
    settings : sequence of MeasurementSetting or float
        One azimuthal angle per party.

    Returns
    -------
    numpy.ndarray
        Length-2^n probability table.  Index bits read party 1 first
        (most significant); bit value 0 encodes eigenvalue +1.
    """
    angles = _settings_to_angles(state, settings)
    n = state.n
    if isinstance(state, StateVector):
        amps = state.amplitudes
        for qubit, angle in enumerate(angles):
            amps = _apply_to_qubit(amps, n, qubit, _measurement_basis(angle))
        probs = np.abs(amps) ** 2
    else:
        rho = state.matrix.reshape((2,) * (2 * n))
        for qubit, angle in enumerate(angles):
            u = _measurement_basis(angle)
            # row index of qubit, then the matching column index
            rho = np.moveaxis(np.tensordot(u, rho, axes=([1], [qubit])), 0, qubit)
            rho = np.moveaxis(
                np.tensordot(u.conj(), rho, axes=([1], [n + qubit])), 0, n + qubit
            )
        diag = rho.reshape(2**n, 2**n).diagonal()
        probs = np.clip(diag.real, 0.0, None)
    return probs


def bit_parities(n: int) -> np.ndarray:
    """Parity (popcount mod 2) of every n-bit index, as an int8 array."""
    parities = np.zeros(2**n, dtype=np.int8)
    for bit in range(n):
        parities ^= (np.arange(2**n) >> bit).astype(np.int8) & 1
    return parities


def correlator(state, settings) -> float:
    """Expectation value of the tensor product of equatorial observables.

    Equal to sum_a (-1)^parity(a) P(a) with P from joint_outcome_probs;
    always lies in [-1, 1].
    """
    probs = joint_outcome_probs(state, settings)
    signs = 1.0 - 2.0 * bit_parities(state.n)
    return float(np.dot(signs, probs))
