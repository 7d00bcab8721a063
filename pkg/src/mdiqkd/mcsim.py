"""Round-level Monte Carlo simulation of the key-distribution protocol.

Each round, party 1 draws one of four measurement angles and every other
party one of two; the outcome vector is sampled from the exact joint
distribution of the configured state, then each bit is flipped
independently with probability 1 - p.  Rounds where party 1 chose one of
its two tilted angles feed the nonlocality test; rounds where every angle
lies in {0, pi/2} with an even number of pi/2 entries feed the raw key;
the rest are sifted out.

The resulting counts are the independent statistical check on every
closed form in the package: the test-round success frequencies estimate
the probability-form test value, and the key-round consistency frequency
estimates the raw-key agreement probability.

Reproducibility: all randomness for round i is a fixed window of a
counter-based (Philox) stream keyed by the seed, so results are
bit-identical for a given (config, seed) no matter how many workers the
rounds are spread over.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import qstate
from .errors import DomainError, InsufficientDataError
from .noise import accuracy_value, degrade_success_prob
from .svetlichny import QUANTUM_BOUND_PROB, success_targets

SOURCE_GHZ = "ghz"
SOURCE_WERNER = "werner"
SOURCES = (SOURCE_GHZ, SOURCE_WERNER)

#: Party 1's menu: two test angles, then the two raw-key angles.
PARTY1_ANGLES = (-math.pi / 4.0, math.pi / 4.0, 0.0, math.pi / 2.0)
#: Every other party's menu.
OTHER_ANGLES = (0.0, math.pi / 2.0)

# Fixed per-round budget of uniform draws (supports up to 12 parties:
# 1 + (n-1) setting draws, 1 outcome draw, n flip draws <= 25) and fixed
# block size.  Both are part of the stream layout: changing either changes
# the meaning of a seed.
_DRAWS_PER_ROUND = 32
_ROUNDS_PER_BLOCK = 1 << 15


@dataclass(frozen=True)
class SimConfig:
    """Protocol simulation parameters.

    ``alice_weights`` are the selection probabilities of party 1's four
    angles (two test, two key), normalized on construction; the other
    parties always choose uniformly between their two angles.
    """

    n: int
    rounds: int
    p: float
    source: str = SOURCE_GHZ
    visibility: Optional[float] = None
    seed: int = 0
    alice_weights: tuple = (0.25, 0.25, 0.25, 0.25)
    keep_raw_keys: bool = False

    def __post_init__(self):
        n = int(self.n)
        if n < 2 or n > qstate.MAX_QUBITS:
            raise DomainError(f"party count must be in [2, {qstate.MAX_QUBITS}]")
        rounds = int(self.rounds)
        if rounds < 1:
            raise DomainError(f"rounds must be positive, got {rounds}")
        p = accuracy_value(self.p)
        if self.source not in SOURCES:
            raise DomainError(f"source must be one of {SOURCES}, got {self.source!r}")
        if self.source == SOURCE_WERNER:
            if n != 3:
                raise DomainError("the werner source is only defined for n = 3")
            if self.visibility is None:
                raise DomainError("the werner source requires a visibility")
            if not 0.0 <= float(self.visibility) <= 1.0:
                raise DomainError(f"visibility must lie in [0, 1], got {self.visibility!r}")
            object.__setattr__(self, "visibility", float(self.visibility))
        elif self.visibility is not None:
            raise DomainError("visibility is only meaningful for the werner source")
        seed = int(self.seed)
        if not 0 <= seed < 2**64:
            raise DomainError("seed must fit in an unsigned 64-bit integer")
        weights = np.asarray(self.alice_weights, dtype=np.float64)
        if weights.shape != (4,) or np.any(weights < 0.0) or weights.sum() <= 0.0:
            raise DomainError("alice_weights must be 4 nonnegative values, not all zero")
        weights = weights / weights.sum()
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rounds", rounds)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "seed", seed)
        object.__setattr__(self, "alice_weights", tuple(weights))


@dataclass(eq=False)
class SimStats:
    """Per-setting outcome counts accumulated over all rounds.

    Test counts are indexed by the choice-vector code (party 1 most
    significant bit); key counts follow ``key_vectors``, the codes whose
    bits indicate which parties measured at pi/2.
    """

    n: int
    rounds: int
    test_success: np.ndarray
    test_total: np.ndarray
    key_vectors: tuple
    key_success: np.ndarray
    key_total: np.ndarray
    discarded: int
    raw_keys: Optional[np.ndarray] = None

    @property
    def test_rounds(self) -> int:
        return int(self.test_total.sum())

    @property
    def key_rounds(self) -> int:
        return int(self.key_total.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimStats):
            return NotImplemented
        same_keys = (
            self.raw_keys is None
            and other.raw_keys is None
            or (
                self.raw_keys is not None
                and other.raw_keys is not None
                and np.array_equal(self.raw_keys, other.raw_keys)
            )
        )
        return (
            self.n == other.n
            and self.rounds == other.rounds
            and self.discarded == other.discarded
            and self.key_vectors == other.key_vectors
            and np.array_equal(self.test_success, other.test_success)
            and np.array_equal(self.test_total, other.test_total)
            and np.array_equal(self.key_success, other.key_success)
            and np.array_equal(self.key_total, other.key_total)
            and same_keys
        )


@dataclass(frozen=True)
class Estimate:
    """A frequency estimate with its binomial standard error."""

    value: float
    std_error: float


@dataclass(frozen=True)
class SimReport:
    """Estimates extracted from one simulation run."""

    config: SimConfig
    si: Estimate
    key_consistency: dict
    test_rounds: int
    key_rounds: int
    discarded_rounds: int
    raw_keys: Optional[np.ndarray] = None


class _ProtocolTables:
    """Per-configuration lookup tables shared by all blocks (read-only)."""

    def __init__(self, cfg: SimConfig):
        n = cfg.n
        if cfg.source == SOURCE_GHZ:
            state = qstate.ghz_state(n)
        else:
            state = qstate.werner_state(cfg.visibility)
        self.parity = qstate.bit_parities(n)
        self.test_target = success_targets(n)

        # outcome sampling: cumulative table per (party-1 index, others code)
        self.cum_tables = np.empty((4 * 2 ** (n - 1), 2**n))
        for code in range(self.cum_tables.shape[0]):
            alice_idx, others = divmod(code, 2 ** (n - 1))
            angles = [PARTY1_ANGLES[alice_idx]]
            angles += [
                OTHER_ANGLES[(others >> (n - 1 - i)) & 1] for i in range(1, n)
            ]
            self.cum_tables[code] = np.cumsum(qstate.joint_outcome_probs(state, angles))

        # raw-key classification: vectors over pi/2 indicators with even
        # weight; the target parity comes from the ideal-state eigenvalue of
        # the corresponding observable product, via the exact simulator
        ghz = qstate.ghz_state(n)
        self.key_position = np.full(2**n, -1, dtype=np.int64)
        self.key_target = np.full(2**n, -1, dtype=np.int8)
        key_vectors = []
        for code in range(2**n):
            if self.parity[code] != 0:
                continue
            angles = [
                OTHER_ANGLES[(code >> (n - 1 - i)) & 1] for i in range(n)
            ]
            eigenvalue = round(qstate.correlator(ghz, angles))
            self.key_position[code] = len(key_vectors)
            self.key_target[code] = (1 - eigenvalue) // 2
            key_vectors.append(code)
        self.key_vectors = tuple(key_vectors)

        self.alice_cum = np.cumsum(np.asarray(cfg.alice_weights))


def _run_block(cfg: SimConfig, tables: _ProtocolTables, block: int) -> SimStats:
    n = cfg.n
    start = block * _ROUNDS_PER_BLOCK
    count = min(cfg.rounds - start, _ROUNDS_PER_BLOCK)
    stride = _ROUNDS_PER_BLOCK * _DRAWS_PER_ROUND // 4  # Philox emits 4 words/step
    generator = np.random.Generator(
        np.random.Philox(key=cfg.seed, counter=[block * stride, 0, 0, 0])
    )
    u = generator.random((count, _DRAWS_PER_ROUND))

    # settings
    alice_idx = np.searchsorted(tables.alice_cum, u[:, 0], side="right")
    np.clip(alice_idx, 0, 3, out=alice_idx)
    others = np.zeros(count, dtype=np.int64)
    for i in range(1, n):
        others |= (u[:, i] >= 0.5).astype(np.int64) << (n - 1 - i)
    combo = alice_idx * 2 ** (n - 1) + others

    # outcomes from the exact joint distribution, one cumulative table per combo
    outcome = np.zeros(count, dtype=np.int64)
    for code in range(tables.cum_tables.shape[0]):
        mask = combo == code
        if not mask.any():
            continue
        drawn = np.searchsorted(tables.cum_tables[code], u[mask, n], side="right")
        outcome[mask] = np.minimum(drawn, 2**n - 1)

    # independent per-party flips with probability 1 - p
    flip = np.zeros(count, dtype=np.int64)
    error_rate = 1.0 - cfg.p
    for i in range(n):
        flip |= (u[:, n + 1 + i] < error_rate).astype(np.int64) << (n - 1 - i)
    outcome ^= flip
    parity = tables.parity[outcome]

    # classify and accumulate
    is_test = alice_idx <= 1
    x_codes = combo[is_test]
    test_total = np.bincount(x_codes, minlength=2**n)
    hits = x_codes[parity[is_test] == tables.test_target[x_codes]]
    test_success = np.bincount(hits, minlength=2**n)

    key_candidate = ~is_test
    key_code = ((alice_idx - 2) << (n - 1)) | others
    code_k = key_code[key_candidate]
    is_key = tables.key_position[code_k] >= 0
    code_k = code_k[is_key]
    positions = tables.key_position[code_k]
    n_key_vectors = len(tables.key_vectors)
    key_total = np.bincount(positions, minlength=n_key_vectors)
    key_hits = positions[parity[key_candidate][is_key] == tables.key_target[code_k]]
    key_success = np.bincount(key_hits, minlength=n_key_vectors)
    discarded = int(key_candidate.sum()) - int(is_key.sum())

    raw_keys = None
    if cfg.keep_raw_keys:
        key_outcomes = outcome[key_candidate][is_key]
        shifts = np.arange(n - 1, -1, -1)
        raw_keys = ((key_outcomes[:, None] >> shifts[None, :]) & 1).astype(np.uint8)

    return SimStats(
        n=n,
        rounds=count,
        test_success=test_success,
        test_total=test_total,
        key_vectors=tables.key_vectors,
        key_success=key_success,
        key_total=key_total,
        discarded=discarded,
        raw_keys=raw_keys,
    )


def _merge(blocks: list[SimStats], keep_raw: bool) -> SimStats:
    first = blocks[0]
    raw = None
    if keep_raw:
        raw = np.concatenate([b.raw_keys for b in blocks], axis=0)
    return SimStats(
        n=first.n,
        rounds=sum(b.rounds for b in blocks),
        test_success=sum(b.test_success for b in blocks),
        test_total=sum(b.test_total for b in blocks),
        key_vectors=first.key_vectors,
        key_success=sum(b.key_success for b in blocks),
        key_total=sum(b.key_total for b in blocks),
        discarded=sum(b.discarded for b in blocks),
        raw_keys=raw,
    )


def run_protocol(cfg: SimConfig, workers: int = 1) -> SimStats:
    """Simulate every round of the protocol and return the counts.

    Parameters
    ----------
    cfg : SimConfig
    workers : int
        Number of threads over which whole blocks of rounds are spread.
        The result is bit-identical for any worker count: each round's
        randomness is a pure function of (seed, round index).

    Returns
    -------
    SimStats
    """
    tables = _ProtocolTables(cfg)
    n_blocks = (cfg.rounds + _ROUNDS_PER_BLOCK - 1) // _ROUNDS_PER_BLOCK
    if workers <= 1 or n_blocks == 1:
        blocks = [_run_block(cfg, tables, b) for b in range(n_blocks)]
    else:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            blocks = list(pool.map(lambda b: _run_block(cfg, tables, b),
                                   range(n_blocks)))
    return _merge(blocks, cfg.keep_raw_keys)


def estimate_si(stats: SimStats) -> Estimate:
    """Probability-form test value: mean per-choice-vector success frequency.

    The standard error propagates the per-vector binomial errors through
    the uniform average.

    Raises
    ------
    InsufficientDataError
        If any choice vector was never sampled.
    """
    if np.any(stats.test_total == 0):
        missing = int(np.flatnonzero(stats.test_total == 0)[0])
        raise InsufficientDataError(
            f"no test rounds for choice vector {missing:0{stats.n}b}"
        )
    freq = stats.test_success / stats.test_total
    variance = float((freq * (1.0 - freq) / stats.test_total).sum()) / 4**stats.n
    return Estimate(value=float(freq.mean()), std_error=math.sqrt(variance))


def estimate_key_consistency(stats: SimStats) -> dict:
    """Per-key-setting frequency of party 1 matching the others' parity.

    Returns
    -------
    dict
        {pi/2-indicator tuple: Estimate}, one entry per key setting.

    Raises
    ------
    InsufficientDataError
        If any key setting has no rounds.
    """
    if np.any(stats.key_total == 0):
        raise InsufficientDataError("at least one key setting has no rounds")
    out = {}
    for position, code in enumerate(stats.key_vectors):
        total = int(stats.key_total[position])
        freq = stats.key_success[position] / total
        bits = tuple((code >> (stats.n - 1 - i)) & 1 for i in range(stats.n))
        out[bits] = Estimate(
            value=float(freq),
            std_error=math.sqrt(freq * (1.0 - freq) / total),
        )
    return out


def predicted_si(cfg: SimConfig) -> float:
    """Analytic test value the simulation should reproduce."""
    if cfg.source == SOURCE_GHZ:
        base = QUANTUM_BOUND_PROB
    else:
        base = cfg.visibility * QUANTUM_BOUND_PROB + (1.0 - cfg.visibility) / 2.0
    return degrade_success_prob(base, cfg.p, cfg.n)


def predicted_key_consistency(cfg: SimConfig) -> float:
    """Analytic raw-key agreement probability the simulation should reproduce."""
    if cfg.source == SOURCE_GHZ:
        base = 1.0
    else:
        base = cfg.visibility + (1.0 - cfg.visibility) / 2.0
    return degrade_success_prob(base, cfg.p, cfg.n)


def z_score(estimate: Estimate, expected: float) -> float:
    """Standardized deviation of an estimate from its expected value."""
    difference = estimate.value - expected
    if difference == 0.0:
        return 0.0
    if estimate.std_error == 0.0:
        return math.inf
    return difference / estimate.std_error


def simulate(cfg: SimConfig, workers: int = 1) -> SimReport:
    """Run the protocol and package the estimates into a SimReport."""
    stats = run_protocol(cfg, workers=workers)
    return SimReport(
        config=cfg,
        si=estimate_si(stats),
        key_consistency=estimate_key_consistency(stats),
        test_rounds=stats.test_rounds,
        key_rounds=stats.key_rounds,
        discarded_rounds=stats.discarded,
        raw_keys=stats.raw_keys,
    )
