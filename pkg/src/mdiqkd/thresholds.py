"""Accuracy thresholds: test violation, positive key rate, visibility boundary.

Two accuracies matter for every party count: the critical accuracy at which
the degraded correlation stops violating the nonlocality test, and the
strictly larger threshold accuracy at which the key-rate bound turns
positive.  The first has an exact closed form; the second is found by
bisection (the rate is smooth and strictly monotone on the bracket), with
the algebraic reduction (2p - 1)^n = sqrt(2)/(2 sqrt(2) - 1) available as a
cross-check.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConvergenceError, DomainError
from .keyrate import dw_rate, dw_rate_werner

#: Zero-rate reduction constant: at the threshold, (2p-1)^n equals this.
ZERO_RATE_SHRINK = math.sqrt(2.0) / (2.0 * math.sqrt(2.0) - 1.0)

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 200


def bisect_root(f, lo: float, hi: float, tol: float = DEFAULT_TOL,
                max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Root of f on [lo, hi] by bisection, to within tol on the abscissa.

    Requires a sign change (or an exact zero) on the bracket; guaranteed to
    converge in ~log2((hi-lo)/tol) steps, so max_iter is a safety net.

    Raises
    ------
    ConvergenceError
        If the bracket carries no sign change or the interval fails to
        shrink below tol within max_iter iterations.
    """
    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise ConvergenceError(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}"
        )
    for _ in range(int(max_iter)):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    raise ConvergenceError(
        f"bisection did not reach tol={tol!r} within {max_iter} iterations"
    )


def _check_n(n: int) -> int:
    n = int(n)
    if n < 3:
        raise DomainError(f"party count must be at least 3, got {n}")
    return n


@lru_cache(maxsize=None)
def critical_accuracy(n: int) -> float:
    """Smallest accuracy at which the degraded correlation still violates.

    Solving (2p-1)^n * (1/2 + sqrt(2)/4) + (1 - (2p-1)^n)/2 = 3/4 gives the
    closed form p = (1 + 2^(-1/(2n)))/2; about 0.945449 for three parties
    and increasing toward 1 with the party count.
    """
    n = _check_n(n)
    return (1.0 + 2.0 ** (-1.0 / (2.0 * n))) / 2.0


@lru_cache(maxsize=None)
def threshold_accuracy(n: int, tol: float = DEFAULT_TOL,
                       max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Smallest accuracy with a positive key-rate bound, by bisection.

    The rate is negative just above the critical accuracy and reaches 1 at
    p = 1, so the zero crossing is bracketed by construction.  About
    0.958968 for three parties; always above critical_accuracy(n).
    """
    n = _check_n(n)
    lo = critical_accuracy(n) + 1e-12
    hi = 1.0 - 1e-12
    return bisect_root(lambda p: dw_rate(p, n).r_dw, lo, hi, tol, max_iter)


@dataclass(frozen=True)
class ThresholdReport:
    """Both accuracy thresholds for one party count."""

    n: int
    p_cr: float
    p_th: float
    p_cr_method: str = "closed-form"
    p_th_method: str = "bisection"
    tolerance: float = DEFAULT_TOL


def thresholds_table(n_min: int, n_max: int, tol: float = DEFAULT_TOL,
                     max_iter: int = DEFAULT_MAX_ITER) -> list[ThresholdReport]:
    """One ThresholdReport per party count in [n_min, n_max]."""
    n_min = _check_n(n_min)
    n_max = int(n_max)
    if n_max < n_min:
        raise DomainError(f"need n_min <= n_max, got {n_min} > {n_max}")
    return [
        ThresholdReport(
            n=n,
            p_cr=critical_accuracy(n),
            p_th=threshold_accuracy(n, tol, max_iter),
            tolerance=tol,
        )
        for n in range(n_min, n_max + 1)
    ]


def werner_boundary(p_grid, tol: float = DEFAULT_TOL,
                    max_iter: int = DEFAULT_MAX_ITER) -> list[tuple[float, float | None]]:
    """Zero-rate visibility for each accuracy in p_grid.

    For each p the visibility v solving dw_rate_werner(p, v).r_dw = 0 is
    found by bisection on [0, 1]; the solution satisfies
    v * (2p-1)^3 = ZERO_RATE_SHRINK.  Entries are (p, None) when no
    visibility up to 1 yields a positive rate, i.e. when p is below the
    three-party threshold accuracy.

    Parameters
    ----------
    p_grid : iterable of float
        Accuracies, each in (1/2, 1].
    """
    results: list[tuple[float, float | None]] = []
    p_th3 = threshold_accuracy(3, tol, max_iter)
    for p in p_grid:
        p = float(p)
        if not 0.5 < p <= 1.0:
            raise DomainError(f"boundary accuracy must lie in (1/2, 1], got {p!r}")
        rate_at_full = dw_rate_werner(p, 1.0).r_dw
        if rate_at_full > 0.0:
            v = bisect_root(
                lambda v: dw_rate_werner(p, v).r_dw, 0.0, 1.0, tol, max_iter
            )
            results.append((p, v))
        elif rate_at_full == 0.0 or p + tol >= p_th3:
            # boundary touches v = 1 exactly at the accuracy threshold;
            # bisection-level noise in p must not flip it to "no boundary"
            results.append((p, 1.0))
        else:
            results.append((p, None))
    return results
