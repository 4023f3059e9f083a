"""
Logistic-map period-doubling orbits and their forward horizontal visibility

Superstable parameters (the 2^n-cycle passes through x = 1/2) are bracketed and
bisected, the stationary cycle is extracted, tiled over several periods and the
forward visibility degree of each point in an interior period is measured.  The
measured patterns are compared with the ruler block and with the literal pattern
recurrence; disagreements are reported, never hidden.
"""

from dataclasses import dataclass
from logging     import getLogger
from math        import isfinite
from typing      import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from .const import (
    BISECT_MAX_ITER,
    CRITICAL_POINT,
    DEFAULT_MAX_PERIOD,
    DEFAULT_PERIOD_TOL,
    DEFAULT_ROOT_TOL,
    DEFAULT_TRANSIENT,
    ORBIT_PERIODS,
    SUPERSTABLE_BRACKETS,
    SUPERSTABLE_MAX_N,
)
from .exc import (
    NumericError,
    PeriodDetectionError,
    RulerDomainError,
    StabilizationError,
)
from .ruler_core import ruler_block

_LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class LogisticParams:
    r:  float
    x0: float = CRITICAL_POINT

    def __post_init__(self):
        if not (isfinite(self.r) and 1.0 <= self.r <= 4.0):
            raise RulerDomainError(f'Growth rate r={self.r} outside [1, 4]')
        if not (isfinite(self.x0) and 0.0 < self.x0 < 1.0):
            raise RulerDomainError(f'Initial condition x0={self.x0} outside (0, 1)')


@dataclass(frozen=True)
class Orbit:
    """One period of the stationary cycle, starting from the point nearest 1/2"""
    r:      float
    period: int
    points: Tuple[float, ...]


@dataclass(frozen=True)
class VisibilityPattern:
    degrees: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class PatternComparison:
    """Measured forward pattern of the superstable 2^n-cycle against both readings"""
    n:                     int
    period:                int
    r:                     float
    measured:              Tuple[int, ...]     # temporal order from x = 1/2
    from_maximum:          Tuple[int, ...]     # same cycle, starting at its largest point
    ruler_with_closing:    Tuple[int, ...]     # [n + 1] ++ ruler_block(n)
    recurrence:            Optional[Tuple[int, ...]]
    matches_index_reading: bool
    matches_recurrence:    Optional[bool]
    multiset_matches:      bool


def _logistic(r: float, x: float) -> float:
    return r * x * (1.0 - x)


def iterate(params: LogisticParams, steps: int) -> np.ndarray:
    """Trajectory x0, x1, ..., x_{steps-1}"""
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
        raise RulerDomainError(f'steps must be a positive integer, got {steps}')
    out = np.empty(steps)
    x = params.x0
    for t in range(steps):
        if not isfinite(x):
            raise NumericError(f'Non-finite value at step {t}', diagnostics={'r': params.r, 'step': t})
        out[t] = x
        x = _logistic(params.r, x)
    return out


def _superstable_residual(r: float, period: int) -> float:
    """f_r^period(1/2) - 1/2"""
    x = CRITICAL_POINT
    for _ in range(period):
        x = _logistic(r, x)
    return x - CRITICAL_POINT


def superstable_r(n: int, previous: Optional[float] = None, tol: float = DEFAULT_ROOT_TOL,
                  max_iter: int = BISECT_MAX_ITER) -> float:
    """Parameter whose 2^n-cycle contains 1/2, bisected inside a known nested bracket"""
    if isinstance(n, bool) or not isinstance(n, int) or not 0 <= n <= SUPERSTABLE_MAX_N:
        raise RulerDomainError(f'n={n} outside [0, {SUPERSTABLE_MAX_N}]')
    lo, hi = SUPERSTABLE_BRACKETS[n]
    if previous is not None:
        lo = max(lo, previous + tol)
    period = 2**n

    diagnostics = {
        'n': n,
        'bracket': (lo, hi),
        'residuals': (_superstable_residual(lo, period), _superstable_residual(hi, period)),
    }
    try:
        root, info = bisect(_superstable_residual, lo, hi, args=(period,), xtol=tol,
                            maxiter=max_iter, full_output=True)
    except (ValueError, RuntimeError) as e:
        raise NumericError(f'Bracketing failed for period {period}: {e}', diagnostics=diagnostics) from e
    if not info.converged:
        raise NumericError(f'Bisection did not converge for period {period}', diagnostics=diagnostics)

    _LOGGER.debug(f'Superstable r for period {period}: {root!r} after {info.iterations} iterations')
    return float(root)


def superstable_series(max_n: int, tol: float = DEFAULT_ROOT_TOL) -> List[float]:
    """superstable_r(0), ..., superstable_r(max_n), each bracket seeded from the last"""
    values = []   # type: List[float]
    for n in range(max_n + 1):
        values.append(superstable_r(n, previous=values[-1] if values else None, tol=tol))
    return values


def feigenbaum_deltas(values: Sequence[float]) -> List[float]:
    """delta_i = (r_{i-1} - r_{i-2}) / (r_i - r_{i-1})"""
    return [
        (values[i - 1] - values[i - 2]) / (values[i] - values[i - 1])
        for i in range(2, len(values))
    ]


def feigenbaum_accumulation(estimates: Sequence[float]) -> float:
    """Geometric-ratio extrapolation of the cascade's accumulation point"""
    if len(estimates) < 4:
        raise RulerDomainError(f'Need at least 4 superstable values, got {len(estimates)}')
    if any(b <= a for a, b in zip(estimates, estimates[1:])):
        raise RulerDomainError('Superstable values must be strictly increasing')
    delta = feigenbaum_deltas(estimates)[-1]
    if delta <= 1.0:
        raise RulerDomainError(f'Gaps must shrink to extrapolate, last gap ratio is {delta!r}')
    last_gap = estimates[-1] - estimates[-2]
    return estimates[-1] + last_gap / (delta - 1.0)


def stationary_orbit(r: float, max_period: int = DEFAULT_MAX_PERIOD, transient: int = DEFAULT_TRANSIENT,
                     tol: float = DEFAULT_PERIOD_TOL, x0: float = CRITICAL_POINT) -> Orbit:
    """Drop the transient, then find the least p with |x_{t+p} - x_t| < tol over a full window"""
    trajectory = iterate(LogisticParams(r, x0), transient + 2 * max_period)
    tail = trajectory[transient:]
    for p in range(1, max_period + 1):
        if np.max(np.abs(tail[p:p + max_period] - tail[:max_period])) < tol:
            cycle = tail[:p]
            start = int(np.argmin(np.abs(cycle - CRITICAL_POINT)))
            points = tuple(float(x) for x in np.roll(cycle, -start))
            _LOGGER.debug(f'r={r!r}: period {p}')
            return Orbit(r=float(r), period=p, points=points)
    raise PeriodDetectionError(
        f'No period <= {max_period} at r={r!r}',
        diagnostics={'r': r, 'max_period': max_period, 'transient': transient, 'tol': tol},
    )


def forward_degrees(series: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """
        Forward horizontal visibility degree of every point, plus whether each point
        has met a later point at least as high (after which its count can no longer grow).

        Monotone stack: points on the stack are strictly decreasing.  A new point is
        seen by every lower point it pops and by the stack top; an equal top sees it
        and is then blocked for good.
    """
    x = np.asarray(series, dtype=float)
    degrees = np.zeros(len(x), dtype=np.int64)
    closed = np.zeros(len(x), dtype=bool)
    stack = []   # type: List[int]
    for j, xj in enumerate(x.tolist()):
        while stack and x[stack[-1]] < xj:
            i = stack.pop()
            degrees[i] += 1
            closed[i] = True
        if stack:
            degrees[stack[-1]] += 1
            if x[stack[-1]] == xj:
                closed[stack.pop()] = True
        stack.append(j)
    return degrees, closed


def forward_edges(series: Sequence[float]) -> List[Tuple[int, int]]:
    """Visibility edges (i, j), i < j, in the order the stack finds them"""
    x = np.asarray(series, dtype=float).tolist()
    edges = []    # type: List[Tuple[int, int]]
    stack = []    # type: List[int]
    for j, xj in enumerate(x):
        while stack and x[stack[-1]] < xj:
            edges.append((stack.pop(), j))
        if stack:
            edges.append((stack[-1], j))
            if x[stack[-1]] == xj:
                stack.pop()
        stack.append(j)
    return edges


def brute_force_visibility(series: Sequence[float]) -> np.ndarray:
    """O(L^2) oracle: i sees j > i when every x_k in between is below both"""
    x = np.asarray(series, dtype=float)
    degrees = np.zeros(len(x), dtype=np.int64)
    for i in range(len(x) - 1):
        later = x[i + 1:]
        # highest point strictly between i and each later j
        between = np.concatenate(([-np.inf], np.maximum.accumulate(later)[:-1]))
        degrees[i] = int(np.count_nonzero(between < np.minimum(x[i], later)))
    return degrees


def forward_visibility(series: Sequence[float], window: range) -> VisibilityPattern:
    """Degrees for the points in `window`; every one of them must be closed within the series"""
    degrees, closed = forward_degrees(series)
    idx = np.asarray(window, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= len(degrees)):
        raise RulerDomainError(f'Window {window} outside a series of length {len(degrees)}')
    if not np.all(closed[idx]):
        open_at = int(idx[~closed[idx]][0])
        raise StabilizationError(f'Point {open_at} sees no point at least as high before the series ends')
    return VisibilityPattern(degrees=tuple(int(d) for d in degrees[idx]))


def orbit_visibility(orbit: Orbit, periods: int = ORBIT_PERIODS) -> VisibilityPattern:
    """Pattern of an interior period of the tiled cycle; extending by one period must not change it"""
    p = orbit.period
    window = range(p, 2 * p)
    pattern = forward_visibility(np.tile(orbit.points, periods), window)
    extended = forward_visibility(np.tile(orbit.points, periods + 1), window)
    if pattern != extended:
        raise StabilizationError(f'Pattern for period {p} changed when one period was appended')
    return pattern


def pattern_recurrence(n: int) -> VisibilityPattern:
    """Literal P_n = [2(n+1), 2] ++ P_1 ++ ... ++ P_{n-1}"""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise RulerDomainError(f'n must be >= 1, got {n}')
    patterns = []   # type: List[Tuple[int, ...]]
    for m in range(1, n + 1):
        current = (2 * (m + 1), 2)
        for previous in patterns:
            current += previous
        patterns.append(current)
    return VisibilityPattern(degrees=patterns[-1])


def compare_orbit_pattern(n: int, tol: float = DEFAULT_ROOT_TOL, transient: int = DEFAULT_TRANSIENT,
                          period_tol: float = DEFAULT_PERIOD_TOL, r: Optional[float] = None) -> PatternComparison:
    """Measure the superstable 2^n-cycle and set it against the ruler and recurrence readings"""
    r = superstable_r(n, tol=tol) if r is None else r
    orbit = stationary_orbit(r, max_period=max(2**n, 1), transient=transient, tol=period_tol)
    measured = orbit_visibility(orbit).degrees
    peak = int(np.argmax(orbit.points))
    from_maximum = measured[peak:] + measured[:peak]
    closing = (n + 1,) + (tuple(ruler_block(n)) if n >= 1 else ())
    recurrence = pattern_recurrence(n).degrees if n >= 1 else None

    comparison = PatternComparison(
        n                     = n,
        period                = orbit.period,
        r                     = r,
        measured              = measured,
        from_maximum          = from_maximum,
        ruler_with_closing    = closing,
        recurrence            = recurrence,
        matches_index_reading = from_maximum == closing,
        matches_recurrence    = None if recurrence is None else tuple(2 * d for d in from_maximum) == recurrence,
        multiset_matches      = sorted(measured) == sorted(closing),
    )
    if not comparison.matches_index_reading or comparison.matches_recurrence is False:
        _LOGGER.warning(f'Period {orbit.period}: measured {measured} differs from the ruler readings')
    return comparison


def pattern_report(max_n: int, **kwargs) -> List[PatternComparison]:
    """Comparisons for periods 2^1 .. 2^max_n"""
    return [compare_orbit_pattern(n, **kwargs) for n in range(1, max_n + 1)]
