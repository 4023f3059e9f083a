"""
Interval duplication automaton

Starting from one interior point, every point born in the previous step puts one new
point on each side of itself, never crossing any other point.  Older points stay put
and age by one.  Read left to right, the ages of step n form the order-n ruler block.
"""

from dataclasses import dataclass
from logging     import getLogger
from math        import inf, isfinite
from typing      import Optional, Tuple

import numpy as np

from .const import AUTOMATON_MAX_STEPS, JITTER_HIGH, JITTER_LOW
from .exc import PlacementError, RulerDomainError
from .ruler_core import IndexSequence

_LOGGER = getLogger(__name__)

Interval = Tuple[float, float]
UNIT_INTERVAL = (0.0, 1.0)   # type: Interval
REAL_LINE     = (-inf, inf)  # type: Interval


@dataclass(frozen=True)
class PartitionPoint:
    position:   float
    birth_step: int
    age:        int


@dataclass(frozen=True, eq=False)
class Partition:
    """
        Points of the partition at `step`, stored column-wise.
        positions are strictly increasing; ages[i] = step - births[i] + 1.
    """
    step:      int
    ambient:   Interval
    positions: np.ndarray
    births:    np.ndarray

    @property
    def ages(self) -> np.ndarray:
        return self.step - self.births + 1

    @property
    def points(self) -> Tuple[PartitionPoint, ...]:
        return tuple(
            PartitionPoint(position=float(x), birth_step=int(b), age=int(self.step - b + 1))
            for x, b in zip(self.positions, self.births)
        )

    def __len__(self) -> int:
        return len(self.positions)


def _validate_ambient(ambient: Interval) -> Interval:
    lo, hi = float(ambient[0]), float(ambient[1])
    if not lo < hi:
        raise RulerDomainError(f'Ambient interval {ambient} is empty')
    return lo, hi


def _check_order(positions: np.ndarray, step: int):
    if not np.all(np.isfinite(positions)) or not np.all(np.diff(positions) > 0):
        raise PlacementError(f'Positions not strictly increasing after step {step}')


def init(ambient: Interval = UNIT_INTERVAL, seed: float = 0.5) -> Partition:
    """Step 1: a single point of age 1, strictly inside the ambient interval"""
    lo, hi = _validate_ambient(ambient)
    if not (isfinite(seed) and lo < seed < hi):
        raise RulerDomainError(f'Seed {seed} is not interior to {ambient}')
    return Partition(
        step      = 1,
        ambient   = (lo, hi),
        positions = np.array([float(seed)]),
        births    = np.array([1], dtype=np.int64),
    )


def _gap_fractions(count: int, rng: Optional[np.random.Generator]) -> np.ndarray:
    if rng is None:
        return np.full(count, 0.5)
    return rng.uniform(JITTER_LOW, JITTER_HIGH, size=count)


def step(p: Partition, rng: Optional[np.random.Generator] = None) -> Partition:
    """
        Duplicate the points born in the previous step.

        The newborns of step n sit at every even slot of the partition, so each gap
        (including the two outer ones) touches exactly one parent: the child of that
        parent goes into the gap.  Children sit at the gap midpoint, or at a random
        fraction of the gap when `rng` is given.  Infinite bounds use parent -/+ 1.
    """
    lo, hi = p.ambient
    x = p.positions
    fractions = _gap_fractions(len(x) + 1, rng)

    left_edge  = x[0] - 1.0 if lo == -inf else lo
    right_edge = x[-1] + 1.0 if hi == inf else hi
    gap_lo = np.concatenate(([left_edge], x))
    gap_hi = np.concatenate((x, [right_edge]))
    children = gap_lo + fractions * (gap_hi - gap_lo)

    size = 2 * len(x) + 1
    positions = np.empty(size)
    births    = np.empty(size, dtype=np.int64)
    positions[0::2] = children
    positions[1::2] = x
    births[0::2] = p.step + 1
    births[1::2] = p.births

    _check_order(positions, p.step + 1)
    return Partition(step=p.step + 1, ambient=p.ambient, positions=positions, births=births)


def age_sequence(p: Partition) -> IndexSequence:
    """Ages read left to right"""
    return IndexSequence(p.ages.tolist())


def run(steps: int, ambient: Interval = UNIT_INTERVAL, seed: float = 0.5,
        jitter: bool = False, rng_seed: Optional[int] = None) -> Partition:
    """Partition after `steps` steps (step 1 is the seed alone)"""
    if isinstance(steps, bool) or not isinstance(steps, int) or not 1 <= steps <= AUTOMATON_MAX_STEPS:
        raise RulerDomainError(f'steps={steps} outside [1, {AUTOMATON_MAX_STEPS}]')
    rng = np.random.default_rng(rng_seed) if jitter else None
    partition = init(ambient, seed)
    while partition.step < steps:
        partition = step(partition, rng)
    _LOGGER.debug(f'Automaton at step {partition.step}: {len(partition)} points, jitter={jitter}')
    return partition
