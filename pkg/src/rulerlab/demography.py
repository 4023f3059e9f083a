"""Population recurrences and age censuses of the duplication automaton, with and without death"""

from collections import Counter
from dataclasses import dataclass, field
from fractions   import Fraction
from logging     import getLogger
from typing      import Dict

import numpy as np

from . import automaton
from .const import (
    AUTOMATON_CHECK_MAX,
    CENSUS_MAX_N,
    DEFAULT_LIFESPAN,
    POPULATION_MAX_N,
)
from .exc import OracleMismatchError, RulerDomainError

_LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class AgeCensus:
    """
        counts maps age -> number of individuals, ages ascending.
        Proportions are taken against `normalizer`: 2^n for the immortal model,
        which makes them exactly 2^-k, and the head count for the mortal one.
    """
    step:       int
    counts:     Dict[int, int] = field(default_factory=dict)
    total:      int = 0
    normalizer: int = 1

    def count(self, age: int) -> int:
        return self.counts.get(age, 0)

    def proportions(self) -> Dict[int, Fraction]:
        return {age: Fraction(c, self.normalizer) for age, c in self.counts.items()}

    @property
    def ages(self):
        return set(self.counts)


def _check_n(n: int, high: int):
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= high:
        raise RulerDomainError(f'n={n} outside [1, {high}]')


def _expect_mersenne(name: str, n: int, value: int) -> int:
    if value != 2**n - 1:
        raise OracleMismatchError(f'{name}({n}) = {value}, expected {2**n - 1}')
    return value


def population_linear(n: int) -> int:
    """N(n+2) = 3 N(n+1) - 2 N(n), N(1) = 1, N(2) = 3"""
    _check_n(n, POPULATION_MAX_N)
    prev, cur = 1, 3
    if n == 1:
        return _expect_mersenne('population_linear', n, prev)
    for _ in range(n - 2):
        prev, cur = cur, 3 * cur - 2 * prev
    return _expect_mersenne('population_linear', n, cur)


def population_duplication(n: int) -> int:
    """N(n+2) = 2 (N(n+1) - N(n)) + N(n+1): last step's newborns duplicate, everyone survives"""
    _check_n(n, POPULATION_MAX_N)
    prev, cur = 1, 3
    if n == 1:
        return _expect_mersenne('population_duplication', n, prev)
    for _ in range(n - 2):
        prev, cur = cur, 2 * (cur - prev) + cur
    return _expect_mersenne('population_duplication', n, cur)


def hanoi_moves(n: int) -> int:
    """Moves needed for n discs: N(n+1) = 2 N(n) + 1, N(1) = 1"""
    _check_n(n, POPULATION_MAX_N)
    moves = 1
    for _ in range(n - 1):
        moves = 2 * moves + 1
    return _expect_mersenne('hanoi_moves', n, moves)


def newborns(n: int) -> int:
    """N(n+1) - N(n) = 2^n"""
    _check_n(n, POPULATION_MAX_N - 1)
    born = population_linear(n + 1) - population_linear(n)
    if born != 2**n:
        raise OracleMismatchError(f'newborns({n}) = {born}, expected {2**n}')
    return born


def population_with_death(n: int) -> int:
    """2^n - 1 for n = 1, 2 and 7 * 2^(n-3) afterwards (lifespan of three steps)"""
    _check_n(n, POPULATION_MAX_N)
    if n <= 2:
        return 2**n - 1
    return 7 * 2**(n - 3)


def census_from_automaton(n: int) -> AgeCensus:
    """Run the spatial automaton for n steps and tally ages"""
    _check_n(n, AUTOMATON_CHECK_MAX)
    ages = automaton.run(n).ages
    tally = np.bincount(ages)
    counts = {int(age): int(tally[age]) for age in range(1, len(tally)) if tally[age]}
    return AgeCensus(step=n, counts=counts, total=int(len(ages)), normalizer=2**n)


def census(n: int, cross_check: bool = True) -> AgeCensus:
    """Immortal census: 2^(n-k) individuals of age k, checked against a spatial run when small"""
    _check_n(n, CENSUS_MAX_N)
    counts = {k: 2**(n - k) for k in range(1, n + 1)}
    result = AgeCensus(step=n, counts=counts, total=sum(counts.values()), normalizer=2**n)

    if cross_check and n <= AUTOMATON_CHECK_MAX:
        simulated = census_from_automaton(n)
        if simulated.counts != result.counts:
            raise OracleMismatchError(f'Automaton census {simulated.counts} != closed form {counts}')
        _LOGGER.debug(f'Census at step {n} confirmed by automaton run')
    return result


def census_with_death(n: int, lifespan: int = DEFAULT_LIFESPAN) -> AgeCensus:
    """
        Age-structured run with death.  Each step: age-1 individuals have two offspring,
        everyone ages by one, then anyone older than `lifespan` is removed.
    """
    _check_n(n, POPULATION_MAX_N)
    if isinstance(lifespan, bool) or not isinstance(lifespan, int) or lifespan < 1:
        raise RulerDomainError(f'lifespan must be a positive integer, got {lifespan}')

    counts = Counter({1: 1})
    for _ in range(n - 1):
        born = 2 * counts[1]
        counts = Counter({age + 1: c for age, c in counts.items() if age + 1 <= lifespan and c})
        counts[1] = born

    ordered = {age: counts[age] for age in sorted(counts) if counts[age]}
    total = sum(ordered.values())
    if lifespan == DEFAULT_LIFESPAN and total != population_with_death(n):
        raise OracleMismatchError(f'Mortal census total {total} != closed form {population_with_death(n)}')
    return AgeCensus(step=n, counts=ordered, total=total, normalizer=total)


def descendant_census(n: int, birth_step: int, which: int = 0) -> AgeCensus:
    """
        Census at step n of the newborn number `which` (0-based, left to right) of
        `birth_step` together with all its descendants.

        The parent's neighbours at birth never reproduce again, so its lineage is
        exactly the set of later points strictly between them.
    """
    _check_n(n, AUTOMATON_CHECK_MAX)
    _check_n(birth_step, n)
    if not 0 <= which < 2**(birth_step - 1):
        raise RulerDomainError(f'Step {birth_step} has {2**(birth_step - 1)} newborns, asked for #{which}')

    partition = automaton.run(birth_step)
    slot = 2 * which
    lo_edge = partition.positions[slot - 1] if slot > 0 else partition.ambient[0]
    hi_edge = partition.positions[slot + 1] if slot + 1 < len(partition) else partition.ambient[1]

    while partition.step < n:
        partition = automaton.step(partition)

    inside = (partition.positions > lo_edge) & (partition.positions < hi_edge)
    ages = partition.ages[inside]
    tally = Counter(int(a) for a in ages)
    counts = {age: tally[age] for age in sorted(tally)}
    span = n - birth_step + 1
    return AgeCensus(step=span, counts=counts, total=int(inside.sum()), normalizer=2**span)
