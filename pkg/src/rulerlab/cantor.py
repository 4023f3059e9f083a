"""
Middle intervals of the ternary Cantor construction

Only the closed outer thirds are trisected again; an open middle third, once removed,
stays undivided forever.  Its index is the number of steps since it was formed.
Arithmetic is exact throughout: endpoints are integers over powers of 3.
"""

from collections import Counter
from dataclasses import dataclass
from fractions   import Fraction
from functools   import total_ordering
from logging     import getLogger
from typing      import Dict, List, Tuple

from .const import CANTOR_MAX_N
from .exc import OracleMismatchError, RulerDomainError
from .ruler_core import IndexSequence, ruler_block

_LOGGER = getLogger(__name__)


@total_ordering
@dataclass(frozen=True, eq=False)
class TernaryRational:
    """numerator / 3^exponent, canonical: numerator not divisible by 3 unless exponent is 0"""
    numerator: int
    exponent:  int

    def __post_init__(self):
        if self.numerator < 0 or self.exponent < 0:
            raise RulerDomainError(f'Invalid ternary rational {self.numerator}/3^{self.exponent}')

    @classmethod
    def reduced(cls, numerator: int, exponent: int) -> 'TernaryRational':
        if numerator == 0:
            return cls(0, 0)
        while exponent > 0 and numerator % 3 == 0:
            numerator //= 3
            exponent -= 1
        return cls(numerator, exponent)

    @property
    def is_canonical(self) -> bool:
        return self.exponent == 0 or self.numerator % 3 != 0

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 3**self.exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, TernaryRational):
            return self.value == other.value
        return self.value == other

    def __lt__(self, other) -> bool:
        if isinstance(other, TernaryRational):
            return self.value < other.value
        return self.value < other

    def __hash__(self) -> int:
        return hash(self.value)

    def __sub__(self, other: 'TernaryRational') -> Fraction:
        return self.value - other.value

    def __str__(self) -> str:
        return f'{self.numerator}/3^{self.exponent}'


@dataclass(frozen=True)
class MiddleInterval:
    """Open interval (lo, hi) of width 3^-birth_step"""
    lo:         TernaryRational
    hi:         TernaryRational
    birth_step: int
    index:      int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class CantorLevel:
    step:           int
    intervals:      Tuple[MiddleInterval, ...]
    removed_length: Fraction

    def __len__(self) -> int:
        return len(self.intervals)


def _check_n(n: int):
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= CANTOR_MAX_N:
        raise RulerDomainError(f'n={n} outside [1, {CANTOR_MAX_N}]')


def _middle_thirds(n: int) -> List[Tuple[int, int, int]]:
    """(lo numerator, hi numerator, birth step) over 3^n, left recursion first"""
    found = []   # type: List[Tuple[int, int, int]]

    def trisect(start: int, width: int, birth: int):
        if birth > n:
            return
        third = width // 3
        trisect(start, third, birth + 1)
        found.append((start + third, start + 2 * third, birth))
        trisect(start + 2 * third, third, birth + 1)

    trisect(0, 3**n, 1)
    return found


def cantor_level(n: int) -> CantorLevel:
    """All middle intervals removed in the first n steps, left to right"""
    _check_n(n)
    raw = _middle_thirds(n)
    intervals = tuple(
        MiddleInterval(
            lo         = TernaryRational.reduced(lo, n),
            hi         = TernaryRational.reduced(hi, n),
            birth_step = birth,
            index      = n - birth + 1,
        )
        for lo, hi, birth in raw
    )
    removed = Fraction(sum(hi - lo for lo, hi, _ in raw), 3**n)
    _LOGGER.debug(f'Cantor level {n}: {len(intervals)} middle intervals, removed length {removed}')
    return CantorLevel(step=n, intervals=intervals, removed_length=removed)


def index_sequence(level: CantorLevel) -> IndexSequence:
    return IndexSequence(iv.index for iv in level.intervals)


def half_index_sequence(n: int) -> IndexSequence:
    """Indices of the left and middle intervals only, i.e. those starting below 1/2"""
    level = cantor_level(n)
    return IndexSequence(iv.index for iv in level.intervals if iv.lo.value < Fraction(1, 2))


def width_histogram(level: CantorLevel) -> Dict[int, int]:
    """birth step b -> number of intervals of width 3^-b"""
    tally = Counter(iv.birth_step for iv in level.intervals)
    return {b: tally[b] for b in sorted(tally)}


def removed_length_formula(n: int) -> Fraction:
    """L_n = sum over the order-n block of 3^(r_k - (n + 1))"""
    _check_n(n)
    return Fraction(sum(3**r for r in ruler_block(n)), 3**(n + 1))


def removed_length(n: int) -> Fraction:
    """L_n from the index formula and from interval widths; both must agree"""
    by_formula  = removed_length_formula(n)
    by_geometry = cantor_level(n).removed_length
    if by_formula != by_geometry:
        raise OracleMismatchError(f'L_{n}: formula {by_formula} != geometry {by_geometry}')
    return by_formula
