"""
Closed-form, recursive and streaming definitions of the ruler (Gros) sequence

The n-th term is the exponent of the highest power of 2 dividing 2n:
    1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3, 1, 2, 1, ...
Every other construction in this package is checked against the functions here.
"""

from collections import Counter
from dataclasses import dataclass
from fractions   import Fraction
from itertools   import count, islice
from logging     import getLogger
from math        import log2
from typing      import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .const import (
    RULER_TERM_CAP,
    RULER_BLOCK_MAX_N,
    SUM_MAX_N,
    SQUAREFREE_MAX_LEN,
)
from .exc import OracleMismatchError, RulerDomainError

_LOGGER = getLogger(__name__)


class IndexSequence(tuple):
    """Finite run of positive integers: a prefix or block of the ruler sequence"""

    def __new__(cls, terms: Iterable[int] = ()):
        seq = super().__new__(cls, terms)
        if seq and min(seq) < 1:
            raise RulerDomainError(f'Index sequence terms must be >= 1, got {min(seq)}')
        return seq

    @property
    def terms(self) -> Tuple[int, ...]:
        return tuple(self)

    @property
    def max_term(self) -> int:
        return max(self) if self else 0

    def is_block(self, n: int) -> bool:
        """Length 2^n - 1 and maximum n"""
        return len(self) == 2**n - 1 and self.max_term == n

    def __repr__(self) -> str:
        if len(self) > 16:
            head = ', '.join(str(t) for t in self[:16])
            return f'IndexSequence([{head}, ...] len={len(self)})'
        return f'IndexSequence({list(self)})'


@dataclass(frozen=True)
class DyadicRational:
    """odd_numerator / 2^exponent"""
    odd_numerator: int
    exponent:      int

    def __post_init__(self):
        if self.odd_numerator < 1 or self.odd_numerator % 2 == 0:
            raise RulerDomainError(f'Numerator must be a positive odd integer, got {self.odd_numerator}')
        if self.exponent < 0:
            raise RulerDomainError(f'Exponent must be >= 0, got {self.exponent}')

    @property
    def value(self) -> Fraction:
        return Fraction(self.odd_numerator, 2**self.exponent)

    @property
    def thomae(self) -> Fraction:
        """h(p/2^k) = 2^-k"""
        return Fraction(1, 2**self.exponent)

    def __str__(self) -> str:
        return f'{self.odd_numerator}/2^{self.exponent}'


@dataclass(frozen=True)
class BlockStats:
    order:    int
    length:   int
    term_sum: int
    max_term: int
    ratio:    float


@dataclass(frozen=True)
class SquareViolation:
    """A factor ww; `start` is 1-based, each copy of w is `length` terms long"""
    start:  int
    length: int
    block:  Tuple[int, ...]

    @property
    def positions(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        first = (self.start, self.start + self.length - 1)
        second = (self.start + self.length, self.start + 2 * self.length - 1)
        return first, second


@dataclass(frozen=True)
class SquarefreeResult:
    squarefree:    bool
    prefix_length: int
    violation:     Optional[SquareViolation] = None


@dataclass(frozen=True)
class DeletionDiagnostic:
    """Outcome of deleting the first occurrence of every integer"""
    source_length:  int
    result:         IndexSequence
    matches_prefix: bool


def _check_int(name: str, value: int, low: int, high: Optional[int] = None):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise RulerDomainError(f'{name} must be an integer, got {value!r}')
    if value < low or (high is not None and value > high):
        upper = '' if high is None else f', {high}'
        raise RulerDomainError(f'{name}={value} outside [{low}{upper}]')


def ruler_term(n: int) -> int:
    """Exponent of the largest power of 2 dividing 2n: trailing zero bits of n plus one"""
    _check_int('n', n, 1, RULER_TERM_CAP)
    n = int(n)
    return (n & -n).bit_length()


def ruler_term_recursive(k: int) -> int:
    """g_k = 1 if k odd else g_{k/2} + 1"""
    _check_int('k', k, 1, RULER_TERM_CAP)
    if k % 2:
        return 1
    return ruler_term_recursive(k // 2) + 1


def ruler_block(n: int) -> IndexSequence:
    """Order-n block by the doubling rule r_{k+1} = r_k ++ [k+1] ++ r_k"""
    _check_int('n', n, 1, RULER_BLOCK_MAX_N)
    block = (1,)
    for k in range(2, n + 1):
        block = block + (k,) + block
    return IndexSequence(block)


def iter_ruler(start: int = 1) -> Iterator[int]:
    """Endless stream of ruler terms from position `start`"""
    _check_int('start', start, 1, RULER_TERM_CAP)
    for position in count(start):
        yield ruler_term(position)


def ruler_stream(count: int) -> IndexSequence:
    _check_int('count', count, 0, RULER_TERM_CAP)
    return IndexSequence(islice(iter_ruler(), count))


def half_block(n: int) -> IndexSequence:
    """
        Construction from the left and middle parts only:
        [1], [1, 2], [1, 2, 1, 3], [1, 2, 1, 3, 1, 2, 1, 4], ...
        The first 2^(n-1) ruler terms; the last one is always n.
    """
    _check_int('n', n, 1, RULER_BLOCK_MAX_N)
    if n == 1:
        return IndexSequence((1,))
    return IndexSequence(ruler_block(n - 1) + (n,))


def dyadic_rationals(n: int) -> List[DyadicRational]:
    """All p/2^k in (0, 1) with p odd and 1 <= k <= n, in increasing order"""
    _check_int('n', n, 1, RULER_BLOCK_MAX_N)
    values = [DyadicRational(p, k) for k in range(1, n + 1) for p in range(1, 2**k, 2)]
    return sorted(values, key=lambda d: d.odd_numerator << (n - d.exponent))


def thomae_exponent_sequence(n: int, shifted: bool = True) -> Union[IndexSequence, Tuple[int, ...]]:
    """
        Exponents of h over the ordered dyadic rationals of level <= n.
        Raw exponents are -k; shifting by n + 1 yields ruler_block(n).
    """
    _check_int('n', n, 1, RULER_BLOCK_MAX_N)
    # Exact integer sort keys p * 2^(n-k); numpy keeps level 24 within memory
    keys = np.concatenate([np.arange(1, 2**k, 2, dtype=np.int64) << (n - k) for k in range(1, n + 1)])
    levels = np.concatenate([np.full(2**(k - 1), k, dtype=np.int64) for k in range(1, n + 1)])
    exponents = -levels[np.argsort(keys, kind='stable')]
    if not shifted:
        return tuple(exponents.tolist())
    return IndexSequence((exponents + n + 1).tolist())


def index_sum(n: int) -> int:
    """s_n by the recurrence s_{k+1} = 2 s_k + k + 1, s_1 = 1"""
    _check_int('n', n, 1, SUM_MAX_N)
    s = 1
    for k in range(1, n):
        s = 2 * s + k + 1
    return s


def index_sum_expansion(n: int) -> int:
    """
        s_n unrolled from s_1 = 1:
            s_n = 2^(n-1) + n + 2 (n-1) + 2^2 (n-2) + ... + 2^(n-2) 2
    """
    _check_int('n', n, 1, SUM_MAX_N)
    return 2**(n - 1) + sum(2**j * (n - j) for j in range(n - 1))


def block_stats(n: int, cross_check: bool = True) -> BlockStats:
    """Length, term sum, maximum and lambda = log2(N + 1) / N for the order-n block"""
    _check_int('n', n, 1, SUM_MAX_N)
    term_sum = index_sum(n)
    length   = 2**n - 1

    if cross_check and n <= RULER_BLOCK_MAX_N:
        direct = sum(ruler_block(n))
        if direct != term_sum:
            raise OracleMismatchError(f'Recurrence sum {term_sum} != direct sum {direct} for n={n}')

    return BlockStats(
        order    = n,
        length   = length,
        term_sum = term_sum,
        max_term = n,
        ratio    = log2(length + 1) / length,
    )


def frequency_counts(n: int) -> Dict[int, int]:
    """How many times each value occurs in the order-n block"""
    tally = Counter(ruler_block(n))
    return {k: tally[k] for k in sorted(tally)}


def relative_frequencies(n: int) -> Dict[int, Fraction]:
    """count(k) / 2^n, which is exactly 2^-k; the missing mass is 2^-n"""
    total = 2**n
    return {k: Fraction(c, total) for k, c in frequency_counts(n).items()}


def find_square(terms: Sequence[int]) -> Optional[SquareViolation]:
    """
        Exhaustive scan for a factor ww.  For each half-length L the comparison
        terms[j] == terms[j + L] is vectorised and a square starts at i when the
        L comparisons from i are all true.  Earliest start wins, then shortest L.
    """
    arr = np.asarray(terms, dtype=np.int64)
    size = len(arr)
    best = None   # type: Optional[Tuple[int, int]]
    for half in range(1, size // 2 + 1):
        mismatched = np.concatenate(([0], np.cumsum(arr[:size - half] != arr[half:])))
        starts = np.arange(0, size - 2 * half + 1)
        hits = np.flatnonzero(mismatched[starts + half] - mismatched[starts] == 0)
        if hits.size and (best is None or hits[0] < best[0]):
            best = (int(hits[0]), half)
    if best is None:
        return None
    start, half = best
    return SquareViolation(start=start + 1, length=half, block=tuple(int(t) for t in arr[start:start + half]))


def check_squarefree(source: Union[int, Sequence[int]]) -> SquarefreeResult:
    """Scan a ruler prefix of the given length, or an explicit sequence, for squares"""
    if isinstance(source, (int, np.integer)) and not isinstance(source, bool):
        _check_int('prefix_length', source, 0, SQUAREFREE_MAX_LEN)
        terms = ruler_stream(source)
    else:
        terms = tuple(source)
        _check_int('prefix_length', len(terms), 0, SQUAREFREE_MAX_LEN)

    violation = find_square(terms)
    _LOGGER.debug(f'Squarefree scan over {len(terms)} terms: {violation or "no square"}')
    return SquarefreeResult(squarefree=violation is None, prefix_length=len(terms), violation=violation)


def delete_ones(terms: Sequence[int]) -> IndexSequence:
    """Drop every 1 and lower the rest by one; maps block n onto block n - 1"""
    return IndexSequence(t - 1 for t in terms if t != 1)


def delete_first_occurrences(terms: Sequence[int]) -> DeletionDiagnostic:
    """Remove the first occurrence of each integer and compare with the ruler prefix"""
    seen = set()
    kept = []
    for t in terms:
        if t in seen:
            kept.append(t)
        else:
            seen.add(t)
    result = IndexSequence(kept)
    return DeletionDiagnostic(
        source_length  = len(terms),
        result         = result,
        matches_prefix = result == ruler_stream(len(result)),
    )


def gray_reflection_pairs(max_n: int, samples: int, seed: int) -> List[Tuple[int, int]]:
    """Sampled (n, k) with 1 <= n <= max_n and 1 <= k <= 2^n - 1"""
    _check_int('max_n', max_n, 1, 61)
    rng = np.random.default_rng(seed)
    ns = rng.integers(1, max_n + 1, size=samples)
    return [(int(n), int(rng.integers(1, 2**int(n)))) for n in ns]


def gray_reflection_holds(n: int, k: int) -> bool:
    """g(2^n + k) == g(2^n - k)"""
    return ruler_term(2**n + k) == ruler_term(2**n - k)
