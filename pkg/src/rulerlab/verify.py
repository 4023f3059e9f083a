"""
Cross-oracle verification suite

Each check returns a list of verdicts, one per identity; a check that raises is
turned into a single failing verdict so the rest of the suite still runs.  The
async variant runs the same checks on the default executor and returns the same
verdicts in the same order.
"""

import asyncio
from fractions import Fraction
from logging   import getLogger
from math      import sqrt
from typing    import Callable, List, Tuple

import numpy as np

from . import automaton, cantor, demography, hv_dynamics, polygon, ruler_core
from .const import (
    AUTOMATON_CHECK_MAX,
    CANTOR_MAX_N,
    DEFAULT_SEED,
    DEFAULT_VERIFY_N,
    POPULATION_MAX_N,
    RULER_BLOCK_MAX_N,
    SQUAREFREE_MAX_LEN,
    SUM_MAX_N,
    SUPERSTABLE_MAX_N,
)
from .exc import RulerDomainError, RulerLabError
from .report import Verdict

_LOGGER = getLogger(__name__)

GRAY_SAMPLES      = 10_000
GRAY_MAX_N        = 20
RANDOM_SERIES     = 200
RANDOM_SERIES_LEN = 500
PATTERN_ASSERT_N  = 3           # forward patterns asserted exactly up to period 2^3
DELTA_SPREAD      = 0.05
ORBIT_CENTRE_TOL  = 1e-6
MORTAL_RANGE      = range(3, 25)
DELETION_MAX_N    = 16

Check = Callable[[int, int], List[Verdict]]


def _span(max_n: int, cap: int, low: int = 1) -> range:
    return range(low, min(max_n, cap) + 1)


def check_golden(max_n: int, seed: int) -> List[Verdict]:
    verdicts = [
        Verdict('golden', 's_2 = 4', ruler_core.index_sum(2) == 4),
        Verdict('golden', 's_3 = 11', ruler_core.index_sum(3) == 11),
    ]
    recurrences = (
        ('linear', demography.population_linear),
        ('duplication', demography.population_duplication),
        ('hanoi', demography.hanoi_moves),
    )
    for name, fn in recurrences:
        ok = all(fn(n) == 2**n - 1 for n in range(1, POPULATION_MAX_N + 1))
        verdicts.append(Verdict('golden', f'N(n) = 2^n - 1 by {name} recurrence, n <= {POPULATION_MAX_N}', ok))

    expected = [1, 3, 7, 14, 28, 56]
    closed   = [demography.population_with_death(n) for n in range(1, 7)]
    counted  = [demography.census_with_death(n).total for n in range(1, 7)]
    verdicts.append(Verdict('golden', 'mortal population 1, 3, 7, 14, 28, 56', closed == expected == counted,
                            f'closed form {closed}, census {counted}'))

    lengths = [cantor.removed_length(n) for n in (1, 2, 3)]
    verdicts.append(Verdict('golden', 'L_1 = 1/3, L_2 = 5/9, L_3 = 19/27',
                            lengths == [Fraction(1, 3), Fraction(5, 9), Fraction(19, 27)],
                            ', '.join(str(v) for v in lengths)))
    return verdicts


def check_equivalence(max_n: int, seed: int) -> List[Verdict]:
    """Six constructions of the same block"""
    verdicts = []
    for n in _span(max_n, AUTOMATON_CHECK_MAX):
        block = ruler_core.ruler_block(n)
        others = {
            'stream':    ruler_core.ruler_stream(2**n - 1),
            'thomae':    ruler_core.thomae_exponent_sequence(n),
            'automaton': automaton.age_sequence(automaton.run(n)),
            'cantor':    cantor.index_sequence(cantor.cantor_level(n)),
            'polygon':   polygon.vertex_index_sequence(polygon.generation(n)),
        }
        differing = sorted(name for name, seq in others.items() if seq != block)
        verdicts.append(Verdict('equivalence', f'six generators agree on block {n}', not differing,
                                f'differs: {", ".join(differing)}' if differing else ''))
    return verdicts


def check_recursion(max_n: int, seed: int) -> List[Verdict]:
    top = 2**min(max_n, 16)
    evens = all(ruler_core.ruler_term(2 * k) == ruler_core.ruler_term(k) + 1 for k in range(1, top + 1))
    odds  = all(ruler_core.ruler_term(2 * k - 1) == 1 for k in range(1, top + 1))
    recursive = all(ruler_core.ruler_term(k) == ruler_core.ruler_term_recursive(k) for k in range(1, top + 1))
    doubling = all(ruler_core.half_block(n) == ruler_core.ruler_stream(2**(n - 1)) for n in _span(max_n, 16))
    return [
        Verdict('recursion', f'a(2k) = a(k) + 1, k <= {top}', evens),
        Verdict('recursion', f'a(2k - 1) = 1, k <= {top}', odds),
        Verdict('recursion', f'bit formula = recursive definition, k <= {top}', recursive),
        Verdict('recursion', 'left-and-middle construction = ruler prefix of length 2^(n-1)', doubling),
    ]


def check_gray(max_n: int, seed: int) -> List[Verdict]:
    pairs = ruler_core.gray_reflection_pairs(max(1, min(max_n, GRAY_MAX_N)), GRAY_SAMPLES, seed)
    failed = [(n, k) for n, k in pairs if not ruler_core.gray_reflection_holds(n, k)]
    return [Verdict('gray', f'a(2^n + k) = a(2^n - k), {len(pairs)} sampled pairs', not failed,
                    f'first failure (n, k) = {failed[0]}' if failed else '')]


def check_frequencies(max_n: int, seed: int) -> List[Verdict]:
    verdicts = []
    for n in _span(max_n, 20):
        counts = ruler_core.frequency_counts(n)
        verdicts.append(Verdict('frequency', f'value k occurs 2^({n}-k) times in block {n}',
                                counts == {k: 2**(n - k) for k in range(1, n + 1)}))
    return verdicts


def check_sums(max_n: int, seed: int) -> List[Verdict]:
    verdicts = []
    for n in _span(max_n, SUM_MAX_N):
        closed = 2**(n + 1) - n - 2
        by_recurrence = ruler_core.index_sum(n)
        by_expansion  = ruler_core.index_sum_expansion(n)
        stats = ruler_core.block_stats(n, cross_check=n <= RULER_BLOCK_MAX_N)
        verdicts.append(Verdict('sums', f's_{n} by recurrence = expansion = 2^{n + 1} - {n + 2}',
                                by_recurrence == by_expansion == closed == stats.term_sum))
    return verdicts


def check_self_containing(max_n: int, seed: int) -> List[Verdict]:
    ok = all(ruler_core.delete_ones(ruler_core.ruler_block(n)) == ruler_core.ruler_block(n - 1)
             for n in _span(max_n, 16, low=2))
    verdicts = [Verdict('self-containing', 'deleting 1s and lowering the rest maps block n onto block n - 1', ok)]

    # diagnostic: dropping first occurrences leaves 1, 1, 2, ... and never the ruler prefix
    top = max(3, min(max_n, DELETION_MAX_N))
    outcomes = [ruler_core.delete_first_occurrences(ruler_core.ruler_block(n)) for n in range(3, top + 1)]
    shown = ', '.join(str(t) for t in outcomes[-1].result[:8])
    verdicts.append(Verdict('self-containing', f'deleting first occurrences does not give the ruler prefix, n <= {top}',
                            not any(d.matches_prefix for d in outcomes), f'block {top} leaves {shown}, ...'))
    return verdicts


def check_squarefree(max_n: int, seed: int) -> List[Verdict]:
    length = min(SQUAREFREE_MAX_LEN, 2**(max_n + 1))
    result = ruler_core.check_squarefree(length)
    detail = '' if result.squarefree else f'square at {result.violation.start}, half-length {result.violation.length}'
    return [Verdict('squarefree', f'ruler prefix of length {length} has no factor ww', result.squarefree, detail)]


def check_cantor(max_n: int, seed: int) -> List[Verdict]:
    verdicts = []
    complement = all(1 - cantor.removed_length_formula(n) == Fraction(2, 3)**n for n in _span(max_n, CANTOR_MAX_N))
    verdicts.append(Verdict('cantor', f'1 - L_n = (2/3)^n, n <= {min(max_n, CANTOR_MAX_N)}', complement))
    for n in _span(max_n, AUTOMATON_CHECK_MAX):
        level = cantor.cantor_level(n)
        widths = cantor.width_histogram(level) == {b: 2**(b - 1) for b in range(1, n + 1)}
        half = cantor.half_index_sequence(n) == ruler_core.half_block(n)
        geometry = cantor.removed_length(n) == level.removed_length
        verdicts.append(Verdict('cantor', f'level {n}: 2^(b-1) intervals of width 3^-b, half indices, L_{n}',
                                widths and half and geometry))
    return verdicts


def check_automaton(max_n: int, seed: int) -> List[Verdict]:
    verdicts = []
    for n in _span(max_n, AUTOMATON_CHECK_MAX):
        block = ruler_core.ruler_block(n)
        unit = automaton.age_sequence(automaton.run(n, jitter=True, rng_seed=seed + n))
        line = automaton.age_sequence(automaton.run(n, ambient=automaton.REAL_LINE, seed=0.0,
                                                    jitter=True, rng_seed=seed + n))
        newborn = int(np.count_nonzero(automaton.run(n).ages == 1))
        verdicts.append(Verdict('automaton', f'jittered ages = block {n} and 2^{n - 1} newborns',
                                unit == block == line and newborn == 2**(n - 1)))
    ok = all(demography.newborns(n) == 2**n for n in range(1, POPULATION_MAX_N))
    verdicts.append(Verdict('automaton', 'N(n+1) - N(n) = 2^n', ok))
    return verdicts


def check_census(max_n: int, seed: int) -> List[Verdict]:
    verdicts = []
    for n in _span(max_n, AUTOMATON_CHECK_MAX):
        census = demography.census(n)
        halves = census.proportions() == {k: Fraction(1, 2**k) for k in range(1, n + 1)}
        mortal = demography.census_with_death(n).total == demography.population_with_death(n)
        lineage = all(
            demography.descendant_census(n, b).counts == demography.census(n - b + 1, cross_check=False).counts
            for b in range(1, n + 1)
        )
        verdicts.append(Verdict('census', f'step {n}: proportion 2^-k, mortal total, lineage censuses',
                                halves and mortal and lineage))

    totals = [demography.census_with_death(n).total for n in MORTAL_RANGE]
    closed = [demography.population_with_death(n) for n in MORTAL_RANGE]
    doubling = all(b == 2 * a for a, b in zip(totals, totals[1:]))
    verdicts.append(Verdict('census', f'mortal census = 7 * 2^(n-3) and N(n+1) = 2 N(n), '
                                      f'{MORTAL_RANGE.start} <= n <= {MORTAL_RANGE.stop - 1}',
                            totals == closed and doubling))
    return verdicts


def check_polygon(max_n: int, seed: int) -> List[Verdict]:
    verdicts = []
    for n in _span(max_n, AUTOMATON_CHECK_MAX):
        half = polygon.half_vertex_index_sequence(n) == ruler_core.half_block(n)
        jittered = tuple(index for _, index in polygon.jittered_generation(n, seed=seed + n))
        verdicts.append(Verdict('polygon', f'2^{n}-gon: half indices and jittered indices',
                                half and jittered == ruler_core.ruler_block(n)))
    return verdicts


def _random_series(rng: np.random.Generator) -> np.ndarray:
    size = int(rng.integers(1, RANDOM_SERIES_LEN + 1))
    if rng.random() < 0.5:
        return rng.random(size)
    # few distinct values, so ties are common
    return rng.integers(0, 5, size=size).astype(float)


def check_dynamics(max_n: int, seed: int) -> List[Verdict]:
    values = hv_dynamics.superstable_series(SUPERSTABLE_MAX_N)
    deltas = hv_dynamics.feigenbaum_deltas(values)[2:]
    spread = (max(deltas) - min(deltas)) / float(np.mean(deltas))
    limit  = hv_dynamics.feigenbaum_accumulation(values)

    verdicts = [
        Verdict('dynamics', 'superstable r for period 1 is exactly 2', values[0] == 2.0, repr(values[0])),
        Verdict('dynamics', 'superstable r for period 2 is 1 + sqrt(5)', abs(values[1] - (1 + sqrt(5))) < 1e-10,
                repr(values[1])),
        Verdict('dynamics', 'superstable values strictly increase', all(b > a for a, b in zip(values, values[1:]))),
        Verdict('dynamics', 'accumulation extrapolant in (3.5699, 3.5700)', 3.5699 < limit < 3.57, repr(limit)),
        Verdict('dynamics', 'delta estimates for periods 2^4..2^7 within 5%', spread < DELTA_SPREAD,
                ', '.join(f'{d:.6f}' for d in deltas)),
    ]

    for n, r in enumerate(values):
        orbit = hv_dynamics.stationary_orbit(r, max_period=2**n)
        offset = min(abs(x - 0.5) for x in orbit.points)
        verdicts.append(Verdict('dynamics', f'period 2^{n} orbit at its superstable r passes within 1e-6 of 1/2',
                                offset < ORBIT_CENTRE_TOL and orbit.period == 2**n,
                                f'period {orbit.period}, offset {offset:.3g}'))

    rng = np.random.default_rng(seed)
    agree = invariant = True
    for _ in range(RANDOM_SERIES):
        series = _random_series(rng)
        fast, _ = hv_dynamics.forward_degrees(series)
        agree &= bool(np.array_equal(fast, hv_dynamics.brute_force_visibility(series)))
        for transformed in (np.exp(series), series**3 - 2.0, np.arctan(series)):
            invariant &= bool(np.array_equal(fast, hv_dynamics.forward_degrees(transformed)[0]))
    verdicts.append(Verdict('dynamics', f'stack degrees = brute force on {RANDOM_SERIES} random series', agree))
    verdicts.append(Verdict('dynamics', 'degrees unchanged by increasing transforms', invariant))

    for n in range(1, PATTERN_ASSERT_N + 1):
        cmp = hv_dynamics.compare_orbit_pattern(n, r=values[n])
        verdicts.append(Verdict('dynamics', f'period 2^{n} pattern from maximum = [{n + 1}] ++ block {n}',
                                cmp.matches_index_reading, f'measured {list(cmp.measured)}'))
        verdicts.append(Verdict('dynamics', f'period 2^{n} pattern doubled = literal recurrence',
                                bool(cmp.matches_recurrence)))
    return verdicts


CHECKS = (
    ('golden',          check_golden),
    ('equivalence',     check_equivalence),
    ('recursion',       check_recursion),
    ('gray',            check_gray),
    ('frequency',       check_frequencies),
    ('sums',            check_sums),
    ('self-containing', check_self_containing),
    ('squarefree',      check_squarefree),
    ('cantor',          check_cantor),
    ('automaton',       check_automaton),
    ('census',          check_census),
    ('polygon',         check_polygon),
    ('dynamics',        check_dynamics),
)   # type: Tuple[Tuple[str, Check], ...]


def _run_check(name: str, check: Check, max_n: int, seed: int) -> List[Verdict]:
    try:
        verdicts = check(max_n, seed)
    except (RulerLabError, ArithmeticError) as e:
        _LOGGER.debug(f'Check {name} raised {type(e).__name__}: {e}')
        return [Verdict(name, f'{name} check completes', False, f'{type(e).__name__}: {e}')]
    for v in verdicts:
        if not v.passed:
            _LOGGER.warning(f'{v.check}: {v.identity} FAILED {v.detail}')
    _LOGGER.debug(f'Check {name}: {sum(v.passed for v in verdicts)}/{len(verdicts)} passed')
    return verdicts


def _check_args(max_n: int, seed: int):
    if isinstance(max_n, bool) or not isinstance(max_n, int) or max_n < 1:
        raise RulerDomainError(f'max_n must be a positive integer, got {max_n!r}')
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise RulerDomainError(f'seed must be an integer, got {seed!r}')


def verify(max_n: int = DEFAULT_VERIFY_N, seed: int = DEFAULT_SEED) -> List[Verdict]:
    """Run every check in order"""
    _check_args(max_n, seed)
    verdicts = []
    for name, check in CHECKS:
        verdicts.extend(_run_check(name, check, max_n, seed))
    return verdicts


async def async_verify(max_n: int = DEFAULT_VERIFY_N, seed: int = DEFAULT_SEED) -> List[Verdict]:
    """Same verdicts as verify(), checks fanned out over the default executor"""
    _check_args(max_n, seed)
    loop = asyncio.get_running_loop()
    results = await asyncio.gather(*(
        loop.run_in_executor(None, _run_check, name, check, max_n, seed) for name, check in CHECKS
    ))
    return [v for verdicts in results for v in verdicts]
