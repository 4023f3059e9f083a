"""Command line entry point: `rulerlab <subcommand> [flags]`"""

import argparse
import asyncio
import logging
import os
import sys
from logging import getLogger
from typing  import Any, BinaryIO, Dict, Optional, Sequence

from . import __version__
from . import automaton, cantor, demography, hv_dynamics, polygon, ruler_core
from .const import (
    DEFAULT_ROOT_TOL,
    DEFAULT_SEED,
    DEFAULT_TRANSIENT,
    DEFAULT_VERIFY_N,
    MAX_N_ENV_VAR,
    OUTPUT_FORMATS,
)
from .exc import RulerDomainError, RulerLabError, RulerLabUsageError
from .report import Report, RunConfig, emit_csv, emit_json, load_config_file, verdict_report
from .svg import emit_svg
from .verify import async_verify, verify

_LOGGER = getLogger(__name__)

SUBCOMMAND_DEFAULTS = {
    'ruler':      {'n': 8},
    'automaton':  {'steps': 5, 'position': 0.5, 'jitter': False, 'seed': DEFAULT_SEED},
    'demography': {'n': 5, 'lifespan': None},
    'cantor':     {'n': 4},
    'polygon':    {'n': 4, 'jitter': False, 'seed': DEFAULT_SEED},
    'cascade':    {'max_n': 6, 'tol': DEFAULT_ROOT_TOL, 'transient': DEFAULT_TRANSIENT},
    'verify':     {'max_n': DEFAULT_VERIFY_N, 'seed': DEFAULT_SEED, 'concurrent': False},
}   # type: Dict[str, Dict[str, Any]]

FIGURE_ORBIT_N = 3      # cascade figure draws the period-8 orbit when available
CAPPED_FIELDS  = ('n', 'max_n', 'steps')


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OUTPUT_FORMATS, default=None, help='output format (default csv)')
    common.add_argument('--output', default=None, help='write to this file instead of stdout')
    common.add_argument('--config', default=None, help='JSON file of flag defaults')
    common.add_argument('-v', '--verbose', action='count', default=None, help='-v info, -vv debug (stderr)')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog='rulerlab', description='Ruler sequence constructions and checks')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    sub = parser.add_subparsers(dest='subcommand', metavar='subcommand')
    sub.required = True

    p = sub.add_parser('ruler', parents=[common], help='order-n block as position,term')
    p.add_argument('--n', type=int, default=None)

    p = sub.add_parser('automaton', parents=[common], help='duplication automaton positions and ages')
    p.add_argument('--steps', type=int, default=None)
    p.add_argument('--position', type=float, default=None, help='seed point inside (0, 1)')
    p.add_argument('--jitter', action='store_true', default=None)
    p.add_argument('--seed', type=int, default=None, help='random seed for --jitter')

    p = sub.add_parser('demography', parents=[common], help='age census at step n')
    p.add_argument('--n', type=int, default=None)
    p.add_argument('--lifespan', type=int, default=None, help='remove individuals older than this')

    p = sub.add_parser('cantor', parents=[common], help='middle intervals of the first n steps')
    p.add_argument('--n', type=int, default=None)

    p = sub.add_parser('polygon', parents=[common], help='vertex indices of the 2^n-gon')
    p.add_argument('--n', type=int, default=None)
    p.add_argument('--jitter', action='store_true', default=None)
    p.add_argument('--seed', type=int, default=None, help='random seed for --jitter')

    p = sub.add_parser('cascade', parents=[common], help='superstable period-doubling table and patterns')
    p.add_argument('--max-n', type=int, default=None)
    p.add_argument('--tol', type=float, default=None)
    p.add_argument('--transient', type=int, default=None)

    p = sub.add_parser('verify', parents=[common], help='cross-oracle verification suite')
    p.add_argument('--max-n', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--concurrent', action='store_true', default=None)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """flags > config file > defaults"""
    merged = {'format': 'csv'}
    merged.update(SUBCOMMAND_DEFAULTS[args.subcommand])
    allowed = set(merged) | {'output'}

    if args.config:
        from_file = load_config_file(args.config)
        unknown = sorted(set(from_file) - allowed)
        if unknown:
            raise RulerLabUsageError(f'Config keys not valid for {args.subcommand}: {", ".join(unknown)}')
        merged.update(from_file)

    for key in allowed:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value

    config = RunConfig(subcommand=args.subcommand, **merged)
    _apply_env_cap(config)
    return config


def _apply_env_cap(config: RunConfig):
    raw = os.environ.get(MAX_N_ENV_VAR)
    if not raw:
        return
    try:
        cap = int(raw)
    except ValueError:
        raise RulerLabUsageError(f'{MAX_N_ENV_VAR}={raw!r} is not an integer')
    for name in CAPPED_FIELDS:
        value = getattr(config, name)
        if value is not None and value > cap:
            raise RulerLabUsageError(f'{name}={value} exceeds {MAX_N_ENV_VAR}={cap}')


def _provenance(config: RunConfig) -> Dict[str, Any]:
    return {'package': 'rulerlab', 'version': __version__, 'config': config.echo()}


def ruler_report(config: RunConfig) -> Report:
    block = ruler_core.ruler_block(config.n)
    rows = [{'position': k, 'term': t} for k, t in enumerate(block, start=1)]
    stats = ruler_core.block_stats(config.n)
    return Report(
        title      = 'ruler',
        columns    = ['position', 'term'],
        rows       = rows,
        provenance = _provenance(config),
        extras     = {'length': stats.length, 'term_sum': stats.term_sum, 'ratio': stats.ratio},
    )


def automaton_report(config: RunConfig) -> Report:
    partition = automaton.run(config.steps, seed=config.position, jitter=config.jitter, rng_seed=config.seed)
    rows = [{'position': p.position, 'birth_step': p.birth_step, 'age': p.age} for p in partition.points]
    return Report('automaton', ['position', 'birth_step', 'age'], rows, provenance=_provenance(config))


def demography_report(config: RunConfig) -> Report:
    if config.lifespan is None:
        census = demography.census(config.n)
    else:
        census = demography.census_with_death(config.n, lifespan=config.lifespan)
    proportions = census.proportions()
    rows = [
        {'age': age, 'count': count, 'proportion': float(proportions[age])}
        for age, count in census.counts.items()
    ]
    return Report(
        title      = 'demography',
        columns    = ['age', 'count', 'proportion'],
        rows       = rows,
        provenance = _provenance(config),
        extras     = {'total': census.total},
    )


def cantor_report(config: RunConfig) -> Report:
    level = cantor.cantor_level(config.n)
    rows = [
        {'lo': str(iv.lo), 'hi': str(iv.hi), 'birth': iv.birth_step, 'index': iv.index}
        for iv in level.intervals
    ]
    return Report(
        title      = 'cantor',
        columns    = ['lo', 'hi', 'birth', 'index'],
        rows       = rows,
        provenance = _provenance(config),
        extras     = {'removed_length': str(cantor.removed_length(config.n))},
    )


def polygon_report(config: RunConfig) -> Report:
    if config.jitter:
        vertices = polygon.jittered_generation(config.n, seed=config.seed)
        rows = [{'k': k, 'fraction': turn, 'index': index} for k, (turn, index) in enumerate(vertices, start=1)]
    else:
        g = polygon.generation(config.n)
        indices = polygon.vertex_index_sequence(g)
        rows = [{'k': v.k, 'fraction': v.fraction, 'index': i} for v, i in zip(g.vertices, indices)]
    return Report('polygon', ['k', 'fraction', 'index'], rows, provenance=_provenance(config))


def cascade_report(config: RunConfig) -> Report:
    values = hv_dynamics.superstable_series(config.max_n, tol=config.tol)
    deltas = [None, None] + hv_dynamics.feigenbaum_deltas(values)
    rows = [
        {'n': n, 'period': 2**n, 'r': r, 'delta': deltas[n]}
        for n, r in enumerate(values)
    ]

    patterns = []
    for n in range(1, config.max_n + 1):
        cmp = hv_dynamics.compare_orbit_pattern(n, transient=config.transient, r=values[n])
        patterns.append({
            'n':                     n,
            'period':                cmp.period,
            'measured':              list(cmp.measured),
            'from_maximum':          list(cmp.from_maximum),
            'ruler_with_closing':    list(cmp.ruler_with_closing),
            'recurrence':            list(cmp.recurrence),
            'matches_index_reading': cmp.matches_index_reading,
            'matches_recurrence':    cmp.matches_recurrence,
            'multiset_matches':      cmp.multiset_matches,
        })

    figure_n = min(config.max_n, FIGURE_ORBIT_N)
    orbit = hv_dynamics.stationary_orbit(values[figure_n], max_period=2**figure_n, transient=config.transient)
    extras = {
        'patterns': patterns,
        'orbit':    {'n': figure_n, 'period': orbit.period, 'r': orbit.r, 'points': list(orbit.points)},
    }
    if len(values) >= 4:
        extras['accumulation'] = hv_dynamics.feigenbaum_accumulation(values)
    return Report('cascade', ['n', 'period', 'r', 'delta'], rows, provenance=_provenance(config), extras=extras)


def verify_report(config: RunConfig) -> Report:
    if config.concurrent:
        verdicts = asyncio.run(async_verify(config.max_n, config.seed))
    else:
        verdicts = verify(config.max_n, config.seed)
    return verdict_report(verdicts, _provenance(config))


REPORTS = {
    'ruler':      ruler_report,
    'automaton':  automaton_report,
    'demography': demography_report,
    'cantor':     cantor_report,
    'polygon':    polygon_report,
    'cascade':    cascade_report,
    'verify':     verify_report,
}

EMITTERS = {
    'csv':  emit_csv,
    'json': emit_json,
    'svg':  emit_svg,
}


def _configure_logging(verbosity: Optional[int]):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity or 0, logging.DEBUG)
    logging.basicConfig(stream=sys.stderr, level=level, format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger(__package__).setLevel(level)


def _write(payload: bytes, output: Optional[str], stdout: BinaryIO):
    if output is None:
        stdout.write(payload)
        stdout.flush()
        return
    with open(output, 'wb') as f:
        f.write(payload)
    _LOGGER.info(f'Wrote {len(payload)} bytes to {output}')


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[BinaryIO] = None) -> int:
    """Exit status: 0 success, 1 failed verdicts or run error, 2 usage or domain error"""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout if stdout is not None else sys.stdout.buffer
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    _configure_logging(args.verbose)
    try:
        config = resolve_config(args)
        _LOGGER.info(f'Running {config.subcommand} with {config.echo()}')
        report = REPORTS[config.subcommand](config)
        payload = EMITTERS[config.format](report)
        _write(payload, config.output, stdout)
    except (RulerLabUsageError, RulerDomainError) as e:
        _LOGGER.error(str(e))
        return 2
    except RulerLabError as e:
        _LOGGER.error(f'{type(e).__name__}: {e}')
        return 1
    except OSError as e:
        _LOGGER.error(f'Cannot write output: {e}')
        return 1

    if not report.passed:
        failures = [f'{v.check}: {v.identity}' for v in report.failures]
        _LOGGER.error(f'{len(failures)} verdict(s) failed: {"; ".join(failures)}')
        return 1
    return 0


def main():
    sys.exit(run())
