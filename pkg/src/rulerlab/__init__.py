"""Ruler (Gros) sequence: five constructions, their cross-checks and a period-doubling cascade"""

__version__ = '1.0.0'

from .ruler_core import (
    IndexSequence,
    block_stats,
    check_squarefree,
    half_block,
    index_sum,
    iter_ruler,
    ruler_block,
    ruler_stream,
    ruler_term,
    thomae_exponent_sequence,
)

from .exc import (
    NumericError,
    OracleMismatchError,
    PeriodDetectionError,
    PlacementError,
    RulerDomainError,
    RulerLabError,
    RulerLabUsageError,
    StabilizationError,
)

from .verify import (
    async_verify,
    verify,
)
