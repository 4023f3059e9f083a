"""
Vertex indices of inscribed 2^n-gons built by side duplication

Generation m is the regular 2^m-gon whose southernmost vertex is fixed; generation
m + 1 bisects every arc.  A vertex's index counts the generations m <= n whose polygon
contains it.  Vertices are exact fractions k / 2^n of the full turn, measured
clockwise from the southernmost vertex; float coordinates exist only for drawing.
"""

from dataclasses import dataclass
from logging     import getLogger
from math        import cos, pi, sin
from typing      import List, Optional, Tuple

import numpy as np

from .const import JITTER_HIGH, JITTER_LOW, POLYGON_MAX_N
from .exc import OracleMismatchError, PlacementError, RulerDomainError
from .ruler_core import IndexSequence, ruler_term

_LOGGER = getLogger(__name__)


@dataclass(frozen=True)
class VertexFraction:
    k: int
    n: int

    @property
    def fraction(self) -> str:
        return f'{self.k}/2^{self.n}'

    @property
    def index(self) -> int:
        """v2(k) + 1, and n for the southernmost vertex"""
        if self.k == 0:
            return self.n
        return min(ruler_term(self.k), self.n)

    def member_of(self, m: int) -> bool:
        """Is this vertex a vertex of the 2^m-gon?"""
        return (self.k << m) % (1 << self.n) == 0

    @property
    def membership_index(self) -> int:
        return sum(1 for m in range(1, self.n + 1) if self.member_of(m))


@dataclass(frozen=True)
class PolygonGeneration:
    """Vertices clockwise from the one left of south, south excluded"""
    n:        int
    vertices: Tuple[VertexFraction, ...]

    def __len__(self) -> int:
        return len(self.vertices)


def _check_n(n: int):
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= POLYGON_MAX_N:
        raise RulerDomainError(f'n={n} outside [1, {POLYGON_MAX_N}]')


def generation(n: int) -> PolygonGeneration:
    _check_n(n)
    return PolygonGeneration(n=n, vertices=tuple(VertexFraction(k, n) for k in range(1, 2**n)))


def vertex_index_sequence(g: PolygonGeneration) -> IndexSequence:
    """Valuation indices, confirmed against exact membership in every coarser polygon"""
    by_valuation = IndexSequence(v.index for v in g.vertices)
    by_membership = IndexSequence(v.membership_index for v in g.vertices)
    if by_valuation != by_membership:
        raise OracleMismatchError(f'Vertex indices disagree for the 2^{g.n}-gon')
    return by_valuation


def half_vertex_index_sequence(n: int) -> IndexSequence:
    """Vertices on the western half, up to and including the northernmost"""
    g = generation(n)
    return IndexSequence(v.index for v in g.vertices[:2**(n - 1)])


def turn_point(turn: float) -> Tuple[float, float]:
    """Unit-circle (x, y) of a turn fraction; clockwise from south means heading west first"""
    theta = 2 * pi * turn
    return -sin(theta), -cos(theta)


def vertex_coordinates(g: PolygonGeneration, include_south: bool = False) -> List[Tuple[float, float]]:
    ks = ([0] if include_south else []) + [v.k for v in g.vertices]
    return [turn_point(k / 2**g.n) for k in ks]


def jittered_generation(n: int, seed: Optional[int] = None) -> List[Tuple[float, int]]:
    """
        Irregular duplication: every arc is split at a random interior fraction.
        Returns (turn fraction, index) clockwise from south, south excluded.
    """
    _check_n(n)
    rng = np.random.default_rng(seed)
    angles = np.array([0.0, 0.5])
    births = np.array([1, 1], dtype=np.int64)
    for gen in range(2, n + 1):
        ends = np.concatenate((angles[1:], [1.0]))
        split = angles + rng.uniform(JITTER_LOW, JITTER_HIGH, size=len(angles)) * (ends - angles)
        merged_angles = np.empty(2 * len(angles))
        merged_births = np.empty(2 * len(angles), dtype=np.int64)
        merged_angles[0::2], merged_angles[1::2] = angles, split
        merged_births[0::2], merged_births[1::2] = births, gen
        angles, births = merged_angles, merged_births

    if not np.all(np.diff(angles) > 0):
        raise PlacementError(f'Jittered vertices crossed at generation {n}')
    _LOGGER.debug(f'Jittered 2^{n}-gon built with seed {seed}')
    return [(float(a), int(n - b + 1)) for a, b in zip(angles[1:], births[1:])]
