import pytest
from math import isclose
from src.rulerlab.exc import RulerDomainError
from src.rulerlab.polygon import (
    VertexFraction,
    generation,
    half_vertex_index_sequence,
    jittered_generation,
    turn_point,
    vertex_coordinates,
    vertex_index_sequence,
)
from src.rulerlab.ruler_core import half_block, ruler_block


class TestVertices:
    def test_northernmost_belongs_to_every_polygon(self):
        north = VertexFraction(8, 4)
        assert north.index == 4
        assert north.membership_index == 4
        assert north.fraction == "8/2^4"

    @pytest.mark.parametrize("k", [1, 3, 5, 13, 15])
    def test_odd_vertices_are_newest(self, k):
        assert VertexFraction(k, 4).index == 1

    def test_south_is_in_every_polygon(self):
        assert VertexFraction(0, 5).index == 5

    def test_membership(self):
        v = VertexFraction(4, 4)
        assert [v.member_of(m) for m in range(1, 5)] == [False, True, True, True]


class TestGeneration:
    def test_sizes(self):
        assert len(generation(1)) == 1
        assert len(generation(4)) == 15

    @pytest.mark.parametrize("n", [1, 3, 4, 12])
    def test_index_sequence(self, n):
        assert vertex_index_sequence(generation(n)) == ruler_block(n)

    def test_half_circle(self):
        for n in range(1, 12):
            assert half_vertex_index_sequence(n) == half_block(n)

    @pytest.mark.parametrize("bad", [0, 21])
    def test_cap(self, bad):
        with pytest.raises(RulerDomainError):
            generation(bad)

    def test_coordinates(self):
        coords = vertex_coordinates(generation(2), include_south=True)
        expected = [(0.0, -1.0), (-1.0, 0.0), (0.0, 1.0), (1.0, 0.0)]
        for (x, y), (ex, ey) in zip(coords, expected):
            assert isclose(x, ex, abs_tol=1e-12)
            assert isclose(y, ey, abs_tol=1e-12)

    def test_turn_point_matches_coordinates(self):
        g = generation(3)
        assert vertex_coordinates(g) == [turn_point(v.k / 8) for v in g.vertices]
        assert turn_point(0.0) == (-0.0, -1.0)


class TestJitter:
    @pytest.mark.parametrize("seed", [0, 1, 7])
    def test_indices_survive_irregular_arcs(self, seed):
        vertices = jittered_generation(8, seed=seed)
        assert tuple(index for _, index in vertices) == ruler_block(8)
        turns = [turn for turn, _ in vertices]
        assert all(0.0 < a < b < 1.0 for a, b in zip(turns, turns[1:]))

    def test_reproducible(self):
        assert jittered_generation(6, seed=3) == jittered_generation(6, seed=3)

    def test_half_turn_kept(self):
        vertices = jittered_generation(5, seed=2)
        assert vertices[2**4 - 1] == (0.5, 5)
