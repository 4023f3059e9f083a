import pytest
from fractions import Fraction
from src.rulerlab.cantor import (
    TernaryRational,
    cantor_level,
    half_index_sequence,
    index_sequence,
    removed_length,
    removed_length_formula,
    width_histogram,
)
from src.rulerlab.exc import RulerDomainError
from src.rulerlab.ruler_core import half_block, ruler_block


class TestTernaryRational:
    def test_reduced(self):
        r = TernaryRational.reduced(9, 3)
        assert (r.numerator, r.exponent) == (1, 1)
        assert r.is_canonical
        assert str(r) == "1/3^1"

    def test_zero(self):
        assert TernaryRational.reduced(0, 5) == TernaryRational(0, 0)

    def test_non_canonical_compares_by_value(self):
        assert TernaryRational(3, 2) == TernaryRational(1, 1)
        assert not TernaryRational(3, 2).is_canonical
        assert hash(TernaryRational(3, 2)) == hash(TernaryRational(1, 1))

    def test_ordering_and_width(self):
        lo, hi = TernaryRational(1, 2), TernaryRational(2, 2)
        assert lo < hi
        assert hi - lo == Fraction(1, 9)

    def test_negative_rejected(self):
        with pytest.raises(RulerDomainError):
            TernaryRational(-1, 2)


class TestLevels:
    def test_first_level(self):
        level = cantor_level(1)
        assert len(level) == 1
        iv = level.intervals[0]
        assert (iv.lo, iv.hi) == (Fraction(1, 3), Fraction(2, 3))
        assert iv.index == 1

    def test_second_level(self):
        level = cantor_level(2)
        assert [(iv.lo.value, iv.hi.value) for iv in level.intervals] == [
            (Fraction(1, 9), Fraction(2, 9)),
            (Fraction(1, 3), Fraction(2, 3)),
            (Fraction(7, 9), Fraction(8, 9)),
        ]
        assert [iv.index for iv in level.intervals] == [1, 2, 1]

    def test_third_level_first_interval(self):
        first = cantor_level(3).intervals[0]
        assert (str(first.lo), str(first.hi)) == ("1/3^3", "2/3^3")
        assert first.width == Fraction(1, 27)

    def test_intervals_are_disjoint_and_ordered(self):
        intervals = cantor_level(8).intervals
        assert all(a.hi < b.lo for a, b in zip(intervals, intervals[1:]))
        assert all(iv.lo.is_canonical and iv.hi.is_canonical for iv in intervals)

    def test_width_matches_birth(self):
        for iv in cantor_level(6).intervals:
            assert iv.width == Fraction(1, 3**iv.birth_step)

    @pytest.mark.parametrize("bad", [0, 21])
    def test_cap(self, bad):
        with pytest.raises(RulerDomainError):
            cantor_level(bad)


class TestIndices:
    def test_examples(self):
        assert index_sequence(cantor_level(1)) == (1,)
        assert index_sequence(cantor_level(3)) == (1, 2, 1, 3, 1, 2, 1)
        assert index_sequence(cantor_level(12)) == ruler_block(12)

    def test_half_sequence(self):
        for n in range(1, 11):
            assert half_index_sequence(n) == half_block(n)

    def test_width_histogram(self):
        assert width_histogram(cantor_level(5)) == {1: 1, 2: 2, 3: 4, 4: 8, 5: 16}


class TestRemovedLength:
    @pytest.mark.parametrize("n,expected", [(1, Fraction(1, 3)), (2, Fraction(5, 9)), (3, Fraction(19, 27))])
    def test_golden(self, n, expected):
        assert removed_length(n) == expected

    def test_complement(self):
        for n in range(1, 21):
            assert 1 - removed_length_formula(n) == Fraction(2, 3)**n

    def test_formula_matches_geometry(self):
        for n in range(1, 11):
            assert removed_length_formula(n) == cantor_level(n).removed_length
