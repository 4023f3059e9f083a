import pytest
from fractions import Fraction
from src.rulerlab.demography import (
    census,
    census_from_automaton,
    census_with_death,
    descendant_census,
    hanoi_moves,
    newborns,
    population_duplication,
    population_linear,
    population_with_death,
)
from src.rulerlab.exc import RulerDomainError


class TestPopulations:
    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (5, 31)])
    def test_linear(self, n, expected):
        assert population_linear(n) == expected

    @pytest.mark.parametrize("n,expected", [(2, 3), (3, 7), (10, 1023)])
    def test_duplication(self, n, expected):
        assert population_duplication(n) == expected

    def test_duplication_counts_everyone_alive(self):
        # N(n+2) = 2 (N(n+1) - N(n)) + N(n+1), i.e. 3 N(n+1) - 2 N(n)
        values = [population_duplication(n) for n in range(1, 12)]
        assert values[:4] == [1, 3, 7, 15]
        assert all(c == 3 * b - 2 * a for a, b, c in zip(values, values[1:], values[2:]))

    @pytest.mark.parametrize("n,expected", [(1, 1), (3, 7), (8, 255)])
    def test_hanoi(self, n, expected):
        assert hanoi_moves(n) == expected

    def test_all_recurrences_agree_to_the_cap(self):
        for n in range(1, 63):
            assert population_linear(n) == population_duplication(n) == hanoi_moves(n) == 2**n - 1

    @pytest.mark.parametrize("fn", [population_linear, population_duplication, hanoi_moves])
    @pytest.mark.parametrize("bad", [0, 63])
    def test_caps(self, fn, bad):
        with pytest.raises(RulerDomainError):
            fn(bad)

    @pytest.mark.parametrize("n,expected", [(1, 2), (4, 16), (10, 1024)])
    def test_newborns(self, n, expected):
        assert newborns(n) == expected

    def test_with_death(self):
        assert [population_with_death(n) for n in range(1, 7)] == [1, 3, 7, 14, 28, 56]


class TestCensus:
    def test_small(self):
        assert census(1).counts == {1: 1}
        assert census(3).counts == {1: 4, 2: 2, 3: 1}
        assert census(3).total == 7

    def test_proportions(self):
        c = census(3)
        assert c.proportions() == {1: Fraction(1, 2), 2: Fraction(1, 4), 3: Fraction(1, 8)}
        assert census(20, cross_check=False).proportions()[2] == Fraction(1, 4)

    def test_matches_automaton(self):
        for n in range(1, 12):
            assert census_from_automaton(n).counts == census(n, cross_check=False).counts

    def test_cap(self):
        with pytest.raises(RulerDomainError):
            census(25)

    def test_count_of_missing_age(self):
        assert census(4).count(9) == 0


class TestMortality:
    @pytest.mark.parametrize("n,total", [(1, 1), (2, 3), (3, 7), (4, 14), (5, 28), (6, 56)])
    def test_totals(self, n, total):
        assert census_with_death(n).total == total

    def test_ages_are_bounded(self):
        c = census_with_death(5, lifespan=3)
        assert c.ages <= {1, 2, 3}
        assert c.counts == {1: 16, 2: 8, 3: 4}

    def test_doubling_after_step_three(self):
        for n in range(4, 30):
            assert census_with_death(n).total == 2 * census_with_death(n - 1).total

    def test_long_lifespan_is_immortal(self):
        assert census_with_death(8, lifespan=8).counts == census(8, cross_check=False).counts

    def test_lifespan_one(self):
        assert census_with_death(4, lifespan=1).counts == {1: 8}

    def test_proportions_use_head_count(self):
        assert sum(census_with_death(6).proportions().values()) == 1

    def test_bad_lifespan(self):
        with pytest.raises(RulerDomainError):
            census_with_death(4, lifespan=0)


class TestLineages:
    @pytest.mark.parametrize("n,birth_step", [(6, 1), (6, 3), (8, 5), (7, 7)])
    def test_lineage_is_a_shorter_run(self, n, birth_step):
        lineage = descendant_census(n, birth_step)
        assert lineage.counts == census(n - birth_step + 1, cross_check=False).counts

    def test_rightmost_newborn(self):
        lineage = descendant_census(7, 3, which=3)
        assert lineage.counts == {1: 16, 2: 8, 3: 4, 4: 2, 5: 1}

    def test_which_out_of_range(self):
        with pytest.raises(RulerDomainError):
            descendant_census(6, 3, which=4)
