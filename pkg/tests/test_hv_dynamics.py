import pytest
import numpy as np
from math import sqrt
from src.rulerlab.exc import NumericError, PeriodDetectionError, RulerDomainError, StabilizationError
from src.rulerlab.hv_dynamics import (
    LogisticParams,
    Orbit,
    brute_force_visibility,
    compare_orbit_pattern,
    feigenbaum_accumulation,
    feigenbaum_deltas,
    forward_degrees,
    forward_edges,
    forward_visibility,
    iterate,
    orbit_visibility,
    pattern_recurrence,
    pattern_report,
    stationary_orbit,
    superstable_r,
    superstable_series,
)
from src.rulerlab.ruler_core import ruler_block


@pytest.fixture(scope="module")
def cascade():
    return superstable_series(7)


class TestLogistic:
    def test_params_domain(self):
        with pytest.raises(RulerDomainError):
            LogisticParams(0.5)
        with pytest.raises(RulerDomainError):
            LogisticParams(3.0, x0=0.0)

    def test_iterate(self):
        assert iterate(LogisticParams(2.0), 3).tolist() == [0.5, 0.5, 0.5]
        assert iterate(LogisticParams(4.0, x0=0.25), 2).tolist() == [0.25, 0.75]

    def test_iterate_examples(self):
        assert iterate(LogisticParams(4.0), 3).tolist() == [0.5, 1.0, 0.0]
        tail = iterate(LogisticParams(3.2, x0=0.3), 10_000)[-4:]
        assert tail[0] == pytest.approx(tail[2], abs=1e-9)
        assert abs(tail[0] - tail[1]) > 0.1

    def test_iterate_steps(self):
        with pytest.raises(RulerDomainError):
            iterate(LogisticParams(2.0), 0)


class TestSuperstable:
    def test_period_one_is_exact(self):
        assert superstable_r(0) == 2.0

    def test_period_two(self):
        assert abs(superstable_r(1) - (1 + sqrt(5))) < 1e-10

    def test_known_values(self, cascade):
        expected = [2.0, 3.2360680, 3.4985617, 3.5546408, 3.5666673, 3.5692435, 3.5697952, 3.5699134]
        assert cascade == pytest.approx(expected, abs=1e-6)

    def test_strictly_increasing(self, cascade):
        assert all(b > a for a, b in zip(cascade, cascade[1:]))

    def test_orbits_contain_the_critical_point(self, cascade):
        for n, r in enumerate(cascade):
            x = 0.5
            for _ in range(2**n):
                x = r * x * (1 - x)
            assert abs(x - 0.5) < 1e-6

    def test_accumulation(self, cascade):
        assert 3.5699 < feigenbaum_accumulation(cascade) < 3.57
        assert all(r < feigenbaum_accumulation(cascade) for r in cascade)
        assert 3.5699 < feigenbaum_accumulation(cascade[:6]) < 3.57
        assert 3.568 < cascade[5] < 3.5699

    def test_deltas_settle(self, cascade):
        deltas = feigenbaum_deltas(cascade)[2:]
        assert len(deltas) == 4
        centre = float(np.mean(deltas))
        assert all(abs(d - centre) / centre < 0.05 for d in deltas)
        assert deltas[-1] == pytest.approx(4.669, abs=0.02)

    def test_geometric_extrapolation(self):
        assert feigenbaum_deltas([0.0, 1.0, 1.5, 1.75]) == [2.0, 2.0]
        assert feigenbaum_accumulation([0.0, 1.0, 1.5, 1.75]) == 2.0

    def test_accumulation_needs_four_increasing(self):
        with pytest.raises(RulerDomainError):
            feigenbaum_accumulation([2.0, 3.2, 3.4])
        with pytest.raises(RulerDomainError):
            feigenbaum_accumulation([2.0, 3.2, 3.1, 3.5])

    @pytest.mark.parametrize("values", [[0.0, 1.0, 2.0, 3.0], [0.0, 1.0, 1.5, 2.5]])
    def test_accumulation_needs_shrinking_gaps(self, values):
        with pytest.raises(RulerDomainError):
            feigenbaum_accumulation(values)

    def test_cap(self):
        with pytest.raises(RulerDomainError):
            superstable_r(8)

    def test_bracket_failure_carries_diagnostics(self):
        with pytest.raises(NumericError) as excinfo:
            superstable_r(1, previous=3.44)
        assert excinfo.value.diagnostics["n"] == 1


class TestStationaryOrbit:
    @pytest.mark.parametrize("r,period", [(2.8, 1), (3.2, 2), (3.5, 4), (3.83, 3)])
    def test_periods(self, r, period):
        assert stationary_orbit(r).period == period

    def test_superstable_orbits(self, cascade):
        assert stationary_orbit(2.0).period == 1
        for n in range(1, 7):
            orbit = stationary_orbit(cascade[n], max_period=2**n)
            assert orbit.period == 2**n
            assert min(abs(x - 0.5) for x in orbit.points) < 1e-6

    def test_starts_nearest_critical_point(self, cascade):
        orbit = stationary_orbit(cascade[2], max_period=4)
        assert orbit.period == 4
        assert abs(orbit.points[0] - 0.5) < 1e-6

    def test_chaos_has_no_period(self):
        with pytest.raises(PeriodDetectionError) as excinfo:
            stationary_orbit(3.9, max_period=64)
        assert excinfo.value.diagnostics["max_period"] == 64


class TestVisibility:
    def test_forward_degrees(self):
        degrees, closed = forward_degrees([3.0, 1.0, 2.0, 4.0])
        assert degrees.tolist() == [3, 1, 1, 0]
        assert closed.tolist() == [True, True, True, False]

    def test_ties_block(self):
        degrees, _ = forward_degrees([2.0, 1.0, 2.0, 2.0])
        assert degrees.tolist() == [2, 1, 1, 0]

    def test_edges(self):
        assert sorted(forward_edges([3.0, 1.0, 2.0, 4.0])) == [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]

    def test_edges_match_degrees(self, rng):
        series = rng.random(300)
        degrees, _ = forward_degrees(series)
        counts = np.bincount([i for i, _ in forward_edges(series)], minlength=len(series))
        assert counts.tolist() == degrees.tolist()

    def test_matches_brute_force(self, rng):
        for _ in range(200):
            size = int(rng.integers(1, 501))
            if rng.random() < 0.5:
                series = rng.random(size)
            else:
                series = rng.integers(0, 5, size=size).astype(float)
            assert np.array_equal(forward_degrees(series)[0], brute_force_visibility(series))

    def test_monotone_transform_invariance(self, rng):
        series = rng.normal(size=400)
        degrees, _ = forward_degrees(series)
        for transformed in (np.exp(series), 3 * series + 7, np.arctan(series)):
            assert np.array_equal(forward_degrees(transformed)[0], degrees)

    def test_open_window_fails(self):
        with pytest.raises(StabilizationError):
            forward_visibility([1.0, 2.0, 3.0], range(0, 3))

    def test_window_bounds(self):
        with pytest.raises(RulerDomainError):
            forward_visibility([3.0, 1.0, 2.0], range(2, 5))

    def test_constant_orbit(self):
        pattern = orbit_visibility(Orbit(r=2.0, period=1, points=(0.5,)))
        assert pattern.degrees == (1,)


class TestPatterns:
    def test_recurrence(self):
        assert pattern_recurrence(1).degrees == (4, 2)
        assert pattern_recurrence(2).degrees == (6, 2, 4, 2)
        assert pattern_recurrence(3).degrees == (8, 2, 4, 2, 6, 2, 4, 2)
        with pytest.raises(RulerDomainError):
            pattern_recurrence(0)

    @pytest.mark.parametrize("n,measured", [
        (1, (1, 2)),
        (2, (1, 3, 1, 2)),
        (3, (1, 4, 1, 2, 1, 3, 1, 2)),
    ])
    def test_small_periods(self, cascade, n, measured):
        cmp = compare_orbit_pattern(n, r=cascade[n])
        assert cmp.period == 2**n
        assert cmp.measured == measured
        assert cmp.from_maximum == (n + 1,) + ruler_block(n)
        assert cmp.matches_index_reading
        assert cmp.matches_recurrence
        assert cmp.multiset_matches

    def test_fixed_point(self):
        cmp = compare_orbit_pattern(0)
        assert cmp.measured == (1,)
        assert cmp.recurrence is None
        assert cmp.matches_recurrence is None

    def test_report_is_generated(self):
        report = pattern_report(6)
        assert [c.period for c in report] == [2, 4, 8, 16, 32, 64]
        assert all(len(c.measured) == c.period for c in report)
        assert all(len(c.recurrence) == c.period for c in report)
