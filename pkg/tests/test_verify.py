import pytest
from importlib import import_module
from src.rulerlab.exc import OracleMismatchError, RulerDomainError
from src.rulerlab.verify import (
    CHECKS,
    async_verify,
    check_census,
    check_dynamics,
    check_equivalence,
    check_golden,
    check_self_containing,
    check_sums,
    verify,
)

# the package re-exports verify(), which hides the submodule attribute
verify_module = import_module("src.rulerlab.verify")


def test_trivial_suite_passes():
    verdicts = verify(max_n=1, seed=7)
    assert verdicts
    assert all(v.passed for v in verdicts), [v for v in verdicts if not v.passed]


def test_every_check_reports():
    checks = {v.check for v in verify(max_n=3, seed=7)}
    assert {name for name, _ in CHECKS} <= checks


def test_golden_values():
    verdicts = check_golden(1, 7)
    assert all(v.passed for v in verdicts)
    assert any("19/27" in v.identity for v in verdicts)


def test_equivalence_covers_each_order():
    verdicts = check_equivalence(6, 7)
    assert len(verdicts) == 6
    assert all(v.passed for v in verdicts)


def test_default_suite_passes():
    verdicts = verify()
    assert all(v.passed for v in verdicts), [v for v in verdicts if not v.passed]


def test_deterministic():
    assert verify(max_n=4, seed=3) == verify(max_n=4, seed=3)


def test_raising_check_becomes_failed_verdict(monkeypatch):
    def broken(max_n, seed):
        raise OracleMismatchError("constructions disagree")

    monkeypatch.setattr(verify_module, "CHECKS", (("broken", broken),) + CHECKS[:1])
    verdicts = verify(max_n=1)
    assert verdicts[0].check == "broken"
    assert not verdicts[0].passed
    assert "OracleMismatchError" in verdicts[0].detail
    assert all(v.passed for v in verdicts[1:])


@pytest.mark.parametrize("max_n,seed", [(0, 7), (True, 7), (3, "7")])
def test_arguments(max_n, seed):
    with pytest.raises(RulerDomainError):
        verify(max_n=max_n, seed=seed)


@pytest.mark.asyncio
async def test_async_matches_sync():
    assert await async_verify(max_n=5, seed=11) == verify(max_n=5, seed=11)


@pytest.mark.asyncio
async def test_async_arguments():
    with pytest.raises(RulerDomainError):
        await async_verify(max_n=0)


def test_arithmetic_error_becomes_failed_verdict(monkeypatch):
    def dividing(max_n, seed):
        return [1 / 0]

    monkeypatch.setattr(verify_module, "CHECKS", (("dividing", dividing),))
    verdicts = verify(max_n=1)
    assert len(verdicts) == 1
    assert not verdicts[0].passed
    assert "ZeroDivisionError" in verdicts[0].detail


def test_population_recurrences_all_pass():
    verdicts = [v for v in check_golden(1, 7) if "recurrence" in v.identity]
    assert len(verdicts) == 3
    assert all(v.passed for v in verdicts), verdicts


def test_mortal_doubling_reported():
    verdicts = check_census(2, 7)
    mortal = [v for v in verdicts if "N(n+1) = 2 N(n)" in v.identity]
    assert len(mortal) == 1
    assert mortal[0].passed
    assert "n <= 24" in mortal[0].identity


def test_sums_checked_directly():
    verdicts = check_sums(6, 7)
    assert len(verdicts) == 6
    assert all(v.passed for v in verdicts)


def test_first_occurrence_deletion_is_reported():
    verdicts = check_self_containing(4, 7)
    assert len(verdicts) == 2
    diagnostic = verdicts[1]
    assert diagnostic.passed
    assert diagnostic.detail.startswith("block 4 leaves 1, 1, 2, 1, 1, 2, 1, 3")


def test_orbits_pass_through_the_critical_point():
    verdicts = [v for v in check_dynamics(1, 7) if "within 1e-6 of 1/2" in v.identity]
    assert len(verdicts) == 8
    assert all(v.passed for v in verdicts), [v.detail for v in verdicts if not v.passed]
