# -*- coding: utf-8 -*-
import pytest

from algebra import builtin_algebra
from errors import LiftFailed, UnknownSuite
from linalg import Field
from strings import is_split
from verify_suites import (
    RANDOM_SEED, SUITES, PropertyTally, SuiteConfig, _cyclic_extensions, _obstructions_degree0,
    _obstructions_degree1, _small_modules, _Suite, verify_suite,
)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_quick_suites_pass(name):
    report = verify_suite(name, SuiteConfig.quick())
    failures = [p.to_json() for p in report.properties if p.failed]
    assert report.ok, failures
    assert report.to_json()["passed"] > 0


def test_suites_are_deterministic_for_a_seed():
    config = SuiteConfig.quick(seed=5)
    assert verify_suite("spectral", config).to_json() == verify_suite("spectral", config).to_json()


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        verify_suite("everything", SuiteConfig.quick())


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("HOMCAT_SEED", "7")
    assert SuiteConfig.from_env().seed == 7
    monkeypatch.setenv("HOMCAT_SEED", "seven")
    assert SuiteConfig.from_env().seed == RANDOM_SEED
    monkeypatch.delenv("HOMCAT_SEED")
    assert SuiteConfig.from_env(seed=3).seed == 3


def test_errors_count_as_failures():
    tally = PropertyTally("demo", "raises")

    def boom():
        raise LiftFailed("no lift")

    assert tally.check(boom, "case 1") is False
    assert tally.check(lambda: True) is True
    assert (tally.passed, tally.failed) == (1, 1)
    assert tally.examples == ["case 1 [LIFT_FAILED] no lift"]


def test_report_frame_columns():
    frame = verify_suite("d0", SuiteConfig.quick()).to_frame()
    assert list(frame.columns) == ["suite", "property", "passed", "failed"]
    assert (frame["failed"] == 0).all()


def test_obstructions_agree_with_enumerated_module_maps():
    A = builtin_algebra("dual_numbers", Field(2))
    modules = [M for M in _small_modules(A) if M.dim <= 2]
    extensions = [u for M in modules for u in _cyclic_extensions(M)]
    assert {is_split(u) for u in extensions} == {True, False}
    suite = _Suite("les")
    for j, u in enumerate(extensions):
        _obstructions_degree0(suite, u, modules, f"extension {j}")
        _obstructions_degree1(suite, u, modules, f"extension {j}")
    tallies = {t.name: t for t in suite.tallies()}
    assert set(tallies) == {"obstruction_extend_exhaustive", "obstruction_lift_exhaustive",
                            "obstruction_is_connecting_image"}
    for t in tallies.values():
        assert t.passed > 0
        assert t.failed == 0, t.examples
