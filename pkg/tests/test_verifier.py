import json

import numpy as np
import pytest

from traceclass import schatten, verifier
from traceclass.errors import InputError, NTooSmallError, UnknownPropertyError
from traceclass.verifier import Outcome, Property, SuiteConfig, run_suite


def test_single_property_single_trial():
    report = run_suite(SuiteConfig(dims=[2], trials=1, seed=7, properties=["norm_chain"]))
    (rec,) = report.records
    assert (rec.property_id, rec.trials_run, rec.failures) == ("norm_chain", 1, 0)
    assert rec.paper_anchor == "Thm 5.2(c); Lemma 5.1(d)"
    assert rec.max_violation <= 0
    assert report.passed


def test_scalars_pass_everything():
    report = run_suite(SuiteConfig(dims=[1], trials=3))
    assert report.passed
    # shift needs n >= 2 and is skipped for scalars
    assert report.record("shift").trials_run == 0
    assert report.record("norm_chain").trials_run == 3


def test_report_is_deterministic():
    cfg = SuiteConfig(dims=[2, 3], trials=4, seed=123)
    a = run_suite(cfg).to_json(include_timing=False)
    b = run_suite(cfg).to_json(include_timing=False)
    assert a == b


def test_subsets_reproduce_draws():
    full = run_suite(SuiteConfig(dims=[3], trials=5, seed=9))
    one = run_suite(SuiteConfig(dims=[3], trials=5, seed=9, properties=["duality"]))
    assert full.record("duality").max_violation == one.record("duality").max_violation


def test_threads_do_not_change_the_report():
    cfg = dict(dims=[2, 4], trials=6, seed=5, properties=["ideal_bounds", "basis_independence"])
    serial = run_suite(SuiteConfig(threads=1, **cfg)).to_json(include_timing=False)
    parallel = run_suite(SuiteConfig(threads=4, **cfg)).to_json(include_timing=False)
    assert serial == parallel


def test_seed_changes_draws():
    a = run_suite(SuiteConfig(dims=[3], trials=3, seed=1, properties=["norm_chain"]))
    b = run_suite(SuiteConfig(dims=[3], trials=3, seed=2, properties=["norm_chain"]))
    assert a.record("norm_chain").max_violation != b.record("norm_chain").max_violation


def test_unknown_property():
    with pytest.raises(UnknownPropertyError, match="norm_chain"):
        run_suite(SuiteConfig(dims=[2], trials=1, properties=["bogus"]))


@pytest.mark.parametrize(
    "kwargs",
    [dict(dims=[]), dict(dims=[0]), dict(trials=0), dict(tol_algebraic=0), dict(tol_stochastic=-1), dict(seed=-1)],
)
def test_config_validation(kwargs):
    with pytest.raises(InputError):
        SuiteConfig(**kwargs)


def test_registry_covers_every_in_scope_anchor():
    assert verifier.missing_anchors() == []


def test_missing_anchor_detected():
    reduced = {k: v for k, v in verifier.REGISTRY.items() if k != "nuclear_equals_trace"}
    assert "Thm 6.1" in verifier.missing_anchors(reduced)


def _corrupt(rng, n):
    # deliberately false: ||T||_1 <= ||T||
    t = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return Outcome().keep(T=t).le("||T||_1 <= ||T||", schatten.trace_norm(t), np.linalg.norm(t, 2))


def test_mutation_is_caught():
    registry = dict(verifier.REGISTRY)
    registry["mutant"] = Property("mutant", "mutation self-check", _corrupt)
    report = run_suite(SuiteConfig(dims=[2, 4, 8], trials=20, properties=["norm_chain", "mutant"]), registry=registry)
    rec = report.record("mutant")
    assert rec.failures > 0 and not report.passed
    assert rec.max_violation > rec.tolerance
    example = rec.failure_examples[0]
    assert example["assertion"] == "||T||_1 <= ||T||"
    # witness can be replayed
    from traceclass.io import matrix_from_json

    t = matrix_from_json(example["witness"]["T"])
    assert schatten.trace_norm(t) > np.linalg.norm(t, 2)
    assert report.record("norm_chain").passed


def test_errors_are_recorded_as_failures():
    def boom(rng, n):
        raise np.linalg.LinAlgError("synthetic")

    registry = {"boom": Property("boom", "none", boom)}
    report = run_suite(SuiteConfig(dims=[2], trials=2, properties=["boom"]), registry=registry)
    rec = report.record("boom")
    assert rec.failures == 2 and rec.max_violation == float("inf")
    assert "synthetic" in rec.failure_examples[0]["error"]
    assert json.loads(report.to_json())["properties"][0]["max_violation"] == "inf"


def test_failures_iff_violation_above_tolerance():
    report = run_suite(SuiteConfig(dims=[2, 3], trials=5, seed=3))
    for rec in report.records:
        if rec.trials_run:
            assert (rec.failures == 0) == (rec.max_violation <= rec.tolerance)


def test_json_and_csv_schema():
    report = run_suite(SuiteConfig(dims=[2], trials=2, properties=["shift", "density"]))
    doc = json.loads(report.to_json())
    assert set(doc) == {"config", "properties", "passed"}
    assert doc["config"]["dims"] == [2]
    keys = {"property_id", "paper_anchor", "tolerance", "trials_run", "failures", "max_violation",
            "passed", "failure_examples", "elapsed_ms"}
    assert all(set(p) == keys for p in doc["properties"])
    lines = report.to_csv().splitlines()
    assert lines[0] == "property_id,trials,failures,max_violation"
    assert lines[1].startswith("shift,2,0,")


def test_tolerance_factors():
    cfg = SuiteConfig(tol_algebraic=1e-9)
    assert verifier.REGISTRY["adjoint_invariance"].tolerance(cfg) == pytest.approx(1e-10)
    assert verifier.REGISTRY["factorization_norms"].tolerance(cfg) == pytest.approx(1e-8)
    assert verifier.REGISTRY["lidskii"].tolerance(cfg) == pytest.approx(1e-7)
    assert verifier.REGISTRY["duality"].tolerance(cfg) == pytest.approx(1e-8)


class TestShiftReport:
    def test_two(self):
        rec = verifier.shift_report(2)
        assert rec["abs_diag_sum"] == 0 and rec["trace_norm"] == pytest.approx(1) and rec["ratio"] == float("inf")

    def test_sixty_four(self):
        rec = verifier.shift_report(64)
        assert rec["abs_diag_sum"] <= 1e-12
        assert rec["trace_norm"] == pytest.approx(63, abs=1e-9)

    def test_monotone(self):
        norms = [verifier.shift_report(n)["trace_norm"] for n in range(2, 9)]
        assert all(b > a for a, b in zip(norms, norms[1:]))

    def test_too_small(self):
        with pytest.raises(NTooSmallError):
            verifier.shift_report(1)


class TestDensityReport:
    def test_diagonal(self):
        got = verifier.density_report(np.diag([3.0, 2.0, 1.0]))
        assert [k for k, _ in got] == [0, 1, 2, 3]
        np.testing.assert_allclose([r for _, r in got], [6, 3, 1, 0], atol=1e-14)

    def test_rank_one(self, rng):
        x, y = rng.standard_normal(4), rng.standard_normal(4)
        got = verifier.density_report(np.outer(x, y))
        assert all(r <= 1e-12 for k, r in got if k >= 1)

    def test_random(self, rng):
        t = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        s = np.linalg.svd(t, compute_uv=False)
        got = [r for _, r in verifier.density_report(t)]
        np.testing.assert_allclose(got, [s[k:].sum() for k in range(7)], atol=1e-9 * s.sum())
        assert got[-1] <= 1e-9 * s.sum()
