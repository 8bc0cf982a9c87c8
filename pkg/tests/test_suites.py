import json

import pytest

from petrilab.curve import Divisor
from petrilab.riemann_roch import h0, is_special
from petrilab.sampling import (
    curve_for,
    generic_points,
    hyperelliptic_family,
    random_curve,
    rng_for,
    special_effective,
)
from petrilab.fields import QQ, PrimeField
from petrilab.suites import SUITES, SuiteConfig, run_suite, suite_specs


def test_random_curves_are_valid():
    for i in range(10):
        C = random_curve(rng_for("c", i), PrimeField(11), 3)
        assert C.genus == 3
        Q = random_curve(rng_for("q", i), QQ, 2)
        assert len(Q.rational_points()) >= 5


def test_curve_cache_is_reproducible():
    assert curve_for(7, 3, 1) == curve_for(7, 3, 1)


def test_special_effective_samples():
    C = curve_for(13, 4)
    for i in range(30):
        D = special_effective(rng_for("s", i), C, min_r=1)
        assert D.is_effective() and is_special(C, D) and h0(C, D) >= 2


def test_family_shape():
    C = curve_for(23, 5)
    pts = generic_points(C)
    assert len({P.x for P in pts}) == len(pts)
    fam = list(hyperelliptic_family(C))
    assert all(k >= 1 and k + m <= 4 and D.degree == 2 * k + m for k, m, D in fam)
    assert fam[0][2] == Divisor((), 2)


@pytest.mark.parametrize("name", SUITES)
def test_small_suites_pass(name):
    res = run_suite(name, SuiteConfig(seed=3, samples=12))
    assert res.ok, res.failures[:1]
    assert res.cases == len(suite_specs(name, SuiteConfig(seed=3, samples=12)))


def test_suite_output_ignores_job_count():
    a = run_suite("chain", SuiteConfig(seed=1, samples=16))
    b = run_suite("chain", SuiteConfig(seed=1, samples=16, jobs=2))
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)


def test_hopf_suite_records_expected_counterexamples():
    res = run_suite("hopf", SuiteConfig(samples=4))
    notes = [e["note"] for e in res.expected]
    assert "F4/F2: bound violated over non-closed base, witness at k=2" in notes


def test_unknown_suite():
    with pytest.raises(ValueError):
        suite_specs("nope", SuiteConfig())
