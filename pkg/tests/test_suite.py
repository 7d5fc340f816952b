import pytest

from qtetra.cartan import ValuedQuiver
from qtetra.serialize import load_example
from qtetra.suite import Outcome, counting_targets, run_one, run_suite, suite_counting


@pytest.mark.parametrize("name", ["a2", "a3", "b2", "g2", "kronecker"])
def test_counting_independent_for_quadratic_counts(name):
    # three sample fields pin down counts of degree <= 2
    ex = load_example(name)
    quiver = ValuedQuiver.from_json(ex["quiver"])
    out = Outcome()
    suite_counting(ex, quiver, None, out, max_degree=2)
    assert out.checks > 0 and not out.failures


def test_counting_targets():
    ex = load_example("g2")
    quiver = ValuedQuiver.from_json(ex["quiver"])
    small = counting_targets(ex, quiver, 2)
    assert "M(3,2)" not in small and "M(1,0)" in small
    assert counting_targets(ex, quiver) == ex["rigid"]


def test_run_suite_parallel_matches_serial():
    serial = run_suite(["serre", "klr-example"], ["a2", "b2"])
    parallel = run_suite(["serre", "klr-example"], ["a2", "b2"], jobs=2)
    strip = lambda rep: [{k: v for k, v in r.items() if k != "seconds"} for r in rep["results"]]
    assert serial["status"] == parallel["status"] == "pass"
    assert strip(serial) == strip(parallel)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_one("bogus", "a2")
    with pytest.raises(ValueError):
        run_suite(["bogus"])
