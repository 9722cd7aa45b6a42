import pytest

from flatsr.config import Bounds, DEFAULT_BOUNDS, load_bounds
from flatsr.errors import InputError, ResourceError
from flatsr.subpower import lemma_construction
from flatsr.suites import SUITES, run_suite

# suites with a known failing check, and the check that fails
KNOWN_RED = {
    "s7-sanity": ["every single-cell mutation detected"],
    "lemma-constructions": ["case IV n=2 m=2"],
}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_outcome(name):
    res = run_suite(name)
    failing = [c.id for c in res.checks if not c.passed]
    if name in KNOWN_RED:
        assert len(failing) == len(KNOWN_RED[name])
        for want, got in zip(KNOWN_RED[name], failing):
            assert got.startswith(want)
    else:
        assert not failing, failing
    assert res.checks and all(c.anchor for c in res.checks)


def test_suite_json_shape():
    js = run_suite("vi-distinct").to_json()
    assert set(js) == {"suite", "pass", "checks"}
    assert set(js["checks"][0]) == {"id", "anchor", "pass", "witness"}


def test_unknown_suite():
    with pytest.raises(InputError):
        run_suite("nope")


def test_load_bounds(tmp_path):
    p = tmp_path / "b.cfg"
    p.write_text("# smaller search\nmax_vars = 4\neval_budget = 1_000\n")
    b = load_bounds(p)
    assert b.max_vars == 4 and b.eval_budget == 1000
    assert b.enum_order == DEFAULT_BOUNDS.enum_order
    for bad in ("max_vars 4", "nope = 1", "max_vars = four"):
        p.write_text(bad + "\n")
        with pytest.raises(InputError):
            load_bounds(p)


def test_construction_parameter_bound():
    with pytest.raises(ResourceError):
        lemma_construction("I", n=5, m=2)
    assert lemma_construction("I", n=5, m=2, max_param=5).holds
    assert isinstance(DEFAULT_BOUNDS, Bounds)
