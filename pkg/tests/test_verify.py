import pytest

from pdcauchy import catalog, verify


@pytest.mark.parametrize("name", sorted(verify.SUITES))
def test_suite_passes(name):
    res = verify.SUITES[name]()
    assert res.passed, [c for c in res.cases if not c["passed"]][:3]
    assert res.cases


def test_analyticity_handles_exact_zero():
    # e^{it} delta' vanishes at z = 3i for n = 1
    res = verify.analyticity([catalog.get("dirac_prime")], points=(3j,))
    zero = [c for c in res.cases if c["value"] == 0.0]
    assert zero and res.passed


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify.run_suites(["nope"])
