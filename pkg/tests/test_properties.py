import pytest

from toeplitz.properties import LAWS, run_sweep


@pytest.mark.parametrize("law", sorted(LAWS))
def test_law_holds(law):
    report = run_sweep(seed=1, cases=10, laws=[law])
    assert report[law]["failures"] == []


def test_sweep_is_reproducible():
    laws = ["associativity", "witness-w1", "measure-intertwining"]
    assert run_sweep(7, 3, laws) == run_sweep(7, 3, laws)
