from fractions import Fraction

import pytest

from mvqj.lqjacobi import ScalarParams
from mvqj.mvlqj import P1, P2, Family


@pytest.fixture(scope="session")
def fam1():
    return Family(P1)


@pytest.fixture(scope="session")
def fam2():
    return Family(P2)


@pytest.fixture(scope="session", params=["P1", "P2"])
def fam(request):
    return Family({"P1": P1, "P2": P2}[request.param])


SCALAR_SETS = [
    ScalarParams(Fraction(1, 2), Fraction(1, 4), Fraction(1, 2)),
    ScalarParams(Fraction(2, 3), Fraction(1, 3), -1),
]
