import os
from pathlib import Path

import pytest
from hypothesis import settings

from app.core.action import DoubleAction
from app.core.builders import pair2, point_double_groupoid, vac22
from app.core.bundle import AbelianGroupBundle, FinAbGroup

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile("acceptance", max_examples=500, deadline=None)
settings.register_profile("dev", max_examples=60, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "acceptance"))

# which of the vertical and horizontal generators of VAC22 act by -1 on Z/3
TWISTS = [(True, False), (False, True), (True, True)]


def constant_action(dg, order: int) -> DoubleAction:
    return DoubleAction.trivial(dg, AbelianGroupBundle.constant(dg.points, FinAbGroup((order,))))


def twisted_action(dg, vertical: bool, horizontal: bool) -> DoubleAction:
    bundle = AbelianGroupBundle.constant(dg.points, FinAbGroup((3,)))
    return DoubleAction.from_matrices(
        dg, bundle, {1: [[-1]] if vertical else [[1]]}, {1: [[-1]] if horizontal else [[1]]}
    )


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def pt():
    return point_double_groupoid()


@pytest.fixture(scope="session")
def vac():
    return vac22()


@pytest.fixture(scope="session")
def pair():
    return pair2()


@pytest.fixture(scope="session")
def vac_z2(vac):
    return constant_action(vac, 2)


@pytest.fixture(scope="session")
def vac_z4(vac):
    return constant_action(vac, 4)


@pytest.fixture(scope="session")
def pt_z2(pt):
    return constant_action(pt, 2)
