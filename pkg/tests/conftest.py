import pytest

from auslander import tilt


@pytest.fixture(scope="session")
def objects3():
    return tilt.explore_by_mutation(3)


@pytest.fixture(scope="session")
def objects4():
    return tilt.explore_by_mutation(4)
