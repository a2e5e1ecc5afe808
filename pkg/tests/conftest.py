import pytest

from combsub.corpus import example


@pytest.fixture(scope="session")
def jp():
    return example("jp")


@pytest.fixture(scope="session")
def inconsistent():
    return example("inconsistent")


@pytest.fixture(scope="session")
def overlapping():
    return example("overlapping")


@pytest.fixture(scope="session")
def tshape():
    return example("tshape")


@pytest.fixture(scope="session")
def mini():
    return example("mini")
