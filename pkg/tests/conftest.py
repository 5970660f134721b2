import pytest

from simbelief.testlab import get_fixture
from simbelief.testlab.fixtures import fixture_dir


def load(fixture: str, role: str | None = None):
    models = get_fixture(fixture).load()
    return models[role] if role else next(iter(models.values()))


@pytest.fixture
def c1():
    return load("c1")


@pytest.fixture
def c3():
    return load("c3")


@pytest.fixture
def c5():
    return load("c5-minimal")


@pytest.fixture
def chain():
    return load("chain")


@pytest.fixture
def nonproper():
    return load("non-proper")


@pytest.fixture
def fixtures_path():
    return fixture_dir()
