import pytest

from corpusdef import P44, U24


@pytest.fixture
def p44():
    return P44


@pytest.fixture
def u24():
    return U24
