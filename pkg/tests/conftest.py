import pytest

from normgrowth.context import get_context


@pytest.fixture(scope="session")
def a5():
    return get_context("A:5")


@pytest.fixture(scope="session")
def s5():
    return get_context("S:5")


@pytest.fixture(scope="session")
def psl27():
    return get_context("PSL2:7")


@pytest.fixture(scope="session")
def psl211():
    return get_context("PSL2:11")
