import pytest

from automref.catalog import construct


@pytest.fixture(scope="session")
def m11():
    return construct("File:m11.grp")


@pytest.fixture(scope="session")
def m23():
    return construct("File:m23.grp")


@pytest.fixture(scope="session")
def j1():
    return construct("File:j1.grp")


@pytest.fixture(scope="session")
def j22():
    return construct("File:j22.grp")


@pytest.fixture(scope="session")
def hs2():
    return construct("File:hs2.grp")
