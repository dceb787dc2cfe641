import pytest

from wedgedyn import Endomorphism, IntMatrix, TightMap


@pytest.fixture(scope="session")
def phi1():
    return TightMap(Endomorphism.from_strings(2, "aabAB", "BAbba"), name="phi1")


@pytest.fixture(scope="session")
def phi2():
    return TightMap(Endomorphism.from_strings(2, "aaab", "bbba"), name="phi2")


@pytest.fixture(scope="session")
def phi3():
    return TightMap(Endomorphism.from_strings(2, "aaabaaa", "bbbabbb"), name="phi3")


@pytest.fixture(scope="session")
def a2():
    return IntMatrix(((3, 1), (1, 3)))
