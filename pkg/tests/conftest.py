import pytest

from zcverify.constructions import build_corpus
from zcverify.groups import closure


@pytest.fixture(scope="session")
def corpus24():
    return build_corpus(24)


@pytest.fixture(scope="session")
def corpus48():
    return build_corpus(48)


@pytest.fixture(scope="session")
def corpus64():
    return build_corpus(64)


@pytest.fixture(scope="session")
def s3():
    # symmetric group on 3 letters via permutation closure
    return closure([(1, 2, 0), (1, 0, 2)])
