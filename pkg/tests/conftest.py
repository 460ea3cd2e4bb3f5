import pytest

from artifact.characters import RelationSet


@pytest.fixture
def b1_rel():
    return RelationSet.parse("chi=mu, chi^2=1")


@pytest.fixture
def b2_rel():
    return RelationSet.parse("chi^2=1, mu^2=1, chi!=mu")
