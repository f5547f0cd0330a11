import pytest

from regentail.groups import ConeGroup, DiscreteGroup, DivisibilityGroup
from regentail.instances import (
    CUBIC_MIN_POLY,
    DiscreteSampler,
    DivisibilitySampler,
    SemigroupSampler,
    integral_generator_y,
)
from regentail.numberring import CubicField
from regentail.systems import DedekindSystem, MinimalSystem


@pytest.fixture(scope="session")
def zmod60():
    return ConeGroup(1, (60,))


@pytest.fixture(scope="session")
def discrete():
    return DiscreteGroup()


@pytest.fixture(scope="session")
def field():
    return CubicField(CUBIC_MIN_POLY)


@pytest.fixture(scope="session")
def divgroup(field):
    return DivisibilityGroup(field)


@pytest.fixture(scope="session")
def yz(field):
    y = integral_generator_y(field)
    return y, field.inv(y)


@pytest.fixture(scope="session")
def sm60(zmod60):
    return MinimalSystem(zmod60)


@pytest.fixture(scope="session")
def sm_discrete(discrete):
    return MinimalSystem(discrete)


@pytest.fixture(scope="session")
def dedekind(divgroup):
    return DedekindSystem(divgroup)


@pytest.fixture(scope="session")
def samplers(divgroup):
    return {
        "exa1": SemigroupSampler(),
        "exa3": DiscreteSampler(),
        "exa2": DivisibilitySampler(divgroup),
    }
