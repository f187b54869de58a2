import pytest

from fqmenon.gf import ff_make
from fqmenon.polyring import parse_poly


@pytest.fixture
def F2():
    return ff_make(2)


@pytest.fixture
def F3():
    return ff_make(3)


@pytest.fixture
def F4():
    return ff_make(2, 2, [1, 1, 1])


def P(field, text):
    return parse_poly(field, text)
