import pytest

from ctecc import curves

ALL_CURVES = tuple(curves.default_database().names())

TE_CURVES = tuple(n for n in ALL_CURVES
                  if curves.default_database()[n].edwards is not None)

W_CURVES = tuple(n for n in ALL_CURVES if n not in TE_CURVES)


@pytest.fixture(scope="session")
def db():
    return curves.default_database()


def get(name):
    return curves.get_curve(name)
