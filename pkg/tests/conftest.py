import pytest

from multest.models import get_model
from multest.poly import parse_poly


@pytest.fixture(scope="session")
def gm():
    return get_model("gm")


@pytest.fixture(scope="session")
def borel2():
    return get_model("borel2")


@pytest.fixture(scope="session")
def gl2():
    return get_model("gl2")


@pytest.fixture
def px():
    """Parse a polynomial in the coordinate ring of a model."""
    def parse(text, model_or_nvars):
        n = model_or_nvars if isinstance(model_or_nvars, int) else model_or_nvars.nvars
        return parse_poly(text, n)
    return parse
