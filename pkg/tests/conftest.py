import pytest

from negmultinom import validate_params


@pytest.fixture
def base_params():
    # r = 2, x = (1/4, 1/4)  =>  y = (1/2, 1/2)
    return validate_params(2, [0.25, 0.25])


@pytest.fixture
def base_exact():
    return validate_params(2, ["1/4", "1/4"], exact=True)
