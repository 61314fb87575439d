import pytest

from ncbieberbach.crossed import crossed_product
from ncbieberbach.families import K_FAMILIES


@pytest.fixture(scope="session")
def plane_products():
    """One plane crossed product per quotient family, shared across tests."""
    return {family: crossed_product(family, dim=2) for family in K_FAMILIES}


@pytest.fixture(scope="session")
def torus_products():
    """One three-torus crossed product per quotient family."""
    return {family: crossed_product(family, dim=3) for family in K_FAMILIES}
