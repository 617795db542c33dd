import pytest

from skewpbw import catalog


@pytest.fixture(scope="session")
def catalog_entries():
    """One shared instance per catalog entry; memo caches accumulate across
    tests, which the purity tests rely on being observationally invisible."""
    return catalog.all_presentations()


@pytest.fixture(scope="session")
def weyl1():
    return catalog.get("weyl", 1)


@pytest.fixture(scope="session")
def quantum_plane():
    return catalog.get("quantum_plane")


@pytest.fixture(scope="session")
def u_heisenberg():
    return catalog.get("u_heisenberg")


@pytest.fixture(scope="session")
def u_sl2():
    return catalog.get("u_sl2")
