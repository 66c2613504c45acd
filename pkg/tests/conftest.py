import pytest

import drslab as dl


@pytest.fixture(scope="session")
def catalog():
    return dl.standard_catalog()


@pytest.fixture(scope="session")
def catalog_map(catalog):
    return {entry.name: entry for entry in catalog}
