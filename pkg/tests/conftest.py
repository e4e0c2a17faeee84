import pytest

from deabench.io import load_bundle


@pytest.fixture(scope="session")
def bundle():
    return load_bundle()
