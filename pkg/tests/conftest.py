import pytest

import spanlab as sl


@pytest.fixture(scope="session")
def tiny_instance():
    """The smallest composed preset, shared across audit-style tests."""
    return sl.composed_preset("tiny")


@pytest.fixture(scope="session")
def inner_c2():
    return sl.inner_preset("c2")
