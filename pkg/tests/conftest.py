import functools

import pytest

from carlitz_mzv import CarlitzCache, make_field_context


@functools.lru_cache(maxsize=None)
def shared_cache(p, m=1):
    """One memoised CarlitzCache per field for the whole test session."""
    return CarlitzCache(make_field_context(p, m))


@pytest.fixture
def cache2():
    return shared_cache(2)


@pytest.fixture
def cache3():
    return shared_cache(3)
