import pytest


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    """Shared on-disk polynomial cache so expensive scans reuse work."""
    return tmp_path_factory.mktemp("hd_cache")
