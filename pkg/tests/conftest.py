import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the slow-tier sailing inference checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: slow-tier checks, off by default")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow tier; enable with --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
