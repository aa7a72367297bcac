from __future__ import annotations

import pytest

from cyclic_cubics.family import registry

REGISTRY_NAMES = list(registry())


@pytest.fixture(params=REGISTRY_NAMES)
def named_family(request):
    return registry()[request.param]

from hypothesis import settings  # noqa: E402

# first calls build the trial-division primorial; timing per example is not what these tests check
settings.register_profile("package", deadline=None)
settings.load_profile("package")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
