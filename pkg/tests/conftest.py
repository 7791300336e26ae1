import os

import pytest
from hypothesis import HealthCheck, settings

from lcarev import _kernels

settings.register_profile("default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# pass/fail lines of the acceptance suite, printed in the terminal summary
ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture(params=_kernels.available_backends())
def backend(request):
    """Run the test once per kernel backend."""
    with _kernels.use_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
