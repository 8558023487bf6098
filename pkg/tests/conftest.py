import os

import pytest
from hypothesis import HealthCheck, settings

from bhpc import catalog
from bhpc.scalars import FieldSpec

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

QQ = FieldSpec.rational()
F7 = FieldSpec.prime(7)
FIELDS = [QQ, F7]


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


@pytest.fixture(params=catalog.names())
def entry_name(request):
    return request.param


# -- acceptance log ----------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
