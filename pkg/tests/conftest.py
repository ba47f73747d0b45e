import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by the acceptance tests
_CRITERIA: dict[int, tuple[bool, str]] = {}


class Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = "did not finish"
        self.passed = False

    def note(self, detail: str) -> None:
        self.detail = detail

    def done(self, detail: str | None = None) -> None:
        if detail is not None:
            self.detail = detail
        self.passed = True


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    rec = Criterion(*marker.args)
    yield rec
    _CRITERIA[rec.number] = (rec.passed, f"{rec.title}: {rec.detail}")
    line = f"criterion {rec.number:2d} {'PASS' if rec.passed else 'FAIL'}  {rec.title}: {rec.detail}"
    print(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, text = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {text}")
