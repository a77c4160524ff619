import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, after the usual summary."""
    lines = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" not in props or rep.when != "call":
                continue
            status = "PASS" if rep.passed else "FAIL"
            lines.append((props["criterion"], f"{status}  {props['criterion']}  {props.get('measured', '')}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines, key=lambda x: int(x[0].split()[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def report(record_property):
    """Attach a criterion label and the measured values to an acceptance test."""
    def _report(criterion, measured):
        record_property("criterion", criterion)
        record_property("measured", measured)
    return _report
