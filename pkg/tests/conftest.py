from collections import defaultdict

import pytest

_criteria: dict[int, list[tuple[str, bool, str]]] = defaultdict(list)


class CriterionLog:
    """Collects sub-checks per acceptance criterion; a criterion passes when all of them do."""

    def check(self, criterion: int, name: str, ok: bool, detail: str = "") -> None:
        _criteria[criterion].append((name, bool(ok), detail))
        assert ok, f"criterion {criterion} / {name}: {detail}"


@pytest.fixture(scope="session")
def criteria():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        checks = _criteria[number]
        failed = [c for c in checks if not c[1]]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number}: {status} ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += "; failing: " + "; ".join(f"{n} [{d}]" for n, _, d in failed)
        terminalreporter.write_line(line)
