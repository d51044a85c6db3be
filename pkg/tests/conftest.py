import pytest

from gridset import load_case

_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def cases():
    """Benchmark graphs keyed by short name, parsed once per session."""
    names = {
        "case9": "case9", "case14": "case14", "case24": "case24_ieee_rts",
        "case30": "case30", "case39": "case39", "case57": "case57",
        "case118": "case118", "case300": "case300",
    }
    return {k: load_case(v).graph() for k, v in names.items()}


@pytest.fixture
def criterion():
    """Record a PASS/FAIL line for the acceptance summary."""

    def record(key: str, ok: bool, detail: str = "") -> None:
        _RESULTS[key] = (ok, detail)
        print(f"{key}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS, key=lambda k: int(k.split()[1])):
        ok, detail = _RESULTS[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")
