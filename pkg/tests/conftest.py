import numpy as np
import pytest

# Fixed seed for every "random" grid in the suite.
SEED = 20211018


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


class Criterion:
    """Records pass/fail and a detail string for one acceptance criterion."""

    def __init__(self, label):
        self.label = label
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        if not ok and not self.detail:
            self.detail = str(exc).splitlines()[0] if exc else exc_type.__name__
        _ACCEPTANCE[self.label] = (ok, self.detail)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    def order(label):
        head = label.split()[0]
        return int(head.rstrip("ab")), head

    for label in sorted(_ACCEPTANCE, key=order):
        ok, detail = _ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
