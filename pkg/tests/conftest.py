import pytest

from qkb.corpus import load_corpus

# criterion id -> outcome, filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS: dict[str, str] = {}


@pytest.fixture(scope="session")
def corpus():
    """The shipped corpus, loaded and materialized once per session."""
    return load_corpus()


@pytest.fixture(scope="session")
def asserted_corpus():
    """Same corpus without inference, for asserted-vs-materialized checks."""
    return load_corpus(materialize_store=False)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for criterion, outcome in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{outcome:4s}  {criterion}")
