import pytest

from cwcolour.term import parse_term

# the graph of the worked term in the clique-width preliminaries:
# w-w', y-z inside, then everything relabelled to 1 is joined to x
FIVE_VERTEX_TERM = (
    "(add 1 2 (rel 3 1 (u (add 1 3 (u (v 1 w) (v 3 w'))) (v 2 x) "
    "(add 1 3 (u (v 1 y) (v 3 z))))))"
)
# relab_{1->3}(add_{1,3}(add_{1,2}(1(x) + 2(y)) + 3(z)))
ANNOTATION_TERM = "(rel 1 3 (add 1 3 (u (add 1 2 (u (v 1 x) (v 2 y))) (v 3 z))))"
TRIANGLE = "(add 1 2 (add 1 3 (add 2 3 (u (u (v 1 x) (v 2 y)) (v 3 z)))))"
EDGE = "(add 1 2 (u (v 1 x) (v 2 y)))"


@pytest.fixture
def five_vertex_term():
    return parse_term(FIVE_VERTEX_TERM)


@pytest.fixture
def annotation_term():
    return parse_term(ANNOTATION_TERM)


@pytest.fixture
def triangle():
    return parse_term(TRIANGLE)


@pytest.fixture
def edge_term():
    return parse_term(EDGE)


_criteria: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _criteria[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria.items():
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
