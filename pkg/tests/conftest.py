import pytest

from qtetra import linalg
from qtetra.cartan import ValuedQuiver
from qtetra.serialize import load_example


def quiver(name: str) -> ValuedQuiver:
    return ValuedQuiver.from_json(load_example(name)["quiver"])


@pytest.fixture(scope="module", params=linalg.available_backends())
def backend(request):
    prev = linalg.use_backend(request.param)
    yield request.param
    linalg.use_backend(prev)


@pytest.fixture
def a2():
    return quiver("a2")


@pytest.fixture
def b2():
    return quiver("b2")


@pytest.fixture
def g2():
    return quiver("g2")


@pytest.fixture
def kronecker():
    return quiver("kronecker")


# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
