from __future__ import annotations

import pytest

from fraclab import kernels
from fraclab.testfuncs import corpus_standard

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda ln: int(ln.split("[", 1)[1].split("]", 1)[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    """Collects one summary line per acceptance criterion."""
    return request.config.stash[_ACCEPTANCE]


@pytest.fixture(scope="session")
def corpus():
    return corpus_standard()


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)
