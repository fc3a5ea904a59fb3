import functools
from pathlib import Path

import pytest

from qfano.construction import ConstructionOptions, construct
from qfano.extension import matrix_from_str
from qfano.gf import gf
from qfano.linalg import canonicalize, vec_from_str
from qfano.spreads import parse_parallelism

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name):
    return (FIXTURES / name).read_text()


def fixture_rows(name):
    """Non-comment lines split into (label, payload)."""
    out = []
    for line in fixture_text(name).splitlines():
        if line.strip() and not line.startswith("#"):
            label, payload = line.split()
            out.append((label, payload))
    return out


@functools.lru_cache(maxsize=None)
def reference_parallelism():
    return parse_parallelism(gf(2), fixture_text("q2_parallelism.txt"))


@functools.lru_cache(maxsize=None)
def reference_three_spaces():
    F = gf(2)
    return [canonicalize(F, [vec_from_str(v) for v in line.split(";")], 4)
            for line in fixture_text("q2_three_spaces.txt").splitlines()
            if line and not line.startswith("#")]


@functools.lru_cache(maxsize=None)
def built(q, reference=False):
    opts = ConstructionOptions(parallelism=reference_parallelism() if reference else None)
    return construct(gf(q), opts)


@pytest.fixture
def F2():
    return gf(2)


@pytest.fixture
def F3():
    return gf(3)


@pytest.fixture(scope="session")
def q2_reference():
    """q=2 construction driven by the reference parallelism."""
    return built(2, True)


@pytest.fixture(scope="session")
def q2():
    return built(2)


@pytest.fixture(scope="session")
def q3():
    return built(3)


def matrices(name, label_prefix=None):
    return [(label, matrix_from_str(m)) for label, m in fixture_rows(name)
            if label_prefix is None or label.startswith(label_prefix)]
