import random

import pytest

from structcon.conf import setup

setup()

from structcon.algebra import AlgebraElement, AlgebraKind  # noqa: E402
from structcon.forms import bundled_spec_path, read_spec  # noqa: E402


def element(kind, text):
    return AlgebraElement.parse(kind, text)


@pytest.fixture
def so6():
    return AlgebraKind('so', 6)


@pytest.fixture
def gl4():
    return AlgebraKind('gl', 4)


@pytest.fixture
def su5():
    return AlgebraKind('su', 5)


@pytest.fixture
def load_example():
    return lambda name: read_spec(bundled_spec_path(name))


@pytest.fixture
def rng():
    return random.Random(20240521)
