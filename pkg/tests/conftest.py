"""Shared zoo fixtures"""
import pytest

from transientscope.zoo import build, resolve_observable

# parameters of the standard figure runs
FIG2 = {'h': 0.1}
FIG4 = {'r': 0.5, 'K': 1.0, 'alpha': 1.0, 'gamma': 4.0, 'd': 1.0}
FIG6 = {'b': 115.0, 'p': 0.003, 'alpha': 4e-5}


@pytest.fixture
def example1():
    system, entry = build('example1', FIG2)
    return system, entry, resolve_observable(entry, 'x')


@pytest.fixture
def predator_prey():
    return build('streipert_pp', FIG4)


@pytest.fixture
def epidemic():
    return build('epidemic', FIG6)


@pytest.fixture
def example2():
    return build('example2', {'a': 1.5, 'b': 1.3})
