import numpy as np
import pytest

from src.models.interval import Box
from src.models.network import Activation, Layer, Network, random_network
from src.models.property import AssertionMode, DecisionProperty, DominanceAssertion


def linear_net(weights, bias) -> Network:
    return Network.from_layers([Layer(weights, bias, Activation.IDENTITY)])


def dominance(box_pairs, loser, winners, mode=AssertionMode.ALL_OF, name="prop") -> DecisionProperty:
    return DecisionProperty(
        name=name,
        input_box=Box.from_pairs(box_pairs),
        assertion=DominanceAssertion(loser=loser, winners=frozenset(winners), mode=mode),
    )


def lipschitz_bound(net: Network) -> float:
    """Produto das normas espectrais: limite de Lipschitz (L2) da rede."""
    return float(np.prod([np.linalg.norm(layer.weights, 2) for layer in net.layers]))


@pytest.fixture
def make_linear_net():
    return linear_net


@pytest.fixture
def make_property():
    return dominance


@pytest.fixture
def crossing_net():
    # y0 = x, y1 = 0.5
    return linear_net([[1.0], [0.0]], [0.0, 0.5])


@pytest.fixture
def crossing_property():
    # y1 < y0: vale em (0.5, 1], falha em [0, 0.5]
    return dominance([[0.0, 1.0]], loser=1, winners=[0], name="crossing")


@pytest.fixture
def crossing_net_2d():
    # y0 = x0 + x1, y1 = 1: a reta x0 + x1 = 1 divide o quadrado ao meio
    return linear_net([[1.0, 1.0], [0.0, 0.0]], [0.0, 1.0])


@pytest.fixture
def crossing_property_2d():
    return dominance([[0.0, 1.0], [0.0, 1.0]], loser=1, winners=[0], name="crossing_2d")


@pytest.fixture
def constant_net():
    # y = (0, 1) em qualquer ponto
    return linear_net(np.zeros((2, 2)), [0.0, 1.0])


@pytest.fixture
def identity_net():
    return linear_net(np.eye(2), [0.0, 0.0])


@pytest.fixture
def small_random_net():
    return random_network([2, 16, 2], seed=7)


@pytest.fixture
def policy_net():
    return random_network([2, 64, 64, 3], seed=11)


@pytest.fixture
def lipschitz():
    return lipschitz_bound
