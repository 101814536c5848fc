import itertools

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from src.models.backend_manager import BackendManager
from src.models.errors import NumericError, ShapeError
from src.models.formal_backend import FormalBackend
from src.models.interval import (
    Box,
    Interval,
    OutputBounds,
    Provenance,
    SamplingConfig,
    affine_image,
    bound_width,
    relu_image,
)
from src.models.network import Activation, Layer, Network, random_network
from src.models.sampled_backend import SampledBackend, sample_box


def _intervals(pairs):
    return [Interval(lo, hi) for lo, hi in pairs]


def test_interval_invariants():
    with pytest.raises(ShapeError):
        Interval(1.0, 0.0)
    with pytest.raises(NumericError):
        Interval(0.0, np.inf)
    with pytest.raises(ShapeError):
        Box(())


def test_affine_image_example():
    assert affine_image([[1.0, -1.0]], [0.0], _intervals([[0, 1], [0, 1]])) == [Interval(-1.0, 1.0)]


def test_affine_image_identity():
    box = _intervals([[-2, 3], [0.5, 0.75], [1, 1]])
    assert affine_image(np.eye(3), np.zeros(3), box) == box


def test_affine_image_dimension_mismatch():
    with pytest.raises(ShapeError):
        affine_image([[1.0, 2.0]], [0.0], _intervals([[0, 1]]))


@settings(deadline=None, max_examples=50)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1), st.integers(min_value=1, max_value=10))
def test_affine_image_is_exact_hull(seed, dim):
    rng = np.random.default_rng(seed)
    w = rng.normal(size=(3, dim))
    b = rng.normal(size=3)
    lo = rng.uniform(-1, 1, dim)
    hi = lo + rng.uniform(0, 1, dim)
    result = affine_image(w, b, [Interval(l, h) for l, h in zip(lo, hi)])
    vertices = np.array(list(itertools.product(*zip(lo, hi))))
    images = vertices @ w.T + b
    np.testing.assert_allclose([r.lo for r in result], images.min(axis=0), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose([r.hi for r in result], images.max(axis=0), rtol=1e-12, atol=1e-12)


def test_relu_image_cases():
    assert relu_image(_intervals([[-1, 1], [-3, -1], [2, 5]])) == _intervals([[0, 1], [0, 0], [2, 5]])


def test_propagate_formal_identity(identity_net):
    bounds = FormalBackend().compute_bounds(identity_net, Box.from_pairs([[0, 1], [0, 1]]))
    assert bounds.provenance is Provenance.FORMAL
    assert [o.to_list() for o in bounds.outs] == [[0.0, 1.0], [0.0, 1.0]]


def test_propagate_formal_dependency_loss():
    net = Network.from_layers([
        Layer([[1.0], [1.0]], [0.0, 0.0], Activation.IDENTITY),
        Layer([[1.0, -1.0]], [0.0], Activation.IDENTITY),
    ])
    bounds = FormalBackend().compute_bounds(net, Box.from_pairs([[0, 1]]))
    assert bounds.outs[0] == Interval(-1.0, 1.0)
    assert net.forward([0.37]).tolist() == [0.0]


def test_propagate_formal_dimension_mismatch(identity_net):
    with pytest.raises(ShapeError):
        FormalBackend().compute_bounds(identity_net, Box.from_pairs([[0, 1]]))


def test_propagate_formal_contains_monte_carlo(small_random_net):
    box = Box.from_pairs([[0, 1], [0, 1]])
    bounds = FormalBackend().compute_bounds(small_random_net, box)
    outputs = small_random_net.forward_batch(np.random.default_rng(0).random((10_000, 2)))
    assert np.all(outputs >= bounds.lower) and np.all(outputs <= bounds.upper)


def test_formal_soundness_suite():
    rng = np.random.default_rng(2024)
    for index in range(100):
        n_in, n_out = int(rng.integers(2, 6)), int(rng.integers(2, 13))
        hidden = [int(h) for h in rng.choice([8, 16, 32, 64], size=int(rng.integers(1, 3)))]
        net = random_network([n_in] + hidden + [n_out], seed=index)
        lo = rng.uniform(-1, 1, n_in)
        box = Box.from_arrays(lo, lo + rng.uniform(0, 2, n_in))
        bounds = FormalBackend().compute_bounds(net, box)
        points = box.lower + rng.random((10_000, n_in)) * box.widths
        outputs = net.forward_batch(points)
        # sem arredondamento dirigido: folga só para o erro de ponto flutuante
        assert np.all(outputs >= bounds.lower - 1e-9), f"rede {index}"
        assert np.all(outputs <= bounds.upper + 1e-9), f"rede {index}"


@settings(deadline=None, max_examples=40)
@given(st.integers(min_value=0, max_value=10_000), st.floats(min_value=0.0, max_value=1.0),
       st.floats(min_value=0.0, max_value=1.0))
def test_formal_monotone_under_refinement(seed, a, b):
    net = random_network([2, 16, 16, 2], seed=seed)
    outer = Box.from_pairs([[0, 1], [0, 1]])
    inner = Box.from_pairs([[min(a, b), max(a, b)], [0.25, 0.5]])
    backend = FormalBackend()
    assert backend.compute_bounds(net, outer).contains(backend.compute_bounds(net, inner), tol=1e-12)


def test_sampled_constant_network(constant_net):
    bounds = SampledBackend(SamplingConfig(n=20, seed=3)).compute_bounds(
        constant_net, Box.from_pairs([[-5, 5], [0, 2]])
    )
    assert bounds.provenance is Provenance.SAMPLED
    assert [o.to_list() for o in bounds.outs] == [[0.0, 0.0], [1.0, 1.0]]


def test_sampled_within_formal():
    rng = np.random.default_rng(5)
    manager = BackendManager(SamplingConfig(n=20, seed=1))
    for index in range(30):
        n_in = int(rng.integers(1, 6))
        net = random_network([n_in, 32, 32, 4], seed=100 + index)
        box = Box.from_arrays(np.zeros(n_in), rng.uniform(0.1, 2.0, n_in))
        formal = manager.compute_bounds("formal", net, box)
        sampled = manager.compute_bounds("sampled", net, box)
        assert formal.contains(sampled, tol=1e-9)


def test_sampled_is_deterministic(policy_net):
    box = Box.from_pairs([[0, 1], [0, 1]])
    first = SampledBackend(SamplingConfig(n=50, seed=42)).compute_bounds(policy_net, box)
    second = SampledBackend(SamplingConfig(n=50, seed=42)).compute_bounds(policy_net, box)
    other = SampledBackend(SamplingConfig(n=50, seed=43, include_vertices=False)).compute_bounds(policy_net, box)
    assert first.lower.tobytes() == second.lower.tobytes()
    assert first.upper.tobytes() == second.upper.tobytes()
    assert not np.array_equal(first.lower, other.lower)


def test_sampled_bounds_grow_with_nested_samples(policy_net):
    box = Box.from_pairs([[0, 1], [0.5, 1]])
    previous = None
    for n in (2, 4, 8, 20, 100, 1000):
        bounds = SampledBackend(SamplingConfig(n=n, seed=9)).compute_bounds(policy_net, box)
        if previous is not None:
            assert bounds.contains(previous)
        previous = bounds


def test_sample_box_prefix_and_vertices():
    lower, upper = np.array([0.0, 1.0, 2.0]), np.array([1.0, 1.0, 4.0])
    small = sample_box(lower, upper, SamplingConfig(n=3, seed=0))
    large = sample_box(lower, upper, SamplingConfig(n=10, seed=0))
    assert np.array_equal(small[:3], large[:3])
    # dimensão fixa fora da contagem de vértices: 2**2 <= 10
    assert len(small) == 3
    assert len(large) == 14
    assert np.all(large[:, 1] == 1.0)


def test_sampled_converges_to_identity_range():
    net = Network.from_layers([Layer([[1.0]], [0.0], Activation.IDENTITY)])
    cfg = SamplingConfig(n=200_000, seed=0, include_vertices=False)
    bounds = SampledBackend(cfg).compute_bounds(net, Box.from_pairs([[0, 1]]))
    assert bounds.outs[0].lo < 1e-3 and bounds.outs[0].hi > 1.0 - 1e-3


@pytest.mark.slow
def test_sampled_converges_with_ten_million_points():
    net = Network.from_layers([Layer([[1.0]], [0.0], Activation.IDENTITY)])
    cfg = SamplingConfig(n=10_000_000, seed=0, include_vertices=False)
    bounds = SampledBackend(cfg).compute_bounds(net, Box.from_pairs([[0, 1]]))
    assert abs(bounds.outs[0].lo) <= 1e-3 and abs(bounds.outs[0].hi - 1.0) <= 1e-3


def test_bound_width():
    bounds = OutputBounds(outs=(Interval(0, 0), Interval(-1, 1)), provenance=Provenance.FORMAL)
    assert bound_width(bounds, 0) == 0.0
    assert bound_width(bounds, 1) == 2.0
    with pytest.raises(IndexError):
        bound_width(bounds, 2)


def test_width_ordering_formal_reference_sampled():
    net = random_network([4, 64, 64, 2], seed=21)
    box = Box.from_pairs([[0, 1]] * 4)
    formal = FormalBackend().compute_bounds(net, box)
    reference = SampledBackend(SamplingConfig(n=200_000, seed=0)).compute_bounds(net, box)
    sampled = SampledBackend(SamplingConfig(n=20, seed=0)).compute_bounds(net, box)
    for j in range(net.output_dim):
        assert bound_width(formal, j) >= bound_width(reference, j) >= bound_width(sampled, j)


def test_sampling_config_requires_two_samples():
    with pytest.raises(ShapeError):
        SamplingConfig(n=1)
