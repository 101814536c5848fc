import json

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from src.models.errors import NetworkParseError, NumericError, ShapeError
from src.models.network import Activation, InputNormalization, Layer, Network, random_network
from src.services.network_io_service import NetworkIOService


def _write_json(tmp_path, data, name="net.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data, encoding="utf-8")
    return str(path)


def _straight_line_forward(net, x):
    values = [float(v) for v in x]
    for layer in net.layers:
        out = []
        for r in range(layer.out_dim):
            total = float(layer.bias[r])
            for k in range(layer.in_dim):
                total += float(layer.weights[r, k]) * values[k]
            if layer.activation is Activation.RELU:
                total = max(total, 0.0)
            out.append(total)
        values = out
    return values


def test_load_identity_json(tmp_path):
    path = _write_json(tmp_path, {
        "input_dim": 2,
        "layers": [{"weights": [[1, 0], [0, 1]], "bias": [0, 0], "activation": "linear"}],
    })
    net = NetworkIOService.load_network(path, "json")
    assert net.input_dim == 2
    assert net.output_dim == 2
    assert net.forward([0.3, -0.7]).tolist() == [0.3, -0.7]


def test_load_json_bias_mismatch_is_shape_error(tmp_path):
    path = _write_json(tmp_path, {
        "input_dim": 2,
        "layers": [{"weights": [[1, 0], [0, 1]], "bias": [0], "activation": "linear"}],
    })
    with pytest.raises(ShapeError) as info:
        NetworkIOService.load_network(path)
    assert path in str(info.value)


def test_load_json_nan_weight_is_numeric_error(tmp_path):
    path = _write_json(
        tmp_path,
        '{"input_dim": 1, "layers": [{"weights": [[NaN]], "bias": [0], "activation": "linear"}]}',
    )
    with pytest.raises(NumericError):
        NetworkIOService.load_network(path)


def test_load_json_rejects_convolution(tmp_path):
    path = _write_json(tmp_path, {
        "input_dim": 1,
        "layers": [{"type": "conv2d", "weights": [[1]], "bias": [0], "activation": "linear"}],
    })
    with pytest.raises(NetworkParseError, match="conv2d"):
        NetworkIOService.load_network(path)


def test_load_json_syntax_error_reports_line(tmp_path):
    path = _write_json(tmp_path, '{\n  "input_dim": 1,\n  "layers": [\n}')
    with pytest.raises(NetworkParseError) as info:
        NetworkIOService.load_network(path)
    assert info.value.line is not None
    assert str(info.value).startswith(f"{path}:")


def test_load_missing_file_names_path(tmp_path):
    path = str(tmp_path / "nao_existe.json")
    with pytest.raises(NetworkParseError) as info:
        NetworkIOService.load_network(path)
    assert path in str(info.value)


def test_last_layer_must_be_linear():
    with pytest.raises(ShapeError):
        Network.from_layers([Layer([[1.0]], [0.0], Activation.RELU)])


def test_layer_chain_mismatch():
    with pytest.raises(ShapeError):
        Network.from_layers([
            Layer(np.ones((3, 2)), np.zeros(3), Activation.RELU),
            Layer(np.ones((1, 2)), np.zeros(1), Activation.IDENTITY),
        ])


def test_forward_relu_example():
    # uma camada ReLU seguida da saída linear identidade
    net = Network.from_layers([
        Layer([[1.0, 2.0], [3.0, 4.0]], [-10.0, 0.0], Activation.RELU),
        Layer(np.eye(2), np.zeros(2), Activation.IDENTITY),
    ])
    assert net.forward([1.0, 1.0]).tolist() == [0.0, 7.0]


def test_forward_rejects_wrong_dimension(identity_net):
    with pytest.raises(ShapeError):
        identity_net.forward([1.0, 2.0, 3.0])
    with pytest.raises(NumericError):
        identity_net.forward([np.nan, 0.0])


def test_forward_matches_straight_line_evaluator():
    net = random_network([2, 64, 64, 3], seed=3)
    rng = np.random.default_rng(0)
    for x in rng.uniform(-1.0, 1.0, size=(100, 2)):
        np.testing.assert_allclose(net.forward(x), _straight_line_forward(net, x), rtol=1e-12, atol=1e-12)


def test_forward_is_deterministic(policy_net):
    x = np.array([0.25, 0.75])
    assert policy_net.forward(x).tobytes() == policy_net.forward(x).tobytes()


def test_forward_batch_matches_forward(policy_net):
    points = np.random.default_rng(1).random((10, 2))
    batch = policy_net.forward_batch(points)
    for point, row in zip(points, batch):
        assert np.array_equal(policy_net.forward(point), row)


@pytest.mark.parametrize("k", [1, 7, 20, 333, 999])
def test_forward_batch_rows_do_not_depend_on_batch_size(policy_net, k):
    points = np.random.default_rng(6).uniform(-1.0, 1.0, size=(1000, 2))
    full = policy_net.forward_batch(points)
    assert full[:k].tobytes() == policy_net.forward_batch(points[:k]).tobytes()


def _activation_patterns(net, points):
    patterns = []
    values = points
    for layer in net.layers[:-1]:
        pre = values @ layer.weights.T + layer.bias
        patterns.append(pre > 0.0)
        values = np.maximum(pre, 0.0)
    return np.concatenate(patterns, axis=1)


@settings(deadline=None, max_examples=25)
@given(st.integers(min_value=0, max_value=10_000))
def test_forward_is_piecewise_linear_on_slices(seed):
    net = random_network([3, 12, 12, 2], seed=seed)
    rng = np.random.default_rng(seed)
    x0, direction = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
    t = np.linspace(0.0, 1.0, 401)
    points = x0 + t[:, None] * direction
    outputs = net.forward_batch(points)
    patterns = _activation_patterns(net, points)
    same = np.all(patterns[:-2] == patterns[1:-1], axis=1) & np.all(patterns[1:-1] == patterns[2:], axis=1)
    second_difference = outputs[2:] - 2.0 * outputs[1:-1] + outputs[:-2]
    scale = 1.0 + np.abs(outputs).max()
    # mesmo padrão nas pontas => mesma região linear em todo o segmento
    assert np.all(np.abs(second_difference[same]) <= 1e-9 * scale)


def test_json_round_trip(tmp_path):
    net = random_network([4, 32, 32, 3], seed=5)
    path = str(tmp_path / "net.json")
    NetworkIOService.save_network(net, path)
    loaded = NetworkIOService.load_network(path)
    points = np.random.default_rng(2).uniform(-2, 2, size=(1000, 4))
    np.testing.assert_allclose(loaded.forward_batch(points), net.forward_batch(points), rtol=1e-12, atol=0)


def test_nnet_round_trip_acas_shape(tmp_path):
    net = random_network([5, 50, 50, 50, 50, 50, 50, 5], seed=9)
    path = str(tmp_path / "acas_like.nnet")
    NetworkIOService.save_network(net, path)
    loaded = NetworkIOService.load_network(path)
    assert loaded.input_dim == 5
    assert loaded.output_dim == 5
    assert loaded.hidden_sizes == [50] * 6
    points = np.random.default_rng(4).uniform(-1, 1, size=(1000, 5))
    np.testing.assert_allclose(loaded.forward_batch(points), net.forward_batch(points), rtol=1e-12, atol=0)


NNET_TEXT = """// rede de teste
// 2 entradas, 1 camada oculta de 2, 1 saída
2,2,1,2,
2,2,1,
0,
0.0,-1.0,
10.0,1.0,
5.0,0.0,7.0,
10.0,2.0,3.0,
1.0,0.0,
0.0,1.0,
0.0,
0.5,
1.0,-1.0,
0.25,
"""


def test_nnet_parse_with_normalization(tmp_path):
    path = tmp_path / "small.nnet"
    path.write_text(NNET_TEXT, encoding="utf-8")
    net = NetworkIOService.load_network(str(path))
    assert net.hidden_sizes == [2]
    assert net.layers[0].activation is Activation.RELU
    assert net.layers[-1].activation is Activation.IDENTITY
    assert net.normalization == InputNormalization(
        mins=(0.0, -1.0), maxes=(10.0, 1.0), means=(5.0, 0.0), ranges=(10.0, 2.0),
        output_mean=7.0, output_range=3.0,
    )
    # relu(x0) - relu(x1 + 0.5) + 0.25
    assert net.forward([1.0, 0.0]).tolist() == [0.75]
    np.testing.assert_allclose(net.normalization.normalize_inputs([20.0, 0.5]), [0.5, 0.25])
    np.testing.assert_allclose(net.normalization.denormalize_outputs([1.0]), [10.0])


def test_nnet_truncated_file_reports_line(tmp_path):
    path = tmp_path / "broken.nnet"
    path.write_text("\n".join(NNET_TEXT.splitlines()[:10]), encoding="utf-8")
    with pytest.raises(NetworkParseError) as info:
        NetworkIOService.load_network(str(path))
    assert info.value.path == str(path)
    assert info.value.line is not None


def test_random_network_is_seeded():
    a = random_network([3, 8, 2], seed=1)
    b = random_network([3, 8, 2], seed=1)
    c = random_network([3, 8, 2], seed=2)
    assert all(np.array_equal(x.weights, y.weights) for x, y in zip(a.layers, b.layers))
    assert not np.array_equal(a.layers[0].weights, c.layers[0].weights)


def test_load_json_non_integer_input_dim_is_parse_error(tmp_path):
    path = _write_json(tmp_path, {
        "input_dim": "dois",
        "layers": [{"weights": [[1, 0], [0, 1]], "bias": [0, 0], "activation": "linear"}],
    })
    with pytest.raises(NetworkParseError) as info:
        NetworkIOService.load_network(path)
    assert info.value.path == path


def test_nnet_row_with_extra_values_is_shape_error(tmp_path):
    # linha de pesos da saída com um valor a mais que o fan-in
    lines = NNET_TEXT.splitlines()
    row = lines.index("1.0,-1.0,")
    lines[row] = "1.0,-1.0,99.0,"
    path = tmp_path / "extra.nnet"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(ShapeError) as info:
        NetworkIOService.load_network(str(path))
    assert info.value.path == str(path)
    assert info.value.line == row + 1
