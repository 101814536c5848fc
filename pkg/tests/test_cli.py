import csv
import json
import os

import pytest
from click.testing import CliRunner

from src.commands.verify import exit_code_for
from src.main import cli
from src.models.verification import LeafCensus, VerificationReport
from src.services.bench_service import BENCH_COLUMNS
from src.services.network_io_service import NetworkIOService
from src.services.property_service import PropertyService


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def workspace(tmp_path, crossing_net, crossing_property, constant_net, make_property):
    """Rede cruzada, rede constante e uma rede com perda de dependência, cada uma com suas propriedades."""
    NetworkIOService.save_network(crossing_net, str(tmp_path / "crossing.json"))
    NetworkIOService.save_network(constant_net, str(tmp_path / "constant.json"))
    PropertyService.save_properties([crossing_property], str(tmp_path / "crossing_props.json"))
    PropertyService.save_properties(
        [make_property([[0, 1], [0, 1]], loser=0, winners=[1], name="always")],
        str(tmp_path / "constant_props.json"),
    )
    # y0 = relu(x) - relu(x) = 0 < y1 = 1, mas o intervalo de y0 é [-1, 1]
    (tmp_path / "dependent.json").write_text(json.dumps({
        "input_dim": 1,
        "layers": [
            {"weights": [[1.0], [1.0]], "bias": [0.0, 0.0], "activation": "relu"},
            {"weights": [[1.0, -1.0], [0.0, 0.0]], "bias": [0.0, 1.0], "activation": "linear"},
        ],
    }), encoding="utf-8")
    PropertyService.save_properties(
        [make_property([[1, 2]], loser=0, winners=[1], name="dependent")],
        str(tmp_path / "dependent_props.json"),
    )
    return tmp_path


def _verify(runner, workspace, net, props, *extra):
    out = workspace / "out"
    args = ["verify", "--network", str(workspace / net), "--props", str(workspace / props), "--out", str(out)]
    return runner.invoke(cli, args + list(extra)), out


def test_verify_constant_net_exits_zero(runner, workspace):
    result, out = _verify(runner, workspace, "constant.json", "constant_props.json")
    assert result.exit_code == 0, result.output
    assert "always: safe=1.000000 violation=0.000000 unknown=0.000000" in result.stdout
    report = json.loads((out / "always.json").read_text(encoding="utf-8"))
    assert report["rates"]["safe"] == 1.0
    assert report["config"]["backend"] == "sampled"
    assert os.path.exists(out / "aggregate.json")
    assert os.path.exists(out / "aggregate.csv")


def test_verify_crossing_reports_violation_and_counterexample(runner, workspace):
    result, out = _verify(runner, workspace, "crossing.json", "crossing_props.json", "--backend", "formal")
    assert result.exit_code == 1, result.output
    report = json.loads((out / "crossing.json").read_text(encoding="utf-8"))
    assert abs(report["rates"]["violation"] - 0.5) <= 1e-3
    assert report["counterexamples"]
    assert all(point[0] <= 0.5 for point in report["counterexamples"])


def test_verify_keeps_one_report_per_property(runner, workspace):
    # mesmo arquivo de propriedades sem nome em dois diretórios
    entries = [{"box": [[0, 1], [0, 1]], "loser": 0, "winners": [1]}]
    for sub in ("a", "b"):
        (workspace / sub).mkdir()
        (workspace / sub / "props.json").write_text(json.dumps(entries), encoding="utf-8")
    out = workspace / "out"
    result = runner.invoke(cli, [
        "verify", "--network", str(workspace / "constant.json"), "--props", str(workspace / "a" / "props.json"),
        "--props", str(workspace / "b" / "props.json"), "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    assert sorted(os.listdir(out)) == [
        "aggregate.csv", "aggregate.json", "props_property_0.json", "props_property_0_2.json",
    ]


def test_verify_property_named_aggregate_keeps_aggregate(runner, workspace, make_property):
    PropertyService.save_properties(
        [make_property([[0, 1], [0, 1]], loser=0, winners=[1], name="aggregate")], str(workspace / "agg.json")
    )
    result, out = _verify(runner, workspace, "constant.json", "agg.json")
    assert result.exit_code == 0, result.output
    assert json.loads((out / "aggregate_2.json").read_text(encoding="utf-8"))["property"] == "aggregate"
    assert json.loads((out / "aggregate.json").read_text(encoding="utf-8"))["properties"] == 1


def test_verify_only_unknown_exits_two(runner, workspace):
    result, _ = _verify(
        runner, workspace, "dependent.json", "dependent_props.json", "--backend", "formal", "--max-depth", "0"
    )
    assert result.exit_code == 2, result.output
    assert "unknown=1.000000" in result.stdout


def test_verify_missing_network_exits_three(runner, workspace):
    missing = str(workspace / "nao_existe.json")
    result = runner.invoke(cli, ["verify", "--network", missing, "--props", str(workspace / "crossing_props.json"),
                                 "--out", str(workspace / "out")])
    assert result.exit_code == 3
    assert missing in result.stderr


def test_verify_property_index_out_of_range_exits_three(runner, workspace, make_property):
    PropertyService.save_properties(
        [make_property([[0, 1]], loser=0, winners=[7], name="wide")], str(workspace / "wide.json")
    )
    result, _ = _verify(runner, workspace, "crossing.json", "wide.json")
    assert result.exit_code == 3
    assert "erro:" in result.stderr


def test_verify_csv_only(runner, workspace):
    result, out = _verify(runner, workspace, "crossing.json", "crossing_props.json", "--report", "csv")
    assert result.exit_code == 1
    assert not os.path.exists(out / "crossing.json")
    with open(out / "aggregate.csv", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert [row["property"] for row in rows] == ["crossing", "mean"]


def test_verify_reads_manifest(runner, workspace):
    manifest = workspace / "run.json"
    manifest.write_text(json.dumps({
        "network": str(workspace / "crossing.json"),
        "props": [str(workspace / "crossing_props.json")],
        "out": str(workspace / "from_manifest"),
        "config": {"backend": "formal", "max_depth": 16},
    }), encoding="utf-8")
    result = runner.invoke(cli, ["verify", "--manifest", str(manifest)])
    assert result.exit_code == 1, result.output
    report = json.loads((workspace / "from_manifest" / "crossing.json").read_text(encoding="utf-8"))
    assert report["config"]["backend"] == "formal"
    assert report["config"]["max_depth"] == 16


def test_flags_override_manifest_and_environment(runner, workspace, monkeypatch):
    monkeypatch.setenv("SFV_SEED", "7")
    result, out = _verify(runner, workspace, "crossing.json", "crossing_props.json")
    report = json.loads((out / "crossing.json").read_text(encoding="utf-8"))
    assert report["config"]["rng_seed"] == 7
    assert report["config"]["sampling"]["seed"] == 7
    result, out = _verify(runner, workspace, "crossing.json", "crossing_props.json", "--seed", "3")
    report = json.loads((out / "crossing.json").read_text(encoding="utf-8"))
    assert report["config"]["rng_seed"] == 3


def test_bounds_identity(runner, workspace, identity_net):
    NetworkIOService.save_network(identity_net, str(workspace / "identity.json"))
    result = runner.invoke(cli, ["bounds", "--network", str(workspace / "identity.json"), "--box", "0,1;0,1"])
    assert result.exit_code == 0, result.output
    assert result.stdout.splitlines() == ["y0: [0, 1] width=1", "y1: [0, 1] width=1"]


def test_bounds_sampled_is_deterministic(runner, workspace):
    args = ["bounds", "--network", str(workspace / "crossing.json"), "--props", str(workspace / "crossing_props.json"),
            "--backend", "sampled", "--seed", "5", "--json"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["provenance"] == "sampled"


def test_bounds_without_box_exits_three(runner, workspace):
    result = runner.invoke(cli, ["bounds", "--network", str(workspace / "crossing.json")])
    assert result.exit_code == 3


def test_bench_writes_csv(runner, workspace):
    out = workspace / "bench"
    result = runner.invoke(cli, [
        "bench", "--network", str(workspace / "crossing.json"), "--props", str(workspace / "crossing_props.json"),
        "--out", str(out), "--repeat", "3", "--informal-samples", "2000",
    ])
    assert result.exit_code == 0, result.output
    with open(out / "bench.csv", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        assert reader.fieldnames == BENCH_COLUMNS
        rows = list(reader)
    assert [row["backend"] for row in rows] == ["formal", "sampled", "informal"]
    assert all(row["repetitions"] == "3" for row in rows)
    for row in rows:
        assert abs(float(row["safe_rate_mean"]) - 0.5) <= 0.05
    assert "CSV:" in result.stdout


def test_generate_then_load(runner, tmp_path):
    path = tmp_path / "gerada.nnet"
    result = runner.invoke(cli, ["generate", "--sizes", "3,8,2", "--seed", "4", "--out", str(path)])
    assert result.exit_code == 0, result.output
    net = NetworkIOService.load_network(str(path))
    assert (net.input_dim, net.hidden_sizes, net.output_dim) == (3, [8], 2)


def test_generate_bad_sizes_exits_three(runner, tmp_path):
    result = runner.invoke(cli, ["generate", "--sizes", "3,x", "--out", str(tmp_path / "n.json")])
    assert result.exit_code == 3


def test_oracle_command(runner, workspace):
    out = workspace / "oracle"
    result = runner.invoke(cli, [
        "oracle", "--network", str(workspace / "crossing.json"), "--props", str(workspace / "crossing_props.json"),
        "--points", "1001", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    assert "crossing: grid_rate=0.499500" in result.stdout
    assert os.path.exists(out / "oracle.csv")


def test_sweep_area_command(runner, workspace, identity_net):
    NetworkIOService.save_network(identity_net, str(workspace / "identity.json"))
    out = workspace / "sweep"
    result = runner.invoke(cli, [
        "sweep", "--mode", "area", "--network", str(workspace / "identity.json"), "--box", "0,1;0,1",
        "--fractions", "1,0.5", "--reference-samples", "1000", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    with open(out / "sweep_area.csv", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 4
    assert float(rows[0]["formal_width"]) == 1.0
    assert float(rows[2]["formal_width"]) == 0.5


def test_unknown_command_is_usage_error(runner):
    result = runner.invoke(cli, ["nao-existe"])
    assert result.exit_code == 2


def _report(violation, unknown):
    return VerificationReport(
        property_name="p", safe_rate=1.0 - violation - unknown, violation_rate=violation, unknown_rate=unknown,
        leaves=LeafCensus(), counterexamples=[], propagations=0, forward_evaluations=0,
        max_depth_reached=0, wall_time=0.0, config={},
    )


def test_exit_code_precedence():
    assert exit_code_for([_report(0.0, 0.0)]) == 0
    assert exit_code_for([_report(0.0, 0.0), _report(0.0, 0.2)]) == 2
    assert exit_code_for([_report(0.1, 0.2), _report(0.0, 0.2)]) == 1
