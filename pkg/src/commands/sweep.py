# src/commands/sweep.py
import os

import click

from src.commands.common import handle_errors, network_options, parse_box, sampling_from
from src.config import get_settings
from src.models.errors import ManifestError
from src.services.bench_service import AREA_SWEEP_COLUMNS, SIZE_SWEEP_COLUMNS, BenchService
from src.services.network_io_service import NetworkIOService
from src.services.property_service import PropertyService
from src.services.report_service import ReportService


def _int_list(text: str):
    return [int(v) for v in text.split(",") if v.strip()]


def _float_list(text: str):
    return [float(v) for v in text.split(",") if v.strip()]


@click.command("sweep")
@click.option("--mode", type=click.Choice(["area", "size"]), required=True)
@network_options
@click.option("--box", "box_text", default=None, help="Caixa completa 'lo,hi;...' (modo area)")
@click.option("--props", default=None, help="Usa a caixa da primeira propriedade (modo area)")
@click.option("--fractions", default="1,0.5,0.25,0.1,0.05,0.01", show_default=True)
@click.option("--reference-samples", "reference_samples", type=int, default=100_000, show_default=True)
@click.option("--inputs", "input_dim", type=int, default=5, show_default=True, help="Entradas (modo size)")
@click.option("--outputs", "output_dim", type=int, default=5, show_default=True, help="Saídas (modo size)")
@click.option("--hidden", default="16,32,64,128,256", show_default=True, help="Larguras ocultas (modo size)")
@click.option("--layers", type=int, default=2, show_default=True)
@click.option("--repeat", "repetitions", type=int, default=5, show_default=True)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", default=None, help="Diretório do CSV (padrão: SFV_OUTPUT_DIR)")
@handle_errors
def sweep_cmd(mode, network, fmt, box_text, props, fractions, reference_samples, input_dim, output_dim,
              hidden, layers, repetitions, samples, seed, out):
    """Dados para gráficos: largura dos limites por área ou tempo de propagação por tamanho de rede."""
    sampling = sampling_from(samples, seed)
    out_dir = out or get_settings().output_dir
    if mode == "size":
        rows = BenchService.size_sweep(
            input_dim, output_dim, _int_list(hidden), layers, sampling,
            repetitions=repetitions, seed=sampling.seed,
        )
        path = ReportService.write_csv(rows, os.path.join(out_dir, "sweep_size.csv"), SIZE_SWEEP_COLUMNS)
    else:
        if not network:
            raise ManifestError("--network é obrigatório no modo area")
        net = NetworkIOService.load_network(network, fmt)
        if box_text:
            box = parse_box(box_text)
        elif props:
            box = PropertyService.parse_properties(props, net.output_dim)[0].input_box
        else:
            raise ManifestError("informe --box ou --props no modo area")
        rows = BenchService.area_sweep(net, box, _float_list(fractions), sampling, reference_samples)
        path = ReportService.write_csv(rows, os.path.join(out_dir, "sweep_area.csv"), AREA_SWEEP_COLUMNS)
    click.echo(f"CSV: {path} ({len(rows)} linha(s))")
