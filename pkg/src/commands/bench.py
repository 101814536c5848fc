# src/commands/bench.py
import os

import click

from src.commands.common import build_manifest, handle_errors, load_inputs, run_options
from src.models.backend_base import BackendKind
from src.models.errors import PropertyError
from src.services.bench_service import BENCH_COLUMNS, BenchService
from src.services.report_service import ReportService


@click.command("bench")
@run_options
@click.option("--backends", default="formal,sampled", show_default=True,
              help="Back-ends comparados, separados por vírgula")
@click.option("--repeat", "repetitions", type=int, default=1, show_default=True)
@click.option("--informal-samples", "informal_samples", type=int, default=100_000, show_default=True,
              help="Amostras da linha informal (0 desliga)")
@handle_errors
def bench_cmd(backends, repetitions, informal_samples, **options):
    """Compara formal, semi-formal e informal: taxas, larguras, propagações e tempo (CSV)."""
    manifest = build_manifest(**options)
    net, properties = load_inputs(manifest)
    if not properties:
        raise PropertyError("nenhuma propriedade para o benchmark")
    kinds = [BackendKind.parse(name) for name in backends.split(",") if name.strip()]
    rows = BenchService.run_bench(
        net, properties, manifest.config, kinds,
        repetitions=repetitions, informal_samples=informal_samples,
    )
    path = ReportService.write_csv(rows, os.path.join(manifest.output_dir, "bench.csv"), BENCH_COLUMNS)
    for row in rows:
        click.echo(
            f"{row['backend']:>8} {row['property']}: safe={row['safe_rate_mean']:.6f}"
            f"±{row['safe_rate_std']:.6f} tempo={row['wall_time_mean_s']:.4f}s"
        )
    click.echo(f"CSV: {path}")
