# src/commands/oracle.py
import os

import click

from src.commands.common import handle_errors, network_options
from src.config import get_settings
from src.models.errors import ManifestError
from src.models.grid import GridSpec
from src.services.network_io_service import NetworkIOService
from src.services.oracle_service import OracleService
from src.services.property_service import PropertyService
from src.services.report_service import ReportService

ORACLE_COLUMNS = ["property", "points_per_dim", "grid_size", "grid_rate"]


@click.command("oracle")
@network_options
@click.option("--props", multiple=True, help="Arquivo(s) de propriedades")
@click.option("--points", "points_per_dim", type=int, default=101, show_default=True,
              help="Pontos por dimensão ativa")
@click.option("--out", default=None, help="Grava oracle.csv neste diretório")
@handle_errors
def oracle_cmd(network, fmt, props, points_per_dim, out):
    """Taxa de referência por força bruta em uma grade regular (redes pequenas)."""
    if not network or not props:
        raise ManifestError("--network e --props são obrigatórios")
    settings = get_settings()
    net = NetworkIOService.load_network(network, fmt)
    rows = []
    for path in props:
        for prop in PropertyService.parse_properties(path, net.output_dim):
            grid = GridSpec(points_per_dim, prop.input_box, settings.grid_budget)
            rate = OracleService.grid_rate(net, prop, grid)
            rows.append({
                "property": prop.name,
                "points_per_dim": points_per_dim,
                "grid_size": grid.size,
                "grid_rate": rate,
            })
            click.echo(f"{prop.name}: grid_rate={rate:.6f} ({grid.size} pontos)")
    if out:
        ReportService.write_csv(rows, os.path.join(out, "oracle.csv"), ORACLE_COLUMNS)
