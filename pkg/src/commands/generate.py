# src/commands/generate.py
import click

from src.commands.common import handle_errors
from src.models.errors import ShapeError
from src.models.network import random_network
from src.services.network_io_service import NetworkIOService


@click.command("generate")
@click.option("--sizes", required=True, help="Tamanhos das camadas, ex.: 4,64,64,2")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--bias-scale", "bias_scale", type=float, default=0.1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "nnet"]), default=None)
@click.option("--out", "path", required=True, help="Arquivo de destino")
@handle_errors
def generate_cmd(sizes, seed, bias_scale, fmt, path):
    """Gera uma rede ReLU densa aleatória (inicialização He) para experimentos."""
    try:
        layer_sizes = [int(v) for v in sizes.split(",") if v.strip()]
    except ValueError:
        raise ShapeError(f"--sizes inválido: {sizes!r}")
    net = random_network(layer_sizes, seed=seed, bias_scale=bias_scale)
    NetworkIOService.save_network(net, path, fmt)
    click.echo(f"Rede {layer_sizes} gravada em {path}")
