# src/commands/bounds.py
import click

from src.commands.common import handle_errors, network_options, parse_box, sampling_from
from src.models.backend_manager import BackendManager
from src.models.errors import ManifestError, PropertyError
from src.services.network_io_service import NetworkIOService
from src.services.property_service import PropertyService
from src.services.report_service import ReportService


@click.command("bounds")
@network_options
@click.option("--box", "box_text", default=None, help="Caixa 'lo,hi;lo,hi;...'")
@click.option("--props", default=None, help="Usa a caixa de uma propriedade deste arquivo")
@click.option("--property", "property_name", default=None, help="Nome da propriedade (padrão: a primeira)")
@click.option("--backend", type=click.Choice(["formal", "sampled"]), default="formal", show_default=True)
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--json", "as_json", is_flag=True, default=False, help="Saída em JSON")
@handle_errors
def bounds_cmd(network, fmt, box_text, props, property_name, backend, samples, seed, as_json):
    """Imprime os limites de cada saída da rede sobre uma caixa."""
    if not network:
        raise ManifestError("--network é obrigatório")
    net = NetworkIOService.load_network(network, fmt)
    if box_text:
        box = parse_box(box_text)
    elif props:
        properties = PropertyService.parse_properties(props, net.output_dim)
        matches = [p for p in properties if property_name in (None, p.name)]
        if not matches:
            raise PropertyError(f"propriedade {property_name!r} não encontrada", path=props)
        box = matches[0].input_box
    else:
        raise ManifestError("informe --box ou --props")

    manager = BackendManager(sampling_from(samples, seed))
    bounds = manager.compute_bounds(backend, net, box)
    if as_json:
        click.echo(ReportService.to_json(bounds.to_dict()))
        return
    for j, interval in enumerate(bounds.outs):
        click.echo(f"y{j}: [{interval.lo:.17g}, {interval.hi:.17g}] width={interval.width:.17g}")
