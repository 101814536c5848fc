# src/commands/common.py: opções compartilhadas, manifesto e tratamento de erros da CLI
import functools
import logging
from dataclasses import replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click

from src.config import get_settings
from src.models.backend_base import BackendKind
from src.models.errors import ManifestError, ShapeError, VerifierError
from src.models.interval import Box, SamplingConfig
from src.models.manifest import REPORT_FORMATS, RunManifest
from src.models.network import Network
from src.models.property import DecisionProperty
from src.models.verification import SplitStrategy, VerifierConfig
from src.services.network_io_service import NetworkIOService
from src.services.property_service import PropertyService

logger = logging.getLogger(__name__)

EXIT_PROVED = 0
EXIT_VIOLATION = 1
EXIT_UNKNOWN = 2
EXIT_VERIFIER_ERROR = 3
EXIT_UNEXPECTED = 4


def handle_errors(func: Callable) -> Callable:
    """VerifierError vira código 3 com diagnóstico arquivo:linha; qualquer outra exceção vira 4."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.exceptions.Abort):
            raise
        except VerifierError as e:
            logger.error(f"Falha na verificação: {e}")
            click.echo(f"erro: {e}", err=True)
            raise SystemExit(EXIT_VERIFIER_ERROR)
        except Exception as e:
            logger.exception(f"Erro inesperado: {e}")
            click.echo(f"erro inesperado: {e}", err=True)
            raise SystemExit(EXIT_UNEXPECTED)

    return wrapper


def network_options(func: Callable) -> Callable:
    options = [
        click.option("--network", "network", default=None, help="Arquivo da rede"),
        click.option("--format", "fmt", type=click.Choice(["json", "nnet"]), default=None,
                     help="Formato da rede (padrão: pela extensão)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def run_options(func: Callable) -> Callable:
    """Flags comuns a verify e bench."""
    options = [
        click.option("--manifest", "manifest_path", default=None, help="Manifesto JSON da execução"),
        click.option("--props", "props", multiple=True, help="Arquivo(s) de propriedades"),
        click.option("--backend", type=click.Choice(["formal", "sampled", "hybrid"]), default=None),
        click.option("--samples", type=int, default=None, help="Amostras por subárea"),
        click.option("--max-depth", "max_depth", type=int, default=None),
        click.option("--min-width", "min_width", type=float, default=None),
        click.option("--split", type=click.Choice(["random", "widest", "roundrobin"]), default=None),
        click.option("--seed", type=int, default=None, help="Semente (padrão: SFV_SEED)"),
        click.option("--threads", type=int, default=None),
        click.option("--out", "out", default=None, help="Diretório dos relatórios"),
        click.option("--report", "report", type=click.Choice(list(REPORT_FORMATS)), multiple=True),
        click.option("--raw-box", "raw_box", is_flag=True, default=False,
                     help="Caixas das propriedades em coordenadas brutas (normalização NNet)"),
    ]
    for option in reversed(options):
        func = option(func)
    return network_options(func)


def _config_from_sources(manifest_config: Dict[str, Any], flags: Dict[str, Any]) -> VerifierConfig:
    settings = get_settings()
    data = dict(manifest_config)
    data.setdefault("rng_seed", settings.seed)
    data.setdefault("threads", settings.threads)
    if flags.get("seed") is not None:
        data["rng_seed"] = flags["seed"]
    sampling = dict(data.get("sampling") or {})
    if flags.get("seed") is not None or "seed" not in sampling:
        sampling["seed"] = data["rng_seed"]
    if flags.get("samples") is not None:
        sampling["n"] = flags["samples"]
    data["sampling"] = sampling
    try:
        cfg = VerifierConfig.from_dict(data)
    except (TypeError, ValueError) as e:
        raise ManifestError(f"configuração inválida: {e}")
    return cfg.with_overrides(
        backend=BackendKind.parse(flags["backend"]) if flags.get("backend") else None,
        max_depth=flags.get("max_depth"),
        min_width=flags.get("min_width"),
        split_strategy=SplitStrategy.parse(flags["split"]) if flags.get("split") else None,
        threads=flags.get("threads"),
    )


def build_manifest(
    network: Optional[str] = None,
    fmt: Optional[str] = None,
    props: Sequence[str] = (),
    manifest_path: Optional[str] = None,
    out: Optional[str] = None,
    report: Sequence[str] = (),
    raw_box: bool = False,
    **flags: Any,
) -> RunManifest:
    """
    Monta o manifesto efetivo: flags > manifesto JSON > ambiente > padrões.

    Returns:
        RunManifest: Manifesto validado
    """
    data = RunManifest.read_file(manifest_path) if manifest_path else {}
    network_path = network or data.get("network")
    if not network_path:
        raise ManifestError("nenhuma rede informada (--network ou 'network' no manifesto)")
    report_formats = list(report) or list(data.get("report") or REPORT_FORMATS)
    manifest = RunManifest(
        network_path=network_path,
        network_format=fmt or data.get("format"),
        property_paths=list(props) or list(data.get("props") or []),
        config=_config_from_sources(data.get("config") or {}, flags),
        output_dir=out or data.get("out") or get_settings().output_dir,
        report_formats=report_formats,
        raw_box=bool(raw_box) or bool(data.get("raw_box", False)),
    )
    manifest.validate()
    return manifest


def load_inputs(manifest: RunManifest) -> Tuple[Network, List[DecisionProperty]]:
    """Carrega a rede e todas as propriedades do manifesto, já convertidas para as entradas da rede."""
    net = NetworkIOService.load_network(manifest.network_path, manifest.network_format)
    properties: List[DecisionProperty] = []
    for path in manifest.property_paths:
        properties.extend(PropertyService.parse_properties(path, net.output_dim))
    if manifest.raw_box:
        if net.normalization is None:
            logger.warning("--raw-box ignorado: a rede não tem normalização de entrada")
        else:
            properties = [
                replace(p, input_box=PropertyService.normalize_box(p.input_box, net.normalization))
                for p in properties
            ]
    for prop in properties:
        prop.bind(net.input_dim, net.output_dim)
    return net, properties


def parse_box(text: str) -> Box:
    """'lo,hi;lo,hi' -> Box"""
    pairs = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        values = [v.strip() for v in part.split(",")]
        if len(values) != 2:
            raise ShapeError(f"intervalo inválido em --box: {part!r} (use lo,hi)")
        try:
            pairs.append([float(values[0]), float(values[1])])
        except ValueError:
            raise ShapeError(f"valor não numérico em --box: {part!r}")
    if not pairs:
        raise ShapeError("--box vazio")
    return Box.from_pairs(pairs)


def sampling_from(samples: Optional[int], seed: Optional[int]) -> SamplingConfig:
    settings = get_settings()
    return SamplingConfig(n=samples if samples is not None else 20,
                          seed=seed if seed is not None else settings.seed)
