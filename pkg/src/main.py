import logging
import os
import sys

import click

# garante import "src.*"
BASE_DIR = os.path.dirname(os.path.dirname(__file__))
if BASE_DIR not in sys.path:
    sys.path.insert(0, BASE_DIR)

from src.config import get_settings
from src.commands.bench import bench_cmd
from src.commands.bounds import bounds_cmd
from src.commands.generate import generate_cmd
from src.commands.oracle import oracle_cmd
from src.commands.sweep import sweep_cmd
from src.commands.verify import verify_cmd

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def create_cli() -> click.Group:
    """Monta o grupo de comandos; cada subcomando vive em src/commands/."""

    @click.group(name="sfv")
    @click.option("--log-level", "log_level", default=None,
                  type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
                  help="Nível de log (padrão: SFV_LOG_LEVEL)")
    def group(log_level):
        """Verificação semi-formal de políticas ReLU: taxas de segurança, violação e indecisão."""
        level = (log_level or get_settings().log_level).upper()
        logging.basicConfig(level=getattr(logging, level, logging.INFO), format=LOG_FORMAT, stream=sys.stderr)
        logging.getLogger().setLevel(getattr(logging, level, logging.INFO))

    group.add_command(verify_cmd)
    group.add_command(bench_cmd)
    group.add_command(bounds_cmd)
    group.add_command(oracle_cmd)
    group.add_command(sweep_cmd)
    group.add_command(generate_cmd)
    return group


cli = create_cli()


if __name__ == "__main__":
    cli()
