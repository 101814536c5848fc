# src/config.py: configuração por variáveis de ambiente (.env opcional)
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from src.models.grid import DEFAULT_GRID_BUDGET

BASE_DIR = Path(__file__).resolve().parent.parent
ENV_PATH = BASE_DIR / ".env"


@dataclass(frozen=True)
class Settings:
    """Valores padrão vindos do ambiente; flags da CLI e manifesto têm precedência"""
    seed: int = 0
    threads: int = 1
    log_level: str = "INFO"
    grid_budget: int = DEFAULT_GRID_BUDGET
    output_dir: str = "reports"


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Variável {name} deve ser inteira, recebido {raw!r}")


def get_settings(env_path: Optional[Path] = None) -> Settings:
    """
    Lê SFV_SEED, SFV_THREADS, SFV_LOG_LEVEL, SFV_GRID_BUDGET e SFV_OUTPUT_DIR.

    Args:
        env_path: Arquivo .env alternativo (padrão: .env na raiz do projeto)

    Returns:
        Settings: Configuração do ambiente
    """
    path = env_path or ENV_PATH
    if path.exists():
        # variáveis já exportadas não são sobrescritas
        load_dotenv(path, override=False)
    return Settings(
        seed=_int_env("SFV_SEED", 0),
        threads=max(1, _int_env("SFV_THREADS", 1)),
        log_level=os.getenv("SFV_LOG_LEVEL", "INFO").upper(),
        grid_budget=_int_env("SFV_GRID_BUDGET", DEFAULT_GRID_BUDGET),
        output_dir=os.getenv("SFV_OUTPUT_DIR", "reports"),
    )
