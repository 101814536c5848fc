"""
Classe base abstrata para back-ends de propagação de limites.
Define a interface comum que o back-end formal e o semi-formal implementam.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Tuple
import threading

import numpy as np

from src.models.errors import ShapeError
from src.models.interval import Box, OutputBounds
from src.models.network import Network


class BackendKind(Enum):
    """Back-end usado pelo verificador"""
    FORMAL = "formal"
    SAMPLED = "sampled"
    HYBRID = "hybrid"

    @classmethod
    def parse(cls, value: str) -> "BackendKind":
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ShapeError(f"Back-end desconhecido: {value!r}")


@dataclass
class BackendStats:
    """Contadores de uso de um back-end"""
    propagations: int = 0
    forward_evaluations: int = 0


class BoundBackend(ABC):
    """
    Classe base abstrata para todos os back-ends de limites.
    Implementações não guardam estado mutável além dos contadores.
    """

    name: str = "base"

    def __init__(self):
        self.stats = BackendStats()
        self._lock = threading.Lock()

    def _record(self, propagations: int, forward_evaluations: int = 0) -> None:
        with self._lock:
            self.stats.propagations += propagations
            self.stats.forward_evaluations += forward_evaluations

    @abstractmethod
    def compute_bounds(self, net: Network, box: Box) -> OutputBounds:
        """
        Calcula os limites de saída da rede sobre uma caixa.

        Args:
            net: Rede verificada
            box: Caixa de entrada (uma dimensão por entrada da rede)

        Returns:
            OutputBounds: Um intervalo por saída
        """
        pass

    @abstractmethod
    def compute_bounds_batch(
        self, net: Network, lower: np.ndarray, upper: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        Versão em lote de compute_bounds.

        Args:
            net: Rede verificada
            lower: Extremos inferiores (N, input_dim)
            upper: Extremos superiores (N, input_dim)

        Returns:
            Tuple: Limites inferiores e superiores (N, output_dim)
        """
        pass

    def check_box(self, net: Network, box: Box) -> None:
        if len(box) != net.input_dim:
            raise ShapeError(f"Caixa com {len(box)} dimensões, rede tem {net.input_dim} entradas")

    def check_batch(self, net: Network, lower: np.ndarray, upper: np.ndarray) -> None:
        if lower.shape != upper.shape or lower.ndim != 2 or lower.shape[1] != net.input_dim:
            raise ShapeError(
                f"Lote de caixas com shapes {lower.shape}/{upper.shape}, esperado (N, {net.input_dim})"
            )
