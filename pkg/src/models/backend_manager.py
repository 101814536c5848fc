"""
Gerenciador de back-ends de limites.
Registra os back-ends disponíveis e fornece uma interface unificada por nome.
"""

from typing import Dict, Optional
import logging

from src.models.backend_base import BoundBackend
from src.models.errors import ShapeError
from src.models.formal_backend import FormalBackend
from src.models.interval import Box, OutputBounds, SamplingConfig
from src.models.network import Network
from src.models.sampled_backend import SampledBackend

logger = logging.getLogger(__name__)


class BackendManager:
    """
    Registro central dos back-ends de propagação.
    Cada execução cria o seu, para que os contadores não se misturem.
    """

    def __init__(self, sampling: Optional[SamplingConfig] = None, register_defaults: bool = True):
        self.backends: Dict[str, BoundBackend] = {}
        if register_defaults:
            self.register_backend(FormalBackend())
            self.register_backend(SampledBackend(sampling))

    def register_backend(self, backend: BoundBackend, name: Optional[str] = None) -> None:
        """
        Registra um back-end.

        Args:
            backend: Instância do back-end
            name: Nome único (padrão: backend.name)
        """
        key = name or backend.name
        if key in self.backends:
            logger.warning(f"Back-end {key} substituído")
        self.backends[key] = backend
        logger.debug(f"Back-end {key} registrado")

    def get_backend(self, name: str) -> BoundBackend:
        backend = self.backends.get(str(name).lower())
        if backend is None:
            raise ShapeError(f"Back-end {name!r} não registrado (disponíveis: {sorted(self.backends)})")
        return backend

    @property
    def formal(self) -> FormalBackend:
        return self.get_backend(FormalBackend.name)

    @property
    def sampled(self) -> SampledBackend:
        return self.get_backend(SampledBackend.name)

    def compute_bounds(self, name: str, net: Network, box: Box) -> OutputBounds:
        """Calcula limites com o back-end indicado."""
        return self.get_backend(name).compute_bounds(net, box)

    def total_propagations(self) -> int:
        return sum(backend.stats.propagations for backend in self.backends.values())

    def total_forward_evaluations(self) -> int:
        return sum(backend.stats.forward_evaluations for backend in self.backends.values())
