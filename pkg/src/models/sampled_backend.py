"""
Back-end semi-formal: limites estimados por amostragem.
Amostra n pontos uniformes na subárea (mais os vértices, se couberem em n),
avalia a rede e usa mínimo e máximo de cada saída. Sub-aproxima a envoltória real.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.models.backend_base import BoundBackend
from src.models.interval import Box, OutputBounds, Provenance, SamplingConfig, box_hash, box_vertices
from src.models.network import Network


@dataclass
class SampleBatch:
    """Pontos amostrados e saídas de um lote de caixas (concatenados)"""
    points: np.ndarray
    outputs: np.ndarray
    offsets: np.ndarray

    def node_points(self, index: int) -> np.ndarray:
        return self.points[self.offsets[index]:self.offsets[index + 1]]

    def node_outputs(self, index: int) -> np.ndarray:
        return self.outputs[self.offsets[index]:self.offsets[index + 1]]

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        starts = self.offsets[:-1]
        return np.minimum.reduceat(self.outputs, starts, axis=0), np.maximum.reduceat(self.outputs, starts, axis=0)


def node_rng(seed: int, lower: np.ndarray, upper: np.ndarray, stream: int = 0) -> np.random.Generator:
    """Gerador local a uma subárea: depende só da semente e da caixa."""
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, box_hash(lower, upper), stream])


def sample_box(lower: np.ndarray, upper: np.ndarray, cfg: SamplingConfig) -> np.ndarray:
    """
    Pontos uniformes i.i.d. na caixa, seguidos dos vértices quando 2**ativas <= n.

    Args:
        lower: Extremos inferiores da caixa
        upper: Extremos superiores da caixa
        cfg: Configuração de amostragem

    Returns:
        np.ndarray: Pontos (m, input_dim)
    """
    rng = node_rng(cfg.seed, lower, upper)
    # prefixos aninhados: random((n, d))[:k] == random((k, d)) para a mesma semente
    points = lower + rng.random((cfg.n, lower.shape[0])) * (upper - lower)
    points = np.clip(points, lower, upper)
    active = int(np.count_nonzero(upper > lower))
    if cfg.include_vertices and 2 ** active <= cfg.n:
        points = np.vstack([points, box_vertices(lower, upper)])
    return points


class SampledBackend(BoundBackend):
    """Propagação semi-formal por avaliações concretas da rede"""

    name = "sampled"

    def __init__(self, sampling: Optional[SamplingConfig] = None):
        super().__init__()
        self.sampling = sampling or SamplingConfig()

    def compute_bounds(self, net: Network, box: Box) -> OutputBounds:
        self.check_box(net, box)
        lower, upper = self.compute_bounds_batch(net, box.lower[None, :], box.upper[None, :])
        return OutputBounds.from_arrays(lower[0], upper[0], Provenance.SAMPLED)

    def compute_bounds_batch(
        self, net: Network, lower: np.ndarray, upper: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        return self.sample_batch(net, lower, upper).bounds()

    def sample_batch(self, net: Network, lower: np.ndarray, upper: np.ndarray) -> SampleBatch:
        """
        Amostra e avalia cada caixa do lote com uma única passada da rede.

        Args:
            net: Rede verificada
            lower: Extremos inferiores (N, input_dim)
            upper: Extremos superiores (N, input_dim)

        Returns:
            SampleBatch: Pontos, saídas e deslocamentos por caixa
        """
        lower = np.asarray(lower, dtype=np.float64)
        upper = np.asarray(upper, dtype=np.float64)
        self.check_batch(net, lower, upper)
        per_node: List[np.ndarray] = [sample_box(lo, hi, self.sampling) for lo, hi in zip(lower, upper)]
        offsets = np.zeros(len(per_node) + 1, dtype=np.intp)
        offsets[1:] = np.cumsum([len(p) for p in per_node])
        points = np.vstack(per_node) if per_node else np.empty((0, net.input_dim))
        outputs = net.forward_batch(points)
        self._record(len(per_node), len(points))
        return SampleBatch(points=points, outputs=outputs, offsets=offsets)
