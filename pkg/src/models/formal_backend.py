"""
Back-end formal: propagação intervalar camada a camada.
Envoltória sã (sem arredondamento dirigido) dos valores que a rede atinge na caixa.
"""

from typing import Tuple

import numpy as np

from src.models.backend_base import BoundBackend
from src.models.interval import Box, OutputBounds, Provenance, affine_bounds
from src.models.network import Activation, Network


class FormalBackend(BoundBackend):
    """Aritmética intervalar ingênua, sem relaxação simbólica"""

    name = "formal"

    def compute_bounds(self, net: Network, box: Box) -> OutputBounds:
        self.check_box(net, box)
        lower, upper = self.compute_bounds_batch(net, box.lower[None, :], box.upper[None, :])
        return OutputBounds.from_arrays(lower[0], upper[0], Provenance.FORMAL)

    def compute_bounds_batch(
        self, net: Network, lower: np.ndarray, upper: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        lower = np.asarray(lower, dtype=np.float64)
        upper = np.asarray(upper, dtype=np.float64)
        self.check_batch(net, lower, upper)
        for layer in net.layers:
            lower, upper = affine_bounds(
                lower, upper, layer.positive_weights, layer.negative_weights, layer.bias
            )
            if layer.activation is Activation.RELU:
                lower = np.maximum(lower, 0.0)
                upper = np.maximum(upper, 0.0)
        self._record(lower.shape[0])
        return lower, upper
