"""
Grade regular usada como oráculo de força bruta.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from src.models.errors import BudgetError, ShapeError
from src.models.interval import Box

DEFAULT_GRID_BUDGET = 10 ** 8


@dataclass(frozen=True)
class GridSpec:
    """points_per_dim pontos (linspace, extremos incluídos) por dimensão ativa"""
    points_per_dim: int
    box: Box
    budget: int = DEFAULT_GRID_BUDGET

    def __post_init__(self):
        if self.points_per_dim < 2:
            raise ShapeError(f"points_per_dim deve ser >= 2, recebido {self.points_per_dim}")
        if self.size > self.budget:
            raise BudgetError(
                f"Grade com {self.size} pontos excede o orçamento de {self.budget} avaliações"
            )

    @property
    def size(self) -> int:
        # dimensões fixas contribuem com um único valor
        return int(self.points_per_dim) ** len(self.box.active_dims())

    def axes(self) -> List[np.ndarray]:
        axes = []
        for interval in self.box.dims:
            if interval.width > 0.0:
                axes.append(np.linspace(interval.lo, interval.hi, self.points_per_dim))
            else:
                axes.append(np.array([interval.lo]))
        return axes

    def chunk(self, start: int, stop: int) -> np.ndarray:
        """Pontos da grade com índice linear em [start, stop)."""
        axes = self.axes()
        shape = tuple(len(a) for a in axes)
        indices = np.unravel_index(np.arange(start, stop), shape)
        return np.stack([axis[idx] for axis, idx in zip(axes, indices)], axis=1)
