"""
Serviço de oráculo: verdade de referência por força bruta em uma grade regular
"""

import logging
from typing import Optional

import numpy as np

from src.models.errors import ShapeError
from src.models.grid import GridSpec
from src.models.interval import Box, OutputBounds, Provenance
from src.models.network import Network
from src.models.property import DecisionProperty

logger = logging.getLogger(__name__)

GRID_CHUNK = 200_000


class OracleService:
    """Avaliação exaustiva da rede em todos os pontos de uma grade"""

    @staticmethod
    def grid_rate(net: Network, prop: DecisionProperty, grid: GridSpec) -> float:
        """
        Fração dos pontos da grade que satisfazem a asserção.

        Args:
            net: Rede verificada
            prop: Propriedade de decisão (a grade cobre a caixa dela)
            grid: Especificação da grade

        Returns:
            float: Fração em [0, 1]
        """
        prop.bind(net.input_dim, net.output_dim)
        if grid.box != prop.input_box:
            grid = GridSpec(grid.points_per_dim, prop.input_box, grid.budget)
        satisfied = 0
        for start in range(0, grid.size, GRID_CHUNK):
            points = grid.chunk(start, min(start + GRID_CHUNK, grid.size))
            satisfied += int(np.count_nonzero(prop.assertion.holds(net.forward_batch(points))))
        rate = satisfied / grid.size
        logger.info(f"Oráculo {prop.name}: {grid.size} pontos, taxa {rate:.6f}")
        return rate

    @staticmethod
    def grid_bounds(net: Network, box: Optional[Box], grid: GridSpec) -> OutputBounds:
        """
        Mínimo e máximo de cada saída sobre a grade.

        Args:
            net: Rede avaliada
            box: Caixa analisada (None usa grid.box)
            grid: Especificação da grade

        Returns:
            OutputBounds: Limites observados (sub-aproximação, proveniência SAMPLED)
        """
        if box is not None and box != grid.box:
            grid = GridSpec(grid.points_per_dim, box, grid.budget)
        OracleService._check(net, grid.box)
        lower = np.full(net.output_dim, np.inf)
        upper = np.full(net.output_dim, -np.inf)
        for start in range(0, grid.size, GRID_CHUNK):
            outputs = net.forward_batch(grid.chunk(start, min(start + GRID_CHUNK, grid.size)))
            lower = np.minimum(lower, outputs.min(axis=0))
            upper = np.maximum(upper, outputs.max(axis=0))
        return OutputBounds.from_arrays(lower, upper, Provenance.SAMPLED)

    @staticmethod
    def _check(net: Network, box: Box) -> None:
        if len(box) != net.input_dim:
            raise ShapeError(f"Grade com {len(box)} dimensões, rede tem {net.input_dim} entradas")
