"""
Propriedades de decisão: uma caixa de entrada e uma asserção de dominância entre saídas.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Optional, Tuple

import numpy as np

from src.models.errors import PropertyError, ShapeError
from src.models.interval import Box


class AssertionMode(Enum):
    """Como o conjunto de vencedores é combinado"""
    ALL_OF = "all_of"
    ANY_OF = "any_of"

    @classmethod
    def parse(cls, value: str) -> "AssertionMode":
        normalized = str(value).strip().lower().replace("-", "_")
        aliases = {"all_of": cls.ALL_OF, "allof": cls.ALL_OF, "all": cls.ALL_OF,
                   "any_of": cls.ANY_OF, "anyof": cls.ANY_OF, "any": cls.ANY_OF}
        if normalized not in aliases:
            raise PropertyError(f"Modo desconhecido: {value!r} (use 'all_of' ou 'any_of')")
        return aliases[normalized]


class VerdictKind(Enum):
    PROVED = "proved"
    DENIED = "denied"
    UNKNOWN = "unknown"


# códigos usados nas classificações vetorizadas
UNKNOWN_CODE, PROVED_CODE, DENIED_CODE = 0, 1, 2
# dominância invertida vista apenas em amostras: vira DENIED só com testemunha concreta
REVERSED_SAMPLED_CODE = 3
_KIND_BY_CODE = {UNKNOWN_CODE: VerdictKind.UNKNOWN, PROVED_CODE: VerdictKind.PROVED, DENIED_CODE: VerdictKind.DENIED}


@dataclass(frozen=True)
class DominanceAssertion:
    """y_loser < y_w para todos (ALL_OF) ou algum (ANY_OF) w em winners"""
    loser: int
    winners: FrozenSet[int]
    mode: AssertionMode = AssertionMode.ALL_OF

    def __post_init__(self):
        winners = frozenset(int(w) for w in self.winners)
        object.__setattr__(self, "winners", winners)
        if not winners:
            raise PropertyError("Conjunto de vencedores vazio")
        if self.loser in winners:
            raise PropertyError(f"Saída {self.loser} não pode dominar a si mesma")
        if self.loser < 0 or min(winners) < 0:
            raise PropertyError("Índices de saída devem ser não negativos")

    @property
    def winner_index(self) -> np.ndarray:
        return np.array(sorted(self.winners), dtype=np.intp)

    def max_index(self) -> int:
        return max(self.loser, *self.winners)

    def check_indices(self, output_dim: int) -> None:
        if self.max_index() >= output_dim:
            raise PropertyError(
                f"Índice de saída {self.max_index()} fora do intervalo para {output_dim} saídas"
            )

    def holds(self, outputs: np.ndarray) -> np.ndarray:
        """
        Avaliação pontual da asserção.

        Args:
            outputs: Array (..., output_dim) de saídas concretas

        Returns:
            np.ndarray: Máscara booleana (...) dos pontos que satisfazem a asserção
        """
        loser = outputs[..., self.loser][..., None]
        beats = loser < outputs[..., self.winner_index]
        if self.mode is AssertionMode.ALL_OF:
            return np.all(beats, axis=-1)
        return np.any(beats, axis=-1)

    def classify(self, lower: np.ndarray, upper: np.ndarray, formal: bool) -> np.ndarray:
        """
        Veredito por comparação de limites, vetorizado sobre a primeira dimensão.

        Args:
            lower: Limites inferiores (N, output_dim)
            upper: Limites superiores (N, output_dim)
            formal: Se os limites são sãos; limites amostrados nunca negam sozinhos

        Returns:
            np.ndarray: Códigos PROVED_CODE / DENIED_CODE / UNKNOWN_CODE por linha
        """
        winners = self.winner_index
        loser_hi = upper[:, self.loser][:, None]
        loser_lo = lower[:, self.loser][:, None]
        # b < c_w (desigualdade estrita: contato é desconhecido)
        beats = loser_hi < lower[:, winners]
        # d_w <= a: w nunca supera o perdedor na subárea
        reversed_ = upper[:, winners] <= loser_lo
        if self.mode is AssertionMode.ALL_OF:
            proved = np.all(beats, axis=1)
            denied = np.any(reversed_, axis=1)
        else:
            proved = np.any(beats, axis=1)
            denied = np.all(reversed_, axis=1)
        codes = np.full(lower.shape[0], UNKNOWN_CODE, dtype=np.int8)
        if formal:
            codes[denied] = DENIED_CODE
        else:
            codes[denied] = REVERSED_SAMPLED_CODE
        codes[proved] = PROVED_CODE
        return codes

    def to_dict(self) -> Dict[str, Any]:
        return {"loser": self.loser, "winners": sorted(self.winners), "mode": self.mode.value}


@dataclass(frozen=True)
class Verdict:
    """Resultado da verificação de uma subárea"""
    kind: VerdictKind
    witness: Optional[Tuple[float, ...]] = None

    @classmethod
    def from_code(cls, code: int, witness: Optional[np.ndarray] = None) -> "Verdict":
        kind = _KIND_BY_CODE.get(int(code), VerdictKind.UNKNOWN)
        if kind is VerdictKind.DENIED and witness is not None:
            return cls(kind, tuple(float(v) for v in witness))
        return cls(kind)

    @property
    def is_final(self) -> bool:
        return self.kind is not VerdictKind.UNKNOWN


@dataclass(frozen=True)
class DecisionProperty:
    """Θ: se x ∈ input_box então a asserção de dominância vale"""
    name: str
    input_box: Box
    assertion: DominanceAssertion
    description: str = ""
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def bind(self, input_dim: int, output_dim: int) -> None:
        """Valida a propriedade contra as dimensões da rede."""
        if len(self.input_box) != input_dim:
            raise ShapeError(
                f"Propriedade {self.name}: caixa com {len(self.input_box)} dimensões, rede tem {input_dim} entradas"
            )
        self.assertion.check_indices(output_dim)

    def to_dict(self) -> Dict[str, Any]:
        data = {"name": self.name, "box": self.input_box.to_list(), **self.assertion.to_dict()}
        if self.description:
            data["description"] = self.description
        data.update(self.metadata)
        return data
