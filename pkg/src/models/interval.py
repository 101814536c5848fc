"""
Aritmética intervalar: intervalos, caixas (áreas/subáreas) e limites de saída.
"""

import hashlib
import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from src.models.errors import NumericError, ShapeError


class Provenance(Enum):
    """Origem de um limite de saída"""
    FORMAL = "formal"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class Interval:
    """Intervalo fechado [lo, hi] com extremos finitos"""
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise NumericError(f"Intervalo com extremo não finito: [{lo}, {hi}]")
        if lo > hi:
            raise ShapeError(f"Intervalo inválido: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def to_list(self) -> List[float]:
        return [self.lo, self.hi]


@dataclass(frozen=True)
class Box:
    """Uma área: um intervalo por entrada da rede"""
    dims: Tuple[Interval, ...]

    def __post_init__(self):
        dims = tuple(self.dims)
        if not dims:
            raise ShapeError("Caixa sem dimensões")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "Box":
        dims = []
        for pair in pairs:
            if len(pair) != 2:
                raise ShapeError(f"Esperado par [lo, hi], recebido {list(pair)}")
            dims.append(Interval(pair[0], pair[1]))
        return cls(tuple(dims))

    @classmethod
    def from_arrays(cls, lower: np.ndarray, upper: np.ndarray) -> "Box":
        return cls(tuple(Interval(lo, hi) for lo, hi in zip(lower, upper)))

    def __len__(self) -> int:
        return len(self.dims)

    @property
    def lower(self) -> np.ndarray:
        return np.array([d.lo for d in self.dims], dtype=np.float64)

    @property
    def upper(self) -> np.ndarray:
        return np.array([d.hi for d in self.dims], dtype=np.float64)

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def center(self) -> np.ndarray:
        return (self.lower + self.upper) / 2.0

    def active_dims(self) -> List[int]:
        """Dimensões com largura positiva (as fixas ficam fora do volume e nunca são divididas)."""
        return [i for i, d in enumerate(self.dims) if d.width > 0.0]

    def volume(self) -> float:
        """Produto das larguras das dimensões ativas; 1.0 para uma caixa pontual."""
        active = self.active_dims()
        return float(np.prod(self.widths[active])) if active else 1.0

    def contains_point(self, x: Sequence[float]) -> bool:
        point = np.asarray(x, dtype=np.float64)
        return bool(np.all(point >= self.lower) and np.all(point <= self.upper))

    def contains(self, other: "Box") -> bool:
        return len(other) == len(self) and all(a.contains(b) for a, b in zip(self.dims, other.dims))

    def vertices(self) -> np.ndarray:
        """Vértices sobre as dimensões ativas (2**ativas pontos)."""
        return box_vertices(self.lower, self.upper)

    def to_list(self) -> List[List[float]]:
        return [d.to_list() for d in self.dims]


def box_vertices(lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    active = [i for i in range(len(lower)) if upper[i] > lower[i]]
    corners = []
    for choice in itertools.product((0, 1), repeat=len(active)):
        corner = np.array(lower, dtype=np.float64)
        for dim, pick in zip(active, choice):
            if pick:
                corner[dim] = upper[dim]
        corners.append(corner)
    return np.array(corners, dtype=np.float64)


def box_hash(lower: np.ndarray, upper: np.ndarray) -> int:
    """Hash estável (entre processos) dos extremos de uma caixa."""
    digest = hashlib.blake2b(
        np.ascontiguousarray(lower, dtype=np.float64).tobytes()
        + np.ascontiguousarray(upper, dtype=np.float64).tobytes(),
        digest_size=8,
    ).digest()
    return int.from_bytes(digest, "little")


@dataclass(frozen=True)
class OutputBounds:
    """Um intervalo por saída da rede"""
    outs: Tuple[Interval, ...]
    provenance: Provenance

    @classmethod
    def from_arrays(cls, lower: np.ndarray, upper: np.ndarray, provenance: Provenance) -> "OutputBounds":
        return cls(tuple(Interval(lo, hi) for lo, hi in zip(lower, upper)), provenance)

    def __len__(self) -> int:
        return len(self.outs)

    @property
    def lower(self) -> np.ndarray:
        return np.array([o.lo for o in self.outs], dtype=np.float64)

    @property
    def upper(self) -> np.ndarray:
        return np.array([o.hi for o in self.outs], dtype=np.float64)

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, other: "OutputBounds", tol: float = 0.0) -> bool:
        """True se other ⊆ self componente a componente (com folga tol)."""
        if len(other) != len(self):
            return False
        return bool(np.all(self.lower - tol <= other.lower) and np.all(other.upper <= self.upper + tol))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "provenance": self.provenance.value,
            "outs": [o.to_list() for o in self.outs],
        }


@dataclass(frozen=True)
class SamplingConfig:
    """Parâmetros da propagação semi-formal"""
    n: int = 20
    seed: int = 0
    include_vertices: bool = True

    def __post_init__(self):
        if int(self.n) < 2:
            raise ShapeError(f"SamplingConfig.n deve ser >= 2, recebido {self.n}")

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "seed": self.seed, "include_vertices": self.include_vertices}


def affine_image(weights: Any, bias: Any, intervals: Sequence[Interval]) -> List[Interval]:
    """
    Imagem intervalar de x -> W x + b.

    Args:
        weights: Matriz (saídas x entradas)
        bias: Vetor com uma entrada por linha de weights
        intervals: Um intervalo por coluna de weights

    Returns:
        List[Interval]: Envoltória sã da imagem afim
    """
    w = np.asarray(weights, dtype=np.float64)
    b = np.asarray(bias, dtype=np.float64)
    if w.ndim != 2 or b.shape != (w.shape[0],) or w.shape[1] != len(intervals):
        raise ShapeError(
            f"Dimensões incompatíveis: weights {w.shape}, bias {b.shape}, {len(intervals)} intervalos"
        )
    lo = np.array([i.lo for i in intervals], dtype=np.float64)
    hi = np.array([i.hi for i in intervals], dtype=np.float64)
    new_lo, new_hi = affine_bounds(lo[None, :], hi[None, :], np.maximum(w, 0.0), np.minimum(w, 0.0), b)
    return [Interval(l, h) for l, h in zip(new_lo[0], new_hi[0])]


def affine_bounds(
    lower: np.ndarray, upper: np.ndarray, w_pos: np.ndarray, w_neg: np.ndarray, bias: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    # lo_r = b_r + Σ min(w lo, w hi): peso positivo usa lo, negativo usa hi
    new_lower = lower @ w_pos.T + upper @ w_neg.T + bias
    new_upper = upper @ w_pos.T + lower @ w_neg.T + bias
    return new_lower, new_upper


def relu_image(intervals: Sequence[Interval]) -> List[Interval]:
    """[lo, hi] -> [max(lo, 0), max(hi, 0)]"""
    return [Interval(max(i.lo, 0.0), max(i.hi, 0.0)) for i in intervals]


def bound_width(bounds: OutputBounds, j: int) -> float:
    """Largura do limite da saída j."""
    if not 0 <= j < len(bounds):
        raise IndexError(f"Saída {j} fora do intervalo [0, {len(bounds)})")
    return bounds.outs[j].width
