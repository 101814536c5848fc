"""
Redes feed-forward densas com ativação ReLU.
Define a estrutura imutável da rede verificada e a avaliação direta (forward).
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.models.errors import NumericError, ShapeError


class Activation(Enum):
    """Ativação aplicada após a camada afim"""
    RELU = "relu"
    IDENTITY = "linear"

    @classmethod
    def parse(cls, value: str) -> "Activation":
        aliases = {"relu": cls.RELU, "linear": cls.IDENTITY, "identity": cls.IDENTITY, "none": cls.IDENTITY}
        try:
            return aliases[str(value).strip().lower()]
        except KeyError:
            raise ShapeError(f"Ativação não suportada: {value!r} (use 'relu' ou 'linear')")


def _frozen_array(values: Any, ndim: int, what: str) -> np.ndarray:
    try:
        array = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ShapeError(f"{what} não é numérico: {e}")
    if array.ndim != ndim:
        raise ShapeError(f"{what} deve ter {ndim} dimensão(ões), recebido shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise NumericError(f"{what} contém NaN ou Inf")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Layer:
    """Camada afim (linhas = saídas, colunas = entradas) seguida de ativação"""
    weights: np.ndarray
    bias: np.ndarray
    activation: Activation = Activation.RELU

    def __post_init__(self):
        weights = _frozen_array(self.weights, 2, "weights")
        bias = _frozen_array(self.bias, 1, "bias")
        if weights.shape[0] != bias.shape[0]:
            raise ShapeError(
                f"weights tem {weights.shape[0]} linhas mas bias tem {bias.shape[0]} entradas"
            )
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "bias", bias)

    @property
    def in_dim(self) -> int:
        return int(self.weights.shape[1])

    @property
    def out_dim(self) -> int:
        return int(self.weights.shape[0])

    @cached_property
    def positive_weights(self) -> np.ndarray:
        return np.maximum(self.weights, 0.0)

    @cached_property
    def negative_weights(self) -> np.ndarray:
        return np.minimum(self.weights, 0.0)


@dataclass(frozen=True)
class InputNormalization:
    """
    Constantes de normalização do cabeçalho NNet.
    Não são dobradas nos pesos: a caixa verificada fica em coordenadas normalizadas.
    """
    mins: Tuple[float, ...]
    maxes: Tuple[float, ...]
    means: Tuple[float, ...]
    ranges: Tuple[float, ...]
    output_mean: float = 0.0
    output_range: float = 1.0

    def normalize_inputs(self, raw: Sequence[float]) -> np.ndarray:
        """Leva uma entrada em coordenadas brutas para as coordenadas da rede."""
        x = np.clip(np.asarray(raw, dtype=np.float64), self.mins, self.maxes)
        return (x - np.asarray(self.means)) / np.asarray(self.ranges)

    def denormalize_outputs(self, y: Sequence[float]) -> np.ndarray:
        # escala comum a todas as saídas: não altera relações de dominância
        return np.asarray(y, dtype=np.float64) * self.output_range + self.output_mean

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mins": list(self.mins),
            "maxes": list(self.maxes),
            "means": list(self.means),
            "ranges": list(self.ranges),
            "output_mean": self.output_mean,
            "output_range": self.output_range,
        }


@dataclass(frozen=True, eq=False)
class Network:
    """
    Rede densa imutável.
    A última camada é sempre afim sem ReLU; pode ser compartilhada entre threads.
    """
    layers: Tuple[Layer, ...]
    input_dim: int
    output_dim: int
    normalization: Optional[InputNormalization] = None
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)
        if not layers:
            raise ShapeError("A rede precisa de ao menos uma camada")
        expected = self.input_dim
        for index, layer in enumerate(layers):
            if layer.in_dim != expected:
                raise ShapeError(
                    f"Camada {index} espera {layer.in_dim} entradas, mas recebe {expected}"
                )
            expected = layer.out_dim
        if expected != self.output_dim:
            raise ShapeError(f"Última camada produz {expected} saídas, esperado {self.output_dim}")
        if layers[-1].activation is not Activation.IDENTITY:
            raise ShapeError("A última camada deve usar ativação linear")

    @classmethod
    def from_layers(cls, layers: Sequence[Layer], **kwargs) -> "Network":
        layers = tuple(layers)
        if not layers:
            raise ShapeError("A rede precisa de ao menos uma camada")
        return cls(layers=layers, input_dim=layers[0].in_dim, output_dim=layers[-1].out_dim, **kwargs)

    @property
    def hidden_sizes(self) -> List[int]:
        return [layer.out_dim for layer in self.layers[:-1]]

    def forward(self, x: Sequence[float]) -> np.ndarray:
        """
        Avalia a rede em um único ponto.

        Args:
            x: Vetor de entrada com input_dim valores finitos

        Returns:
            np.ndarray: Vetor com output_dim saídas
        """
        point = np.asarray(x, dtype=np.float64)
        if point.shape != (self.input_dim,):
            raise ShapeError(f"Entrada com shape {point.shape}, esperado ({self.input_dim},)")
        if not np.all(np.isfinite(point)):
            raise NumericError("Entrada contém NaN ou Inf")
        return self.forward_batch(point[None, :])[0]

    def forward_batch(self, points: np.ndarray) -> np.ndarray:
        """Avalia a rede em um lote (k, input_dim) -> (k, output_dim)."""
        values = np.asarray(points, dtype=np.float64)
        if values.ndim != 2 or values.shape[1] != self.input_dim:
            raise ShapeError(f"Lote com shape {values.shape}, esperado (k, {self.input_dim})")
        for layer in self.layers:
            # acumulação coluna a coluna: cada linha sai bit a bit igual, qualquer que seja o tamanho do lote
            acc = np.tile(layer.bias, (values.shape[0], 1))
            for k in range(layer.in_dim):
                acc += values[:, k, None] * layer.weights[None, :, k]
            values = acc
            if layer.activation is Activation.RELU:
                values = np.maximum(values, 0.0)
        return values

    def describe(self) -> Dict[str, Any]:
        return {
            "input_dim": self.input_dim,
            "output_dim": self.output_dim,
            "hidden": self.hidden_sizes,
            "normalized": self.normalization is not None,
        }


def random_network(layer_sizes: Sequence[int], seed: int = 0, bias_scale: float = 0.1) -> Network:
    """
    Gera uma rede densa aleatória com inicialização He.

    Args:
        layer_sizes: [entradas, ocultas..., saídas]
        seed: Semente do gerador
        bias_scale: Desvio padrão dos biases

    Returns:
        Network: Rede com ReLU nas camadas ocultas e saída linear
    """
    sizes = [int(s) for s in layer_sizes]
    if len(sizes) < 2 or min(sizes) < 1:
        raise ShapeError(f"Tamanhos de camada inválidos: {sizes}")
    rng = np.random.default_rng(seed)
    layers = []
    for index, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        weights = rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_out, fan_in))
        bias = rng.normal(0.0, bias_scale, size=fan_out)
        last = index == len(sizes) - 2
        layers.append(Layer(weights, bias, Activation.IDENTITY if last else Activation.RELU))
    return Network.from_layers(layers, metadata={"generator": "random_network", "seed": seed})
