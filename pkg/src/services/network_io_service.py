"""
Serviço de leitura e escrita de redes (formatos JSON e NNet)
"""

import json
import logging
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from src.models.errors import NetworkParseError, NumericError, ShapeError
from src.models.network import Activation, InputNormalization, Layer, Network

logger = logging.getLogger(__name__)

DENSE_LAYER_TYPES = ("dense", "linear", "fully_connected", "fc")


class NetworkFormat(Enum):
    """Formatos de arquivo de rede"""
    JSON = "json"
    NNET = "nnet"

    @classmethod
    def parse(cls, value: str) -> "NetworkFormat":
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise NetworkParseError(f"Formato de rede desconhecido: {value!r} (use json ou nnet)")

    @classmethod
    def from_path(cls, path: str) -> "NetworkFormat":
        return cls.NNET if str(path).lower().endswith(".nnet") else cls.JSON


class _LineReader:
    """Leitor de linhas que lembra o número da linha para mensagens de erro"""

    def __init__(self, path: str, lines: List[str]):
        self.path = path
        self.lines = lines
        self.index = 0

    @property
    def lineno(self) -> int:
        return self.index

    def next_line(self) -> str:
        while self.index < len(self.lines):
            line = self.lines[self.index].strip()
            self.index += 1
            if line and not line.startswith("//"):
                return line
        raise NetworkParseError("fim de arquivo inesperado", path=self.path, line=self.index)

    def next_values(self, cast=float, expected: Optional[int] = None, exact: bool = True) -> List[Any]:
        line = self.next_line()
        try:
            values = [cast(v) for v in line.split(",") if v.strip()]
        except ValueError as e:
            raise NetworkParseError(f"valor inválido: {e}", path=self.path, line=self.lineno)
        if expected is not None and len(values) < expected:
            raise NetworkParseError(
                f"esperados {expected} valores, encontrados {len(values)}", path=self.path, line=self.lineno
            )
        if expected is not None and exact and len(values) > expected:
            raise ShapeError(
                f"esperados {expected} valores, encontrados {len(values)}", path=self.path, line=self.lineno
            )
        return values[:expected] if expected is not None else values


class NetworkIOService:
    """Serviço para carregar e salvar redes"""

    @staticmethod
    def load_network(path: str, fmt: Optional[str] = None) -> Network:
        """
        Carrega uma rede de um arquivo.

        Args:
            path: Caminho do arquivo
            fmt: 'json' ou 'nnet' (padrão: deduzido da extensão)

        Returns:
            Network: Rede validada
        """
        network_format = NetworkFormat.parse(fmt) if fmt else NetworkFormat.from_path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                content = f.read()
        except FileNotFoundError:
            raise NetworkParseError("arquivo de rede não encontrado", path=path)
        except OSError as e:
            raise NetworkParseError(f"não foi possível ler o arquivo: {e}", path=path)

        if network_format is NetworkFormat.NNET:
            net = NetworkIOService._parse_nnet(path, content)
        else:
            net = NetworkIOService._parse_json(path, content)
        logger.info(f"Rede carregada de {path}: {net.describe()}")
        return net

    @staticmethod
    def save_network(net: Network, path: str, fmt: Optional[str] = None) -> None:
        """
        Salva uma rede em JSON ou NNet.

        Args:
            net: Rede a salvar
            path: Caminho de destino
            fmt: 'json' ou 'nnet' (padrão: deduzido da extensão)
        """
        network_format = NetworkFormat.parse(fmt) if fmt else NetworkFormat.from_path(path)
        if network_format is NetworkFormat.NNET:
            content = NetworkIOService._format_nnet(net)
        else:
            content = json.dumps(NetworkIOService.network_to_dict(net), indent=2)
        with open(path, "w", encoding="utf-8") as f:
            f.write(content)
        logger.info(f"Rede salva em {path} ({network_format.value})")

    @staticmethod
    def network_to_dict(net: Network) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "input_dim": net.input_dim,
            "layers": [
                {
                    "weights": layer.weights.tolist(),
                    "bias": layer.bias.tolist(),
                    "activation": layer.activation.value,
                }
                for layer in net.layers
            ],
        }
        if net.normalization is not None:
            data["normalization"] = net.normalization.to_dict()
        return data

    @staticmethod
    def _parse_json(path: str, content: str) -> Network:
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise NetworkParseError(f"JSON inválido: {e.msg}", path=path, line=e.lineno)
        if not isinstance(data, dict) or "layers" not in data or "input_dim" not in data:
            raise NetworkParseError("esperado objeto com 'input_dim' e 'layers'", path=path)
        if not isinstance(data["layers"], list):
            raise NetworkParseError("'layers' deve ser uma lista", path=path)

        layers = []
        for index, raw in enumerate(data["layers"]):
            if not isinstance(raw, dict):
                raise NetworkParseError(f"camada {index} deve ser um objeto", path=path)
            layer_type = str(raw.get("type", "dense")).lower()
            if layer_type not in DENSE_LAYER_TYPES:
                raise NetworkParseError(
                    f"camada {index} do tipo {layer_type!r} não suportada: apenas camadas densas", path=path
                )
            if "weights" not in raw or "bias" not in raw:
                raise NetworkParseError(f"camada {index} sem 'weights' ou 'bias'", path=path)
            try:
                layers.append(Layer(raw["weights"], raw["bias"], Activation.parse(raw.get("activation", "relu"))))
            except (ShapeError, NumericError) as e:
                raise type(e)(f"camada {index}: {e.message}", path=path)

        normalization = None
        if isinstance(data.get("normalization"), dict):
            normalization = NetworkIOService._normalization_from_dict(path, data["normalization"])
        try:
            input_dim = int(data["input_dim"])
        except (TypeError, ValueError):
            raise NetworkParseError(f"'input_dim' deve ser inteiro, recebido {data['input_dim']!r}", path=path)
        try:
            return Network(
                layers=tuple(layers),
                input_dim=input_dim,
                output_dim=layers[-1].out_dim if layers else 0,
                normalization=normalization,
                metadata={"source": path, "format": "json"},
            )
        except ShapeError as e:
            raise ShapeError(e.message, path=path)

    @staticmethod
    def _normalization_from_dict(path: str, data: Dict[str, Any]) -> InputNormalization:
        try:
            return InputNormalization(
                mins=tuple(float(v) for v in data["mins"]),
                maxes=tuple(float(v) for v in data["maxes"]),
                means=tuple(float(v) for v in data["means"]),
                ranges=tuple(float(v) for v in data["ranges"]),
                output_mean=float(data.get("output_mean", 0.0)),
                output_range=float(data.get("output_range", 1.0)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise NetworkParseError(f"bloco 'normalization' inválido: {e}", path=path)

    @staticmethod
    def _parse_nnet(path: str, content: str) -> Network:
        reader = _LineReader(path, content.splitlines())
        # numLayers não inclui a camada de entrada; o quarto valor (maior camada) é ignorado
        num_layers, input_size, output_size = reader.next_values(int, expected=3, exact=False)
        sizes = reader.next_values(int, expected=num_layers + 1)
        if sizes[0] != input_size or sizes[-1] != output_size:
            raise ShapeError(
                f"tamanhos de camada {sizes} incompatíveis com {input_size} entradas e {output_size} saídas",
                path=path, line=reader.lineno,
            )
        reader.next_line()  # flag "symmetric", sem uso
        mins = reader.next_values(float, expected=input_size)
        maxes = reader.next_values(float, expected=input_size)
        means = reader.next_values(float, expected=input_size + 1)
        ranges = reader.next_values(float, expected=input_size + 1)

        layers = []
        for layer_index in range(num_layers):
            fan_in, fan_out = sizes[layer_index], sizes[layer_index + 1]
            rows = [reader.next_values(float, expected=fan_in) for _ in range(fan_out)]
            biases = [reader.next_values(float, expected=1)[0] for _ in range(fan_out)]
            last = layer_index == num_layers - 1
            try:
                layers.append(Layer(rows, biases, Activation.IDENTITY if last else Activation.RELU))
            except (ShapeError, NumericError) as e:
                raise type(e)(f"camada {layer_index}: {e.message}", path=path, line=reader.lineno)

        normalization = InputNormalization(
            mins=tuple(mins),
            maxes=tuple(maxes),
            means=tuple(means[:input_size]),
            ranges=tuple(ranges[:input_size]),
            output_mean=means[input_size],
            output_range=ranges[input_size],
        )
        return Network(
            layers=tuple(layers),
            input_dim=input_size,
            output_dim=output_size,
            normalization=normalization,
            metadata={"source": path, "format": "nnet"},
        )

    @staticmethod
    def _format_nnet(net: Network) -> str:
        def row(values) -> str:
            return ",".join(repr(float(v)) for v in values) + ","

        sizes = [net.input_dim] + [layer.out_dim for layer in net.layers]
        norm = net.normalization
        if norm is None:
            big = np.finfo(np.float64).max
            mins, maxes = [-big] * net.input_dim, [big] * net.input_dim
            means, ranges = [0.0] * (net.input_dim + 1), [1.0] * (net.input_dim + 1)
        else:
            mins, maxes = list(norm.mins), list(norm.maxes)
            means = list(norm.means) + [norm.output_mean]
            ranges = list(norm.ranges) + [norm.output_range]

        lines = [
            "// Rede densa ReLU exportada pelo verificador",
            f"{len(net.layers)},{net.input_dim},{net.output_dim},{max(sizes)},",
            ",".join(str(s) for s in sizes) + ",",
            "0,",
            row(mins),
            row(maxes),
            row(means),
            row(ranges),
        ]
        for layer in net.layers:
            lines.extend(row(w) for w in layer.weights)
            lines.extend(row([b]) for b in layer.bias)
        return "\n".join(lines) + "\n"

