"""
Tipos da busca em árvore de subáreas: configuração, nós e relatórios.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from src.models.backend_base import BackendKind
from src.models.errors import ShapeError
from src.models.interval import Box, SamplingConfig
from src.models.property import Verdict, VerdictKind


class SplitStrategy(Enum):
    """Escolha da dimensão a dividir"""
    RANDOM = "random"
    WIDEST_DIM = "widest"
    ROUND_ROBIN = "roundrobin"

    @classmethod
    def parse(cls, value: str) -> "SplitStrategy":
        normalized = str(value).strip().lower().replace("_", "").replace("-", "")
        aliases = {"random": cls.RANDOM, "widest": cls.WIDEST_DIM, "widestdim": cls.WIDEST_DIM,
                   "roundrobin": cls.ROUND_ROBIN}
        if normalized not in aliases:
            raise ShapeError(f"Estratégia de divisão desconhecida: {value!r}")
        return aliases[normalized]


class MixedLeafPolicy(Enum):
    """Tratamento das folhas indecididas no limite de resolução"""
    UNKNOWN = "unknown"
    PROPORTIONAL_BY_SAMPLES = "proportional"

    @classmethod
    def parse(cls, value: str) -> "MixedLeafPolicy":
        normalized = str(value).strip().lower()
        if normalized in ("proportional", "proportionalbysamples", "proportional_by_samples"):
            return cls.PROPORTIONAL_BY_SAMPLES
        if normalized == "unknown":
            return cls.UNKNOWN
        raise ShapeError(f"Política de folha mista desconhecida: {value!r}")


@dataclass(frozen=True)
class VerifierConfig:
    """Configuração da busca; ecoada por completo em todo relatório"""
    backend: BackendKind = BackendKind.SAMPLED
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    max_depth: int = 12
    min_width: float = 1e-6
    split_strategy: SplitStrategy = SplitStrategy.RANDOM
    split_arity: int = 2
    rng_seed: int = 0
    mixed_leaf_policy: Optional[MixedLeafPolicy] = None
    threads: int = 1
    batch_size: int = 2048
    max_counterexamples: int = 50
    keep_tree: bool = False

    def __post_init__(self):
        if self.max_depth < 0:
            raise ShapeError(f"max_depth deve ser >= 0, recebido {self.max_depth}")
        if not self.min_width > 0:
            raise ShapeError(f"min_width deve ser > 0, recebido {self.min_width}")
        if self.split_arity < 2:
            raise ShapeError(f"split_arity deve ser >= 2, recebido {self.split_arity}")
        if self.threads < 1 or self.batch_size < 1:
            raise ShapeError("threads e batch_size devem ser >= 1")

    @property
    def leaf_policy(self) -> MixedLeafPolicy:
        """Política efetiva: UNKNOWN no formal, proporcional nos demais."""
        if self.mixed_leaf_policy is not None:
            return self.mixed_leaf_policy
        if self.backend is BackendKind.FORMAL:
            return MixedLeafPolicy.UNKNOWN
        return MixedLeafPolicy.PROPORTIONAL_BY_SAMPLES

    def with_overrides(self, **overrides: Any) -> "VerifierConfig":
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "backend": self.backend.value,
            "sampling": self.sampling.to_dict(),
            "max_depth": self.max_depth,
            "min_width": self.min_width,
            "split_strategy": self.split_strategy.value,
            "split_arity": self.split_arity,
            "rng_seed": self.rng_seed,
            "mixed_leaf_policy": self.leaf_policy.value,
            "threads": self.threads,
            "batch_size": self.batch_size,
            "max_counterexamples": self.max_counterexamples,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerifierConfig":
        """Constrói a configuração a partir de um dicionário (manifesto JSON)."""
        kwargs: Dict[str, Any] = {}
        if "backend" in data:
            kwargs["backend"] = BackendKind.parse(data["backend"])
        if "sampling" in data:
            sampling = data["sampling"] or {}
            kwargs["sampling"] = SamplingConfig(
                n=int(sampling.get("n", 20)),
                seed=int(sampling.get("seed", 0)),
                include_vertices=bool(sampling.get("include_vertices", True)),
            )
        for key, cast in (("max_depth", int), ("min_width", float), ("split_arity", int),
                          ("rng_seed", int), ("threads", int), ("batch_size", int),
                          ("max_counterexamples", int)):
            if key in data:
                kwargs[key] = cast(data[key])
        if "split_strategy" in data:
            kwargs["split_strategy"] = SplitStrategy.parse(data["split_strategy"])
        if data.get("mixed_leaf_policy") is not None:
            kwargs["mixed_leaf_policy"] = MixedLeafPolicy.parse(data["mixed_leaf_policy"])
        return cls(**kwargs)


@dataclass
class SubareaNode:
    """Nó da árvore de subáreas; children vazio se e só se for folha"""
    box: Box
    depth: int
    verdict: Verdict
    mass: float
    safe_mass: float = 0.0
    violation_mass: float = 0.0
    children: List["SubareaNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> List["SubareaNode"]:
        if self.is_leaf:
            return [self]
        result: List[SubareaNode] = []
        for child in self.children:
            result.extend(child.leaves())
        return result


@dataclass
class LeafCensus:
    """Contagem de folhas por veredito"""
    proved: int = 0
    denied: int = 0
    unknown: int = 0
    mixed: int = 0

    def add(self, kind: VerdictKind, mixed: bool = False) -> None:
        if mixed:
            self.mixed += 1
        elif kind is VerdictKind.PROVED:
            self.proved += 1
        elif kind is VerdictKind.DENIED:
            self.denied += 1
        else:
            self.unknown += 1

    @property
    def total(self) -> int:
        return self.proved + self.denied + self.unknown + self.mixed

    def to_dict(self) -> Dict[str, int]:
        return {"proved": self.proved, "denied": self.denied, "unknown": self.unknown, "mixed": self.mixed}


@dataclass
class VerificationReport:
    """Taxas de segurança de uma propriedade"""
    property_name: str
    safe_rate: float
    violation_rate: float
    unknown_rate: float
    leaves: LeafCensus
    counterexamples: List[Tuple[float, ...]]
    propagations: int
    forward_evaluations: int
    max_depth_reached: int
    wall_time: float
    config: Dict[str, Any]
    tree: Optional[SubareaNode] = None

    @property
    def decided_rate(self) -> float:
        return self.safe_rate + self.violation_rate

    @property
    def fully_proved(self) -> bool:
        return self.violation_rate == 0.0 and self.unknown_rate <= 1e-12

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = {
            "property": self.property_name,
            "rates": {
                "safe": self.safe_rate,
                "violation": self.violation_rate,
                "unknown": self.unknown_rate,
            },
            "leaves": self.leaves.to_dict(),
            "counterexamples": [list(c) for c in self.counterexamples],
            "propagations": self.propagations,
            "forward_evaluations": self.forward_evaluations,
            "max_depth_reached": self.max_depth_reached,
            "config": self.config,
        }
        if include_timing:
            data["timing"] = {"wall_time_s": self.wall_time}
        return data


@dataclass
class AggregateReport:
    """Média das taxas sobre várias propriedades de uma mesma tarefa"""
    safe_rate: float
    violation_rate: float
    unknown_rate: float
    rows: List[VerificationReport]

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        return {
            "properties": len(self.rows),
            "rates": {
                "safe": self.safe_rate,
                "violation": self.violation_rate,
                "unknown": self.unknown_rate,
            },
            "rows": [row.to_dict(include_timing) for row in self.rows],
        }
