"""
Serviço de verificação: busca em árvore de subáreas por bissecção iterativa
e acúmulo das taxas de segurança, violação e indecisão.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.models.backend_base import BackendKind
from src.models.backend_manager import BackendManager
from src.models.errors import ShapeError, VerifierError
from src.models.interval import Box
from src.models.network import Network
from src.models.property import (
    DENIED_CODE,
    PROVED_CODE,
    REVERSED_SAMPLED_CODE,
    UNKNOWN_CODE,
    DecisionProperty,
    DominanceAssertion,
    Verdict,
    VerdictKind,
)
from src.models.sampled_backend import SampleBatch, node_rng
from src.models.verification import (
    AggregateReport,
    LeafCensus,
    MixedLeafPolicy,
    SplitStrategy,
    SubareaNode,
    VerificationReport,
    VerifierConfig,
)
from src.services.property_service import PropertyService

logger = logging.getLogger(__name__)

SPLIT_STREAM = 1
INFORMAL_CHUNK = 100_000


@dataclass
class _OpenNode:
    """Subárea ainda não decidida"""
    lower: np.ndarray
    upper: np.ndarray
    depth: int
    mass: float
    parent: Optional[SubareaNode] = None


@dataclass
class _NodeOutcome:
    """Resultado da avaliação de uma subárea"""
    code: int
    witness: Optional[np.ndarray] = None
    candidates: List[np.ndarray] = field(default_factory=list)
    satisfied_fraction: Optional[float] = None


@dataclass
class _Accumulator:
    """Único estado compartilhado da busca; fundido sempre na ordem da fronteira"""
    safe: float = 0.0
    violation: float = 0.0
    unknown: float = 0.0
    census: LeafCensus = field(default_factory=LeafCensus)
    counterexamples: List[Tuple[float, ...]] = field(default_factory=list)
    max_depth: int = 0


class VerificationService:
    """Serviço para verificação de propriedades de decisão"""

    @staticmethod
    def split_box(
        box: Box,
        strategy: SplitStrategy,
        arity: int = 2,
        rng: Optional[np.random.Generator] = None,
        depth: int = 0,
    ) -> List[Box]:
        """
        Divide uma caixa em partes iguais ao longo de uma dimensão.

        Args:
            box: Caixa a dividir
            strategy: Escolha da dimensão (RANDOM, WIDEST_DIM, ROUND_ROBIN)
            arity: Número de partes (>= 2)
            rng: Gerador usado pela estratégia RANDOM
            depth: Profundidade do nó (usada por ROUND_ROBIN)

        Returns:
            List[Box]: arity caixas cuja união é a caixa original
        """
        if arity < 2:
            raise ShapeError(f"arity deve ser >= 2, recebido {arity}")
        lower, upper = box.lower, box.upper
        if rng is None and strategy is SplitStrategy.RANDOM:
            rng = node_rng(0, lower, upper, SPLIT_STREAM)
        dim = VerificationService._choose_dim(upper - lower, strategy, rng, depth)
        return [Box.from_arrays(lo, hi) for lo, hi in VerificationService._split_arrays(lower, upper, dim, arity)]

    @staticmethod
    def _choose_dim(widths: np.ndarray, strategy: SplitStrategy, rng: Optional[np.random.Generator], depth: int) -> int:
        active = np.flatnonzero(widths > 0.0)
        if active.size == 0:
            raise ShapeError("Todas as dimensões são degeneradas: a caixa não pode ser dividida")
        if strategy is SplitStrategy.WIDEST_DIM:
            # empate: menor índice
            return int(np.argmax(widths))
        if strategy is SplitStrategy.ROUND_ROBIN:
            return int(active[depth % active.size])
        return int(active[rng.integers(active.size)])

    @staticmethod
    def _split_arrays(lower: np.ndarray, upper: np.ndarray, dim: int, arity: int) -> List[Tuple[np.ndarray, np.ndarray]]:
        edges = np.linspace(lower[dim], upper[dim], arity + 1)
        parts = []
        for k in range(arity):
            lo, hi = lower.copy(), upper.copy()
            lo[dim], hi[dim] = edges[k], edges[k + 1]
            parts.append((lo, hi))
        return parts

    @staticmethod
    def verify(
        net: Network,
        prop: DecisionProperty,
        cfg: Optional[VerifierConfig] = None,
        manager: Optional[BackendManager] = None,
    ) -> VerificationReport:
        """
        Verifica uma propriedade por bissecção iterativa da caixa de entrada.

        Cada subárea recebe limites do back-end configurado; as provadas e negadas
        somam seu volume normalizado às taxas, as indecisas são divididas até o
        limite de resolução, onde viram folhas tratadas por mixed_leaf_policy.

        Args:
            net: Rede verificada
            prop: Propriedade de decisão
            cfg: Configuração da busca
            manager: Registro de back-ends (padrão: um novo por chamada)

        Returns:
            VerificationReport: Taxas, censo de folhas, contraexemplos e tempo
        """
        cfg = cfg or VerifierConfig()
        prop.bind(net.input_dim, net.output_dim)
        manager = manager or BackendManager(cfg.sampling)
        propagations_before = manager.total_propagations()
        forwards_before = manager.total_forward_evaluations()

        started = time.perf_counter()
        root_box = prop.input_box
        root_active = np.array([i for i in range(len(root_box)) if root_box.dims[i].width > 0.0], dtype=np.intp)
        logger.info(
            f"Verificando {prop.name}: back-end {cfg.backend.value}, profundidade máxima {cfg.max_depth}, "
            f"{root_active.size} dimensão(ões) ativa(s)"
        )

        acc = _Accumulator()
        root_holder: List[SubareaNode] = []
        frontier = [_OpenNode(root_box.lower, root_box.upper, depth=0, mass=1.0)]
        executor = ThreadPoolExecutor(max_workers=cfg.threads) if cfg.threads > 1 else None
        try:
            while frontier:
                logger.debug(f"{prop.name}: profundidade {frontier[0].depth}, {len(frontier)} subárea(s) abertas")
                floors = [VerificationService._at_floor(node, cfg, root_active) for node in frontier]
                chunks = [
                    (frontier[i:i + cfg.batch_size], floors[i:i + cfg.batch_size])
                    for i in range(0, len(frontier), cfg.batch_size)
                ]

                def evaluate(chunk):
                    nodes, at_floor = chunk
                    return VerificationService._evaluate_nodes(net, prop.assertion, cfg, manager, nodes, at_floor)

                if executor is not None and len(chunks) > 1:
                    results = list(executor.map(evaluate, chunks))
                else:
                    results = [evaluate(chunk) for chunk in chunks]
                outcomes = [outcome for chunk_outcomes in results for outcome in chunk_outcomes]

                next_frontier: List[_OpenNode] = []
                for node, at_floor, outcome in zip(frontier, floors, outcomes):
                    next_frontier.extend(
                        VerificationService._merge(net, prop.assertion, cfg, acc, node, at_floor, outcome, root_holder)
                    )
                frontier = next_frontier
        finally:
            if executor is not None:
                executor.shutdown(wait=True)

        wall_time = time.perf_counter() - started
        total = acc.safe + acc.violation + acc.unknown
        report = VerificationReport(
            property_name=prop.name,
            safe_rate=acc.safe / total,
            violation_rate=acc.violation / total,
            unknown_rate=acc.unknown / total,
            leaves=acc.census,
            counterexamples=acc.counterexamples,
            propagations=manager.total_propagations() - propagations_before,
            forward_evaluations=manager.total_forward_evaluations() - forwards_before,
            max_depth_reached=acc.max_depth,
            wall_time=wall_time,
            config=cfg.to_dict(),
            tree=root_holder[0] if root_holder else None,
        )
        logger.info(
            f"{prop.name}: safe={report.safe_rate:.6f} violation={report.violation_rate:.6f} "
            f"unknown={report.unknown_rate:.6f} ({acc.census.total} folhas, {wall_time:.3f}s)"
        )
        return report

    @staticmethod
    def _at_floor(node: _OpenNode, cfg: VerifierConfig, root_active: np.ndarray) -> bool:
        if node.depth >= cfg.max_depth or root_active.size == 0:
            return True
        widths = (node.upper - node.lower)[root_active]
        return bool(np.all(widths < cfg.min_width)) or not np.any(widths > 0.0)

    @staticmethod
    def _evaluate_nodes(
        net: Network,
        assertion: DominanceAssertion,
        cfg: VerifierConfig,
        manager: BackendManager,
        nodes: Sequence[_OpenNode],
        at_floor: Sequence[bool],
    ) -> List[_NodeOutcome]:
        """Avalia um lote de subáreas; função pura dado (rede, caixas, configuração)."""
        lower = np.stack([n.lower for n in nodes])
        upper = np.stack([n.upper for n in nodes])
        outcomes = [_NodeOutcome(UNKNOWN_CODE) for _ in nodes]
        samples: Optional[SampleBatch] = None

        if cfg.backend is BackendKind.FORMAL:
            f_lower, f_upper = manager.formal.compute_bounds_batch(net, lower, upper)
            codes = assertion.classify(f_lower, f_upper, formal=True)
        else:
            samples = manager.sampled.sample_batch(net, lower, upper)
            s_lower, s_upper = samples.bounds()
            codes = assertion.classify(s_lower, s_upper, formal=False)
            if cfg.backend is BackendKind.HYBRID:
                # "provado" por amostras precisa sobreviver aos limites formais
                recheck = np.flatnonzero(codes == PROVED_CODE)
                if recheck.size:
                    f_lower, f_upper = manager.formal.compute_bounds_batch(net, lower[recheck], upper[recheck])
                    codes[recheck] = assertion.classify(f_lower, f_upper, formal=True)

        for index, code in enumerate(codes):
            outcome = outcomes[index]
            outcome.code = int(code)
            if code == DENIED_CODE:
                center = (lower[index] + upper[index]) / 2.0
                outcome.candidates = [center, lower[index], upper[index]]
            if samples is not None and code != PROVED_CODE:
                points = samples.node_points(index)
                violating = points[~assertion.holds(samples.node_outputs(index))]
                if code == REVERSED_SAMPLED_CODE:
                    outcome.code = UNKNOWN_CODE
                    for point in violating:
                        if PropertyService.violates(net, assertion, point):
                            outcome.code = DENIED_CODE
                            outcome.witness = point
                            break
                if outcome.witness is None:
                    outcome.candidates.extend(violating[:3])

        if cfg.leaf_policy is MixedLeafPolicy.PROPORTIONAL_BY_SAMPLES:
            pending = [i for i, o in enumerate(outcomes) if o.code == UNKNOWN_CODE and at_floor[i]]
            if pending:
                if samples is None:
                    floor_samples = manager.sampled.sample_batch(net, lower[pending], upper[pending])
                    lookup = {node_index: k for k, node_index in enumerate(pending)}
                else:
                    floor_samples = samples
                    lookup = {node_index: node_index for node_index in pending}
                for node_index in pending:
                    k = lookup[node_index]
                    satisfied = assertion.holds(floor_samples.node_outputs(k))
                    outcomes[node_index].satisfied_fraction = float(np.mean(satisfied))
                    if samples is None:
                        outcomes[node_index].candidates.extend(floor_samples.node_points(k)[~satisfied][:3])
        return outcomes

    @staticmethod
    def _merge(
        net: Network,
        assertion: DominanceAssertion,
        cfg: VerifierConfig,
        acc: _Accumulator,
        node: _OpenNode,
        at_floor: bool,
        outcome: _NodeOutcome,
        root_holder: List[SubareaNode],
    ) -> List[_OpenNode]:
        acc.max_depth = max(acc.max_depth, node.depth)
        witness = outcome.witness
        if len(acc.counterexamples) < cfg.max_counterexamples:
            if witness is None:
                witness = next(
                    (c for c in outcome.candidates if PropertyService.violates(net, assertion, c)), None
                )
            if witness is not None:
                acc.counterexamples.append(tuple(float(v) for v in witness))

        tree_node = None
        if cfg.keep_tree:
            kind_witness = witness if outcome.code == DENIED_CODE else None
            tree_node = SubareaNode(
                box=Box.from_arrays(node.lower, node.upper),
                depth=node.depth,
                verdict=Verdict.from_code(outcome.code, kind_witness),
                mass=node.mass,
            )
            if node.parent is None:
                root_holder.append(tree_node)
            else:
                node.parent.children.append(tree_node)

        if outcome.code == PROVED_CODE:
            acc.safe += node.mass
            acc.census.add(VerdictKind.PROVED)
            if tree_node is not None:
                tree_node.safe_mass = node.mass
            return []
        if outcome.code == DENIED_CODE:
            acc.violation += node.mass
            acc.census.add(VerdictKind.DENIED)
            if tree_node is not None:
                tree_node.violation_mass = node.mass
            return []
        if at_floor:
            if outcome.satisfied_fraction is not None:
                safe = node.mass * outcome.satisfied_fraction
                acc.safe += safe
                acc.violation += node.mass - safe
                acc.census.add(VerdictKind.UNKNOWN, mixed=True)
                if tree_node is not None:
                    tree_node.safe_mass, tree_node.violation_mass = safe, node.mass - safe
            else:
                acc.unknown += node.mass
                acc.census.add(VerdictKind.UNKNOWN)
            return []

        rng = None
        if cfg.split_strategy is SplitStrategy.RANDOM:
            rng = node_rng(cfg.rng_seed, node.lower, node.upper, SPLIT_STREAM)
        dim = VerificationService._choose_dim(node.upper - node.lower, cfg.split_strategy, rng, node.depth)
        child_mass = node.mass / cfg.split_arity
        return [
            _OpenNode(lo, hi, depth=node.depth + 1, mass=child_mass, parent=tree_node)
            for lo, hi in VerificationService._split_arrays(node.lower, node.upper, dim, cfg.split_arity)
        ]

    @staticmethod
    def aggregate(reports: Sequence[VerificationReport]) -> AggregateReport:
        """
        Média das taxas entre propriedades de uma mesma tarefa.

        Args:
            reports: Relatórios por propriedade (não vazio)

        Returns:
            AggregateReport: Médias com as linhas por propriedade
        """
        if not reports:
            raise VerifierError("aggregate requer ao menos um relatório")
        count = len(reports)
        return AggregateReport(
            safe_rate=sum(r.safe_rate for r in reports) / count,
            violation_rate=sum(r.violation_rate for r in reports) / count,
            unknown_rate=sum(r.unknown_rate for r in reports) / count,
            rows=list(reports),
        )

    @staticmethod
    def informal_rate(net: Network, prop: DecisionProperty, n: int, seed: int = 0) -> float:
        """
        Taxa de segurança só por simulação: fração de n pontos uniformes que satisfazem a asserção.

        Args:
            net: Rede verificada
            prop: Propriedade de decisão
            n: Número de amostras (>= 1)
            seed: Semente do gerador

        Returns:
            float: Fração em [0, 1]
        """
        if n < 1:
            raise ShapeError(f"informal_rate requer n >= 1, recebido {n}")
        prop.bind(net.input_dim, net.output_dim)
        rng = np.random.default_rng(seed)
        lower, upper = prop.input_box.lower, prop.input_box.upper
        satisfied = 0
        for start in range(0, n, INFORMAL_CHUNK):
            size = min(INFORMAL_CHUNK, n - start)
            points = lower + rng.random((size, lower.shape[0])) * (upper - lower)
            satisfied += int(np.count_nonzero(prop.assertion.holds(net.forward_batch(points))))
        return satisfied / n
