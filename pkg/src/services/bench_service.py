"""
Serviço de benchmark: compara verificação formal, semi-formal e informal
(taxas, larguras de limites, propagações e tempo) e gera dados para gráficos.
"""

import logging
import time
from dataclasses import replace
from typing import Any, Dict, List, Sequence

import numpy as np

from src.models.backend_base import BackendKind
from src.models.backend_manager import BackendManager
from src.models.interval import Box, SamplingConfig
from src.models.network import Network, random_network
from src.models.property import DecisionProperty
from src.models.sampled_backend import SampledBackend
from src.models.verification import VerifierConfig
from src.services.verification_service import VerificationService

logger = logging.getLogger(__name__)

BENCH_COLUMNS = [
    "backend",
    "property",
    "repetitions",
    "samples",
    "safe_rate_mean",
    "safe_rate_std",
    "violation_rate_mean",
    "violation_rate_std",
    "unknown_rate_mean",
    "bound_width_mean",
    "propagations",
    "wall_time_mean_s",
    "wall_time_std_s",
]
AREA_SWEEP_COLUMNS = ["fraction", "output", "formal_width", "sampled_width", "reference_width"]
SIZE_SWEEP_COLUMNS = ["hidden", "layers", "formal_time_s", "sampled_time_s", "speedup"]


def _mean_std(values: Sequence[float]):
    array = np.asarray(values, dtype=np.float64)
    return float(array.mean()), float(array.std())


class BenchService:
    """Serviço para comparações de desempenho entre back-ends"""

    @staticmethod
    def run_bench(
        net: Network,
        properties: Sequence[DecisionProperty],
        cfg: VerifierConfig,
        backends: Sequence[BackendKind],
        repetitions: int = 1,
        informal_samples: int = 0,
    ) -> List[Dict[str, Any]]:
        """
        Roda cada back-end em cada propriedade repetidas vezes.

        Args:
            net: Rede verificada
            properties: Propriedades avaliadas
            cfg: Configuração base (o back-end é trocado a cada rodada)
            backends: Back-ends comparados
            repetitions: Execuções por combinação (média e desvio padrão)
            informal_samples: Se > 0, adiciona a linha da taxa informal por simulação

        Returns:
            List[Dict]: Linhas no formato de BENCH_COLUMNS
        """
        repetitions = max(1, int(repetitions))
        rows: List[Dict[str, Any]] = []
        for prop in properties:
            for backend in backends:
                backend_cfg = replace(cfg, backend=backend, keep_tree=False)
                safe, violation, unknown, times = [], [], [], []
                propagations = 0
                for _ in range(repetitions):
                    report = VerificationService.verify(net, prop, backend_cfg)
                    safe.append(report.safe_rate)
                    violation.append(report.violation_rate)
                    unknown.append(report.unknown_rate)
                    times.append(report.wall_time)
                    propagations = report.propagations
                width = BenchService._root_width(net, prop.input_box, backend, cfg.sampling)
                safe_mean, safe_std = _mean_std(safe)
                violation_mean, violation_std = _mean_std(violation)
                time_mean, time_std = _mean_std(times)
                rows.append({
                    "backend": backend.value,
                    "property": prop.name,
                    "repetitions": repetitions,
                    "samples": cfg.sampling.n if backend is not BackendKind.FORMAL else "",
                    "safe_rate_mean": safe_mean,
                    "safe_rate_std": safe_std,
                    "violation_rate_mean": violation_mean,
                    "violation_rate_std": violation_std,
                    "unknown_rate_mean": _mean_std(unknown)[0],
                    "bound_width_mean": width,
                    "propagations": propagations,
                    "wall_time_mean_s": time_mean,
                    "wall_time_std_s": time_std,
                })
                logger.info(
                    f"Bench {backend.value}/{prop.name}: safe={safe_mean:.4f} tempo={time_mean:.3f}s"
                )
            if informal_samples > 0:
                rates, times = [], []
                for repetition in range(repetitions):
                    started = time.perf_counter()
                    rates.append(VerificationService.informal_rate(
                        net, prop, informal_samples, seed=cfg.rng_seed + repetition
                    ))
                    times.append(time.perf_counter() - started)
                rate_mean, rate_std = _mean_std(rates)
                time_mean, time_std = _mean_std(times)
                rows.append({
                    "backend": "informal",
                    "property": prop.name,
                    "repetitions": repetitions,
                    "samples": informal_samples,
                    "safe_rate_mean": rate_mean,
                    "safe_rate_std": rate_std,
                    "violation_rate_mean": 1.0 - rate_mean,
                    "violation_rate_std": rate_std,
                    "unknown_rate_mean": 0.0,
                    "bound_width_mean": "",
                    "propagations": 0,
                    "wall_time_mean_s": time_mean,
                    "wall_time_std_s": time_std,
                })
        return rows

    @staticmethod
    def _root_width(net: Network, box: Box, backend: BackendKind, sampling: SamplingConfig) -> float:
        manager = BackendManager(sampling)
        name = "formal" if backend is BackendKind.FORMAL else "sampled"
        return float(np.mean(manager.compute_bounds(name, net, box).widths))

    @staticmethod
    def area_sweep(
        net: Network,
        box: Box,
        fractions: Sequence[float],
        sampling: SamplingConfig,
        reference_samples: int = 100_000,
    ) -> List[Dict[str, Any]]:
        """
        Larguras dos limites formal, amostrado e de referência em áreas
        centradas cada vez menores (fração do tamanho da caixa original).

        Args:
            net: Rede analisada
            box: Caixa completa
            fractions: Frações em (0, 1] do tamanho de cada dimensão
            sampling: Amostragem do back-end semi-formal
            reference_samples: n da estimativa de referência ("real")

        Returns:
            List[Dict]: Uma linha por (fração, saída)
        """
        manager = BackendManager(sampling)
        reference = SampledBackend(replace(sampling, n=max(2, int(reference_samples))))
        center, half = box.center, box.widths / 2.0
        rows = []
        for fraction in fractions:
            sub_box = Box.from_arrays(center - half * fraction, center + half * fraction)
            formal = manager.formal.compute_bounds(net, sub_box)
            sampled = manager.sampled.compute_bounds(net, sub_box)
            real = reference.compute_bounds(net, sub_box)
            for j in range(net.output_dim):
                rows.append({
                    "fraction": float(fraction),
                    "output": j,
                    "formal_width": formal.outs[j].width,
                    "sampled_width": sampled.outs[j].width,
                    "reference_width": real.outs[j].width,
                })
        return rows

    @staticmethod
    def size_sweep(
        input_dim: int,
        output_dim: int,
        hidden_sizes: Sequence[int],
        layers: int,
        sampling: SamplingConfig,
        repetitions: int = 5,
        seed: int = 0,
    ) -> List[Dict[str, Any]]:
        """
        Tempo de uma propagação formal e de uma semi-formal conforme a largura da rede.

        Returns:
            List[Dict]: Uma linha por tamanho de camada oculta
        """
        rows = []
        box = Box.from_pairs([[0.0, 1.0]] * input_dim)
        for hidden in hidden_sizes:
            net = random_network([input_dim] + [int(hidden)] * layers + [output_dim], seed=seed)
            manager = BackendManager(sampling)
            timings = {}
            for name in ("formal", "sampled"):
                started = time.perf_counter()
                for _ in range(max(1, repetitions)):
                    manager.compute_bounds(name, net, box)
                timings[name] = (time.perf_counter() - started) / max(1, repetitions)
            rows.append({
                "hidden": int(hidden),
                "layers": layers,
                "formal_time_s": timings["formal"],
                "sampled_time_s": timings["sampled"],
                "speedup": timings["formal"] / timings["sampled"] if timings["sampled"] > 0 else "",
            })
        return rows
