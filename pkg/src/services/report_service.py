"""
Serviço de relatórios: serialização JSON e CSV dos resultados
"""

import csv
import json
import logging
import os
import re
from typing import Any, Dict, List, Optional, Sequence

from src.models.verification import AggregateReport, VerificationReport

logger = logging.getLogger(__name__)

REPORT_CSV_COLUMNS = [
    "property",
    "backend",
    "safe_rate",
    "violation_rate",
    "unknown_rate",
    "proved_leaves",
    "denied_leaves",
    "unknown_leaves",
    "mixed_leaves",
    "counterexamples",
    "propagations",
    "forward_evaluations",
    "wall_time_s",
    "seed",
]


def safe_filename(name: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("_")
    return cleaned or "property"


class ReportService:
    """Serviço para gravar relatórios de verificação"""

    @staticmethod
    def to_json(data: Dict[str, Any]) -> str:
        # chaves ordenadas: saída estável entre execuções
        return json.dumps(data, indent=2, sort_keys=True)

    @staticmethod
    def write_report_json(report: VerificationReport, out_dir: str, stem: Optional[str] = None) -> str:
        """
        Grava o relatório de uma propriedade em <out_dir>/<propriedade>.json.

        Args:
            report: Relatório da propriedade
            out_dir: Diretório de saída
            stem: Nome do arquivo sem extensão (padrão: nome da propriedade)

        Returns:
            str: Caminho do arquivo gravado
        """
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, f"{stem or safe_filename(report.property_name)}.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write(ReportService.to_json(report.to_dict()))
        logger.info(f"Relatório gravado em {path}")
        return path

    @staticmethod
    def write_report_jsons(reports: Sequence[VerificationReport], out_dir: str) -> List[str]:
        """Grava um arquivo por relatório; nomes repetidos ganham sufixo _2, _3, ..."""
        taken = {"aggregate"}
        paths = []
        for report in reports:
            base = safe_filename(report.property_name)
            stem, suffix = base, 2
            while stem in taken:
                stem, suffix = f"{base}_{suffix}", suffix + 1
            taken.add(stem)
            paths.append(ReportService.write_report_json(report, out_dir, stem))
        return paths

    @staticmethod
    def write_aggregate_json(aggregate: AggregateReport, out_dir: str, name: str = "aggregate") -> str:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, f"{name}.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write(ReportService.to_json(aggregate.to_dict()))
        logger.info(f"Relatório agregado gravado em {path}")
        return path

    @staticmethod
    def report_row(report: VerificationReport) -> Dict[str, Any]:
        leaves = report.leaves.to_dict()
        return {
            "property": report.property_name,
            "backend": report.config.get("backend", ""),
            "safe_rate": report.safe_rate,
            "violation_rate": report.violation_rate,
            "unknown_rate": report.unknown_rate,
            "proved_leaves": leaves["proved"],
            "denied_leaves": leaves["denied"],
            "unknown_leaves": leaves["unknown"],
            "mixed_leaves": leaves["mixed"],
            "counterexamples": len(report.counterexamples),
            "propagations": report.propagations,
            "forward_evaluations": report.forward_evaluations,
            "wall_time_s": report.wall_time,
            "seed": report.config.get("rng_seed", ""),
        }

    @staticmethod
    def write_aggregate_csv(aggregate: AggregateReport, out_dir: str, name: str = "aggregate") -> str:
        """Uma linha por propriedade e uma linha final com a média."""
        rows = [ReportService.report_row(r) for r in aggregate.rows]
        rows.append({
            "property": "mean",
            "backend": rows[0]["backend"] if rows else "",
            "safe_rate": aggregate.safe_rate,
            "violation_rate": aggregate.violation_rate,
            "unknown_rate": aggregate.unknown_rate,
            "wall_time_s": sum(r.wall_time for r in aggregate.rows),
        })
        path = os.path.join(out_dir, f"{name}.csv")
        ReportService.write_csv(rows, path, REPORT_CSV_COLUMNS)
        return path

    @staticmethod
    def write_csv(rows: Sequence[Dict[str, Any]], path: str, columns: List[str]) -> str:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=columns, restval="", extrasaction="ignore")
            writer.writeheader()
            writer.writerows(rows)
        logger.info(f"CSV gravado em {path} ({len(rows)} linha(s))")
        return path
