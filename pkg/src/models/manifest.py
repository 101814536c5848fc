"""
Manifesto de execução da CLI.
"""

import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from src.models.errors import ManifestError
from src.models.verification import VerifierConfig

REPORT_FORMATS = ("json", "csv")


@dataclass
class RunManifest:
    """Rede, propriedades, configuração e destino dos relatórios"""
    network_path: str
    network_format: Optional[str]
    property_paths: List[str]
    config: VerifierConfig
    output_dir: str
    report_formats: List[str] = field(default_factory=lambda: ["json", "csv"])
    raw_box: bool = False

    def validate(self) -> None:
        """Confere se os arquivos existem e se o diretório de saída é gravável."""
        if not os.path.isfile(self.network_path):
            raise ManifestError("arquivo de rede não encontrado", path=self.network_path)
        if not self.property_paths:
            raise ManifestError("nenhum arquivo de propriedades informado")
        for path in self.property_paths:
            if not os.path.isfile(path):
                raise ManifestError("arquivo de propriedades não encontrado", path=path)
        for fmt in self.report_formats:
            if fmt not in REPORT_FORMATS:
                raise ManifestError(f"formato de relatório desconhecido: {fmt!r}")
        try:
            os.makedirs(self.output_dir, exist_ok=True)
        except OSError as e:
            raise ManifestError(f"diretório de saída inválido: {e}", path=self.output_dir)
        if not os.access(self.output_dir, os.W_OK):
            raise ManifestError("diretório de saída sem permissão de escrita", path=self.output_dir)

    @staticmethod
    def read_file(path: str) -> Dict[str, Any]:
        """Lê um manifesto JSON; caminhos relativos são resolvidos a partir dele."""
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise ManifestError("manifesto não encontrado", path=path)
        except json.JSONDecodeError as e:
            raise ManifestError(f"JSON inválido: {e.msg}", path=path, line=e.lineno)
        if not isinstance(data, dict):
            raise ManifestError("o manifesto deve ser um objeto JSON", path=path)
        base = os.path.dirname(os.path.abspath(path))

        def resolve(value: Optional[str]) -> Optional[str]:
            if value is None or os.path.isabs(value):
                return value
            return os.path.join(base, value)

        if "network" in data:
            data["network"] = resolve(data["network"])
        if "props" in data:
            props = data["props"] if isinstance(data["props"], list) else [data["props"]]
            data["props"] = [resolve(p) for p in props]
        if "out" in data:
            data["out"] = resolve(data["out"])
        return data
