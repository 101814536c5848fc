"""
Serviço de propriedades: leitura dos arquivos, veredito por limites e busca de contraexemplos
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.models.errors import PropertyError, VerifierError
from src.models.interval import Box, OutputBounds, Provenance, SamplingConfig
from src.models.network import InputNormalization, Network
from src.models.property import (
    DENIED_CODE,
    REVERSED_SAMPLED_CODE,
    UNKNOWN_CODE,
    AssertionMode,
    DecisionProperty,
    DominanceAssertion,
    Verdict,
)
from src.models.sampled_backend import sample_box

logger = logging.getLogger(__name__)


class PropertyService:
    """Serviço para propriedades de decisão"""

    @staticmethod
    def parse_properties(path: str, output_dim: Optional[int] = None) -> List[DecisionProperty]:
        """
        Lê um arquivo JSON de propriedades.

        Aceita uma lista de objetos ou {"properties": [...]}; cada objeto tem
        name, box ([[lo, hi], ...]), loser, winners e mode opcional.

        Args:
            path: Caminho do arquivo
            output_dim: Se informado, valida os índices de saída

        Returns:
            List[DecisionProperty]: Propriedades na ordem do arquivo
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise PropertyError("arquivo de propriedades não encontrado", path=path)
        except json.JSONDecodeError as e:
            raise PropertyError(f"JSON inválido: {e.msg}", path=path, line=e.lineno)

        entries = data.get("properties") if isinstance(data, dict) else data
        if isinstance(data, dict) and entries is None and "box" in data:
            entries = [data]
        if not isinstance(entries, list) or not entries:
            raise PropertyError("esperada uma lista não vazia de propriedades", path=path)

        # nomes padrão levam o nome do arquivo para não colidirem entre arquivos
        stem = os.path.splitext(os.path.basename(path))[0]
        properties = []
        for index, entry in enumerate(entries):
            try:
                prop = PropertyService.property_from_dict(entry, default_name=f"{stem}_property_{index}")
                if output_dim is not None:
                    prop.assertion.check_indices(output_dim)
            except VerifierError as e:
                raise PropertyError(f"propriedade {index}: {e.message}", path=path)
            properties.append(prop)

        logger.info(f"{len(properties)} propriedade(s) lida(s) de {path}")
        return properties

    @staticmethod
    def property_from_dict(entry: Dict[str, Any], default_name: str = "property") -> DecisionProperty:
        if not isinstance(entry, dict):
            raise PropertyError("cada propriedade deve ser um objeto")
        for key in ("box", "loser", "winners"):
            if key not in entry:
                raise PropertyError(f"campo obrigatório ausente: {key!r}")
        winners = entry["winners"]
        if isinstance(winners, int):
            winners = [winners]
        if not isinstance(winners, list) or not winners:
            raise PropertyError("'winners' deve ser uma lista não vazia")
        try:
            box = Box.from_pairs(entry["box"])
            assertion = DominanceAssertion(
                loser=int(entry["loser"]),
                winners=frozenset(int(w) for w in winners),
                mode=AssertionMode.parse(entry.get("mode", "all_of")),
            )
        except (TypeError, ValueError) as e:
            raise PropertyError(f"valor inválido: {e}")
        known = {"name", "box", "loser", "winners", "mode", "description"}
        return DecisionProperty(
            name=str(entry.get("name", default_name)),
            input_box=box,
            assertion=assertion,
            description=str(entry.get("description", "")),
            metadata={k: v for k, v in entry.items() if k not in known},
        )

    @staticmethod
    def save_properties(properties: Sequence[DecisionProperty], path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"properties": [p.to_dict() for p in properties]}, f, indent=2)

    @staticmethod
    def check_dominance(
        bounds: OutputBounds, assertion: DominanceAssertion, witness: Optional[Sequence[float]] = None
    ) -> Verdict:
        """
        Decide a asserção comparando extremos de intervalos.

        Com limites formais, dominância invertida nega a propriedade. Com limites
        amostrados a negação só vale junto de uma testemunha concreta.

        Args:
            bounds: Limites de saída da subárea
            assertion: Asserção de dominância
            witness: Entrada concreta que viola a asserção (opcional)

        Returns:
            Verdict: PROVED, DENIED ou UNKNOWN
        """
        assertion.check_indices(len(bounds))
        formal = bounds.provenance is Provenance.FORMAL
        code = int(assertion.classify(bounds.lower[None, :], bounds.upper[None, :], formal)[0])
        if code == REVERSED_SAMPLED_CODE:
            code = DENIED_CODE if witness is not None else UNKNOWN_CODE
        if code == DENIED_CODE and witness is not None:
            return Verdict.from_code(code, np.asarray(witness, dtype=np.float64))
        return Verdict.from_code(code)

    @staticmethod
    def violates(net: Network, assertion: DominanceAssertion, x: Sequence[float]) -> bool:
        """Reavalia um ponto com forward: True se a asserção falha nele."""
        return not bool(assertion.holds(net.forward(x)))

    @staticmethod
    def sample_counterexample(
        net: Network, box: Box, assertion: DominanceAssertion, cfg: SamplingConfig
    ) -> Optional[np.ndarray]:
        """
        Procura uma entrada da caixa que viole a asserção entre n amostras.

        Args:
            net: Rede verificada
            box: Caixa de busca
            assertion: Asserção de dominância
            cfg: Configuração de amostragem

        Returns:
            np.ndarray: Primeiro ponto violador confirmado, ou None
        """
        points = sample_box(box.lower, box.upper, cfg)
        outputs = net.forward_batch(points)
        for index in np.flatnonzero(~assertion.holds(outputs)):
            candidate = points[index]
            if PropertyService.violates(net, assertion, candidate):
                return candidate
        return None

    @staticmethod
    def normalize_box(box: Box, normalization: Optional[InputNormalization]) -> Box:
        """Converte uma caixa em coordenadas brutas para as coordenadas normalizadas da rede."""
        if normalization is None:
            return box
        lower = normalization.normalize_inputs(box.lower)
        upper = normalization.normalize_inputs(box.upper)
        return Box.from_arrays(np.minimum(lower, upper), np.maximum(lower, upper))
