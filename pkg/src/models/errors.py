"""
Exceções do verificador.
Todas herdam de VerifierError para que a CLI consiga mapear para códigos de saída.
"""

from typing import Optional


class VerifierError(Exception):
    """Erro base do verificador"""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.path = path
        self.line = line
        super().__init__(self.__str__())

    def __str__(self) -> str:
        if self.path and self.line is not None:
            return f"{self.path}:{self.line}: {self.message}"
        if self.path:
            return f"{self.path}: {self.message}"
        return self.message


class NetworkParseError(VerifierError):
    """Arquivo de rede malformado"""


class ShapeError(VerifierError):
    """Dimensões incompatíveis"""


class NumericError(VerifierError):
    """Peso, bias ou limite não finito"""


class PropertyError(VerifierError):
    """Arquivo de propriedades inválido"""


class BudgetError(VerifierError):
    """Orçamento de avaliações excedido"""


class ManifestError(VerifierError):
    """Manifesto de execução inválido"""
