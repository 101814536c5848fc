# src/models/__init__.py
from src.models.errors import (
    BudgetError,
    ManifestError,
    NetworkParseError,
    NumericError,
    PropertyError,
    ShapeError,
    VerifierError,
)
from src.models.interval import Box, Interval, OutputBounds, Provenance, SamplingConfig
from src.models.network import Activation, InputNormalization, Layer, Network, random_network
from src.models.property import AssertionMode, DecisionProperty, DominanceAssertion, Verdict, VerdictKind

__all__ = [
    "Activation",
    "AssertionMode",
    "Box",
    "BudgetError",
    "DecisionProperty",
    "DominanceAssertion",
    "InputNormalization",
    "Interval",
    "Layer",
    "ManifestError",
    "Network",
    "NetworkParseError",
    "NumericError",
    "OutputBounds",
    "PropertyError",
    "Provenance",
    "SamplingConfig",
    "ShapeError",
    "Verdict",
    "VerdictKind",
    "VerifierError",
    "random_network",
]
