"""Mapping class group orbits of low-rank representations of punctured surface groups."""

from __future__ import annotations

__version__ = "0.1.0"

from .classify import Classification, classify, prepare
from .cyclo import CycloElt, Field, field
from .mcg import GenName, parse_mcg_word
from .orbit import OrbitResult, orbit, suborbit_probe
from .reps import AffElt, Rep, UpperElt, act, act_word, canon, validate

__all__ = [
    "AffElt",
    "Classification",
    "CycloElt",
    "Field",
    "GenName",
    "OrbitResult",
    "Rep",
    "UpperElt",
    "__version__",
    "act",
    "act_word",
    "canon",
    "classify",
    "field",
    "orbit",
    "parse_mcg_word",
    "prepare",
    "suborbit_probe",
    "validate",
]
