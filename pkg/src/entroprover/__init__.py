"""Symbolic prover for linear information inequalities."""

from .balance import balance, is_balanced, is_balanced_for
from .expr import canonical, parse, render
from .linform import LinForm, VarContext
from .rules import Partition, apply_mmrv, apply_zy, substitute
from .shannon import Certificate, Witness, check_shannon

__all__ = [
    "Certificate",
    "LinForm",
    "Partition",
    "VarContext",
    "Witness",
    "apply_mmrv",
    "apply_zy",
    "balance",
    "canonical",
    "check_shannon",
    "is_balanced",
    "is_balanced_for",
    "parse",
    "render",
    "substitute",
]
