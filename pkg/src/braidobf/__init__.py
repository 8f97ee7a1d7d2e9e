"""Braid-group normal forms as an obfuscator for reversible circuits over A5."""

from .braidcore import (
    BraidWord,
    NormalForm,
    Perm,
    StrandMismatch,
    canonical_length,
    invert,
    left_gcd,
    multiply,
    normal_form,
    word_of,
)
from .compiler import Layout, ToffoliCircuit, compile_circuit, compile_toffoli
from .obfuscator import ObfuscationResult, obfuscate_circuit, obfuscate_rcircuit, salt
from .qdouble import DitState, GroupTable, a5, quantum_double_gate, simulate

__all__ = [
    "BraidWord",
    "DitState",
    "GroupTable",
    "Layout",
    "NormalForm",
    "ObfuscationResult",
    "Perm",
    "StrandMismatch",
    "ToffoliCircuit",
    "a5",
    "canonical_length",
    "compile_circuit",
    "compile_toffoli",
    "invert",
    "left_gcd",
    "multiply",
    "normal_form",
    "obfuscate_circuit",
    "obfuscate_rcircuit",
    "quantum_double_gate",
    "salt",
    "simulate",
    "word_of",
]
