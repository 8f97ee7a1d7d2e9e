"""
Partial-indistinguishability obfuscation of R-circuits.

An R-circuit is read as a braid word (R_i as sigma_i), reduced to its
left-greedy normal form and expanded back into a word.  Two circuits that
differ only by braid relations get bit-identical output.
"""

from __future__ import annotations

import dataclasses
import functools
import random
from typing import Literal

from .braidcore import BraidWord, NormalForm, canonical_length, normal_form, word_of
from .compiler import ToffoliCircuit, compile_circuit, randomize_word

Mode = Literal["naive", "randomized"]


@dataclasses.dataclass(frozen=True)
class ObfuscationResult:
    nf: NormalForm
    input_length: int

    @functools.cached_property
    def word(self) -> BraidWord:
        # Can be very long for randomized inputs; only built on demand.
        return word_of(self.nf)

    @property
    def stats(self) -> dict[str, int]:
        return {
            "strands": self.nf.n,
            "input_length": self.input_length,
            "output_length": canonical_length(self.nf),
            "factor_count": self.nf.p,
            "infimum": self.nf.m,
        }


def obfuscate_rcircuit(w: BraidWord) -> ObfuscationResult:
    return ObfuscationResult(normal_form(w), len(w))


def obfuscate_circuit(c: ToffoliCircuit, mode: Mode = "naive", seed: int | None = None) -> ObfuscationResult:
    """Compile a Toffoli circuit and obfuscate it.

    ``randomized`` mode swaps each letter for its 59-fold inverse with
    probability 1/2 before normalizing; it needs an explicit seed.
    """
    word = compile_circuit(c)
    if mode == "naive":
        return obfuscate_rcircuit(word)
    if mode == "randomized":
        if seed is None:
            raise ValueError("randomized mode requires a seed")
        return obfuscate_rcircuit(randomize_word(word, seed))
    raise ValueError(f"unknown mode {mode!r}")


def salt(c: ToffoliCircuit, extra_wires: int, seed: int, gates: int | None = None) -> ToffoliCircuit:
    """Add salt wires and random Toffolis that only ever write to them.

    Every salt gate targets a salt wire (its controls may be any wire), so the
    original wires compute exactly what ``c`` computes.  By default
    4 x len(c.gates) salt gates are drawn, half placed before the circuit and
    half after.
    """
    if extra_wires < 1:
        raise ValueError("salting needs at least one extra wire")
    rng = random.Random(seed)
    w = c.wires + extra_wires
    count = 4 * len(c.gates) if gates is None else gates
    salt_wires = list(range(c.wires + 1, w + 1))

    def draw():
        t = rng.choice(salt_wires)
        c1, c2 = sorted(rng.sample([k for k in range(1, w + 1) if k != t], 2))
        return (c1, c2, t)

    before = [draw() for _ in range(count // 2)]
    after = [draw() for _ in range(count - count // 2)]
    return ToffoliCircuit(w, tuple(before) + c.gates + tuple(after))
