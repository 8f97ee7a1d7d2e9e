"""
Attacks on the normal-form obfuscator.

The central signal is the infimum.  Appending the inverse of the braid of a
guessed last gate to a naive obfuscation leaves a positive braid when the
guess is right; wrong guesses tend to leave a negative power of Delta.
"""

from __future__ import annotations

import dataclasses
import functools
import random
from typing import Iterable, Literal, Sequence

import numpy as np

from .braidcore import (
    BraidWord,
    NormalForm,
    StrandMismatch,
    canonical_length,
    invert,
    is_positive,
    left_divides,
    left_gcd_nf,
    multiply,
    normal_form,
)
from .compiler import (
    Gate,
    Layout,
    ToffoliCircuit,
    all_inputs,
    compile_circuit,
    compile_toffoli,
    placements,
    random_circuit,
)
from .obfuscator import ObfuscationResult, obfuscate_circuit, salt
from .qdouble import DitState, a5, simulate_batch, simulate_nf


@dataclasses.dataclass(frozen=True)
class GuessReport:
    gate: Gate
    positive_after_strip: bool
    infimum_after_strip: int
    canonical_length_delta: int


@functools.lru_cache(maxsize=4096)
def _gate_inverse(gate: Gate, layout: Layout) -> BraidWord:
    return invert(compile_toffoli(gate, layout))


def _as_nf(obf: NormalForm | ObfuscationResult) -> NormalForm:
    return obf.nf if isinstance(obf, ObfuscationResult) else obf


def strip(obf: NormalForm | ObfuscationResult, gate: Gate, layout: Layout) -> NormalForm:
    """Normal form of obf times the inverse braid of one Toffoli gate."""
    nf = _as_nf(obf)
    if nf.n != layout.strands:
        raise StrandMismatch(f"normal form has {nf.n} strands, layout needs {layout.strands}")
    return multiply(nf, _gate_inverse(tuple(gate), layout))


def guess_last_gate(obf: NormalForm | ObfuscationResult, layout: Layout) -> list[GuessReport]:
    """Strip every Toffoli placement in turn; one report per placement, sorted by gate."""
    nf = _as_nf(obf)
    base = canonical_length(nf)
    reports = []
    for g in placements(layout.w):
        s = strip(nf, g, layout)
        reports.append(GuessReport(g, is_positive(s), s.m, canonical_length(s) - base))
    return sorted(reports, key=lambda r: r.gate)


PeelStatus = Literal["recovered", "no-candidate", "ambiguous", "too-long"]


@dataclasses.dataclass(frozen=True)
class PeelResult:
    status: PeelStatus
    circuit: ToffoliCircuit | None
    peeled: tuple[Gate, ...]  # gates removed, last gate first
    candidates: tuple[Gate, ...] = ()  # passing guesses at the point of failure

    @property
    def ok(self) -> bool:
        return self.status == "recovered"


def peel_circuit(
    obf: NormalForm | ObfuscationResult,
    layout: Layout,
    max_gates: int,
    backtrack: bool = False,
) -> PeelResult:
    """Recover a circuit by repeatedly stripping the unique positive guess.

    Without ``backtrack`` the first step with zero or several passing guesses
    ends the attack.  With it, every passing guess is tried depth first, up
    to ``max_gates`` deep.
    """
    nf = _as_nf(obf)
    if nf.n != layout.strands:
        raise StrandMismatch(f"normal form has {nf.n} strands, layout needs {layout.strands}")

    def done(peeled):
        return PeelResult("recovered", ToffoliCircuit(layout.w, tuple(reversed(peeled))), tuple(peeled))

    def step(residual, peeled):
        if residual.is_trivial():
            return done(peeled)
        if len(peeled) >= max_gates:
            return PeelResult("too-long", None, tuple(peeled))
        passing = []
        for g in placements(layout.w):
            s = strip(residual, g, layout)
            if is_positive(s):
                passing.append((g, s))
        if not passing:
            return PeelResult("no-candidate", None, tuple(peeled))
        if len(passing) > 1 and not backtrack:
            return PeelResult("ambiguous", None, tuple(peeled), tuple(g for g, _ in passing))
        failure = None
        for g, s in passing:
            result = step(s, peeled + [g])
            if result.ok:
                return result
            failure = failure or result
        if len(passing) > 1:
            return PeelResult("ambiguous", None, tuple(peeled), tuple(g for g, _ in passing))
        return failure

    return step(nf, [])


def length_attack_score(obf: NormalForm | ObfuscationResult, guess: Gate, layout: Layout) -> int:
    """Change in canonical length caused by stripping the guess; negative favours it."""
    nf = _as_nf(obf)
    return canonical_length(strip(nf, guess, layout)) - canonical_length(nf)


def dictionary_attack(
    target: ObfuscationResult | NormalForm,
    candidates: Sequence[ToffoliCircuit],
    mode: str = "naive",
    seed: int | None = None,
) -> int | None:
    """Index of the first candidate whose obfuscation equals the target, if any."""
    nf = _as_nf(target)
    for i, c in enumerate(candidates):
        if 2 * (c.wires + 4) != nf.n:
            continue
        if obfuscate_circuit(c, mode, seed).nf == nf:
            return i
    return None


def gcd_strip(a: ObfuscationResult | NormalForm, b: ObfuscationResult | NormalForm) -> BraidWord:
    """Left gcd of two positive obfuscations: the shared prefix they leak."""
    x, y = _as_nf(a), _as_nf(b)
    if not (is_positive(x) and is_positive(y)):
        raise ValueError("gcd_strip needs positive normal forms (naive obfuscations)")
    return left_gcd_nf(x, y)


# --------------------------------------------------------------------------
# Experiments.  Each returns a flat dict suitable for key=value reports.
# --------------------------------------------------------------------------


def experiment_circuits(trials: int, seed: int, wires: Iterable[int] = (3, 4), max_gates: int = 4) -> list[ToffoliCircuit]:
    """The random instance suite: wire counts cycle, gate counts 1..max_gates."""
    rng = random.Random(seed)
    wires = tuple(wires)
    return [random_circuit(wires[i % len(wires)], rng.randint(1, max_gates), rng) for i in range(trials)]


def _instance_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


@functools.lru_cache(maxsize=128)
def _obfuscate_instance(c: ToffoliCircuit, mode: str, seed: int, i: int) -> ObfuscationResult:
    # Experiments on the same suite share obfuscations.
    return obfuscate_circuit(c, mode, _instance_seed(seed, i) if mode == "randomized" else None)


def peeling_experiment(
    trials: int = 50,
    seed: int = 0,
    mode: str = "naive",
    wires: Iterable[int] = (3, 4),
    max_gates: int = 4,
    backtrack: bool = False,
) -> dict[str, int | float | str]:
    """Peel random obfuscations and count outcomes.

    Also strips the true gates one by one from the end and records whether
    every such strip stayed positive, and how many wrong guesses at the
    first step came out negative.
    """
    circuits = experiment_circuits(trials, seed, wires, max_gates)
    counts = {"recovered": 0, "no-candidate": 0, "ambiguous": 0, "too-long": 0}
    roundtrip_failures = 0
    true_strips = true_positive = 0
    wrong = wrong_negative = 0
    for i, c in enumerate(circuits):
        layout = Layout(c.wires)
        obf = _obfuscate_instance(c, mode, seed, i)
        residual = obf.nf
        for g in reversed(c.gates):
            residual = strip(residual, g, layout)
            true_strips += 1
            true_positive += is_positive(residual)
        reports = guess_last_gate(obf, layout)
        for r in reports:
            if r.gate != c.gates[-1]:
                wrong += 1
                wrong_negative += not r.positive_after_strip
        if any(r.positive_after_strip for r in reports):
            result = peel_circuit(obf, layout, max_gates, backtrack)
        else:
            # the first peeling step would see exactly these guesses
            result = PeelResult("no-candidate", None, ())
        counts[result.status] += 1
        if result.ok and obfuscate_circuit(result.circuit).nf != obf.nf:
            roundtrip_failures += 1
    return {
        "experiment": "peel",
        "mode": mode,
        "seed": seed,
        "trials": trials,
        "recovered": counts["recovered"],
        "no_candidate": counts["no-candidate"],
        "ambiguous": counts["ambiguous"],
        "too_long": counts["too-long"],
        "recovery_rate": counts["recovered"] / trials if trials else 0.0,
        "roundtrip_failures": roundtrip_failures,
        "true_strips": true_strips,
        "true_strips_positive": true_positive,
        "wrong_guesses": wrong,
        "wrong_guesses_negative": wrong_negative,
    }


def length_ranking_experiment(trials: int = 20, seed: int = 0, wires: Iterable[int] = (3, 4)) -> dict[str, int | float | str]:
    """How often the true last gate is the unique minimum of the length score."""
    circuits = experiment_circuits(trials, seed, wires)
    unique_min = 0
    for c in circuits:
        layout = Layout(c.wires)
        obf = obfuscate_circuit(c)
        scores = {g: length_attack_score(obf, g, layout) for g in placements(c.wires)}
        best = min(scores.values())
        winners = [g for g, s in scores.items() if s == best]
        unique_min += winners == [c.gates[-1]]
    return {
        "experiment": "length-ranking",
        "seed": seed,
        "trials": trials,
        "true_gate_unique_minimum": unique_min,
        "rate": unique_min / trials if trials else 0.0,
    }


def gcd_experiment(pairs: int = 20, seed: int = 0, wires: int = 4, prefix_gates: int = 1) -> dict[str, int | str]:
    """Prefix-sharing pairs g;r1 and g;r2: does the compiled prefix divide the gcd?"""
    rng = random.Random(seed)
    layout = Layout(wires)
    options = placements(wires)
    divides = 0
    full = 0
    for _ in range(pairs):
        prefix = ToffoliCircuit(wires, tuple(rng.choice(options) for _ in range(prefix_gates)))
        r1, r2 = rng.sample(options, 2)
        a = obfuscate_circuit(prefix + ToffoliCircuit(wires, (r1,)))
        b = obfuscate_circuit(prefix + ToffoliCircuit(wires, (r2,)))
        g = gcd_strip(a, b)
        divides += left_divides(compile_circuit(prefix), g)
        full += normal_form(g) == normal_form(compile_circuit(prefix))
    return {
        "experiment": "gcd",
        "seed": seed,
        "pairs": pairs,
        "wires": wires,
        "prefix_divides_gcd": divides,
        "gcd_equals_prefix": full,
    }


def equivalence_experiment(
    trials: int = 50,
    seed: int = 0,
    mode: str = "naive",
    states: int = 100,
    wires: Iterable[int] = (3, 4),
) -> dict[str, int | str]:
    """Compare compiled and obfuscated circuits on random dit states and encoded inputs."""
    circuits = experiment_circuits(trials, seed, wires)
    group = a5()
    rng = np.random.default_rng(seed)
    state_failures = truth_failures = 0
    for i, c in enumerate(circuits):
        layout = Layout(c.wires)
        word = compile_circuit(c)
        obf = _obfuscate_instance(c, mode, seed, i)
        batch = rng.integers(0, group.order, size=(states, layout.strands))
        if not np.array_equal(simulate_batch(word, group, batch), simulate_nf(obf.nf, group, batch)):
            state_failures += 1
        inputs = list(all_inputs(c.wires))
        encoded = np.array([layout.encode(bits, group).indices() for bits in inputs])
        out = simulate_nf(obf.nf, group, encoded)
        for bits, row in zip(inputs, out):
            try:
                good = layout.decode(DitState.from_indices(group, row)) == c.evaluate(bits)
            except ValueError:
                good = False
            if not good:
                truth_failures += 1
                break
    return {
        "experiment": "equivalence",
        "mode": mode,
        "seed": seed,
        "trials": trials,
        "states_per_trial": states,
        "state_mismatches": state_failures,
        "truth_table_mismatches": truth_failures,
    }


def salting_experiment(trials: int = 10, seed: int = 0, extra_wires: int = 1) -> dict[str, int | str]:
    """Salted targets against a dictionary of unsalted sources."""
    circuits = experiment_circuits(trials, seed, wires=(3,), max_gates=2)
    found_unsalted = found_salted = 0
    for i, c in enumerate(circuits):
        found_unsalted += dictionary_attack(obfuscate_circuit(c), circuits) is not None
        salted = obfuscate_circuit(salt(c, extra_wires, _instance_seed(seed, i)))
        found_salted += dictionary_attack(salted, circuits) is not None
    return {
        "experiment": "dictionary",
        "seed": seed,
        "trials": trials,
        "found_unsalted": found_unsalted,
        "found_salted": found_salted,
    }
