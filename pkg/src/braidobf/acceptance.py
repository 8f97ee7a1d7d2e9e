"""
The acceptance suite: thirteen end-to-end checks, each returning a
``CriterionResult``.  ``run_all`` drives them for the CLI ``selftest``
command and the test suite.
"""

from __future__ import annotations

import dataclasses
import itertools
import random
import time
from typing import Callable

import numpy as np

from . import attacks
from .braidcore import (
    BraidWord,
    canonical_length,
    invert,
    is_normal,
    left_gcd,
    normal_form,
    permutation_image,
    word_of,
)
from .compiler import (
    CATALYSTS,
    ONE,
    ZERO,
    Layout,
    ToffoliCircuit,
    all_inputs,
    compile_toffoli,
    placements,
)
from .fuzz import random_rewrites, random_word
from .obfuscator import obfuscate_rcircuit
from .qdouble import (
    DitState,
    PairGate,
    a5,
    check_yang_baxter,
    class_breakdown,
    gate_order,
    generated_subgroup,
    orbit_under_r,
    parse_cycles,
    quantum_double_gate,
    restrict_gate,
    simulate_batch,
    simulate_nf,
    ybe_search,
    ybe_search_bruteforce,
)

# Reference braid for TOF(2,3,1) on three wires as printed in the source
# material, read right to left; time order is its reverse.
REFERENCE_TOFFOLI = (
    8, 9, 9, 8, 10, 11, 9, 10, 10, 11, 11, 10, 10, 11, 9, 10,
    2, 3, 1, 2, 4, 5, 3, 4, 6, 7, 5, 6, 8, 9, 9, 8,
    6, 7, 5, 6, 4, 5, 3, 4, 2, 3, 1, 2, 12, 13, 11, 12,
    10, 11, 9, 10, 10, 11, 11, 10, 10, 11, 9, 10, 12, 13, 11, 12,
    6, 7, 5, 6, 8, 9, 9, 8, 6, 7, 5, 6, 10, 11, 9, 10,
    -10, -11, -11, -10, 10, 11, 9, 10, 4, 5, 3, 4, 6, 7, 5, 6,
    8, 9, 9, 8, 6, 7, 5, 6, 4, 5, 3, 4, 12, 13, 11, 12,
    10, 11, 9, 10, -10, -11, -11, -10, 10, 11, 9, 10, 12, 13, 11, 12,
    8, 9, 9, 8,
)  # fmt: skip

ORBIT_SEED = CATALYSTS + (ZERO, ONE)

SEED = 20240601


@dataclasses.dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.number:2d} {self.name}: {self.detail}"


def _fmt(report: dict) -> str:
    return " ".join(f"{k}={v:.3f}" if isinstance(v, float) else f"{k}={v}" for k, v in report.items())


def criterion_1() -> CriterionResult:
    t = time.perf_counter()
    ok = check_yang_baxter(quantum_double_gate(a5()))
    dt = time.perf_counter() - t
    return CriterionResult(1, "Yang-Baxter over A5", ok and dt < 60, f"triples={60 ** 3} holds={ok} seconds={dt:.2f}")


def criterion_2() -> CriterionResult:
    k = gate_order(quantum_double_gate(a5()))
    return CriterionResult(2, "gate order", k == 60, f"order={k}")


def criterion_3() -> CriterionResult:
    g = a5()
    orbit = orbit_under_r(g, ORBIT_SEED)
    sub = generated_subgroup(g, ORBIT_SEED)
    breakdown = class_breakdown(g, orbit)
    included = sorted((inside for _, size, inside in breakdown if inside == size and inside), reverse=True)
    identity_class = next(inside for rep, size, inside in breakdown if rep == g.identity)
    dt_class = len(_class_of(g, parse_cycles("(12)(34)")) & orbit)
    restricted = restrict_gate(quantum_double_gate(g), [g.index(x) for x in orbit])
    ybe = check_yang_baxter(restricted)
    ok = (
        len(orbit) == 44
        and len(sub) == 60
        and included == [20, 12, 12]
        and identity_class == 0
        and dt_class == 0
        and ybe
    )
    return CriterionResult(
        3,
        "orbit under R",
        ok,
        f"orbit={len(orbit)} subgroup={len(sub)} classes={'+'.join(map(str, included))} "
        f"identity={identity_class} double_transpositions={dt_class} restricted_ybe={ybe}",
    )


def _class_of(g, rep) -> frozenset:
    return frozenset(g.conj(rep, b) for b in g.elements)


def criterion_4() -> CriterionResult:
    w = compile_toffoli((2, 3, 1), Layout(3))
    ref = BraidWord(14, tuple(reversed(REFERENCE_TOFFOLI)))
    nf = normal_form(w)
    same_nf = nf == normal_form(ref)
    same_letters = w.letters == ref.letters
    ok = len(w) == 132 and w.n == 14 and same_nf and nf.m == 0 and nf.p == 14
    return CriterionResult(
        4,
        "golden Toffoli braid",
        ok,
        f"letters={len(w)} strands={w.n} m={nf.m} p={nf.p} nf_matches={same_nf} letters_match={same_letters}",
    )


def criterion_5() -> CriterionResult:
    t = time.perf_counter()
    group = a5()
    orbit_idx = np.zeros(group.order, dtype=bool)
    orbit_idx[[group.index(x) for x in orbit_under_r(group, ORBIT_SEED)]] = True
    checked = failures = 0
    outside = False

    def watch(x):
        nonlocal outside
        if not orbit_idx[x].all():
            outside = True

    for w in (3, 4, 5):
        layout = Layout(w)
        inputs = list(all_inputs(w))
        batch = np.array([layout.encode(b, group).indices() for b in inputs])
        for gate in placements(w):
            c = ToffoliCircuit(w, (gate,))
            out = simulate_batch(compile_toffoli(gate, layout), group, batch, on_step=watch)
            for bits, row in zip(inputs, out):
                checked += 1
                try:
                    got = layout.decode(DitState.from_indices(group, row))
                except ValueError:
                    failures += 1
                    continue
                failures += got != c.evaluate(bits)
    dt = time.perf_counter() - t
    ok = failures == 0 and not outside and dt < 60
    return CriterionResult(
        5, "Toffoli semantics", ok, f"cases={checked} failures={failures} left_orbit={outside} seconds={dt:.2f}"
    )


def criterion_6() -> CriterionResult:
    stable = (*range(2, 9), *range(10, 13))
    details = []
    ok = True
    for w in (3, 4, 5):
        layout = Layout(w)
        nfs = [normal_form(compile_toffoli(g, layout)) for g in placements(w)]
        good = all(x.p >= 12 for x in nfs) and all(
            len({x.factors[k - 1] for x in nfs}) == 1 for k in stable
        )
        ok &= good
        details.append(f"w{w}={'stable' if good else 'varies'}")
    return CriterionResult(6, "factor stability", ok, " ".join(details))


def nf_corpus(count: int = 1000, seed: int = SEED) -> list[BraidWord]:
    """Random words, n uniform on 2..10 and length uniform on 0..300."""
    rng = random.Random(seed)
    return [random_word(rng.randint(2, 10), rng.randint(0, 300), rng) for _ in range(count)]


def criterion_7() -> CriterionResult:
    t = time.perf_counter()
    rng = random.Random(SEED + 7)
    failures = {"rewrite": 0, "inverse": 0, "exponent": 0, "projection": 0, "normality": 0, "roundtrip": 0}
    corpus = nf_corpus()
    for w in corpus:
        nf = normal_form(w)
        n = w.n
        failures["rewrite"] += normal_form(random_rewrites(w, 20, rng)) != nf
        failures["inverse"] += not normal_form(w + invert(w)).is_trivial()
        half = n * (n - 1) // 2
        exp = nf.m * half + sum(f.inversions() for f in nf.factors)
        failures["exponent"] += exp != w.exponent_sum()
        back = word_of(nf)
        failures["projection"] += permutation_image(back) != permutation_image(w)
        failures["normality"] += not is_normal(nf)
        failures["roundtrip"] += normal_form(back) != nf
    dt = time.perf_counter() - t
    ok = not any(failures.values()) and dt < 120
    detail = f"words={len(corpus)} " + " ".join(f"{k}={v}" for k, v in failures.items()) + f" seconds={dt:.2f}"
    return CriterionResult(7, "normal-form properties", ok, detail)


def criterion_8() -> CriterionResult:
    rng = random.Random(SEED + 8)
    group = a5()
    nprng = np.random.default_rng(SEED + 8)
    state_fail = rewrite_fail = 0
    words = [random_word(rng.randint(2, 10), rng.randint(0, 120), rng) for _ in range(50)]
    for w in words:
        out = obfuscate_rcircuit(w)
        states = nprng.integers(0, group.order, size=(100, w.n))
        state_fail += not np.array_equal(simulate_batch(w, group, states), simulate_batch(out.word, group, states))
        other = obfuscate_rcircuit(random_rewrites(w, 50, rng))
        rewrite_fail += other.nf != out.nf or other.word != out.word
    circuits = attacks.equivalence_experiment(50, SEED, "naive")
    ok = state_fail == 0 and rewrite_fail == 0 and circuits["state_mismatches"] == 0 and circuits["truth_table_mismatches"] == 0
    return CriterionResult(
        8,
        "obfuscator conformance",
        ok,
        f"words={len(words)} state_mismatches={state_fail} rewrite_mismatches={rewrite_fail} "
        f"circuits={circuits['trials']} circuit_state_mismatches={circuits['state_mismatches']} "
        f"truth_table_mismatches={circuits['truth_table_mismatches']}",
    )


def criterion_9() -> CriterionResult:
    t = time.perf_counter()
    r = attacks.peeling_experiment(50, SEED, "naive")
    dt = time.perf_counter() - t
    ok = (
        r["true_strips_positive"] == r["true_strips"]
        and r["recovery_rate"] >= 0.8
        and r["roundtrip_failures"] == 0
        and dt < 600
    )
    return CriterionResult(9, "peeling attack", ok, _fmt(r) + f" seconds={dt:.2f}")


def criterion_10() -> CriterionResult:
    t = time.perf_counter()
    eq = attacks.equivalence_experiment(50, SEED, "randomized")
    r = attacks.peeling_experiment(50, SEED, "randomized")
    dt = time.perf_counter() - t
    ok = eq["state_mismatches"] == 0 and eq["truth_table_mismatches"] == 0 and r["recovery_rate"] <= 0.2
    return CriterionResult(
        10,
        "randomized countermeasure",
        ok,
        f"state_mismatches={eq['state_mismatches']} truth_table_mismatches={eq['truth_table_mismatches']} "
        + _fmt({k: r[k] for k in ("trials", "recovered", "no_candidate", "ambiguous", "recovery_rate")})
        + f" seconds={dt:.2f}",
    )


def positive_class(word: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """All positive words equal to the given one, by exhaustive positive rewriting."""
    seen = {word}
    frontier = [word]
    while frontier:
        nxt = []
        for w in frontier:
            for k in range(len(w) - 1):
                a, b = w[k], w[k + 1]
                if abs(a - b) >= 2:
                    v = w[:k] + (b, a) + w[k + 2 :]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
                if k + 2 < len(w) and w[k + 2] == a and abs(a - b) == 1:
                    v = w[:k] + (b, a, b) + w[k + 3 :]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
        frontier = nxt
    return frozenset(seen)


def bruteforce_left_gcd(a: tuple[int, ...], b: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Class of the longest common left divisor, enumerated from prefixes."""

    def divisors(w):
        return {positive_class(v[:k]) for v in positive_class(w) for k in range(len(w) + 1)}

    common = divisors(a) & divisors(b)
    longest = max(len(next(iter(c))) for c in common)
    top = [c for c in common if len(next(iter(c))) == longest]
    if len(top) != 1:
        raise AssertionError("common divisors have no unique maximum")
    return top[0]


def criterion_11() -> CriterionResult:
    r = attacks.gcd_experiment(20, SEED, wires=4)
    rng = random.Random(SEED + 11)
    oracle_fail = 0
    cases = 200
    for _ in range(cases):
        n = rng.randint(2, 4)
        a = tuple(random_word(n, rng.randint(0, 6), rng, positive=True).letters)
        b = tuple(random_word(n, rng.randint(0, 6), rng, positive=True).letters)
        g = left_gcd(BraidWord(n, a), BraidWord(n, b)).letters
        oracle_fail += g not in bruteforce_left_gcd(a, b)
    ok = r["prefix_divides_gcd"] == r["pairs"] and oracle_fail == 0
    return CriterionResult(
        11, "gcd stripping", ok, _fmt(r) + f" oracle_cases={cases} oracle_mismatches={oracle_fail}"
    )


def criterion_12() -> CriterionResult:
    worst = 0.0
    violations = 0
    corpus = nf_corpus()
    for w in corpus:
        out = canonical_length(normal_form(w))
        bound = 4 * len(w) ** 2 + w.n ** 2
        violations += out > bound
        worst = max(worst, out / bound)
    return CriterionResult(
        12, "polynomial slowdown", violations == 0, f"words={len(corpus)} violations={violations} worst_ratio={worst:.3f}"
    )


def criterion_13() -> CriterionResult:
    found = ybe_search(2)
    oracle = ybe_search_bruteforce(2)
    tables = {g.table for g in found}
    has_identity = PairGate.identity(2).table in tables
    has_swap = PairGate.swap(2).table in tables
    closed = all(g.inverse().table in tables for g in found)
    same = tables == {g.table for g in oracle}
    ok = has_identity and has_swap and closed and same
    return CriterionResult(
        13,
        "YBE search d=2",
        ok,
        f"bijections={len(list(itertools.permutations(range(4))))} solutions={len(found)} "
        f"oracle={len(oracle)} identity={has_identity} swap={has_swap} inverse_closed={closed}",
    )


CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
    criterion_13,
)


def run_all(selected: set[int] | None = None) -> list[CriterionResult]:
    results = []
    for fn in CRITERIA:
        number = int(fn.__name__.rsplit("_", 1)[1])
        if selected is None or number in selected:
            results.append(fn())
    return results
