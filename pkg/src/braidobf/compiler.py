"""
Compile reversible Toffoli circuits into R-circuits (braid words) over A5.

Every logical wire and four catalyst values live in *encoded dits*: a group
element g stored on two adjacent strands as (g, g^-1).  Encoded dit j
occupies strands 2j-1 and 2j.  Dits 1..4 hold the catalysts, dit 4+k holds
logical wire k, bit 0 is encoded as (345) and bit 1 as (435).

A Toffoli gate is nine controlled conjugations of the target dit.  The
target and its two controls are first walked, by nearest-neighbour encoded
swaps, into dits 5, 6, 7 directly below the catalysts; each conjugation is
then routed so its control sits directly above the target.
"""

from __future__ import annotations

import dataclasses
import random
from typing import Iterable, Sequence

from .braidcore import BraidWord, normal_form
from .qdouble import DitState, GroupTable, a5, parse_cycles

CATALYSTS = tuple(parse_cycles(c) for c in ("(14352)", "(15342)", "(124)", "(521)"))
ZERO = parse_cycles("(345)")
ONE = parse_cycles("(435)")

Gate = tuple[int, int, int]


@dataclasses.dataclass(frozen=True)
class ToffoliCircuit:
    """Logical circuit; each gate is (c1, c2, t) with 1-based wires and c1 < c2."""

    wires: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.wires < 3:
            raise ValueError("a Toffoli circuit needs at least 3 wires")
        gates = []
        for g in self.gates:
            c1, c2, t = (int(v) for v in g)
            if c1 > c2:
                c1, c2 = c2, c1
            if len({c1, c2, t}) != 3:
                raise ValueError(f"gate {g}: controls and target must be distinct")
            if not all(1 <= v <= self.wires for v in (c1, c2, t)):
                raise ValueError(f"gate {g}: wire index out of range 1..{self.wires}")
            gates.append((c1, c2, t))
        object.__setattr__(self, "gates", tuple(gates))

    def __add__(self, other: ToffoliCircuit) -> ToffoliCircuit:
        if self.wires != other.wires:
            raise ValueError("circuits act on different wire counts")
        return ToffoliCircuit(self.wires, self.gates + other.gates)

    def evaluate(self, bits: Sequence[int]) -> tuple[int, ...]:
        """Classical reference semantics."""
        b = list(bits)
        if len(b) != self.wires:
            raise ValueError("wrong number of input bits")
        for c1, c2, t in self.gates:
            b[t - 1] ^= b[c1 - 1] & b[c2 - 1]
        return tuple(b)


def placements(wires: int) -> list[Gate]:
    """Every Toffoli placement (c1 < c2, t) on the given number of wires."""
    return [
        (c1, c2, t)
        for c1 in range(1, wires + 1)
        for c2 in range(c1 + 1, wires + 1)
        for t in range(1, wires + 1)
        if t not in (c1, c2)
    ]


@dataclasses.dataclass(frozen=True)
class Layout:
    w: int

    @property
    def dits(self) -> int:
        return self.w + 4

    @property
    def strands(self) -> int:
        return 2 * self.dits

    def dit_of_wire(self, k: int) -> int:
        if not 1 <= k <= self.w:
            raise ValueError(f"wire {k} out of range 1..{self.w}")
        return 4 + k

    def encode(self, bits: Sequence[int], group: GroupTable | None = None) -> DitState:
        group = group or a5()
        if len(bits) != self.w:
            raise ValueError(f"expected {self.w} bits")
        values = list(CATALYSTS) + [ONE if b else ZERO for b in bits]
        strands = []
        for g in values:
            strands += [g, group.inv(g)]
        return DitState(group, tuple(strands))

    def decode(self, state: DitState) -> tuple[int, ...]:
        """Read the logical bits back, checking catalysts and encodings."""
        group = state.group
        d = state.dits
        if len(d) != self.strands:
            raise ValueError("state does not match the layout")
        for j in range(self.dits):
            if group.mul(d[2 * j], d[2 * j + 1]) != group.identity:
                raise ValueError(f"dit {j + 1} is not an encoded pair")
        for j, g in enumerate(CATALYSTS):
            if d[2 * j] != g:
                raise ValueError(f"catalyst dit {j + 1} not restored")
        bits = []
        for k in range(1, self.w + 1):
            g = d[2 * (self.dit_of_wire(k) - 1)]
            if g == ZERO:
                bits.append(0)
            elif g == ONE:
                bits.append(1)
            else:
                raise ValueError(f"wire {k} holds a non-bit value")
        return tuple(bits)


def _check_dit(j: int, layout: Layout) -> None:
    if not 1 <= j < layout.dits:
        raise ValueError(f"encoded-dit index {j} out of range 1..{layout.dits - 1}")


def swap_macro(j: int, layout: Layout) -> tuple[int, ...]:
    """Exchange encoded dits j and j+1."""
    _check_dit(j, layout)
    return (2 * j, 2 * j - 1, 2 * j + 1, 2 * j)


def conj_macro(j: int, sign: int, layout: Layout) -> tuple[int, ...]:
    """Conjugate encoded dit j+1 by dit j (by its inverse for sign -1)."""
    _check_dit(j, layout)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return tuple(sign * a for a in (2 * j, 2 * j + 1, 2 * j + 1, 2 * j))


def routed_conj(control: int, target: int, sign: int, layout: Layout) -> tuple[int, ...]:
    """Controlled conjugation between arbitrary encoded dits.

    The control is walked next to the target (just above it), the
    conjugation applied, and the walk replayed in reverse.
    """
    if control == target:
        raise ValueError("control and target must differ")
    for j in (control, target):
        if not 1 <= j <= layout.dits:
            raise ValueError(f"encoded-dit index {j} out of range 1..{layout.dits}")
    if control < target:
        walk = list(range(control, target - 1))
        site = target - 1
    else:
        walk = list(range(control - 1, target - 1, -1))
        site = target
    letters: list[int] = []
    for j in walk:
        letters += swap_macro(j, layout)
    letters += conj_macro(site, sign, layout)
    for j in reversed(walk):
        letters += swap_macro(j, layout)
    return tuple(letters)


# (control dit, sign) in time order, target in dit 5, c1 in dit 6, c2 in dit 7.
# Conjugating by these in turn conjugates the target by
# f(g1, g2) = (521) g1 (14352) g2 (124) g1^-1 (15342) g2^-1 (521).
CORE_SCHEDULE = ((4, 1), (7, -1), (2, 1), (6, -1), (3, 1), (7, 1), (1, 1), (6, 1), (4, 1))


def staging_swaps(gate: Gate, layout: Layout) -> list[int]:
    """Encoded swaps that bring target, c1, c2 (in that order) to dits 5, 6, 7."""
    c1, c2, t = gate
    row = list(range(1, layout.w + 1))  # row[i] = wire currently in dit 5+i
    swaps = []
    for dest, wire in enumerate((t, c1, c2)):
        p = row.index(wire)
        while p > dest:
            swaps.append(4 + p)
            row[p - 1], row[p] = row[p], row[p - 1]
            p -= 1
    return swaps


def compile_toffoli(gate: Gate, layout: Layout) -> BraidWord:
    """Braid word for one Toffoli gate.

    The three wires are walked up next to the catalysts, the nine
    controlled conjugations of f(g1, g2) applied to the target, and the walk
    replayed backwards.  For gate (2, 3, 1) no walking is needed.
    """
    c1, c2, t = ToffoliCircuit(layout.w, (gate,)).gates[0]
    walk = staging_swaps((c1, c2, t), layout)
    letters: list[int] = []
    for j in walk:
        letters += swap_macro(j, layout)
    for control, sign in CORE_SCHEDULE:
        letters += routed_conj(control, 5, sign, layout)
    for j in reversed(walk):
        letters += swap_macro(j, layout)
    return BraidWord(layout.strands, tuple(letters))


def compile_circuit(c: ToffoliCircuit) -> BraidWord:
    layout = Layout(c.wires)
    letters: list[int] = []
    for g in c.gates:
        letters += compile_toffoli(g, layout).letters
    return BraidWord(layout.strands, tuple(letters))


def randomize_word(w: BraidWord, seed: int, order: int = 60, probability: float = 0.5) -> BraidWord:
    """Replace each letter, independently with the given probability, by order-1 copies of its inverse.

    R has the given order, so sigma_i^-(order-1) acts exactly like sigma_i
    (and sigma_i^(order-1) like sigma_i^-1).  The input must be a positive
    braid; compiled Toffoli words are, although a few of their letters are
    inverses.
    """
    if normal_form(w).m < 0:
        raise ValueError("randomize_word expects a positive braid")
    if order < 1:
        raise ValueError("gate order must be positive")
    rng = random.Random(seed)
    out: list[int] = []
    for a in w.letters:
        if rng.random() < probability:
            out += [-a] * (order - 1)
        else:
            out.append(a)
    return BraidWord(w.n, tuple(out))


def random_circuit(wires: int, gates: int, rng: random.Random) -> ToffoliCircuit:
    options = placements(wires)
    return ToffoliCircuit(wires, tuple(rng.choice(options) for _ in range(gates)))


def all_inputs(wires: int) -> Iterable[tuple[int, ...]]:
    for x in range(2 ** wires):
        yield tuple((x >> (wires - 1 - k)) & 1 for k in range(wires))
