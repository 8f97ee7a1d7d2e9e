"""
Finite groups, the quantum-double gate R(a, b) = (b, b^-1 a b), and the
machinery around it: R-circuit simulation, Yang-Baxter checks, gate orders,
orbits under R and a brute-force search for small permutation solutions.

Group elements of the built-in groups (A5, S5) are tuples of images of 1..5.
Products are read right to left, ``(xy)(k) = x(y(k))``, so ``b^-1 a b``
conjugates a by b.  Custom groups carry plain integer labels.

Internally everything runs on element indices into ``GroupTable.elements``.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import math
import re
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .braidcore import BraidWord, NormalForm, delta_word, invert, simple_to_word

GElem = Hashable

MAX_CUSTOM_ORDER = 256


class ClosureError(ValueError):
    """A subset is not closed under the gate it was meant to restrict."""


# --------------------------------------------------------------------------
# Groups
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True, eq=False)
class GroupTable:
    name: str
    elements: tuple
    mul_table: tuple[tuple[int, ...], ...]  # mul_table[x][y] = index of x*y
    inv_table: tuple[int, ...]
    identity_index: int = 0

    @functools.cached_property
    def _index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GElem:
        return self.elements[self.identity_index]

    def index(self, x: GElem) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ValueError(f"{x!r} is not an element of {self.name}") from None

    def mul(self, x: GElem, y: GElem) -> GElem:
        return self.elements[self.mul_table[self.index(x)][self.index(y)]]

    def inv(self, x: GElem) -> GElem:
        return self.elements[self.inv_table[self.index(x)]]

    def conj(self, a: GElem, b: GElem) -> GElem:
        """b^-1 a b."""
        return self.elements[self.conj_table[self.index(a), self.index(b)]]

    @functools.cached_property
    def mul_array(self) -> np.ndarray:
        return np.asarray(self.mul_table, dtype=np.int64)

    @functools.cached_property
    def inv_array(self) -> np.ndarray:
        return np.asarray(self.inv_table, dtype=np.int64)

    @functools.cached_property
    def conj_table(self) -> np.ndarray:
        """conj_table[a, b] = index of b^-1 a b."""
        mul, inv = self.mul_array, self.inv_array
        d = self.order
        ab = mul  # ab[a, b] = a*b
        binv = inv[np.arange(d)]
        # b^-1 * (a*b)
        return mul[binv[None, :], ab]

    def is_abelian(self) -> bool:
        return bool((self.mul_array == self.mul_array.T).all())

    @classmethod
    def from_table(cls, name: str, table: Sequence[Sequence[int]], labels: Sequence | None = None) -> GroupTable:
        """Build a group from an explicit multiplication table, checking the axioms.

        Element 0 must be the identity.  Associativity is checked exhaustively,
        which is why orders above ``MAX_CUSTOM_ORDER`` are refused.
        """
        d = len(table)
        if d < 1:
            raise ValueError("empty group table")
        if d > MAX_CUSTOM_ORDER:
            raise ValueError(f"group order {d} exceeds the verifiable bound {MAX_CUSTOM_ORDER}")
        if any(len(row) != d for row in table):
            raise ValueError("group table is not square")
        t = np.asarray(table, dtype=np.int64)
        if t.min() < 0 or t.max() >= d:
            raise ValueError("group table entries out of range")
        idx = np.arange(d)
        if not ((t[0] == idx).all() and (t[:, 0] == idx).all()):
            raise ValueError("element 0 is not the identity")
        for row in t:
            if len(set(row.tolist())) != d:
                raise ValueError("group table row is not a permutation (not a Latin square)")
        # (xy)z == x(yz) for all triples
        lhs = t[t[:, :, None], idx[None, None, :]]
        rhs = t[idx[:, None, None], t[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise ValueError("group table is not associative")
        inv = [int(np.nonzero(t[x] == 0)[0][0]) for x in range(d)]
        if any(t[inv[x], x] != 0 for x in range(d)):
            raise ValueError("one-sided inverse found")
        labels = tuple(range(d)) if labels is None else tuple(labels)
        return cls(name, labels, tuple(tuple(int(v) for v in row) for row in t), tuple(inv), 0)


def _perm_mul(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    # right to left: apply y first
    return tuple(x[y[k] - 1] for k in range(len(y)))


def _perm_inv(x: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(x)
    for i, v in enumerate(x, 1):
        inv[v - 1] = i
    return tuple(inv)


def _sign(x: tuple[int, ...]) -> int:
    n = len(x)
    return (-1) ** sum(1 for i in range(n) for j in range(i + 1, n) if x[i] > x[j])


def permutation_group(name: str, elements: Iterable[tuple[int, ...]]) -> GroupTable:
    els = sorted(set(elements))
    pos = {e: i for i, e in enumerate(els)}
    mul = tuple(tuple(pos[_perm_mul(x, y)] for y in els) for x in els)
    inv = tuple(pos[_perm_inv(x)] for x in els)
    ident = pos[tuple(range(1, len(els[0]) + 1))]
    return GroupTable(name, tuple(els), mul, inv, ident)


@functools.lru_cache(maxsize=None)
def symmetric_group(k: int = 5) -> GroupTable:
    return permutation_group(f"S{k}", itertools.permutations(range(1, k + 1)))


@functools.lru_cache(maxsize=None)
def alternating_group(k: int = 5) -> GroupTable:
    return permutation_group(
        f"A{k}", (p for p in itertools.permutations(range(1, k + 1)) if _sign(p) == 1)
    )


def a5() -> GroupTable:
    return alternating_group(5)


def s5() -> GroupTable:
    return symmetric_group(5)


@functools.lru_cache(maxsize=None)
def cyclic_group(d: int) -> GroupTable:
    return GroupTable.from_table(f"Z{d}", [[(x + y) % d for y in range(d)] for x in range(d)])


def builtin_group(name: str) -> GroupTable:
    key = name.lower()
    if key == "a5":
        return a5()
    if key == "s5":
        return s5()
    m = re.fullmatch(r"z(\d+)", key)
    if m:
        return cyclic_group(int(m.group(1)))
    raise ValueError(f"unknown group {name!r} (expected a5, s5 or zN)")


def parse_group_table(text: str, name: str = "custom") -> GroupTable:
    """Parse ``group <d>`` followed by d rows of d product indices."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or rows[0][0] != "group" or len(rows[0]) != 2:
        raise ValueError("group file must start with 'group <d>'")
    d = int(rows[0][1])
    body = rows[1:]
    if len(body) != d:
        raise ValueError(f"expected {d} table rows, found {len(body)}")
    return GroupTable.from_table(name, [[int(v) for v in row] for row in body])


def parse_cycles(text: str, k: int = 5) -> tuple[int, ...]:
    """Cycle notation to images, e.g. '(12)(34)' -> (2, 1, 4, 3, 5).

    Digits inside a cycle are single points, as in '(14352)'.
    """
    images = list(range(1, k + 1))
    text = text.strip()
    if text in ("", "()", "1", "e"):
        return tuple(images)
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles or "".join(f"({c})" for c in cycles) != text.replace(" ", ""):
        raise ValueError(f"cannot parse cycle notation {text!r}")
    # apply cycles right to left, matching the group product
    perm = tuple(images)
    for c in reversed(cycles):
        pts = [int(ch) for ch in c.replace(" ", "").replace(",", "")]
        if len(set(pts)) != len(pts) or any(not 1 <= x <= k for x in pts):
            raise ValueError(f"bad cycle ({c})")
        cyc = list(range(1, k + 1))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a - 1] = b
        perm = _perm_mul(tuple(cyc), perm)
    return perm


def format_cycles(x: tuple[int, ...]) -> str:
    seen = set()
    out = []
    for start in range(1, len(x) + 1):
        if start in seen or x[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = x[start - 1]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = x[j - 1]
        out.append("(" + "".join(str(v) for v in cyc) + ")")
    return "".join(out) or "()"


# --------------------------------------------------------------------------
# The R gate and dit states
# --------------------------------------------------------------------------


def r_gate(group: GroupTable, a: GElem, b: GElem) -> tuple[GElem, GElem]:
    """R(a, b) = (b, b^-1 a b)."""
    return b, group.conj(a, b)


def r_gate_inv(group: GroupTable, x: GElem, y: GElem) -> tuple[GElem, GElem]:
    """R^-1(x, y) = (x y x^-1, x)."""
    return group.conj(y, group.inv(x)), x


@dataclasses.dataclass(frozen=True)
class DitState:
    group: GroupTable
    dits: tuple

    def __post_init__(self):
        object.__setattr__(self, "dits", tuple(self.dits))
        for x in self.dits:
            self.group.index(x)

    def __len__(self) -> int:
        return len(self.dits)

    def indices(self) -> np.ndarray:
        return np.array([self.group.index(x) for x in self.dits], dtype=np.int64)

    @classmethod
    def from_indices(cls, group: GroupTable, idx: Iterable[int]) -> DitState:
        return cls(group, tuple(group.elements[int(i)] for i in idx))


def simulate_batch(
    w: BraidWord,
    group: GroupTable,
    states: np.ndarray,
    on_step: Callable[[np.ndarray], None] | None = None,
) -> np.ndarray:
    """Run an R-circuit on a batch of states (rows of element indices).

    Letter i applies R to dits (i, i+1); -i applies R^-1.  Returns a new array.
    """
    x = np.array(states, dtype=np.int64, copy=True)
    squeeze = x.ndim == 1
    if squeeze:
        x = x[None, :]
    if x.shape[1] != w.n:
        raise ValueError(f"state has {x.shape[1]} dits but the circuit acts on {w.n} strands")
    conj = group.conj_table
    inv = group.inv_array
    if on_step is None:
        _run_letters(x, w.letters, group)
        return x[0] if squeeze else x
    on_step(x)
    for a in w.letters:
        i = abs(a) - 1
        left = x[:, i].copy()
        right = x[:, i + 1].copy()
        if a > 0:
            x[:, i + 1] = conj[left, right]
            x[:, i] = right
        else:
            # (l, r) -> (l r l^-1, l)
            x[:, i] = conj[right, inv[left]]
            x[:, i + 1] = left
        if on_step is not None:
            on_step(x)
    return x[0] if squeeze else x


def simulate_nf(nf: NormalForm, group: GroupTable, states: np.ndarray) -> np.ndarray:
    """Run ``word_of(nf)`` on a batch of states without expanding the Delta power.

    Delta^m acts as a permutation of the finite state set, so once the batch
    returns to its starting point the remaining powers are reduced modulo
    that period.
    """
    x = np.array(states, dtype=np.int64, copy=True)
    squeeze = x.ndim == 1
    if squeeze:
        x = x[None, :]
    d = delta_word(nf.n)
    if nf.m < 0:
        d = invert(d)
    start = x.copy()
    remaining = abs(nf.m)
    done = 0
    while done < remaining:
        x = simulate_batch(d, group, x)
        done += 1
        if np.array_equal(x, start):
            for _ in range(remaining % done):
                x = simulate_batch(d, group, x)
            break
    body: list[int] = []
    for f in nf.factors:
        body.extend(simple_to_word(f).letters)
    _run_letters(x, body, group)
    return x[0] if squeeze else x


def _run_letters(x: np.ndarray, letters: Sequence[int], group: GroupTable) -> None:
    from ._kernels import run_letters

    run_letters(x, np.asarray(letters, dtype=np.int64).reshape(-1), group.conj_table, group.inv_array)


def simulate(w: BraidWord, s: DitState) -> DitState:
    out = simulate_batch(w, s.group, s.indices())
    return DitState.from_indices(s.group, out)


# --------------------------------------------------------------------------
# Pair gates
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class PairGate:
    """A bijection on ordered pairs; pair (a, b) has index a*d + b."""

    d: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != self.d * self.d:
            raise ValueError("pair gate table has the wrong size")
        if sorted(self.table) != list(range(self.d * self.d)):
            raise ValueError("pair gate is not a bijection")

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        return divmod(self.table[a * self.d + b], self.d)

    def inverse(self) -> PairGate:
        inv = [0] * len(self.table)
        for i, j in enumerate(self.table):
            inv[j] = i
        return PairGate(self.d, tuple(inv))

    @classmethod
    def identity(cls, d: int) -> PairGate:
        return cls(d, tuple(range(d * d)))

    @classmethod
    def swap(cls, d: int) -> PairGate:
        return cls(d, tuple(b * d + a for a in range(d) for b in range(d)))


def quantum_double_gate(group: GroupTable) -> PairGate:
    d = group.order
    conj = group.conj_table
    return PairGate(d, tuple(b * d + int(conj[a, b]) for a in range(d) for b in range(d)))


def _ybe_sides(table: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    """Apply R1 R2 R1 and R2 R1 R2 to every triple.  ``table`` has shape (..., d*d)."""
    t = np.arange(d ** 3)
    a0, b0, c0 = t // (d * d), (t // d) % d, t % d

    def r(ta, x, y):
        out = np.take_along_axis(ta, np.broadcast_to(x * d + y, ta.shape[:-1] + (len(t),)), axis=-1)
        return out // d, out % d

    ta = table.reshape(-1, d * d)
    a, b, c = (np.broadcast_to(v, (ta.shape[0], len(t))) for v in (a0, b0, c0))
    a1, b1 = r(ta, a, b)
    b1, c1 = r(ta, b1, c)
    a1, b1 = r(ta, a1, b1)
    b2, c2 = r(ta, b, c)
    a2, b2 = r(ta, a, b2)
    b2, c2 = r(ta, b2, c2)
    lhs = (a1 * d + b1) * d + c1
    rhs = (a2 * d + b2) * d + c2
    return lhs, rhs


def check_yang_baxter(g: PairGate) -> bool:
    """Exhaustively compare R1 R2 R1 with R2 R1 R2 on all d^3 triples."""
    lhs, rhs = _ybe_sides(np.asarray(g.table, dtype=np.int64), g.d)
    return bool(np.array_equal(lhs, rhs))


def check_yang_baxter_loop(g: PairGate) -> bool:
    """Plain-loop version of :func:`check_yang_baxter`, kept as an independent oracle."""
    d = g.d
    for a in range(d):
        for b in range(d):
            for c in range(d):
                x, y = g(a, b)
                y, z = g(y, c)
                x, y = g(x, y)
                p, q = g(b, c)
                o, p = g(a, p)
                p, q = g(p, q)
                if (x, y, z) != (o, p, q):
                    return False
    return True


def gate_order(g: PairGate) -> int:
    """Least k >= 1 with g^k the identity: lcm of the cycle lengths."""
    seen = [False] * len(g.table)
    order = 1
    for start in range(len(g.table)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = g.table[j]
            length += 1
        order = math.lcm(order, length)
    return order


def restrict_gate(g: PairGate, subset: Iterable[int]) -> PairGate:
    """Restrict a pair gate to subset x subset, relabelling the subset 0..k-1 in sorted order."""
    keep = sorted(set(int(x) for x in subset))
    pos = {x: i for i, x in enumerate(keep)}
    k = len(keep)
    table = []
    for a in keep:
        for b in keep:
            x, y = g(a, b)
            if x not in pos or y not in pos:
                raise ClosureError(f"pair ({a}, {b}) maps outside the subset, to ({x}, {y})")
            table.append(pos[x] * k + pos[y])
    return PairGate(k, tuple(table))


# --------------------------------------------------------------------------
# Subgroups, conjugacy and orbits
# --------------------------------------------------------------------------


def generated_subgroup(group: GroupTable, gens: Iterable[GElem]) -> frozenset:
    return frozenset(group.elements[i] for i in _generated(group, [group.index(g) for g in gens]))


def _generated(group: GroupTable, gens: list[int]) -> set[int]:
    mul = group.mul_table
    seen = {group.identity_index}
    frontier = [group.identity_index]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def orbit_under_r(group: GroupTable, seed: Iterable[GElem]) -> frozenset:
    """All conjugates b^-1 a b with a in the seed and b in the group it generates."""
    seed_idx = [group.index(x) for x in seed]
    sub = _generated(group, seed_idx)
    conj = group.conj_table
    return frozenset(group.elements[int(conj[a, b])] for a in seed_idx for b in sub)


def reachable_under_r(group: GroupTable, seed: Iterable[GElem]) -> frozenset:
    """Closure of the seed under R and R^-1 applied to pairs of known values.

    This follows the gate dynamics directly rather than the conjugation
    formula, and is used to cross-check :func:`orbit_under_r`.
    """
    conj = group.conj_table
    inv = group.inv_table
    values = {group.index(x) for x in seed}
    while True:
        new = set()
        for a in values:
            for b in values:
                new.add(int(conj[a, b]))          # R(a, b)[1]
                new.add(int(conj[b, inv[a]]))     # R^-1(a, b)[0]
        if new <= values:
            return frozenset(group.elements[i] for i in values)
        values |= new


def conjugacy_classes(group: GroupTable) -> list[frozenset]:
    conj = group.conj_table
    left = set(range(group.order))
    classes = []
    while left:
        x = min(left)
        cls = {int(c) for c in conj[x, :]}
        left -= cls
        classes.append(frozenset(group.elements[i] for i in cls))
    classes.sort(key=lambda c: (len(c), min(group.index(e) for e in c)))
    return classes


def class_breakdown(group: GroupTable, subset: Iterable[GElem]) -> list[tuple[GElem, int, int]]:
    """For each conjugacy class: (representative, class size, members in subset)."""
    sub = set(subset)
    out = []
    for cls in conjugacy_classes(group):
        rep = min(cls, key=group.index)
        out.append((rep, len(cls), len(cls & sub)))
    return out


# --------------------------------------------------------------------------
# Small-d exhaustive search
# --------------------------------------------------------------------------

MAX_SEARCH_D = 3


def ybe_search(d: int) -> list[PairGate]:
    """All bijections on d x d that satisfy the Yang-Baxter equation (d <= 3)."""
    if not 1 <= d <= MAX_SEARCH_D:
        raise ValueError(f"exhaustive search supports 1 <= d <= {MAX_SEARCH_D}, got {d}")
    cand = np.array(list(itertools.permutations(range(d * d))), dtype=np.int64)
    found = []
    chunk = 40320
    for start in range(0, len(cand), chunk):
        block = cand[start:start + chunk]
        lhs, rhs = _ybe_sides(block, d)
        ok = (lhs == rhs).all(axis=1)
        found.extend(PairGate(d, tuple(row.tolist())) for row in block[ok])
    return found


def ybe_search_bruteforce(d: int) -> list[PairGate]:
    """Loop-based reference for :func:`ybe_search`."""
    return [
        g
        for g in (PairGate(d, p) for p in itertools.permutations(range(d * d)))
        if check_yang_baxter_loop(g)
    ]
