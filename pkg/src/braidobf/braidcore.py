"""
Permutations, braid words and the left-greedy (Garside) normal form of B_n.

Conventions
-----------
A ``Perm`` stores the images of 1..n as a 1-based tuple.  Permutations compose
as functions, ``compose(f, g) = f o g``, so that the permutation image of a
word ``a_1 a_2 ... a_k`` (time order, leftmost applied first) is
``s_{a_1} o s_{a_2} o ... o s_{a_k}``.  Under this convention:

- sigma_i left-divides the simple braid of f  iff  f^-1(i) > f^-1(i+1)
- sigma_i right-divides the simple braid of f iff  f(i) > f(i+1)

which are exactly the two sides of the normality condition used below.

A ``NormalForm`` is ``Delta^m s_1 ... s_p`` with ``(s_1, ..., s_p)`` a normal
sequence of simple braids, ``s_1 != Delta`` and no ``s_j`` trivial.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Literal, Sequence

__all__ = [
    "Perm",
    "BraidWord",
    "NormalForm",
    "StrandMismatch",
    "compose",
    "descents",
    "delta_perm",
    "tau",
    "simple_to_word",
    "permutation_image",
    "left_weight_pair",
    "normal_form",
    "multiply",
    "multiply_nf",
    "inverse_nf",
    "word_of",
    "invert",
    "is_positive",
    "is_normal",
    "canonical_length",
    "left_divides",
    "left_gcd",
    "left_gcd_nf",
    "delta_word",
]


class StrandMismatch(ValueError):
    """Operands live in braid groups (or symmetric groups) of different rank."""


# --------------------------------------------------------------------------
# Permutations
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n < 1:
            raise ValueError("a permutation needs at least one point")
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int) -> Perm:
        """The adjacent transposition (i i+1), the image of sigma_i."""
        if not 1 <= i < n:
            raise ValueError(f"generator index {i} out of range for n={n}")
        return cls(_transposition(n, i))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def inverse(self) -> Perm:
        return Perm(_inverse(self.images))

    def inversions(self) -> int:
        return _inversions(self.images)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, 1))

    def __repr__(self) -> str:
        return f"Perm({self.images})"


# Raw helpers on 1-based image tuples.  The normal-form engine runs on these
# to avoid re-validating every intermediate permutation.


def _identity(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def _transposition(n: int, i: int) -> tuple[int, ...]:
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p, 1):
        inv[x - 1] = i
    return tuple(inv)


def _compose(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return tuple(f[x - 1] for x in g)


def _inversions(p: Sequence[int]) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def _delta(n: int) -> tuple[int, ...]:
    return tuple(range(n, 0, -1))


def _tau(p: Sequence[int]) -> tuple[int, ...]:
    n = len(p)
    return tuple(n + 1 - p[n - 1 - i] for i in range(n))


def _left_weight(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Slide atoms from the front of v onto the back of u until (u, v) is normal."""
    uu = list(u)
    vinv = list(_inverse(v))
    n = len(uu)
    moved = False
    i = 0
    while i < n - 1:
        # i is a left descent of v but not a right descent of u
        if vinv[i] > vinv[i + 1] and uu[i] < uu[i + 1]:
            uu[i], uu[i + 1] = uu[i + 1], uu[i]
            vinv[i], vinv[i + 1] = vinv[i + 1], vinv[i]
            moved = True
            i = i - 1 if i > 0 else 0
        else:
            i += 1
    if not moved:
        return u, v
    return tuple(uu), _inverse(vinv)


def _append_simple(factors: list[tuple[int, ...]], s: tuple[int, ...], identity: tuple[int, ...]) -> None:
    """Right-multiply a normal sequence by one simple factor, in place.

    One backward pass of left-weighting suffices; it stops at the first pair
    that is already left-weighted.
    """
    if s == identity:
        return
    factors.append(s)
    j = len(factors) - 1
    while j > 0:
        u, v = factors[j - 1], factors[j]
        u2, v2 = _left_weight(u, v)
        if u2 is u:
            break
        factors[j - 1] = u2
        factors[j] = v2
        j -= 1
    while factors and factors[-1] == identity:
        factors.pop()


def _extend_py(head: list[tuple[int, ...]], simples: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    identity = _identity(n)
    for s in simples:
        _append_simple(head, s, identity)
    return head


# Short jobs stay in Python; long ones go to the compiled loop.
_KERNEL_THRESHOLD = 64


def _extend(head: list[tuple[int, ...]], simples: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    if len(head) + len(simples) < _KERNEL_THRESHOLD:
        return _extend_py(head, simples, n)
    from ._kernels import normalize_rows

    return normalize_rows(head, simples, n)


def _normalize(m: int, factors: Iterable[tuple[int, ...]], n: int) -> tuple[int, list[tuple[int, ...]]]:
    """Normal form of Delta^m times the product of the given simple factors."""
    delta = _delta(n)
    out = _extend([], list(factors), n)
    lead = 0
    while lead < len(out) and out[lead] == delta:
        lead += 1
    return m + lead, out[lead:]


def _sweep(letters: Sequence[int], n: int) -> tuple[int, list[tuple[int, ...]]]:
    """Rewrite a word as Delta^-k times a sequence of simple factors.

    Scans right to left.  sigma_i^-1 = Delta^-1 b_i with b_i = Delta sigma_i^-1,
    and every factor left of k pushed-through Delta^-1's is conjugated by tau^k.
    """
    delta = _delta(n)
    gens = [None] + [_transposition(n, i) for i in range(1, n)]
    # b_i = Delta sigma_i^{-1}: perm w0 o s_i
    co = [None] + [_compose(delta, gens[i]) for i in range(1, n)]
    co_tau = [None] + [_tau(co[i]) for i in range(1, n)]
    k = 0
    out: list[tuple[int, ...]] = []
    for a in reversed(letters):
        if a > 0:
            out.append(gens[a] if k % 2 == 0 else gens[n - a])
        else:
            i = -a
            out.append(co[i] if k % 2 == 0 else co_tau[i])
            k += 1
    out.reverse()
    return k, out


# --------------------------------------------------------------------------
# Braid words and normal forms
# --------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators; letters are listed in time order.

    ``k > 0`` stands for sigma_k and ``k < 0`` for sigma_|k|^-1.
    """

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.n < 1:
            raise ValueError("strand count must be positive")
        for a in letters:
            if a == 0 or abs(a) > self.n - 1:
                raise ValueError(f"letter {a} out of range for {self.n} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if not isinstance(other, BraidWord):
            return NotImplemented
        _check_n(self.n, other.n)
        return BraidWord(self.n, self.letters + other.letters)

    def is_positive(self) -> bool:
        return all(a > 0 for a in self.letters)

    def exponent_sum(self) -> int:
        return sum(1 if a > 0 else -1 for a in self.letters)


@dataclasses.dataclass(frozen=True)
class NormalForm:
    n: int
    m: int
    factors: tuple[Perm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.n != self.n:
                raise StrandMismatch(f"factor {f} does not act on {self.n} points")

    @property
    def p(self) -> int:
        """Canonical length: number of non-Delta factors."""
        return len(self.factors)

    @classmethod
    def identity(cls, n: int) -> NormalForm:
        return cls(n, 0, ())

    def is_trivial(self) -> bool:
        return self.m == 0 and not self.factors


def _check_n(a: int, b: int) -> None:
    if a != b:
        raise StrandMismatch(f"strand counts differ: {a} != {b}")


def _nf_from_raw(n: int, m: int, raw: Sequence[tuple[int, ...]]) -> NormalForm:
    # Perm validation is skipped; raw factors are produced by the engine.
    factors = []
    for p in raw:
        f = object.__new__(Perm)
        object.__setattr__(f, "images", p)
        factors.append(f)
    return NormalForm(n, m, tuple(factors))


def compose(f: Perm, g: Perm) -> Perm:
    """The product f g of simple braids, read as permutations: x -> f(g(x))."""
    _check_n(f.n, g.n)
    return Perm(_compose(f.images, g.images))


def descents(f: Perm, side: Literal["left", "right"]) -> frozenset[int]:
    """Indices i such that sigma_i divides the simple braid of f on the given side."""
    if side == "left":
        inv = _inverse(f.images)
        return frozenset(i for i in range(1, f.n) if inv[i - 1] > inv[i])
    if side == "right":
        p = f.images
        return frozenset(i for i in range(1, f.n) if p[i - 1] > p[i])
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def delta_perm(n: int) -> Perm:
    """Image of the half twist Delta_n: the order reversal i -> n+1-i."""
    return Perm(_delta(n))


def tau(f: Perm) -> Perm:
    """Conjugation by Delta, w0 f w0."""
    return Perm(_tau(f.images))


def simple_to_word(f: Perm) -> BraidWord:
    """
    Canonical positive word of the simple braid of f.

    Selection sort of the image list: the largest misplaced value is carried
    to its slot by adjacent swaps, then the next largest, and so on.  The
    swaps, read backwards, spell the word.

    >>> simple_to_word(Perm((3, 2, 1))).letters
    (1, 2, 1)
    """
    p = list(f.images)
    record = []
    for value in range(f.n, 0, -1):
        pos = p.index(value)
        while pos < value - 1:
            p[pos], p[pos + 1] = p[pos + 1], p[pos]
            record.append(pos + 1)
            pos += 1
    record.reverse()
    return BraidWord(f.n, tuple(record))


def delta_word(n: int) -> BraidWord:
    return simple_to_word(delta_perm(n))


def permutation_image(w: BraidWord) -> Perm:
    p = list(range(1, w.n + 1))
    # p o s_i swaps positions i, i+1
    for a in w.letters:
        i = abs(a)
        p[i - 1], p[i] = p[i], p[i - 1]
    return Perm(tuple(p))


def left_weight_pair(u: Perm, v: Perm) -> tuple[Perm, Perm]:
    """Left-weight the pair (u, v): the product is unchanged and the result is normal."""
    _check_n(u.n, v.n)
    a, b = _left_weight(u.images, v.images)
    return Perm(a), Perm(b)


def _normal_form_direct(letters: Sequence[int], n: int) -> tuple[int, list[tuple[int, ...]]]:
    k, simples = _sweep(letters, n)
    return _normalize(-k, simples, n)


def _inverse_raw(n: int, m: int, raw: Sequence[tuple[int, ...]]) -> tuple[int, list[tuple[int, ...]]]:
    """Normal form of (Delta^m s_1 ... s_p)^-1.

    s_j^-1 = Delta^-1 d_j with d_j = w0 s_j^-1; pulling every Delta^-1 to the
    front twists d_j by tau once per Delta^-1 to its right.
    """
    p = len(raw)
    if p >= _KERNEL_THRESHOLD:
        return _normalize(-(m + p), _inverse_factors_np(n, m, raw), n)
    delta = _delta(n)
    seq = []
    for j in range(p, 0, -1):
        d = _compose(delta, _inverse(raw[j - 1]))
        if (j - 1 + m) % 2:
            d = _tau(d)
        seq.append(d)
    return _normalize(-(m + p), seq, n)


def _inverse_factors_np(n: int, m: int, raw: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    import numpy as np

    a = np.asarray(raw, dtype=np.int16)
    p = len(a)
    # d_j = w0 s_j^-1, i.e. images n + 1 - s_j^-1(x)
    d = (n + 1 - (np.argsort(a, axis=1) + 1)).astype(np.int16)
    twist = (np.arange(p) + m) % 2 == 1
    d[twist] = n + 1 - d[twist][:, ::-1]
    return list(map(tuple, d[::-1].tolist()))


def _product_raw(
    n: int, ma: int, a: Sequence[tuple[int, ...]], mb: int, b: Sequence[tuple[int, ...]]
) -> tuple[int, list[tuple[int, ...]]]:
    # Delta^ma A Delta^mb B = Delta^(ma+mb) tau^mb(A) B
    head = [_tau(f) for f in a] if mb % 2 else list(a)
    head = _extend(head, list(b), n)
    delta = _delta(n)
    lead = 0
    while lead < len(head) and head[lead] == delta:
        lead += 1
    return ma + mb + lead, head[lead:]


def normal_form(w: BraidWord) -> NormalForm:
    """Left-greedy normal form of a word.

    Each inverse letter becomes a nearly full factor that usually ripples
    through the whole sequence, so words dominated by inverse letters are
    normalized through their inverse instead.
    """
    negative = sum(1 for a in w.letters if a < 0)
    if 2 * negative <= len(w.letters):
        m, raw = _normal_form_direct(w.letters, w.n)
    else:
        m, raw = _normal_form_direct(invert(w).letters, w.n)
        m, raw = _inverse_raw(w.n, m, raw)
    return _nf_from_raw(w.n, m, raw)


def inverse_nf(nf: NormalForm) -> NormalForm:
    """Normal form of the inverse braid, computed factor by factor."""
    m, raw = _inverse_raw(nf.n, nf.m, [f.images for f in nf.factors])
    return _nf_from_raw(nf.n, m, raw)


def multiply_nf(a: NormalForm, b: NormalForm) -> NormalForm:
    """Normal form of the product a b of two normal forms."""
    _check_n(a.n, b.n)
    m, raw = _product_raw(
        a.n, a.m, [f.images for f in a.factors], b.m, [f.images for f in b.factors]
    )
    return _nf_from_raw(a.n, m, raw)


def multiply(nf: NormalForm, w: BraidWord) -> NormalForm:
    """Normal form of nf * w, without re-expanding nf into a word.

    When w is mostly inverse letters the product is formed as
    (w^-1 nf^-1)^-1, where only the short w^-1 contributes rippling factors.
    """
    _check_n(nf.n, w.n)
    n = nf.n
    negative = sum(1 for a in w.letters if a < 0)
    if 2 * negative <= len(w.letters):
        k, simples = _sweep(w.letters, n)
        m, raw = _product_raw(n, nf.m, [f.images for f in nf.factors], -k, simples)
        return _nf_from_raw(n, m, raw)
    wm, wraw = _normal_form_direct(invert(w).letters, n)
    xm, xraw = _inverse_raw(n, nf.m, [f.images for f in nf.factors])
    m, raw = _product_raw(n, wm, wraw, xm, xraw)
    m, raw = _inverse_raw(n, m, raw)
    return _nf_from_raw(n, m, raw)


def word_of(nf: NormalForm) -> BraidWord:
    """Expand a normal form into a word: Delta (or its inverse) |m| times, then the factors."""
    d = delta_word(nf.n).letters
    if nf.m >= 0:
        head = d * nf.m
    else:
        head = tuple(-a for a in reversed(d)) * (-nf.m)
    body: list[int] = list(head)
    for f in nf.factors:
        body.extend(simple_to_word(f).letters)
    return BraidWord(nf.n, tuple(body))


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.n, tuple(-a for a in reversed(w.letters)))


def is_positive(nf: NormalForm) -> bool:
    return nf.m >= 0


def canonical_length(nf: NormalForm) -> int:
    """Letter count of word_of(nf)."""
    return abs(nf.m) * nf.n * (nf.n - 1) // 2 + sum(f.inversions() for f in nf.factors)


def is_normal(nf: NormalForm) -> bool:
    """Check the structural invariants of a normal form."""
    n = nf.n
    fs = [f.images for f in nf.factors]
    if any(p == _identity(n) for p in fs):
        return False
    if fs and fs[0] == _delta(n):
        return False
    for u, v in zip(fs, fs[1:]):
        if _left_weight(u, v)[0] is not u:
            return False
    return True


def left_divides(a: BraidWord, b: BraidWord) -> bool:
    """True iff a^-1 b is a positive braid."""
    return is_positive(normal_form(invert(a) + b))


def _strip_atom(nf: NormalForm, i: int) -> NormalForm:
    """sigma_i^-1 * nf for a positive nf that sigma_i left-divides."""
    n = nf.n
    if nf.m > 0:
        # sigma_i^-1 Delta = c with c = s_i o w0; then move Delta^(m-1) to the front
        c = _compose(_transposition(n, i), _delta(n))
        if (nf.m - 1) % 2:
            c = _tau(c)
        m, raw = _normalize(nf.m - 1, [c] + [f.images for f in nf.factors], n)
    else:
        first = _compose(_transposition(n, i), nf.factors[0].images)
        m, raw = _normalize(0, [first] + [f.images for f in nf.factors[1:]], n)
    return _nf_from_raw(n, m, raw)


def _first_atoms(nf: NormalForm) -> frozenset[int]:
    if nf.m > 0:
        return frozenset(range(1, nf.n))
    if not nf.factors:
        return frozenset()
    return descents(nf.factors[0], "left")


def left_gcd_nf(x: NormalForm, y: NormalForm) -> BraidWord:
    """:func:`left_gcd` for braids already in normal form."""
    _check_n(x.n, y.n)
    if not (is_positive(x) and is_positive(y)):
        raise ValueError("left_gcd is defined here for positive braids only")
    out = []
    while True:
        common = _first_atoms(x) & _first_atoms(y)
        if not common:
            break
        i = min(common)
        out.append(i)
        x, y = _strip_atom(x, i), _strip_atom(y, i)
    return BraidWord(x.n, tuple(out))


def left_gcd(a: BraidWord, b: BraidWord) -> BraidWord:
    """
    Greatest common left divisor of two positive braids.

    Common atoms are peeled off one at a time: if sigma_i left-divides both,
    gcd(a, b) = sigma_i gcd(sigma_i^-1 a, sigma_i^-1 b).  Inputs need only be
    positive as braids, not letter by letter.
    """
    _check_n(a.n, b.n)
    return left_gcd_nf(normal_form(a), normal_form(b))
