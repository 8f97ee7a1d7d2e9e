"""
Random braid words and random relation rewrites.

A rewrite replaces a word by another word for the same braid, using one of
the defining relations: far commutation, the braid relation (on positive or
on inverse letters) or insertion or deletion of a cancelling pair.
"""

from __future__ import annotations

import random

from .braidcore import BraidWord


def random_word(n: int, length: int, rng: random.Random, positive: bool = False) -> BraidWord:
    if n < 2:
        return BraidWord(n, ())
    letters = []
    for _ in range(length):
        a = rng.randint(1, n - 1)
        letters.append(a if positive or rng.random() < 0.5 else -a)
    return BraidWord(n, tuple(letters))


def _sites(letters: list[int], n: int) -> list[tuple[str, int]]:
    sites = []
    for k in range(len(letters) - 1):
        a, b = letters[k], letters[k + 1]
        if abs(abs(a) - abs(b)) >= 2:
            sites.append(("commute", k))
        if a == -b:
            sites.append(("cancel", k))
    for k in range(len(letters) - 2):
        a, b, c = letters[k : k + 3]
        if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
            sites.append(("braid", k))
    for k in range(len(letters) + 1):
        sites.append(("insert", k))
    return sites


def rewrite_once(w: BraidWord, rng: random.Random) -> BraidWord:
    """Apply one relation at a random applicable site."""
    if w.n < 2:
        return w
    letters = list(w.letters)
    kind, k = rng.choice(_sites(letters, w.n))
    if kind == "commute":
        letters[k], letters[k + 1] = letters[k + 1], letters[k]
    elif kind == "cancel":
        del letters[k : k + 2]
    elif kind == "braid":
        # a b a -> b a b with matching signs
        a, b = letters[k], letters[k + 1]
        letters[k : k + 3] = [b, a, b]
    else:
        a = rng.randint(1, w.n - 1)
        pair = [a, -a] if rng.random() < 0.5 else [-a, a]
        letters[k:k] = pair
    return BraidWord(w.n, tuple(letters))


def random_rewrites(w: BraidWord, count: int, rng: random.Random) -> BraidWord:
    for _ in range(count):
        w = rewrite_once(w, rng)
    return w
