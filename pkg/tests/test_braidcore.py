import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidobf import braidcore as bc
from braidobf._kernels import normalize_rows
from braidobf.acceptance import bruteforce_left_gcd
from braidobf.braidcore import (
    BraidWord,
    NormalForm,
    Perm,
    StrandMismatch,
    canonical_length,
    compose,
    delta_perm,
    delta_word,
    descents,
    inverse_nf,
    invert,
    is_normal,
    is_positive,
    left_divides,
    left_gcd,
    left_weight_pair,
    multiply,
    multiply_nf,
    normal_form,
    permutation_image,
    simple_to_word,
    tau,
    word_of,
)
from braidobf.fuzz import random_rewrites


def s(n, i):
    return Perm.transposition(n, i)


@st.composite
def words(draw, max_n=8, max_len=60, positive=False):
    n = draw(st.integers(2, max_n))
    gen = st.integers(1, n - 1) if positive else st.integers(1, n - 1).flatmap(lambda a: st.sampled_from([a, -a]))
    letters = draw(st.lists(gen, max_size=max_len))
    return BraidWord(n, tuple(letters))


# permutations ------------------------------------------------------------


def test_compose_examples():
    e = Perm.identity(3)
    assert compose(e, s(3, 1)) == s(3, 1)
    assert compose(s(3, 1), s(3, 1)) == e
    # f o g: apply (2 3) first, then (1 2); 1 -> 2, 2 -> 3, 3 -> 1
    assert compose(s(3, 1), s(3, 2)).images == (2, 3, 1)


def test_compose_strand_mismatch():
    with pytest.raises(StrandMismatch):
        compose(Perm.identity(3), Perm.identity(4))


def test_perm_validation():
    with pytest.raises(ValueError):
        Perm((1, 1, 2))


def test_descents():
    assert descents(Perm.identity(3), "left") == frozenset()
    assert descents(delta_perm(3), "left") == {1, 2}
    assert descents(s(3, 1), "right") == {1}
    with pytest.raises(ValueError):
        descents(Perm.identity(3), "up")


def test_delta_perm():
    assert delta_perm(1) == Perm.identity(1)
    assert delta_perm(2) == s(2, 1)
    assert delta_perm(3).images == (3, 2, 1)
    assert delta_perm(6).inversions() == 15


def test_tau():
    assert tau(Perm.identity(4)) == Perm.identity(4)
    assert tau(delta_perm(5)) == delta_perm(5)
    assert tau(s(4, 1)) == s(4, 3)


@given(st.permutations(range(1, 7)))
def test_tau_involution(p):
    f = Perm(tuple(p))
    assert tau(tau(f)) == f


def test_simple_to_word_examples():
    assert simple_to_word(Perm.identity(3)).letters == ()
    assert simple_to_word(s(2, 1)).letters == (1,)
    w = simple_to_word(delta_perm(3))
    assert len(w) == 3 and permutation_image(w) == delta_perm(3)


@given(st.permutations(range(1, 7)))
def test_simple_to_word_projection(p):
    f = Perm(tuple(p))
    w = simple_to_word(f)
    assert w.is_positive()
    assert len(w) == f.inversions()
    assert permutation_image(w) == f


def test_permutation_image_examples():
    assert permutation_image(BraidWord(3, ())) == Perm.identity(3)
    assert permutation_image(BraidWord(3, (1, 2, 1))) == delta_perm(3)
    assert permutation_image(BraidWord(3, (-1,))) == s(3, 1)


@given(words(), words())
def test_permutation_image_homomorphism(a, b):
    if a.n != b.n:
        return
    assert permutation_image(a + b) == compose(permutation_image(a), permutation_image(b))


def test_left_weight_pair_examples():
    assert left_weight_pair(s(3, 1), s(3, 1)) == (s(3, 1), s(3, 1))
    u, v = left_weight_pair(s(3, 1), s(3, 2))
    assert u == permutation_image(BraidWord(3, (1, 2))) and v == Perm.identity(3)
    f = Perm((3, 1, 2))
    assert left_weight_pair(Perm.identity(3), f) == (f, Perm.identity(3))


@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_left_weight_pair_properties(p, q):
    u, v = Perm(tuple(p)), Perm(tuple(q))
    a, b = left_weight_pair(u, v)
    assert descents(b, "left") <= descents(a, "right")
    assert a.inversions() + b.inversions() == u.inversions() + v.inversions()
    before = simple_to_word(u) + simple_to_word(v)
    after = simple_to_word(a) + simple_to_word(b)
    assert normal_form(before) == normal_form(after)


# normal forms ------------------------------------------------------------


def test_normal_form_examples():
    assert normal_form(BraidWord(3, ())) == NormalForm(3, 0, ())
    assert normal_form(BraidWord(3, (1, 2, 1))) == NormalForm(3, 1, ())
    assert normal_form(BraidWord(3, (-1, 2, -2, 1))).is_trivial()
    nf = normal_form(BraidWord(3, (-1,)))
    assert nf.m == -1 and nf.factors == (permutation_image(BraidWord(3, (1, 2))),)


def test_braid_relation():
    assert normal_form(BraidWord(3, (1, 2, 1))) == normal_form(BraidWord(3, (2, 1, 2)))
    assert normal_form(BraidWord(4, (1, 3))) == normal_form(BraidWord(4, (3, 1)))
    assert normal_form(BraidWord(4, (1, 2))) != normal_form(BraidWord(4, (2, 1)))


def test_word_of_examples():
    assert word_of(NormalForm(3, 0, ())).letters == ()
    assert word_of(NormalForm(2, 1, ())).letters == (1,)
    assert word_of(NormalForm(3, 0, (s(3, 1),))).letters == (1,)


def test_invert_examples():
    assert invert(BraidWord(3, ())).letters == ()
    assert invert(BraidWord(3, (1, -2))).letters == (2, -1)
    w = BraidWord(3, (1, 2, 1))
    assert normal_form(w + invert(w)).is_trivial()


def test_is_positive_examples():
    assert is_positive(NormalForm(3, 0, ()))
    assert is_positive(normal_form(BraidWord(4, (1, 2, 3, 3, 1))))
    assert not is_positive(normal_form(BraidWord(3, (-1,))))


def test_braid_word_validation():
    with pytest.raises(ValueError):
        BraidWord(3, (3,))
    with pytest.raises(ValueError):
        BraidWord(3, (0,))
    with pytest.raises(StrandMismatch):
        BraidWord(3, ()) + BraidWord(4, ())


@settings(max_examples=200)
@given(words())
def test_normal_form_invariants(w):
    nf = normal_form(w)
    assert is_normal(nf)
    back = word_of(nf)
    assert normal_form(back) == nf
    assert len(back) == canonical_length(nf)
    assert permutation_image(back) == permutation_image(w)
    half = w.n * (w.n - 1) // 2
    assert nf.m * half + sum(f.inversions() for f in nf.factors) == w.exponent_sum()
    assert normal_form(w + invert(w)).is_trivial()


@settings(max_examples=200)
@given(words(), st.integers(0, 2**32 - 1))
def test_rewrite_invariance(w, seed):
    assert normal_form(random_rewrites(w, 30, random.Random(seed))) == normal_form(w)


@given(words(positive=True))
def test_positive_words_have_positive_nf(w):
    assert is_positive(normal_form(w))


@settings(max_examples=100)
@given(words(max_len=40), st.lists(st.integers(-7, 7).filter(bool), max_size=40))
def test_multiply_matches_concatenation(w, tail):
    v = BraidWord(w.n, tuple(a for a in tail if abs(a) < w.n))
    assert multiply(normal_form(w), v) == normal_form(w + v)
    assert multiply_nf(normal_form(w), normal_form(v)) == normal_form(w + v)


@settings(max_examples=100)
@given(words(max_len=120))
def test_inverse_nf(w):
    assert inverse_nf(normal_form(w)) == normal_form(invert(w))


def test_kernel_matches_reference():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 12)
        letters = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 300))]
        _, simples = bc._sweep(letters, n)
        assert bc._extend_py([], list(simples), n) == normalize_rows([], list(simples), n)


def test_long_inverse_heavy_word():
    # exercises the inverse-first path and the compiled loop together
    rng = random.Random(5)
    w = BraidWord(6, tuple(-rng.randint(1, 5) for _ in range(400)) + (1, 2, 3))
    nf = normal_form(w)
    assert is_normal(nf)
    assert normal_form(w + invert(w)).is_trivial()
    assert multiply(nf, invert(w)).is_trivial()


def test_delta_word():
    assert normal_form(delta_word(5)) == NormalForm(5, 1, ())


# divisibility and gcd ----------------------------------------------------


def test_left_gcd_examples():
    w = BraidWord(4, (1, 2, 3, 1))
    assert normal_form(left_gcd(w, w)) == normal_form(w)
    assert left_gcd(BraidWord(3, (1, 2)), BraidWord(3, (1, 1))).letters == (1,)
    assert left_gcd(BraidWord(3, (1,)), BraidWord(3, (2,))).letters == ()


def test_left_gcd_errors():
    with pytest.raises(ValueError):
        left_gcd(BraidWord(3, (-1,)), BraidWord(3, (1,)))
    with pytest.raises(StrandMismatch):
        left_gcd(BraidWord(3, (1,)), BraidWord(4, (1,)))


def test_left_gcd_against_bruteforce():
    # exhaustive on small words over 3 strands, sampled over 4
    for n in (3,):
        pool = [w for k in range(4) for w in itertools.product(range(1, n), repeat=k)]
        for a in pool:
            for b in pool:
                g = left_gcd(BraidWord(n, a), BraidWord(n, b)).letters
                assert g in bruteforce_left_gcd(a, b)
    rng = random.Random(3)
    for _ in range(150):
        a = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 6)))
        b = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 6)))
        assert left_gcd(BraidWord(4, a), BraidWord(4, b)).letters in bruteforce_left_gcd(a, b)


@settings(max_examples=60)
@given(words(max_n=5, max_len=12, positive=True), words(max_n=5, max_len=12, positive=True))
def test_left_gcd_divides_both(a, b):
    if a.n != b.n:
        return
    g = left_gcd(a, b)
    assert left_divides(g, a) and left_divides(g, b)


def test_left_divides():
    assert left_divides(BraidWord(3, (1,)), BraidWord(3, (2, 1, 2)))
    assert not left_divides(BraidWord(3, (1,)), BraidWord(3, (2, 1)))


def _bubble_normal_form(w):
    # reference: left-to-right bubble passes of left_weight_pair until nothing moves
    k, simples = bc._sweep(w.letters, w.n)
    factors = [Perm(s) for s in simples]
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            pair = left_weight_pair(factors[i], factors[i + 1])
            if pair != (factors[i], factors[i + 1]):
                factors[i], factors[i + 1] = pair
                changed = True
    delta, ident = delta_perm(w.n), Perm.identity(w.n)
    factors = [f for f in factors if f != ident]
    m = -k
    while factors and factors[0] == delta:
        factors.pop(0)
        m += 1
    return NormalForm(w.n, m, tuple(factors))


@settings(max_examples=150)
@given(words(max_len=60))
def test_matches_bubble_pass_oracle(w):
    assert normal_form(w) == _bubble_normal_form(w)
