import random

import numpy as np
import pytest

from braidobf.braidcore import BraidWord, NormalForm, canonical_length, normal_form, word_of
from braidobf.compiler import Layout, ToffoliCircuit, all_inputs, compile_circuit, random_circuit
from braidobf.fuzz import random_rewrites, random_word
from braidobf.obfuscator import obfuscate_circuit, obfuscate_rcircuit, salt
from braidobf.qdouble import DitState, a5, simulate_batch, simulate_nf

G = a5()


def test_braid_relation_gives_identical_output():
    a = obfuscate_rcircuit(BraidWord(3, (1, 2, 1)))
    b = obfuscate_rcircuit(BraidWord(3, (2, 1, 2)))
    assert a.nf == b.nf and a.word == b.word


def test_cancellation():
    r = obfuscate_rcircuit(BraidWord(3, (1, -1)))
    assert r.nf == NormalForm(3, 0, ()) and r.word.letters == ()


def test_rewrite_fuzz():
    rng = random.Random(9)
    for _ in range(30):
        w = random_word(rng.randint(2, 9), rng.randint(0, 80), rng)
        a, b = obfuscate_rcircuit(w), obfuscate_rcircuit(random_rewrites(w, 50, rng))
        assert a.nf == b.nf and a.word == b.word


def test_result_consistency():
    w = random_word(6, 50, random.Random(1))
    r = obfuscate_rcircuit(w)
    assert r.word == word_of(r.nf)
    assert r.stats["output_length"] == len(r.word) == canonical_length(r.nf)
    assert r.stats["input_length"] == 50 and r.stats["infimum"] == r.nf.m and r.stats["factor_count"] == r.nf.p


def test_strong_equivalence_on_random_states():
    rng = random.Random(3)
    for _ in range(10):
        w = random_word(rng.randint(2, 8), rng.randint(1, 100), rng)
        states = np.random.default_rng(rng.randrange(1000)).integers(0, 60, size=(100, w.n))
        assert np.array_equal(simulate_batch(w, G, states), simulate_batch(obfuscate_rcircuit(w).word, G, states))


def test_obfuscate_circuit_modes():
    assert obfuscate_circuit(ToffoliCircuit(3)).nf.is_trivial()
    single = ToffoliCircuit(3, ((2, 3, 1),))
    naive = obfuscate_circuit(single)
    assert (naive.nf.m, naive.nf.p) == (0, 14)
    assert naive.nf == normal_form(compile_circuit(single))
    r1 = obfuscate_circuit(single, "randomized", seed=1)
    r2 = obfuscate_circuit(single, "randomized", seed=2)
    assert r1.nf != r2.nf
    layout = Layout(3)
    for bits in all_inputs(3):
        s = layout.encode(bits).indices()
        for r in (r1, r2):
            assert layout.decode(DitState.from_indices(G, simulate_nf(r.nf, G, s))) == single.evaluate(bits)
    with pytest.raises(ValueError):
        obfuscate_circuit(single, "randomized")
    with pytest.raises(ValueError):
        obfuscate_circuit(single, "fancy")


def test_obfuscate_circuit_deterministic():
    c = random_circuit(4, 3, random.Random(0))
    assert obfuscate_circuit(c).nf == obfuscate_circuit(c).nf
    assert obfuscate_circuit(c, "randomized", seed=4).nf == obfuscate_circuit(c, "randomized", seed=4).nf


def test_salt_without_gates_is_identity_on_gates():
    c = ToffoliCircuit(3, ((2, 3, 1),))
    s = salt(c, 1, seed=0, gates=0)
    assert s.gates == c.gates and s.wires == 4


@pytest.mark.parametrize("wires", [3, 4])
def test_salt_weak_equivalence(wires):
    rng = random.Random(wires)
    c = random_circuit(wires, 2, rng)
    s = salt(c, 1, seed=7)
    assert len(s.gates) == len(c.gates) * 5
    for bits in all_inputs(wires):
        for extra in (0, 1):
            assert s.evaluate(bits + (extra,))[:wires] == c.evaluate(bits)


def test_salt_seeds_differ():
    c = ToffoliCircuit(3, ((2, 3, 1),))
    assert obfuscate_circuit(salt(c, 1, seed=1)).nf != obfuscate_circuit(salt(c, 1, seed=2)).nf
    with pytest.raises(ValueError):
        salt(c, 0, seed=1)
