import random

import pytest

from braidobf.braidcore import BraidWord, normal_form
from braidobf.cli import main
from braidobf.compiler import Layout, ToffoliCircuit, random_circuit
from braidobf.formats import (
    FormatError,
    read_braid,
    read_circuit,
    read_nf,
    read_report,
    read_state,
    write_braid,
    write_circuit,
    write_nf,
    write_report,
    write_state,
)
from braidobf.fuzz import random_word
from braidobf.qdouble import a5, cyclic_group, DitState


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# formats -----------------------------------------------------------------


def test_braid_round_trip():
    rng = random.Random(0)
    for _ in range(20):
        w = random_word(rng.randint(2, 9), rng.randint(0, 100), rng)
        for kind in ("braid", "rcirc"):
            text = write_braid(w, kind)
            assert read_braid(text) == w
            assert write_braid(read_braid(text), kind) == text


def test_nf_round_trip():
    rng = random.Random(1)
    for _ in range(20):
        nf = normal_form(random_word(rng.randint(2, 9), rng.randint(0, 60), rng))
        text = write_nf(nf)
        assert read_nf(text) == nf and write_nf(read_nf(text)) == text


def test_circuit_and_state_round_trip():
    c = random_circuit(4, 5, random.Random(2))
    assert write_circuit(read_circuit(write_circuit(c))) == write_circuit(c)
    s = Layout(3).encode((1, 0, 1))
    assert write_state(read_state(write_state(s), a5())) == write_state(s)
    z = DitState(cyclic_group(5), (0, 3, 4))
    assert read_state(write_state(z), cyclic_group(5)) == z


def test_report_round_trip():
    text = write_report({"a": 1, "rate": 0.5, "name": "x"})
    assert write_report(read_report(text)) == text


def test_comments_and_whitespace():
    assert read_braid("# header next\nbraid 3  # strands\n 1 -2\n\n2\n").letters == (1, -2, 2)


@pytest.mark.parametrize(
    "text",
    ["", "brad 3\n1", "braid\n1", "braid 3\n1 x", "braid 3\n3", "nf 3 0 1\n", "nf 3 0 1\n1 2", "nf 3 0 1\n1 1 2"],
)
def test_bad_formats(text):
    reader = read_nf if text.startswith("nf") else read_braid
    with pytest.raises(FormatError):
        reader(text)


def test_bad_circuit():
    with pytest.raises(FormatError):
        read_circuit("circuit 3\ncnot 1 2\n")
    with pytest.raises(FormatError):
        read_circuit("circuit 3\ntoffoli 1 1 2\n")


# command line ------------------------------------------------------------


def test_normalize_identity(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("braid 3\n-1 2 -2 1\n")
    code, out, _ = run(capsys, "normalize", f)
    assert code == 0 and out == "nf 3 0 0\n"


def test_compile_golden(tmp_path, capsys):
    f = tmp_path / "c.txt"
    f.write_text("circuit 3\ntoffoli 2 3 1\n")
    code, out, _ = run(capsys, "compile", f)
    w = read_braid(out)
    assert code == 0 and out.startswith("braid 14\n") and len(w) == 132


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--group", "a5")
    report = read_report(out)
    assert code == 0 and report["orbit_size"] == "44" and report["class(345)"] == "20/20"


def test_obfuscate_peel_pipeline(tmp_path, capsys):
    c = ToffoliCircuit(3, ((2, 3, 1), (1, 3, 2)))
    (tmp_path / "c.txt").write_text(write_circuit(c))
    code, nf_text, _ = run(capsys, "obfuscate", tmp_path / "c.txt", "--word-output", tmp_path / "w.txt")
    assert code == 0
    (tmp_path / "nf.txt").write_text(nf_text)
    assert normal_form(read_braid((tmp_path / "w.txt").read_text())) == read_nf(nf_text)
    code, out, _ = run(capsys, "attack-peel", tmp_path / "nf.txt", "-o", tmp_path / "rec.txt")
    assert code == 0 and read_report(out)["status"] == "recovered"
    assert read_circuit((tmp_path / "rec.txt").read_text()) == c


def test_wordof_normalize_round_trip(tmp_path, capsys):
    nf = normal_form(BraidWord(5, (1, -2, 3, 4, -4, -1)))
    (tmp_path / "nf.txt").write_text(write_nf(nf))
    code, out, _ = run(capsys, "wordof", tmp_path / "nf.txt")
    (tmp_path / "w.txt").write_text(out)
    code, out2, _ = run(capsys, "normalize", tmp_path / "w.txt")
    assert out2 == write_nf(nf)


def test_randomized_requires_seed(tmp_path, capsys):
    (tmp_path / "c.txt").write_text("circuit 3\ntoffoli 2 3 1\n")
    code, _, err = run(capsys, "obfuscate", tmp_path / "c.txt", "--mode", "randomized")
    assert code == 2 and "seed" in err


def test_deterministic_output(tmp_path, capsys):
    (tmp_path / "c.txt").write_text("circuit 3\ntoffoli 2 3 1\n")
    args = ("obfuscate", tmp_path / "c.txt", "--mode", "salted", "--seed", 5)
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_exit_codes(tmp_path, capsys):
    (tmp_path / "bad.txt").write_text("braid 3\n1 7\n")
    assert run(capsys, "normalize", tmp_path / "bad.txt")[0] == 2
    assert run(capsys, "normalize", tmp_path / "missing.txt")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["normalize", "x", "--unknown"])
    assert e.value.code == 2
    # well-formed but a domain violation: gcd of a negative braid
    (tmp_path / "neg.txt").write_text(write_nf(normal_form(BraidWord(3, (-1,)))))
    assert run(capsys, "attack-gcd", tmp_path / "neg.txt", tmp_path / "neg.txt")[0] == 1
    assert run(capsys, "ybe-search", "-d", "5")[0] == 1


def test_simulate(tmp_path, capsys):
    layout = Layout(3)
    (tmp_path / "c.txt").write_text("circuit 3\ntoffoli 2 3 1\n")
    _, braid, _ = run(capsys, "compile", tmp_path / "c.txt")
    (tmp_path / "b.txt").write_text(braid)
    (tmp_path / "s.txt").write_text(write_state(layout.encode((0, 1, 1))))
    code, out, _ = run(capsys, "simulate", tmp_path / "b.txt", tmp_path / "s.txt")
    assert code == 0 and layout.decode(read_state(out, a5())) == (1, 1, 1)
    (tmp_path / "short.txt").write_text(write_state(Layout(4).encode((0, 1, 1, 0))))
    assert run(capsys, "simulate", tmp_path / "b.txt", tmp_path / "short.txt")[0] == 1


def test_attack_dict_and_gcd(tmp_path, capsys):
    cands = tmp_path / "cands"
    cands.mkdir()
    (cands / "a.txt").write_text("circuit 3\ntoffoli 1 2 3\n")
    (cands / "b.txt").write_text("circuit 3\ntoffoli 2 3 1\n")
    _, nf_text, _ = run(capsys, "obfuscate", cands / "b.txt")
    (tmp_path / "nf.txt").write_text(nf_text)
    code, out, _ = run(capsys, "attack-dict", tmp_path / "nf.txt", cands)
    assert code == 0 and read_report(out)["match"] == "b.txt"
    code, out, _ = run(capsys, "attack-gcd", tmp_path / "nf.txt", tmp_path / "nf.txt")
    assert code == 0 and normal_form(read_braid(out)) == read_nf(nf_text)


def test_ybe_commands(capsys):
    code, out, _ = run(capsys, "ybe-search", "-d", "2")
    assert code == 0 and read_report(out)["solutions"] == "5"
    code, out, _ = run(capsys, "ybe-check", "--group", "a5")
    assert read_report(out)["yang_baxter"] == "true" and read_report(out)["gate_order"] == "60"


def test_custom_group_file(tmp_path, capsys):
    (tmp_path / "g.txt").write_text("group 2\n0 1\n1 0\n")
    code, out, _ = run(capsys, "ybe-check", "--group-file", tmp_path / "g.txt")
    assert code == 0 and read_report(out)["gate_order"] == "2"
    (tmp_path / "bad.txt").write_text("group 2\n0 1\n0 1\n")
    assert run(capsys, "ybe-check", "--group-file", tmp_path / "bad.txt")[0] == 1


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "2,13")
    assert code == 0 and out.count("PASS") == 2
