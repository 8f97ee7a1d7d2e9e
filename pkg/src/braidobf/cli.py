"""
Command-line front end.

Exit status: 0 on success, 1 when the input is well formed but violates a
domain rule, 2 for usage or file-format errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import acceptance, attacks
from .braidcore import StrandMismatch, normal_form, word_of
from .compiler import Layout, compile_circuit
from .formats import (
    FormatError,
    file_kind,
    read_braid,
    read_circuit,
    read_nf,
    read_state,
    write_braid,
    write_circuit,
    write_nf,
    write_report,
    write_state,
)
from .obfuscator import obfuscate_circuit, salt
from .qdouble import (
    ClosureError,
    DitState,
    builtin_group,
    check_yang_baxter,
    class_breakdown,
    format_cycles,
    gate_order,
    generated_subgroup,
    orbit_under_r,
    parse_group_table,
    quantum_double_gate,
    simulate_batch,
    simulate_nf,
    ybe_search,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _group(args):
    if getattr(args, "group_file", None):
        return parse_group_table(_read(args.group_file), name=os.path.basename(args.group_file))
    return builtin_group(args.group)


# subcommands -------------------------------------------------------------


def cmd_normalize(args):
    _write(args.output, write_nf(normal_form(read_braid(_read(args.input)))))


def cmd_wordof(args):
    _write(args.output, write_braid(word_of(read_nf(_read(args.input))), args.kind))


def cmd_compile(args):
    _write(args.output, write_braid(compile_circuit(read_circuit(_read(args.input))), args.kind))


def cmd_obfuscate(args):
    c = read_circuit(_read(args.input))
    if args.mode in ("randomized", "salted") and args.seed is None:
        raise UsageError(f"--mode {args.mode} requires --seed")
    if args.mode == "salted":
        result = obfuscate_circuit(salt(c, args.extra_wires, args.seed))
    else:
        result = obfuscate_circuit(c, args.mode, args.seed)
    _write(args.output, write_nf(result.nf))
    if args.word_output:
        _write(args.word_output, write_braid(result.word, "rcirc"))
    if args.stats:
        sys.stderr.write(write_report(result.stats))


def cmd_simulate(args):
    group = _group(args)
    text = _read(args.circuit)
    state = read_state(_read(args.state), group)
    idx = state.indices()
    if file_kind(text) == "nf":
        nf = read_nf(text)
        if nf.n != len(state):
            raise StrandMismatch(f"circuit acts on {nf.n} dits, state has {len(state)}")
        out = simulate_nf(nf, group, idx)
    else:
        w = read_braid(text)
        if w.n != len(state):
            raise StrandMismatch(f"circuit acts on {w.n} dits, state has {len(state)}")
        out = simulate_batch(w, group, idx)
    _write(args.output, write_state(DitState.from_indices(group, out)))


def _layout_for(nf, wires):
    if wires is None:
        if nf.n % 2 or nf.n < 14:
            raise UsageError("cannot infer the wire count from the strand count; pass --wires")
        wires = nf.n // 2 - 4
    layout = Layout(wires)
    if layout.strands != nf.n:
        raise StrandMismatch(f"{wires} wires need {layout.strands} strands, normal form has {nf.n}")
    return layout


def cmd_attack_peel(args):
    nf = read_nf(_read(args.input))
    layout = _layout_for(nf, args.wires)
    result = attacks.peel_circuit(nf, layout, args.max_gates, args.backtrack)
    report = {
        "status": result.status,
        "gates_peeled": len(result.peeled),
        "candidates": " ".join(f"{a},{b},{c}" for a, b, c in result.candidates) or "none",
    }
    _write(args.report, write_report(report))
    if result.ok and args.output:
        _write(args.output, write_circuit(result.circuit))


def cmd_attack_dict(args):
    target = read_nf(_read(args.target))
    if args.mode == "randomized" and args.seed is None:
        raise UsageError("--mode randomized requires --seed")
    directory = Path(args.candidates)
    if not directory.is_dir():
        raise UsageError(f"{directory} is not a directory")
    files = sorted(p for p in directory.iterdir() if p.is_file())
    circuits = [read_circuit(p.read_text()) for p in files]
    hit = attacks.dictionary_attack(target, circuits, args.mode, args.seed)
    report = {
        "candidates": len(files),
        "match": files[hit].name if hit is not None else "none",
        "index": hit if hit is not None else -1,
    }
    _write(args.output, write_report(report))


def cmd_attack_gcd(args):
    a = read_nf(_read(args.a))
    b = read_nf(_read(args.b))
    _write(args.output, write_braid(attacks.gcd_strip(a, b)))


def cmd_orbit(args):
    group = _group(args)
    if group.name != "A5":
        raise UsageError("orbit is defined for the A5 catalyst and bit values; use --group a5")
    orbit = orbit_under_r(group, acceptance.ORBIT_SEED)
    report = {
        "orbit_size": len(orbit),
        "subgroup_size": len(generated_subgroup(group, acceptance.ORBIT_SEED)),
    }
    for rep, size, inside in class_breakdown(group, orbit):
        report[f"class{format_cycles(rep)}"] = f"{inside}/{size}"
    _write(args.output, write_report(report))


def cmd_ybe_search(args):
    found = ybe_search(args.dimension)
    report = {"dimension": args.dimension, "solutions": len(found)}
    if args.list:
        for k, g in enumerate(found):
            report[f"solution{k}"] = " ".join(map(str, g.table))
    _write(args.output, write_report(report))


def cmd_ybe_check(args):
    group = _group(args)
    gate = quantum_double_gate(group)
    report = {
        "group": group.name,
        "order": group.order,
        "triples": group.order ** 3,
        "yang_baxter": str(check_yang_baxter(gate)).lower(),
        "gate_order": gate_order(gate),
    }
    _write(args.output, write_report(report))


def cmd_selftest(args):
    selected = None
    if args.only:
        try:
            selected = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise UsageError("--only takes comma-separated criterion numbers") from None
    results = acceptance.run_all(selected)
    for r in results:
        print(r.line(), flush=True)
    failed = sum(not r.passed for r in results)
    print(f"passed={len(results) - failed} failed={failed}")
    return 1 if failed else 0


def cmd_experiment(args):
    if args.mode == "randomized" and args.seed is None:
        raise UsageError("--mode randomized requires --seed")
    seed = 0 if args.seed is None else args.seed
    if args.name == "peel":
        report = attacks.peeling_experiment(args.trials, seed, args.mode, backtrack=args.backtrack)
    elif args.name == "rank":
        report = attacks.length_ranking_experiment(args.trials, seed)
    elif args.name == "gcd":
        report = attacks.gcd_experiment(args.trials, seed)
    elif args.name == "equivalence":
        report = attacks.equivalence_experiment(args.trials, seed, args.mode)
    else:
        report = attacks.salting_experiment(args.trials, seed)
    _write(args.output, write_report(report))


# parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="braidobf", description="Braid-group obfuscation of reversible circuits.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(fn=fn)
        return sp

    def out(sp):
        sp.add_argument("-o", "--output", help="output file (default stdout)")

    def kind(sp):
        sp.add_argument("--kind", choices=("braid", "rcirc"), default="braid", help="header of the braid file")

    def group(sp):
        sp.add_argument("--group", default="a5", help="a5, s5 or zN (default a5)")
        sp.add_argument("--group-file", help="custom group table file ('group <d>' + rows)")

    sp = add("normalize", cmd_normalize, "braid file -> normal form file")
    sp.add_argument("input")
    out(sp)

    sp = add("wordof", cmd_wordof, "normal form file -> braid file")
    sp.add_argument("input")
    kind(sp)
    out(sp)

    sp = add("compile", cmd_compile, "Toffoli circuit file -> braid file")
    sp.add_argument("input")
    kind(sp)
    out(sp)

    sp = add("obfuscate", cmd_obfuscate, "Toffoli circuit file -> obfuscated normal form")
    sp.add_argument("input")
    sp.add_argument("--mode", choices=("naive", "randomized", "salted"), default="naive")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--extra-wires", type=int, default=1)
    sp.add_argument("--word-output", help="also write the emitted R-circuit here")
    sp.add_argument("--stats", action="store_true", help="print length statistics to stderr")
    out(sp)

    sp = add("simulate", cmd_simulate, "run a braid or normal form on a dit state")
    sp.add_argument("circuit", help="braid, rcirc or nf file")
    sp.add_argument("state")
    group(sp)
    out(sp)

    sp = add("attack-peel", cmd_attack_peel, "recover a circuit from a naive obfuscation")
    sp.add_argument("input", help="normal form file")
    sp.add_argument("--wires", type=int)
    sp.add_argument("--max-gates", type=int, default=8)
    sp.add_argument("--backtrack", action="store_true")
    sp.add_argument("--report", help="report file (default stdout)")
    sp.add_argument("-o", "--output", help="write the recovered circuit here")

    sp = add("attack-dict", cmd_attack_dict, "look a normal form up among candidate circuits")
    sp.add_argument("target", help="normal form file")
    sp.add_argument("candidates", help="directory of circuit files")
    sp.add_argument("--mode", choices=("naive", "randomized"), default="naive")
    sp.add_argument("--seed", type=int)
    out(sp)

    sp = add("attack-gcd", cmd_attack_gcd, "left gcd of two positive normal forms")
    sp.add_argument("a")
    sp.add_argument("b")
    out(sp)

    sp = add("orbit", cmd_orbit, "orbit of the catalyst and bit values under R")
    group(sp)
    out(sp)

    sp = add("ybe-search", cmd_ybe_search, "all Yang-Baxter bijections on d x d (d <= 3)")
    sp.add_argument("--dimension", "-d", type=int, default=2)
    sp.add_argument("--list", action="store_true", help="list the solution tables")
    out(sp)

    sp = add("ybe-check", cmd_ybe_check, "exhaustive Yang-Baxter check of R over a group")
    group(sp)
    out(sp)

    sp = add("selftest", cmd_selftest, "run the acceptance suite")
    sp.add_argument("--only", help="comma-separated criterion numbers")

    sp = add("experiment", cmd_experiment, "run an attack experiment and print a report")
    sp.add_argument("name", choices=("peel", "rank", "gcd", "equivalence", "dictionary"))
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--mode", choices=("naive", "randomized"), default="naive")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--backtrack", action="store_true")
    out(sp)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.fn(args)
    except (UsageError, FormatError) as e:
        print(f"braidobf {args.command}: {e}", file=sys.stderr)
        return 2
    except (StrandMismatch, ClosureError, ValueError) as e:
        print(f"braidobf {args.command}: {e}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
