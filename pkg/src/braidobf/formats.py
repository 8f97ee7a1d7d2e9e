"""
Plain-text file formats.  Tokens are whitespace separated and ``#`` starts a
comment.  Every writer produces text its reader accepts, and reading then
writing again reproduces the same bytes.

    braid <n>        letters in time order (or ``rcirc <n>``)
    nf <n> <m> <p>   then p lines, each the n images of one factor
    circuit <w>      then one ``toffoli <c1> <c2> <t>`` per line
    state <n>        then n lines, an A5/S5 element as 5 images or an index
    key=value        experiment reports
"""

from __future__ import annotations

from typing import Mapping

from .braidcore import BraidWord, NormalForm, Perm
from .compiler import ToffoliCircuit
from .qdouble import DitState, GroupTable

LETTERS_PER_LINE = 32


class FormatError(ValueError):
    """Input text violates a file-format rule."""


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].split()
        if line:
            out.append(line)
    return out


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what}: expected an integer, got {tok!r}") from None


def _header(lines: list[list[str]], kinds: tuple[str, ...], size: int) -> list[str]:
    if not lines:
        raise FormatError(f"empty input, expected a '{kinds[0]}' header")
    head = lines[0]
    if head[0] not in kinds:
        raise FormatError(f"expected header {' or '.join(repr(k) for k in kinds)}, got {head[0]!r}")
    if len(head) != size:
        raise FormatError(f"'{head[0]}' header takes {size - 1} field(s), got {len(head) - 1}")
    return head


def file_kind(text: str) -> str:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty input")
    return lines[0][0]


# braids ------------------------------------------------------------------


def read_braid(text: str) -> BraidWord:
    lines = _lines(text)
    head = _header(lines, ("braid", "rcirc"), 2)
    n = _int(head[1], "strand count")
    letters = [_int(t, "letter") for line in lines[1:] for t in line]
    try:
        return BraidWord(n, tuple(letters))
    except ValueError as e:
        raise FormatError(str(e)) from None


def write_braid(w: BraidWord, kind: str = "braid") -> str:
    if kind not in ("braid", "rcirc"):
        raise ValueError("kind must be 'braid' or 'rcirc'")
    out = [f"{kind} {w.n}"]
    letters = w.letters
    for k in range(0, len(letters), LETTERS_PER_LINE):
        out.append(" ".join(str(a) for a in letters[k : k + LETTERS_PER_LINE]))
    return "\n".join(out) + "\n"


# normal forms ------------------------------------------------------------


def read_nf(text: str) -> NormalForm:
    lines = _lines(text)
    head = _header(lines, ("nf",), 4)
    n, m, p = (_int(t, f) for t, f in zip(head[1:], ("strand count", "infimum", "factor count")))
    body = lines[1:]
    if len(body) != p:
        raise FormatError(f"header announces {p} factors, found {len(body)} lines")
    factors = []
    for k, row in enumerate(body, 1):
        if len(row) != n:
            raise FormatError(f"factor {k} has {len(row)} entries, expected {n}")
        try:
            factors.append(Perm(tuple(_int(t, "factor entry") for t in row)))
        except ValueError as e:
            raise FormatError(f"factor {k}: {e}") from None
    return NormalForm(n, m, tuple(factors))


def write_nf(nf: NormalForm) -> str:
    out = [f"nf {nf.n} {nf.m} {nf.p}"]
    out += [" ".join(str(v) for v in f.images) for f in nf.factors]
    return "\n".join(out) + "\n"


# circuits ----------------------------------------------------------------


def read_circuit(text: str) -> ToffoliCircuit:
    lines = _lines(text)
    head = _header(lines, ("circuit",), 2)
    w = _int(head[1], "wire count")
    gates = []
    for row in lines[1:]:
        if row[0] != "toffoli" or len(row) != 4:
            raise FormatError(f"expected 'toffoli <c1> <c2> <t>', got {' '.join(row)!r}")
        gates.append(tuple(_int(t, "wire") for t in row[1:]))
    try:
        return ToffoliCircuit(w, tuple(gates))
    except ValueError as e:
        raise FormatError(str(e)) from None


def write_circuit(c: ToffoliCircuit) -> str:
    out = [f"circuit {c.wires}"] + [f"toffoli {c1} {c2} {t}" for c1, c2, t in c.gates]
    return "\n".join(out) + "\n"


# dit states --------------------------------------------------------------


def _is_permutation_group(group: GroupTable) -> bool:
    return isinstance(group.elements[0], tuple)


def read_state(text: str, group: GroupTable) -> DitState:
    lines = _lines(text)
    head = _header(lines, ("state",), 2)
    n = _int(head[1], "dit count")
    body = lines[1:]
    if len(body) != n:
        raise FormatError(f"header announces {n} dits, found {len(body)} lines")
    dits = []
    for k, row in enumerate(body, 1):
        values = tuple(_int(t, "dit entry") for t in row)
        if _is_permutation_group(group):
            if len(values) != len(group.elements[0]):
                raise FormatError(f"dit {k}: expected {len(group.elements[0])} images, got {len(values)}")
            x = values
        else:
            if len(values) != 1:
                raise FormatError(f"dit {k}: expected one element index")
            x = values[0]
        try:
            group.index(x)
        except ValueError as e:
            raise FormatError(f"dit {k}: {e}") from None
        dits.append(x)
    return DitState(group, tuple(dits))


def write_state(s: DitState) -> str:
    out = [f"state {len(s)}"]
    for x in s.dits:
        out.append(" ".join(str(v) for v in x) if isinstance(x, tuple) else str(x))
    return "\n".join(out) + "\n"


# reports -----------------------------------------------------------------


def write_report(report: Mapping[str, object]) -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, float):
            v = f"{v:.6f}"
        lines.append(f"{k}={v}")
    return "\n".join(lines) + "\n"


def read_report(text: str) -> dict[str, str]:
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"report line without '=': {line!r}")
        k, v = line.split("=", 1)
        out[k] = v
    return out
