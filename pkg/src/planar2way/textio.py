"""Line-oriented machine files.

::

    machine 2dft            # or 2dfa, 2rft-claim, seq, mrt
    input a b c
    output a b c
    states 0:> 1:< 2:< 3:>
    order 0 1 2 3           # optional, defaults to declaration order
    initial 0
    final 3
    t 0 a -> 0 : ""
    t 0 ^ -> 0 : ""         # ^ and $ are the end markers

Sequential files use plain state names, ``t 1 a -> 1 : "a"`` and
``final 1 : "ab"``.  Register files declare ``registers X Y`` and updates
``u a X := "a" X "b"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Union

from .constructions import MonotoneRegisterTransducer, RegisterUpdate, SequentialTransducer
from .core import AUTOMATON, LMARK, RMARK, TRANSDUCER, DirectedStateSet, TwoWayMachine
from .errors import ParseError, TwoWayError, ValidationError

FILE_LMARK = "^"
FILE_RMARK = "$"
_TO_FILE = {LMARK: FILE_LMARK, RMARK: FILE_RMARK}
_FROM_FILE = {FILE_LMARK: LMARK, FILE_RMARK: RMARK}

TWO_WAY_KINDS = ("2dfa", "2dft", "2rft-claim")
KINDS = TWO_WAY_KINDS + ("seq", "mrt")

Parsed = Union[TwoWayMachine, SequentialTransducer, MonotoneRegisterTransducer]


@dataclass(frozen=True)
class MachineDocument:
    kind: str
    machine: Any

    def serialize(self) -> str:
        return serialize_machine(self.machine, self.kind)


@dataclass(frozen=True)
class _Token:
    text: str
    column: int
    quoted: bool = False


_BARE = re.compile(r'[^\s"]+')


def _tokenize(line: str, lineno: int) -> list:
    body = _strip_comment(line)
    tokens = []
    pos = 0
    while pos < len(body):
        if body[pos].isspace():
            pos += 1
            continue
        if body[pos] == '"':
            end = body.find('"', pos + 1)
            if end < 0:
                raise ParseError("unterminated string", lineno, pos + 1)
            tokens.append(_Token(body[pos + 1:end], pos + 1, True))
            pos = end + 1
            continue
        m = _BARE.match(body, pos)
        tokens.append(_Token(m.group(0), pos + 1))
        pos = m.end()
    return tokens


def _strip_comment(line: str) -> str:
    inside = False
    for i, c in enumerate(line):
        if c == '"':
            inside = not inside
        elif c == "#" and not inside:
            return line[:i]
    return line


def _lines(text: str) -> list:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, lineno)
        if tokens:
            out.append((lineno, tokens))
    return out


def _symbol(token: _Token, lineno: int) -> str:
    if token.quoted:
        raise ParseError("symbols are written without quotes", lineno, token.column)
    if token.text in _FROM_FILE:
        return _FROM_FILE[token.text]
    if len(token.text) != 1:
        raise ParseError(f"symbol {token.text!r} must be a single character", lineno,
                         token.column)
    return token.text


def _alphabet(tokens: list, lineno: int) -> frozenset:
    letters = set()
    for tok in tokens:
        if tok.text in _FROM_FILE and not tok.quoted:
            raise ValidationError(f"line {lineno}: {tok.text!r} is reserved for end markers")
        letters.add(_symbol(tok, lineno))
    return frozenset(letters)


def _expect(tokens: list, index: int, text: str, lineno: int) -> None:
    if index >= len(tokens):
        last = tokens[-1]
        raise ParseError(f"expected {text!r}", lineno, last.column + len(last.text))
    if tokens[index].text != text or tokens[index].quoted:
        raise ParseError(f"expected {text!r}, found {tokens[index].text!r}", lineno,
                         tokens[index].column)


def _quoted(token: _Token, lineno: int) -> str:
    if not token.quoted:
        raise ParseError("expected a double-quoted output", lineno, token.column)
    return token.text


def parse_document(text: str) -> MachineDocument:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty document", 1)
    lineno, head = lines[0]
    if head[0].text != "machine" or len(head) != 2:
        raise ParseError("document must start with 'machine KIND'", lineno, head[0].column)
    kind = head[1].text
    if kind not in KINDS:
        raise ParseError(f"unknown machine kind {kind!r}", lineno, head[1].column)
    body = lines[1:]
    try:
        if kind in TWO_WAY_KINDS:
            machine = _parse_two_way(kind, body)
        elif kind == "seq":
            machine = _parse_sequential(body)
        else:
            machine = _parse_mrt(body)
    except (ParseError, ValidationError):
        raise
    except TwoWayError as exc:
        raise ValidationError(str(exc)) from exc
    return MachineDocument(kind, machine)


def parse_machine(text: str) -> Parsed:
    return parse_document(text).machine


def load_document(path) -> MachineDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def _sections(body: list, allowed: set) -> dict:
    seen: dict = {}
    for lineno, tokens in body:
        key = tokens[0].text
        if key not in allowed:
            raise ParseError(f"unexpected keyword {key!r}", lineno, tokens[0].column)
        seen.setdefault(key, []).append((lineno, tokens[1:]))
    return seen


def _single(sections: dict, key: str, required: bool = True):
    entries = sections.get(key, [])
    if len(entries) > 1:
        raise ParseError(f"{key!r} given twice", entries[1][0])
    if not entries:
        if required:
            raise ValidationError(f"missing {key!r} line")
        return None
    return entries[0]


def _parse_two_way(kind: str, body: list) -> TwoWayMachine:
    sec = _sections(body, {"input", "output", "states", "order", "initial", "final", "t"})
    ln, toks = _single(sec, "input")
    sigma = _alphabet(toks, ln)
    out_entry = _single(sec, "output", required=False)
    gamma = _alphabet(out_entry[1], out_entry[0]) if out_entry else frozenset()
    ln, toks = _single(sec, "states")
    direction = {}
    for tok in toks:
        name, _, arrow = tok.text.rpartition(":")
        if arrow not in (">", "<") or not name:
            raise ParseError(f"state {tok.text!r} needs a :> or :< suffix", ln, tok.column)
        if name in direction:
            raise ValidationError(f"line {ln}: duplicate state {name!r}")
        direction[name] = 1 if arrow == ">" else -1
    order_entry = _single(sec, "order", required=False)
    if order_entry:
        order = [t.text for t in order_entry[1]]
        for tok in order_entry[1]:
            if tok.text not in direction:
                raise ValidationError(f"line {order_entry[0]}: unknown state {tok.text!r}")
    else:
        order = list(direction)
    space = DirectedStateSet.of(direction, order=order)
    ln, toks = _single(sec, "initial")
    if len(toks) != 1:
        raise ParseError("'initial' takes one state", ln)
    initial = toks[0].text
    finals = set()
    for ln, toks in sec.get("final", []):
        finals.update(t.text for t in toks)
    for q in [initial, *finals]:
        if q not in direction:
            raise ValidationError(f"unknown state {q!r}")
    delta: dict = {}
    automaton = kind == "2dfa"
    for ln, toks in sec.get("t", []):
        if len(toks) < 4:
            raise ParseError("transition needs 'SRC SYM -> DST'", ln)
        src, sym_tok = toks[0].text, toks[1]
        _expect(toks, 2, "->", ln)
        dst = toks[3].text
        out = ""
        if len(toks) > 4:
            _expect(toks, 4, ":", ln)
            if len(toks) != 6:
                raise ParseError("expected one quoted output after ':'", ln, toks[4].column)
            out = _quoted(toks[5], ln)
        for q, tok in ((src, toks[0]), (dst, toks[3])):
            if q not in direction:
                raise ValidationError(f"line {ln}: unknown state {q!r}")
        symbol = _symbol(sym_tok, ln)
        if symbol not in sigma and symbol not in (LMARK, RMARK):
            raise ValidationError(f"line {ln}: symbol {sym_tok.text!r} not in the input alphabet")
        delta.setdefault(symbol, set()).add((src, out, dst))
    return TwoWayMachine(AUTOMATON if automaton else TRANSDUCER, sigma, gamma, space,
                         initial, finals, delta)


def _parse_sequential(body: list) -> SequentialTransducer:
    sec = _sections(body, {"input", "output", "states", "initial", "final", "t"})
    ln, toks = _single(sec, "input")
    sigma = _alphabet(toks, ln)
    ln, toks = _single(sec, "output")
    gamma = _alphabet(toks, ln)
    ln, toks = _single(sec, "states")
    states = [t.text for t in toks]
    ln, toks = _single(sec, "initial")
    initial = toks[0].text
    transitions: dict = {}
    for ln, toks in sec.get("t", []):
        if len(toks) != 6:
            raise ParseError('sequential transition is \'SRC SYM -> DST : "out"\'', ln)
        _expect(toks, 2, "->", ln)
        _expect(toks, 4, ":", ln)
        symbol = _symbol(toks[1], ln)
        row = transitions.setdefault(symbol, {})
        if toks[0].text in row:
            raise ValidationError(f"line {ln}: second transition from {toks[0].text!r}")
        row[toks[0].text] = (toks[3].text, _quoted(toks[5], ln))
    final = {}
    for ln, toks in sec.get("final", []):
        if len(toks) != 3:
            raise ParseError('final output is \'final STATE : "out"\'', ln)
        _expect(toks, 1, ":", ln)
        final[toks[0].text] = _quoted(toks[2], ln)
    return SequentialTransducer(sigma, gamma, states, initial, transitions, final)


def _parse_mrt(body: list) -> MonotoneRegisterTransducer:
    sec = _sections(body, {"input", "output", "registers", "u"})
    ln, toks = _single(sec, "input")
    sigma = _alphabet(toks, ln)
    ln, toks = _single(sec, "output")
    gamma = _alphabet(toks, ln)
    ln, toks = _single(sec, "registers")
    registers = [t.text for t in toks]
    updates: dict = {}
    for ln, toks in sec.get("u", []):
        if len(toks) < 3:
            raise ParseError("update is 'u LETTER REG := ...'", ln)
        _expect(toks, 2, ":=", ln)
        letter = _symbol(toks[0], ln)
        reg = toks[1].text
        if reg not in registers:
            raise ValidationError(f"line {ln}: unknown register {reg!r}")
        rhs = []
        for tok in toks[3:]:
            if tok.quoted:
                rhs.extend(tok.text)
            elif tok.text in registers:
                rhs.append(tok.text)
            else:
                raise ParseError(f"{tok.text!r} is not a register; quote constants", ln,
                                 tok.column)
        assignment = updates.setdefault(letter, {})
        if reg in assignment:
            raise ValidationError(f"line {ln}: register {reg!r} assigned twice for {letter!r}")
        assignment[reg] = tuple(rhs)
    return MonotoneRegisterTransducer(sigma, gamma, registers,
                                      {a: RegisterUpdate(u) for a, u in updates.items()})


# -- serialization -------------------------------------------------------------

def state_label(q) -> str:
    """File name of a state: tuples become ``(a,b)``, recursively."""
    if isinstance(q, tuple):
        return "(" + ",".join(state_label(x) for x in q) + ")"
    return str(q)


def _file_symbol(x: str) -> str:
    return _TO_FILE.get(x, x)


def _letters(alphabet) -> str:
    return " ".join(sorted(alphabet))


def serialize_machine(machine: Parsed, kind: str = None) -> str:
    if isinstance(machine, SequentialTransducer):
        return _serialize_sequential(machine)
    if isinstance(machine, MonotoneRegisterTransducer):
        return _serialize_mrt(machine)
    if kind is None:
        kind = "2dfa" if machine.kind == AUTOMATON else "2dft"
    if kind not in TWO_WAY_KINDS:
        raise ValueError(f"kind {kind!r} does not describe a two-way machine")
    space = machine.state_space
    lines = [f"machine {kind}", "input " + _letters(machine.input_alphabet)]
    if machine.kind == TRANSDUCER:
        lines.append("output " + _letters(machine.output_alphabet))
    lines.append("states " + " ".join(
        f"{state_label(q)}:{'>' if s == 1 else '<'}" for q, s in zip(space.states, space.signs)))
    if space.order is not None:
        lines.append("order " + " ".join(state_label(q) for q in space.order))
    lines.append(f"initial {state_label(machine.initial)}")
    finals = sorted(machine.finals, key=space.index)
    if finals:
        lines.append("final " + " ".join(state_label(q) for q in finals))
    for x in machine.symbols:
        for src, out, dst in sorted(machine.transitions(x),
                                    key=lambda t: (space.index(t[0]), space.index(t[2]), t[1])):
            line = f"t {state_label(src)} {_file_symbol(x)} -> {state_label(dst)}"
            if machine.kind == TRANSDUCER:
                line += f' : "{out}"'
            lines.append(line)
    return "\n".join(lines) + "\n"


def _serialize_sequential(seq: SequentialTransducer) -> str:
    lines = ["machine seq", "input " + _letters(seq.input_alphabet),
             "output " + _letters(seq.output_alphabet),
             "states " + " ".join(map(state_label, seq.states)),
             f"initial {state_label(seq.initial)}"]
    for a in sorted(seq.input_alphabet):
        for q in seq.states:
            target, out = seq.transitions[a][q]
            lines.append(f't {state_label(q)} {a} -> {state_label(target)} : "{out}"')
    for q in seq.states:
        lines.append(f'final {state_label(q)} : "{seq.final_output[q]}"')
    return "\n".join(lines) + "\n"


def _serialize_mrt(mrt: MonotoneRegisterTransducer) -> str:
    regs = set(mrt.registers)
    lines = ["machine mrt", "input " + _letters(mrt.input_alphabet),
             "output " + _letters(mrt.output_alphabet),
             "registers " + " ".join(mrt.registers)]
    for a in sorted(mrt.input_alphabet):
        update = mrt.updates[a]
        for r in mrt.registers:
            if r not in update.assignment:
                continue
            parts, chunk = [], []
            for t in update.assignment[r]:
                if t in regs:
                    if chunk:
                        parts.append('"' + "".join(chunk) + '"')
                        chunk = []
                    parts.append(t)
                else:
                    chunk.append(t)
            if chunk or not parts:
                parts.append('"' + "".join(chunk) + '"')
            lines.append(f"u {a} {r} := " + " ".join(parts))
    return "\n".join(lines) + "\n"


def stringify_states(machine: TwoWayMachine) -> TwoWayMachine:
    """Rename every state to its file label so the machine equals its own re-parse."""
    space = machine.state_space
    name = {q: state_label(q) for q in space.states}
    if len(set(name.values())) != len(name):
        raise ValidationError("state labels collide after renaming")
    new_space = DirectedStateSet(tuple(name[q] for q in space.states), space.signs,
                                 None if space.order is None else tuple(name[q] for q in space.order))
    delta = {x: {(name[s], o, name[d]) for s, o, d in ts} for x, ts in machine.delta.items()}
    return TwoWayMachine(machine.kind, machine.input_alphabet, machine.output_alphabet,
                         new_space, name[machine.initial], {name[q] for q in machine.finals},
                         delta)
