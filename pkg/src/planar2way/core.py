"""Directed state sets, two-way machines and their deterministic run semantics.

A two-way machine reads ``LMARK + word + RMARK``.  Every state has a fixed
direction: a forward state (+1) reads the symbol to the right of the head, a
backward state (-1) reads the symbol to its left.  Transitions are triples
``(source, output, target)`` grouped by the symbol read; automata are the
special case where every output is empty.

Words are plain ``str`` objects whose characters are the symbols.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional

from .errors import (
    AlphabetError,
    MissingOrder,
    NondeterministicMachine,
    UnknownState,
    ValidationError,
)

LMARK = "⊳"
RMARK = "⊲"
MARKERS = frozenset({LMARK, RMARK})

FORWARD = 1
BACKWARD = -1

State = Hashable
Triple = tuple  # (source, output word, target)

AUTOMATON = "automaton"
TRANSDUCER = "transducer"


@dataclass(frozen=True)
class DirectedStateSet:
    """States with a direction map and an optional total order.

    ``signs[i]`` is the direction of ``states[i]``.  ``order``, when present,
    lists every state once, smallest first.
    """

    states: tuple
    signs: tuple
    order: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(set(self.states)) != len(self.states):
            raise ValidationError("duplicate state names")
        if len(self.signs) != len(self.states):
            raise ValidationError("direction map must be total on states")
        if any(s not in (FORWARD, BACKWARD) for s in self.signs):
            raise ValidationError("directions must be +1 or -1")
        if self.order is not None:
            order = tuple(self.order)
            if len(order) != len(self.states) or set(order) != set(self.states):
                raise ValidationError("order must be a permutation of the states")
            object.__setattr__(self, "order", order)

    @classmethod
    def of(cls, direction: Mapping, order: Optional[Iterable] = None) -> "DirectedStateSet":
        """Build from a ``{state: ±1}`` mapping (insertion order is kept)."""
        states = tuple(direction)
        return cls(states, tuple(direction[q] for q in states),
                   None if order is None else tuple(order))

    @classmethod
    def parse(cls, text: str, ordered: bool = True) -> "DirectedStateSet":
        """``"0:> 1:< 2:<"`` style shorthand; declaration order becomes the order."""
        direction = {}
        for token in text.split():
            name, _, arrow = token.rpartition(":")
            if arrow not in (">", "<") or not name:
                raise ValidationError(f"bad state token {token!r}")
            direction[name] = FORWARD if arrow == ">" else BACKWARD
        return cls.of(direction, order=list(direction) if ordered else None)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, q):
        return q in self._index

    @cached_property
    def _index(self) -> dict:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def _rank(self) -> dict:
        return {q: i for i, q in enumerate(self.order)} if self.order is not None else {}

    @property
    def direction(self) -> dict:
        return dict(zip(self.states, self.signs))

    def index(self, q) -> int:
        try:
            return self._index[q]
        except KeyError:
            raise UnknownState(q) from None

    def rho(self, q) -> int:
        return self.signs[self.index(q)]

    def rank(self, q) -> int:
        """Position of ``q`` in the total order."""
        if self.order is None:
            raise MissingOrder("state set has no order")
        return self._rank[q]

    @property
    def forward(self) -> tuple:
        return tuple(q for q, s in zip(self.states, self.signs) if s == FORWARD)

    @property
    def backward(self) -> tuple:
        return tuple(q for q, s in zip(self.states, self.signs) if s == BACKWARD)

    def with_order(self, order: Optional[Iterable]) -> "DirectedStateSet":
        return DirectedStateSet(self.states, self.signs, None if order is None else tuple(order))


@dataclass(frozen=True)
class TwoWayMachine:
    """A two-way automaton or transducer ``(Q, rho, q0, F, delta)``.

    ``delta`` maps each symbol of the input alphabet and the two end markers
    to a frozenset of ``(source, output, target)`` triples.
    """

    kind: str
    input_alphabet: frozenset
    output_alphabet: frozenset
    state_space: DirectedStateSet
    initial: Any
    finals: frozenset
    delta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in (AUTOMATON, TRANSDUCER):
            raise ValidationError(f"unknown machine kind {self.kind!r}")
        sigma = frozenset(self.input_alphabet)
        gamma = frozenset(self.output_alphabet)
        object.__setattr__(self, "input_alphabet", sigma)
        object.__setattr__(self, "output_alphabet", gamma)
        object.__setattr__(self, "finals", frozenset(self.finals))
        if sigma & MARKERS or gamma & MARKERS:
            raise ValidationError("end markers may not belong to an alphabet")
        space = self.state_space
        if self.initial not in space:
            raise ValidationError(f"unknown initial state {self.initial!r}")
        if space.rho(self.initial) != FORWARD:
            raise ValidationError("the initial state must be a forward state")
        for q in self.finals:
            if q not in space:
                raise ValidationError(f"unknown final state {q!r}")
        delta = {}
        for symbol, triples in self.delta.items():
            if symbol not in sigma and symbol not in MARKERS:
                raise ValidationError(f"transition on unknown symbol {symbol!r}")
            checked = set()
            for src, out, dst in triples:
                if src not in space or dst not in space:
                    raise ValidationError(f"transition {src!r} -> {dst!r} uses an unknown state")
                if self.kind == AUTOMATON and out:
                    raise ValidationError("automaton transitions must have empty output")
                if any(c not in gamma for c in out):
                    raise ValidationError(f"output {out!r} leaves the output alphabet")
                checked.add((src, out, dst))
            if checked:
                delta[symbol] = frozenset(checked)
        object.__setattr__(self, "delta", delta)

    @property
    def states(self) -> tuple:
        return self.state_space.states

    @property
    def symbols(self) -> tuple:
        """The input alphabet followed by the two markers, in a stable order."""
        return tuple(sorted(self.input_alphabet)) + (LMARK, RMARK)

    def transitions(self, symbol) -> frozenset:
        return self.delta.get(symbol, frozenset())

    def projected(self, symbol) -> frozenset:
        """The output-free relation ``{(q, r)}`` underlying ``delta(symbol)``."""
        return frozenset((q, r) for q, _, r in self.transitions(symbol))

    def replace(self, **changes) -> "TwoWayMachine":
        fields = dict(kind=self.kind, input_alphabet=self.input_alphabet,
                      output_alphabet=self.output_alphabet, state_space=self.state_space,
                      initial=self.initial, finals=self.finals, delta=self.delta)
        fields.update(changes)
        return TwoWayMachine(**fields)

    @cached_property
    def _table(self) -> dict:
        table: dict = {}
        for symbol, triples in self.delta.items():
            row = table.setdefault(symbol, {})
            for src, out, dst in triples:
                row.setdefault(src, []).append((out, dst))
        return table

    @cached_property
    def deterministic(self) -> bool:
        return is_deterministic(self)


@dataclass(frozen=True)
class Configuration:
    """``left`` is the tape strictly left of the head, ``right`` the rest."""

    left: str
    state: Any
    right: str

    @property
    def tape(self) -> str:
        return self.left + self.right

    @property
    def position(self) -> int:
        return len(self.left)


ACCEPTED = "accepted"
REJECTED_STUCK = "rejected_stuck"
REJECTED_NONFINAL = "rejected_nonfinal"
LOOPING = "looping"


@dataclass(frozen=True)
class RunResult:
    status: str
    output: str
    steps: int
    trace: Optional[tuple] = None

    @property
    def accepted(self) -> bool:
        return self.status == ACCEPTED

    @property
    def value(self) -> Optional[str]:
        """The output if accepted, else ``None``."""
        return self.output if self.status == ACCEPTED else None


def _check_word(machine: TwoWayMachine, word: str) -> None:
    for c in word:
        if c not in machine.input_alphabet:
            raise AlphabetError(f"symbol {c!r} is not in the input alphabet")


def _step_index(machine: TwoWayMachine, tape: str, pos: int, state):
    """One step on ``tape`` with the head at ``pos``; None when no transition applies."""
    if machine.state_space.rho(state) == FORWARD:
        if pos >= len(tape):
            return None
        symbol = tape[pos]
    else:
        if pos <= 0:
            return None
        symbol = tape[pos - 1]
    options = machine._table.get(symbol, {}).get(state)
    if not options:
        return None
    if len(options) > 1:
        raise NondeterministicMachine(
            f"{len(options)} transitions from {state!r} on {symbol!r}")
    out, target = options[0]
    src_dir = machine.state_space.rho(state)
    dst_dir = machine.state_space.rho(target)
    if src_dir == FORWARD and dst_dir == FORWARD:
        pos += 1
    elif src_dir == BACKWARD and dst_dir == BACKWARD:
        pos -= 1
    return pos, target, out


def step(machine: TwoWayMachine, config: Configuration):
    """Immediate successor of ``config`` and the word emitted, or ``None``."""
    tape = config.tape
    nxt = _step_index(machine, tape, config.position, config.state)
    if nxt is None:
        return None
    pos, target, out = nxt
    return Configuration(tape[:pos], target, tape[pos:]), out


def run(machine: TwoWayMachine, word: str, trace: bool = False) -> RunResult:
    """Run a deterministic machine on ``word`` from ``(ε, q0, ⊳word⊲)``.

    The run is declared ``looping`` once it has taken more steps than there are
    configurations, ``|Q| * (|word| + 3)``.
    """
    _check_word(machine, word)
    if not machine.deterministic:
        raise NondeterministicMachine("run() requires a deterministic machine")
    tape = LMARK + word + RMARK
    end = len(tape)
    limit = len(machine.states) * (end + 1)
    rho = machine.state_space.rho
    table = machine._table
    state, pos = machine.initial, 0
    pieces: list[str] = []
    steps_taken: list = [] if trace else None  # type: ignore[assignment]
    steps = 0
    while True:
        if pos == end and rho(state) == FORWARD:
            status = ACCEPTED if state in machine.finals else REJECTED_NONFINAL
            break
        if steps >= limit:
            status = LOOPING
            break
        direction = rho(state)
        if direction == FORWARD:
            symbol = tape[pos]
        elif pos > 0:
            symbol = tape[pos - 1]
        else:
            status = REJECTED_STUCK
            break
        options = table.get(symbol, {}).get(state)
        if not options:
            status = REJECTED_STUCK
            break
        out, target = options[0]
        if trace:
            steps_taken.append((Configuration(tape[:pos], state, tape[pos:]), out))
        target_dir = rho(target)
        if direction == target_dir:
            pos += direction
        state = target
        pieces.append(out)
        steps += 1
    if trace:
        steps_taken.append((Configuration(tape[:pos], state, tape[pos:]), ""))
    return RunResult(status, "".join(pieces), steps, tuple(steps_taken) if trace else None)


def evaluate(machine: TwoWayMachine, word: str) -> Optional[str]:
    """The partial function computed by a deterministic transducer."""
    return run(machine, word).value


def accepts(machine: TwoWayMachine, word: str) -> bool:
    return run(machine, word).accepted


def is_deterministic(machine: TwoWayMachine) -> bool:
    """Each projected ``delta(x)`` is a partial function, with one output per pair."""
    for triples in machine.delta.values():
        seen: dict = {}
        for src, out, dst in triples:
            if src in seen and seen[src] != (out, dst):
                return False
            seen[src] = (out, dst)
    return True


def is_reversible(machine: TwoWayMachine) -> bool:
    if not is_deterministic(machine):
        return False
    for triples in machine.delta.values():
        targets = [dst for _, _, dst in triples]
        if len(targets) != len(set(targets)):
            return False
    return True


def reversed_transitions(machine: TwoWayMachine) -> TwoWayMachine:
    """Swap source and target in every triple (direction map unchanged).

    Only meaningful as a determinism probe: a machine is reversible exactly when
    it is deterministic and this transform is deterministic too.
    """
    delta = {x: frozenset((dst, out, src) for src, out, dst in ts)
             for x, ts in machine.delta.items()}
    return machine.replace(delta=delta)


def domain_automaton(transducer: TwoWayMachine) -> TwoWayMachine:
    """Forget the outputs.  Duplicate pairs collapse into one transition."""
    delta = {x: frozenset((q, "", r) for q, _, r in ts) for x, ts in transducer.delta.items()}
    return transducer.replace(kind=AUTOMATON, output_alphabet=frozenset(), delta=delta)


def make_machine(states: str, initial, finals: Iterable, table: Mapping,
                 input_alphabet: Optional[Iterable] = None,
                 output_alphabet: Optional[Iterable] = None,
                 order: Optional[Iterable] = None,
                 kind: Optional[str] = None) -> TwoWayMachine:
    """Terse constructor used by tests and the fixture catalogue.

    ``table`` maps a symbol to an iterable of ``(src, dst)`` or
    ``(src, out, dst)`` tuples.  Alphabets default to what the table uses.
    """
    space = DirectedStateSet.parse(states)
    if order is not None:
        space = space.with_order(order)
    delta = {}
    for symbol, entries in table.items():
        triples = set()
        for entry in entries:
            if len(entry) == 2:
                triples.add((entry[0], "", entry[1]))
            else:
                triples.add(tuple(entry))
        delta[symbol] = triples
    if input_alphabet is None:
        input_alphabet = {x for x in table if x not in MARKERS}
    outputs = {c for ts in delta.values() for _, out, _ in ts for c in out}
    if output_alphabet is None:
        output_alphabet = outputs
    if kind is None:
        kind = TRANSDUCER if outputs or output_alphabet else AUTOMATON
    return TwoWayMachine(kind, frozenset(input_alphabet), frozenset(output_alphabet),
                         space, initial, frozenset(finals), delta)
