"""Building planar reversible two-way transducers.

* :func:`compose_transducers` runs the second machine on the output of the
  first, cell by cell, rewinding the first machine when the second moves left.
* :func:`flipflop_to_planar` encodes a two-state aperiodic sequential
  transducer.
* :func:`mrt_to_planar` encodes a monotone register transducer.
* :func:`reverse_transducer` is the three-state mirror machine.
"""

from __future__ import annotations

import warnings
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any, Optional

from .core import (
    AUTOMATON,
    BACKWARD,
    FORWARD,
    LMARK,
    MARKERS,
    RMARK,
    TRANSDUCER,
    DirectedStateSet,
    TwoWayMachine,
    _check_word,
    is_reversible,
)
from .errors import (
    AlphabetError,
    AlphabetMismatch,
    MissingOrder,
    NotAperiodic,
    NotCopylessMonotone,
    NotPlanar,
    NotReversible,
    ValidationError,
    WrongStateCount,
)
from .monoid import aperiodicity_of, closure
from .planarity import find_planar_order, is_planar_machine


class CompositionOrderWarning(UserWarning):
    """The lexicographic product order was not planar; another order was searched for."""


# -- sequential transducers --------------------------------------------------

@dataclass(frozen=True)
class SequentialTransducer:
    """Total deterministic one-way transducer with a final output per state.

    ``transitions[a][q] == (q2, out)`` reads ``a`` in ``q``, emits ``out`` and
    moves to ``q2``.
    """

    input_alphabet: frozenset
    output_alphabet: frozenset
    states: tuple
    initial: Any
    transitions: Mapping
    final_output: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "output_alphabet", frozenset(self.output_alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        if self.initial not in self.states:
            raise ValidationError(f"unknown initial state {self.initial!r}")
        if self.input_alphabet & MARKERS or self.output_alphabet & MARKERS:
            raise ValidationError("end markers may not belong to an alphabet")
        table = {}
        for a in self.input_alphabet:
            row = self.transitions.get(a, {})
            for q in self.states:
                if q not in row:
                    raise ValidationError(f"transition on {a!r} from {q!r} is missing")
                target, out = row[q]
                if target not in self.states:
                    raise ValidationError(f"unknown target state {target!r}")
                self._check_output(out)
            table[a] = {q: (row[q][0], row[q][1]) for q in self.states}
        for a in self.transitions:
            if a not in self.input_alphabet:
                raise ValidationError(f"transition on unknown symbol {a!r}")
        final = {q: self.final_output.get(q, "") for q in self.states}
        for out in final.values():
            self._check_output(out)
        object.__setattr__(self, "transitions", table)
        object.__setattr__(self, "final_output", final)

    def _check_output(self, out: str) -> None:
        if any(c not in self.output_alphabet for c in out):
            raise ValidationError(f"output {out!r} leaves the output alphabet")

    def next_state(self, a, q):
        return self.transitions[a][q][0]

    def emission(self, a, q) -> str:
        return self.transitions[a][q][1]


def seq_run(seq: SequentialTransducer, word: str) -> str:
    _check_sequential_word(seq, word)
    q = seq.initial
    pieces = []
    for a in word:
        q, out = seq.transitions[a][q]
        pieces.append(out)
    pieces.append(seq.final_output[q])
    return "".join(pieces)


def _check_sequential_word(seq: SequentialTransducer, word: str) -> None:
    for c in word:
        if c not in seq.input_alphabet:
            raise AlphabetError(f"symbol {c!r} is not in the input alphabet")


def _state_maps(seq: SequentialTransducer) -> dict:
    index = {q: i for i, q in enumerate(seq.states)}
    return {a: tuple(index[seq.next_state(a, q)] for q in seq.states)
            for a in sorted(seq.input_alphabet)}


def sequential_monoid(seq: SequentialTransducer) -> list:
    """The transformation monoid of the state-update maps (as index tuples)."""
    unit = tuple(range(len(seq.states)))
    return closure(_state_maps(seq).values(), _then, unit)


def _then(f: tuple, g: tuple) -> tuple:
    """Apply ``f`` first, then ``g``."""
    return tuple(g[i] for i in f)


def is_aperiodic_sequential(seq: SequentialTransducer) -> bool:
    unit = tuple(range(len(seq.states)))
    return aperiodicity_of(sequential_monoid(seq), _then, unit).aperiodic


def normalize_two_state(seq: SequentialTransducer) -> SequentialTransducer:
    """Rename a two-state transducer's states to ``"1"`` (initial) and ``"2"``."""
    if len(seq.states) != 2:
        raise WrongStateCount(f"expected 2 states, got {len(seq.states)}")
    other = next(q for q in seq.states if q != seq.initial)
    rename = {seq.initial: "1", other: "2"}
    transitions = {a: {rename[q]: (rename[t], out) for q, (t, out) in row.items()}
                   for a, row in seq.transitions.items()}
    final = {rename[q]: out for q, out in seq.final_output.items()}
    return SequentialTransducer(seq.input_alphabet, seq.output_alphabet, ("1", "2"), "1",
                                transitions, final)


# -- flip-flop translation ---------------------------------------------------

FLIPFLOP_STATES = "q1:> r1:< s:> r2:< q2:>"


def flipflop_to_planar(seq: SequentialTransducer) -> TwoWayMachine:
    """Planar reversible two-way transducer equivalent to a 2-state aperiodic one.

    ``q1``/``q2`` sweep right while the sequential machine is in state 1/2.  At
    a letter that resets the state, ``q_i`` emits and turns into ``r_i``, which
    walks back to the previous reset; ``s`` then walks forward again and
    leaves the resetting letter in the new ``q_k``.  The backtracking cannot
    go past a reset, which is why swaps are excluded.
    """
    seq = normalize_two_state(seq)
    delta: dict = {}
    for a in sorted(seq.input_alphabet):
        u, v = seq.emission(a, "1"), seq.emission(a, "2")
        image = (seq.next_state(a, "1"), seq.next_state(a, "2"))
        if image == ("1", "2"):
            delta[a] = {("q1", u, "q1"), ("q2", v, "q2"), ("r1", "", "r1"),
                        ("r2", "", "r2"), ("s", "", "s")}
        elif image[0] == image[1]:
            k = image[0]
            delta[a] = {("q1", u, "r1"), ("q2", v, "r2"),
                        ("s", "", "q" + k), ("r" + k, "", "s")}
        else:
            raise NotAperiodic(f"letter {a!r} swaps the two states")
    delta[LMARK] = {("q1", "", "q1"), ("r1", "", "s")}
    delta[RMARK] = {("s", "", "s"), ("q1", seq.final_output["1"], "r1"),
                    ("q2", seq.final_output["2"], "r2")}
    space = DirectedStateSet.parse(FLIPFLOP_STATES)
    return TwoWayMachine(TRANSDUCER, seq.input_alphabet, seq.output_alphabet, space,
                         "q1", {"s"}, delta)


# -- monotone register transducers ------------------------------------------

@dataclass(frozen=True)
class RegisterUpdate:
    """``assignment[r]`` is a tuple of tokens: register names or output symbols.

    A ``str`` value is split into single-character tokens.  Registers missing
    from the assignment keep their value.
    """

    assignment: Mapping

    def __post_init__(self):
        norm = {r: tuple(rhs) for r, rhs in self.assignment.items()}
        object.__setattr__(self, "assignment", norm)

    def rhs(self, register) -> tuple:
        return self.assignment.get(register, (register,))

    def apply(self, values: Mapping, registers: Iterable) -> dict:
        """``sigma†``: substitute current register values into every right-hand side."""
        return {r: "".join(values[t] if t in values else t for t in self.rhs(r))
                for r in registers}


@dataclass(frozen=True)
class MonotoneRegisterTransducer:
    """Stateless register machine; ``registers`` is ordered and its first is the output."""

    input_alphabet: frozenset
    output_alphabet: frozenset
    registers: tuple
    updates: Mapping

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", frozenset(self.input_alphabet))
        object.__setattr__(self, "output_alphabet", frozenset(self.output_alphabet))
        object.__setattr__(self, "registers", tuple(self.registers))
        regs = set(self.registers)
        if not self.registers or len(regs) != len(self.registers):
            raise ValidationError("registers must be a non-empty list of distinct names")
        if regs & self.output_alphabet:
            raise ValidationError("registers and output symbols must be disjoint")
        if self.input_alphabet & MARKERS or self.output_alphabet & MARKERS:
            raise ValidationError("end markers may not belong to an alphabet")
        updates = {}
        for a in self.input_alphabet:
            update = self.updates.get(a, RegisterUpdate({}))
            if not isinstance(update, RegisterUpdate):
                update = RegisterUpdate(update)
            for r, rhs in update.assignment.items():
                if r not in regs:
                    raise ValidationError(f"update assigns unknown register {r!r}")
                for t in rhs:
                    if t not in regs and t not in self.output_alphabet:
                        raise ValidationError(f"token {t!r} is neither a register nor an output symbol")
            updates[a] = update
        for a in self.updates:
            if a not in self.input_alphabet:
                raise ValidationError(f"update for unknown letter {a!r}")
        object.__setattr__(self, "updates", updates)

    @property
    def output_register(self):
        return self.registers[0]


def mrt_apply(mrt: MonotoneRegisterTransducer, word: str) -> str:
    for c in word:
        if c not in mrt.input_alphabet:
            raise AlphabetError(f"symbol {c!r} is not in the input alphabet")
    values = {r: "" for r in mrt.registers}
    for a in word:
        values = mrt.updates[a].apply(values, mrt.registers)
    return values[mrt.output_register]


def copyless_monotone_violation(update: RegisterUpdate, registers: Iterable) -> Optional[tuple]:
    """First register occurrence breaking strict increase, as ``(previous, offending)``.

    Occurrences are read from ``update(r1) ... update(rn)`` in register order.
    """
    registers = tuple(registers)
    rank = {r: i for i, r in enumerate(registers)}
    previous = None
    for r in registers:
        for t in update.rhs(r):
            if t in rank:
                if previous is not None and rank[t] <= rank[previous]:
                    return previous, t
                previous = t
    return None


def is_copyless_monotone(update: RegisterUpdate, registers: Iterable) -> bool:
    return copyless_monotone_violation(update, registers) is None


def _mrt_states(registers: tuple) -> DirectedStateSet:
    direction = {BULLET: FORWARD}
    for r in registers:
        direction[(r, BACKWARD)] = BACKWARD
        direction[(r, FORWARD)] = FORWARD
    return DirectedStateSet.of(direction, order=list(direction))


BULLET = "•"


def mrt_to_planar(mrt: MonotoneRegisterTransducer) -> TwoWayMachine:
    """Planar reversible two-way transducer computing the same function as ``mrt``.

    Entering a cell boundary from the right in ``(r, -1)`` asks for the value
    of ``r`` after the prefix ending there; the run comes back in ``(r, +1)``
    having printed exactly that value.
    """
    regs = mrt.registers
    for a in sorted(mrt.input_alphabet):
        bad = copyless_monotone_violation(mrt.updates[a], regs)
        if bad is not None:
            raise NotCopylessMonotone(f"update for {a!r}: {bad[1]!r} after {bad[0]!r}")
    reg_set = set(regs)
    delta: dict = {}
    for a in sorted(mrt.input_alphabet):
        triples = {(BULLET, "", BULLET)}
        update = mrt.updates[a]
        for r in regs:
            # split rhs into constant chunks separated by register occurrences
            chunks, names, current = [], [], []
            for t in update.rhs(r):
                if t in reg_set:
                    chunks.append("".join(current))
                    names.append(t)
                    current = []
                else:
                    current.append(t)
            chunks.append("".join(current))
            if not names:
                triples.add(((r, BACKWARD), chunks[0], (r, FORWARD)))
                continue
            triples.add(((r, BACKWARD), chunks[0], (names[0], BACKWARD)))
            for k in range(len(names) - 1):
                triples.add(((names[k], FORWARD), chunks[k + 1], (names[k + 1], BACKWARD)))
            triples.add(((names[-1], FORWARD), chunks[-1], (r, FORWARD)))
        delta[a] = triples
    delta[LMARK] = {(BULLET, "", BULLET)} | {((r, BACKWARD), "", (r, FORWARD)) for r in regs}
    out = regs[0]
    delta[RMARK] = {(BULLET, "", (out, BACKWARD)), ((out, FORWARD), "", (out, FORWARD))}
    return TwoWayMachine(TRANSDUCER, mrt.input_alphabet, mrt.output_alphabet,
                         _mrt_states(regs), BULLET, {(out, FORWARD)}, delta)


# -- small fixed machines ----------------------------------------------------

def reverse_transducer(alphabet: Iterable) -> TwoWayMachine:
    """Three states: sweep right, copy backwards, sweep right again to accept."""
    sigma = frozenset(alphabet)
    delta: dict = {a: {("1", "", "1"), ("2", a, "2"), ("3", "", "3")} for a in sigma}
    delta[LMARK] = {("1", "", "1"), ("2", "", "3")}
    delta[RMARK] = {("1", "", "2"), ("3", "", "3")}
    space = DirectedStateSet.parse("1:> 2:< 3:>")
    return TwoWayMachine(TRANSDUCER, sigma, sigma, space, "1", {"3"}, delta)


def identity_transducer(alphabet: Iterable) -> TwoWayMachine:
    sigma = frozenset(alphabet)
    delta: dict = {a: {("0", a, "0")} for a in sigma}
    delta[LMARK] = {("0", "", "0")}
    delta[RMARK] = {("0", "", "0")}
    return TwoWayMachine(TRANSDUCER, sigma, sigma, DirectedStateSet.parse("0:>"), "0",
                         {"0"}, delta)


# -- composition ---------------------------------------------------------------

LEFT_EXIT = "left"
RIGHT_EXIT = "right"


def run_segment(machine: TwoWayMachine, segment: str, state, max_steps: Optional[int] = None):
    """Run ``machine`` on ``segment`` alone, entering at the side its direction implies.

    A forward state enters on the left, a backward state on the right.
    Returns ``(exit side, exit state, emitted word)``, or None when the run
    blocks or loops inside the segment.
    """
    rho = machine.state_space.rho
    table = machine._table
    end = len(segment)
    pos = 0 if rho(state) == FORWARD else end
    if max_steps is None:
        max_steps = len(machine.states) * (end + 2)
    pieces = []
    for _ in range(max_steps + 1):
        direction = rho(state)
        if direction == FORWARD and pos == end:
            return RIGHT_EXIT, state, "".join(pieces)
        if direction == BACKWARD and pos == 0:
            return LEFT_EXIT, state, "".join(pieces)
        symbol = segment[pos] if direction == FORWARD else segment[pos - 1]
        options = table.get(symbol, {}).get(state)
        if not options:
            return None
        out, target = options[0]
        pieces.append(out)
        if rho(target) == direction:
            pos += direction
        state = target
    return None


def decorated_transitions(machine: TwoWayMachine, symbol) -> list:
    """Transitions of ``symbol`` with outputs framed by the end markers.

    A forward state only ever reads the left marker on the very first step, so
    those outputs get a leading marker; crossing the right marker forward ends
    the run, so those outputs get a trailing one.  A backward state can never
    read the right marker, and such triples are dropped.
    """
    rho = machine.state_space.rho
    out = []
    for src, v, dst in sorted(machine.transitions(symbol), key=repr):
        if symbol == LMARK and rho(src) == FORWARD:
            v = LMARK + v
        elif symbol == RMARK:
            if rho(src) == BACKWARD:
                continue
            if rho(dst) == FORWARD:
                v = v + RMARK
        out.append((src, v, dst))
    return out


def _lexicographic_order(first: TwoWayMachine, second: TwoWayMachine) -> tuple:
    return tuple((q, r) for q in first.state_space.order for r in second.state_space.order)


def _twisted_order(first: TwoWayMachine, second: TwoWayMachine) -> tuple:
    """Lexicographic, except that the R-order is reversed under backward Q-states."""
    rho1 = first.state_space.rho
    r_order = second.state_space.order
    return tuple((q, r) for q in first.state_space.order
                 for r in (r_order if rho1(q) == FORWARD else r_order[::-1]))


def _require_planar_reversible(machine: TwoWayMachine, label: str) -> None:
    if not is_reversible(machine):
        raise NotReversible(f"{label} transducer is not reversible")
    if machine.state_space.order is None:
        raise MissingOrder(f"{label} transducer has no state order")
    if not is_planar_machine(machine):
        raise NotPlanar(f"{label} transducer is not planar under its order")


def compose_transducers(first: TwoWayMachine, second: TwoWayMachine,
                        order_search_cap: int = 10) -> TwoWayMachine:
    """Planar reversible machine computing ``second(first(w))``.

    States are pairs ``(q, r)`` with direction ``rho1(q) * rho2(r)``.  The
    lexicographic order is tried first; when it is not planar a
    :class:`CompositionOrderWarning` is issued and the order that reverses R
    under backward Q-states is used instead (an exhaustive search is the last
    resort for small products).  While ``r`` is forward the pair follows the first
    machine's run; while ``r`` is backward it undoes that run, which is only
    possible because the first machine is reversible.
    """
    _require_planar_reversible(first, "first")
    _require_planar_reversible(second, "second")
    if not first.output_alphabet <= second.input_alphabet:
        raise AlphabetMismatch("the first transducer's outputs are not inputs of the second")

    rho2 = second.state_space.rho
    delta: dict = {}
    for a in first.symbols:
        triples = set()
        for q, v, q2 in decorated_transitions(first, a):
            for r in second.states:
                result = run_segment(second, v, r)
                if result is None:
                    continue
                side, r2, w = result
                if rho2(r) == FORWARD:
                    target = (q2, r2) if side == RIGHT_EXIT else (q, r2)
                    triples.add(((q, r), w, target))
                else:
                    target = (q, r2) if side == LEFT_EXIT else (q2, r2)
                    triples.add(((q2, r), w, target))
        if triples:
            delta[a] = triples

    rho1 = first.state_space.rho
    direction = {(q, r): rho1(q) * rho2(r) for q in first.states for r in second.states}
    space = DirectedStateSet.of(direction, order=_lexicographic_order(first, second))
    kind = AUTOMATON if second.kind == AUTOMATON else TRANSDUCER
    finals = {(q, r) for q in first.finals for r in second.finals}
    result = TwoWayMachine(kind, first.input_alphabet, second.output_alphabet, space,
                           (first.initial, second.initial), finals, delta)
    if not is_reversible(result):
        raise NotReversible("composite lost reversibility")  # pragma: no cover
    if is_planar_machine(result):
        return result
    warnings.warn("lexicographic order is not planar for the composite; "
                  "using the direction-twisted order", CompositionOrderWarning, stacklevel=2)
    twisted = result.replace(state_space=space.with_order(_twisted_order(first, second)))
    if is_planar_machine(twisted):
        return twisted
    order = find_planar_order(result, max_states=order_search_cap)
    if order is None:
        raise NotPlanar("no planar order found for the composite")
    result = result.replace(state_space=space.with_order(order))
    return result


def compose_chain(machines: Iterable) -> TwoWayMachine:
    """Left fold of :func:`compose_transducers`: the first machine is applied first."""
    machines = list(machines)
    result = machines[0]
    for m in machines[1:]:
        result = compose_transducers(result, m)
    return result
