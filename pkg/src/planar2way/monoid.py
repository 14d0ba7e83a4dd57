"""The behaviour monoid of a directed state set and its planar deterministic part.

Two cell diagrams ``f`` and ``g`` are glued along the shared boundary; the
product ``f * g`` relates ``q`` to ``r`` when a path in the glued graph leads
from the outer entry vertex of ``q`` to the outer exit vertex of ``r``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Optional

from .behavior import Behavior, as_behavior
from .core import FORWARD, MARKERS, DirectedStateSet, TwoWayMachine
from .errors import AlphabetError, CapExceeded, StateSpaceTooLarge
from .planarity import is_planar_transition

DEFAULT_CAP = 10**6


# -- composition ------------------------------------------------------------

def composition_graph(space: DirectedStateSet, f: Behavior, g: Behavior) -> dict:
    """Adjacency of the glued graph on ``Q x {-1, 0, 1}``, keyed by ``(index, column)``."""
    signs = space.signs
    graph: dict = {(q, c): [] for q in range(len(space)) for c in (-1, 0, 1)}
    for q, r in f.index_pairs():
        graph[(q, (-signs[q] - 1) // 2)].append((r, (signs[r] - 1) // 2))
    for q, r in g.index_pairs():
        graph[(q, (1 - signs[q]) // 2)].append((r, (signs[r] + 1) // 2))
    return graph


def compose_behaviors(space: DirectedStateSet, f, g) -> Behavior:
    """``f * g``: reachability from ``(q, -rho(q))`` to ``(r, rho(r))`` in the glued graph."""
    f = as_behavior(space, f)
    g = as_behavior(space, g)
    if f.is_partial_function() and g.is_partial_function():
        return _compose_functions(space.signs, f, g)
    return compose_by_reachability(space, f, g)


def _compose_functions(signs, f: Behavior, g: Behavior) -> Behavior:
    # every vertex of the glued graph has out-degree <= 1, so paths are followed
    n = f.size
    fmap = [-1] * n
    gmap = [-1] * n
    for i, j in f.index_pairs():
        fmap[i] = j
    for i, j in g.index_pairs():
        gmap[i] = j
    bits = 0
    for q in range(n):
        state, column = q, -signs[q]
        for _ in range(n + 1):
            use_f = signs[state] == -1 if column == 0 else column == -1
            nxt = fmap[state] if use_f else gmap[state]
            if nxt < 0:
                break
            state = nxt
            column = (signs[nxt] - 1) // 2 if use_f else (signs[nxt] + 1) // 2
            if column != 0:
                bits |= 1 << (q * n + state)
                break
    return Behavior(n, bits)


def compose_by_reachability(space: DirectedStateSet, f: Behavior, g: Behavior) -> Behavior:
    """General product by graph search; works for arbitrary relations."""
    n = len(space)
    signs = space.signs
    # vertex (q, column) is stored at 3*q + column + 1
    adj: list = [[] for _ in range(3 * n)]
    for q, r in f.index_pairs():
        adj[3 * q + (-signs[q] - 1) // 2 + 1].append(3 * r + (signs[r] - 1) // 2 + 1)
    for q, r in g.index_pairs():
        adj[3 * q + (1 - signs[q]) // 2 + 1].append(3 * r + (signs[r] + 1) // 2 + 1)
    bits = 0
    for q in range(n):
        start = 3 * q + 1 - signs[q]
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        for r in range(n):
            if 3 * r + 1 + signs[r] in seen:
                bits |= 1 << (q * n + r)
    return Behavior(n, bits)


def compose_many(space: DirectedStateSet, behaviors: Iterable) -> Behavior:
    result = Behavior.identity(len(space))
    for b in behaviors:
        result = compose_behaviors(space, result, b)
    return result


def behavior_of_word(machine: TwoWayMachine, word: str) -> Behavior:
    """Product of the projected transitions along ``word`` (markers allowed)."""
    space = machine.state_space
    for c in word:
        if c not in machine.input_alphabet and c not in MARKERS:
            raise AlphabetError(f"symbol {c!r} is not in the input alphabet")
    return compose_many(space, (Behavior.from_pairs(space, machine.projected(c)) for c in word))


# -- generic finite monoid helpers -------------------------------------------

def closure(generators: Iterable, multiply: Callable, unit: Any, cap: int = DEFAULT_CAP) -> list:
    """Breadth-first right-multiplication closure, unit first, then generators in order."""
    gens = list(generators)
    elements = [unit]
    seen = {unit}
    for g in gens:
        if g not in seen:
            seen.add(g)
            elements.append(g)
    if len(elements) > cap:
        raise CapExceeded(f"more than {cap} elements")
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in gens:
            y = multiply(x, g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > cap:
                    raise CapExceeded(f"more than {cap} elements")
        i += 1
    return elements


def power_profile(x: Any, multiply: Callable, unit: Any) -> tuple:
    """``(threshold, period)`` of the sequence ``x^0, x^1, ...``.

    ``threshold`` is the least ``i`` with ``x^i = x^(i + period)``.
    """
    first_seen = {unit: 0}
    power = unit
    k = 0
    while True:
        power = multiply(power, x)
        k += 1
        if power in first_seen:
            i = first_seen[power]
            return i, k - i
        first_seen[power] = k


@dataclass(frozen=True)
class AperiodicityReport:
    aperiodic: bool
    index: Optional[int]
    offending: Any = None
    period: int = 1

    def __bool__(self):
        return self.aperiodic


def aperiodicity_of(elements: Iterable, multiply: Callable, unit: Any) -> AperiodicityReport:
    """Aperiodic when every element's power sequence ends in a fixed point.

    ``index`` is the least ``n`` with ``x^(n+1) = x^n`` for all elements.
    """
    index = 0
    for x in elements:
        threshold, period = power_profile(x, multiply, unit)
        if period != 1:
            return AperiodicityReport(False, None, x, period)
        index = max(index, threshold)
    return AperiodicityReport(True, index)


# -- behaviour monoids -------------------------------------------------------

@dataclass(frozen=True)
class BehaviorMonoid:
    state_space: DirectedStateSet
    elements: tuple
    generators: Mapping
    unit: Behavior

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        return item in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def multiply(self, f: Behavior, g: Behavior) -> Behavior:
        return compose_behaviors(self.state_space, f, g)

    @cached_property
    def aperiodicity_report(self) -> AperiodicityReport:
        return aperiodicity(self)


def generate_monoid(space: DirectedStateSet, generators: Mapping, cap: int = DEFAULT_CAP
                    ) -> BehaviorMonoid:
    """Least submonoid containing ``generators`` (a ``symbol -> relation`` map)."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = {x: as_behavior(space, f) for x, f in generators.items()}
    unit = Behavior.identity(len(space))
    ordered = [gens[x] for x in sorted(gens)]
    elements = closure(ordered, lambda a, b: compose_behaviors(space, a, b), unit, cap)
    return BehaviorMonoid(space, tuple(elements), gens, unit)


def machine_monoid(machine: TwoWayMachine, cap: int = DEFAULT_CAP) -> BehaviorMonoid:
    """Monoid generated by the projected transitions of the input letters."""
    gens = {x: machine.projected(x) for x in machine.input_alphabet}
    return generate_monoid(machine.state_space, gens, cap)


def aperiodicity(monoid: BehaviorMonoid) -> AperiodicityReport:
    return aperiodicity_of(monoid.elements, monoid.multiply, monoid.unit)


# -- the planar deterministic submonoid --------------------------------------

def enumerate_planar_deterministic(space: DirectedStateSet, max_states: int = 6,
                                   planarity: Callable = is_planar_transition) -> list:
    """Every partial function on ``Q`` that is planar for the space's order."""
    n = len(space)
    if n > max_states:
        raise StateSpaceTooLarge(f"{n} states exceeds the enumeration cap of {max_states}")
    carrier = []
    for images in product(range(-1, n), repeat=n):
        f = Behavior.from_index_pairs(n, ((i, j) for i, j in enumerate(images) if j >= 0))
        if planarity(space, f):
            carrier.append(f)
    return carrier


def enumerate_planar_relations(space: DirectedStateSet, max_states: int = 3) -> list:
    """Every planar relation, deterministic or not."""
    n = len(space)
    if n > max_states:
        raise StateSpaceTooLarge(f"{n} states exceeds the enumeration cap of {max_states}")
    return [Behavior(n, bits) for bits in range(1 << (n * n))
            if is_planar_transition(space, Behavior(n, bits))]


@dataclass(frozen=True)
class SubmonoidReport:
    size: int
    contains_unit: bool
    closed: bool
    counterexample: Optional[tuple]
    aperiodicity: Optional[AperiodicityReport]

    @property
    def ok(self) -> bool:
        return (self.contains_unit and self.closed
                and self.aperiodicity is not None and self.aperiodicity.aperiodic)


def verify_tl_submonoid(space: DirectedStateSet, deterministic: bool = True,
                        max_states: int = 6) -> SubmonoidReport:
    """Check unit membership, closure under ``*`` and aperiodicity of the planar carrier.

    With ``deterministic=False`` the carrier is every planar relation, and
    closure is expected to fail as soon as two states can merge and split.
    The counterexample is ``(f, g, f * g)``.
    """
    if deterministic:
        carrier = enumerate_planar_deterministic(space, max_states)
    else:
        carrier = enumerate_planar_relations(space, min(max_states, 3))
    members = set(carrier)
    unit = Behavior.identity(len(space))

    def admissible(h: Behavior) -> bool:
        if h in members:
            return True
        return (not deterministic or h.is_partial_function()) and is_planar_transition(space, h)

    counterexample = None
    for f in carrier:
        for g in carrier:
            h = compose_behaviors(space, f, g)
            if not admissible(h):
                counterexample = (f, g, h)
                break
        if counterexample:
            break
    closed = counterexample is None
    report = None
    if closed:
        report = aperiodicity_of(carrier, lambda a, b: compose_behaviors(space, a, b), unit)
    return SubmonoidReport(len(carrier), unit in members, closed, counterexample, report)


# -- turn factorization ------------------------------------------------------

@dataclass(frozen=True)
class TurnFactorization:
    into_turns: Behavior
    out_turns: Behavior
    through: Behavior
    left_factor: Behavior
    right_factor: Behavior

    def recompose(self, space: DirectedStateSet) -> Behavior:
        return compose_many(space, (self.left_factor, self.through, self.right_factor))


def factor_turns(space: DirectedStateSet, f) -> TurnFactorization:
    """Split ``f`` into forward-to-backward turns, backward-to-forward turns and the rest.

    Each turn part is padded with the identity on states it leaves undefined.
    For partial functions ``left * through * right == f``.
    """
    f = as_behavior(space, f)
    n = len(space)
    signs = space.signs
    into, out, through = [], [], []
    for i, j in f.index_pairs():
        if signs[i] == FORWARD and signs[j] != FORWARD:
            into.append((i, j))
        elif signs[i] != FORWARD and signs[j] == FORWARD:
            out.append((i, j))
        else:
            through.append((i, j))

    def padded(turns):
        sources = {i for i, _ in turns}
        return Behavior.from_index_pairs(n, turns + [(q, q) for q in range(n) if q not in sources])

    return TurnFactorization(
        Behavior.from_index_pairs(n, into),
        Behavior.from_index_pairs(n, out),
        Behavior.from_index_pairs(n, through),
        padded(into),
        padded(out),
    )


def turn_cycle(space: DirectedStateSet, f) -> Behavior:
    """``through * right * left``: the behaviour whose powers govern those of ``f``."""
    fac = factor_turns(space, f)
    return compose_many(space, (fac.through, fac.right_factor, fac.left_factor))


def is_monotone_partial_function(pairs: Iterable, rank: Callable) -> bool:
    """Non-decreasing for ``rank`` (ties in the image allowed)."""
    ordered = sorted(pairs, key=lambda p: rank(p[0]))
    sources = [p[0] for p in ordered]
    if len(set(sources)) != len(sources):
        return False
    images = [rank(p[1]) for p in ordered]
    return all(a <= b for a, b in zip(images, images[1:]))


def turn_cycle_parts(space: DirectedStateSet, f) -> tuple:
    """``(forward part, backward part, mixed part)`` of :func:`turn_cycle` as index pairs."""
    g = turn_cycle(space, f)
    signs = space.signs
    fwd, bwd, mixed = [], [], []
    for i, j in g.index_pairs():
        if signs[i] != signs[j]:
            mixed.append((i, j))
        else:
            (fwd if signs[i] == FORWARD else bwd).append((i, j))
    return fwd, bwd, mixed


def monotone_turn_property(space: DirectedStateSet, f) -> bool:
    """Both direction-preserving parts of the turn cycle are monotone partial functions.

    Pairs that change direction are ignored here; they do occur, e.g. for a
    single backward-to-forward turn, where a backward state crosses the padded
    right-hand factor and then turns.
    """
    fwd, bwd, _ = turn_cycle_parts(space, f)
    rank = lambda i: space.rank(space.states[i])  # noqa: E731
    return is_monotone_partial_function(fwd, rank) and is_monotone_partial_function(bwd, rank)
