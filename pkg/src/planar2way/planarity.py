"""Transition profiles and planarity of transitions and machines.

A relation ``f`` on a directed state set is drawn inside one tape cell: each
state ``q`` has a copy on the left side (-1) and on the right side (+1) of the
cell, and ``(q, r) in f`` becomes the edge ``(q, -rho(q)) -> (r, rho(r))``.
Going around the cell boundary the vertices are met as the left side read
bottom-up (largest state first) then the right side read top-down, which is
the extended order used below.  ``f`` is planar when no two edges have four
distinct endpoints that interleave in that cyclic sequence.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .behavior import Behavior, as_behavior
from .core import DirectedStateSet, TwoWayMachine
from .errors import MissingOrder, StateSpaceTooLarge

LEFT = -1
RIGHT = 1


@dataclass(frozen=True)
class TransitionProfile:
    """Edges are ``((state, side), (state, side))`` pairs, sorted for stability."""

    state_space: DirectedStateSet
    edges: tuple
    labels: Optional[dict] = None

    @property
    def vertices(self) -> tuple:
        return tuple((q, side) for side in (LEFT, RIGHT) for q in self.state_space.states)


@dataclass(frozen=True)
class PlanarityWitness:
    """Four vertices ``u < r < v < s`` with edges joining ``{u, v}`` and ``{r, s}``."""

    u: tuple
    r: tuple
    v: tuple
    s: tuple
    edge1: tuple
    edge2: tuple

    def describe(self) -> str:
        def fmt(vertex):
            return f"({vertex[0]},{vertex[1]:+d})"

        return (f"u={fmt(self.u)} r={fmt(self.r)} v={fmt(self.v)} s={fmt(self.s)}; "
                f"edges {fmt(self.edge1[0])}->{fmt(self.edge1[1])} and "
                f"{fmt(self.edge2[0])}->{fmt(self.edge2[1])}")


def _edge_vertices(space: DirectedStateSet, i: int, j: int):
    states, signs = space.states, space.signs
    return (states[i], -signs[i]), (states[j], signs[j])


def transition_profile(space: DirectedStateSet, relation, labels: Optional[dict] = None
                       ) -> TransitionProfile:
    f = as_behavior(space, relation)
    edges = sorted((_edge_vertices(space, i, j) for i, j in f.index_pairs()), key=repr)
    return TransitionProfile(space, tuple(edges), labels)


def extend_order(space: DirectedStateSet) -> dict:
    """Position of every vertex ``(q, side)`` in the extended total order."""
    if space.order is None:
        raise MissingOrder("planarity needs an order on the states")
    n = len(space)
    positions = {}
    for rank, q in enumerate(space.order):
        positions[(q, LEFT)] = n - 1 - rank
        positions[(q, RIGHT)] = n + rank
    return positions


def _chords(n: int, signs, ranks, pairs) -> list:
    """Chord endpoints (sorted positions) for index pairs, given per-index ranks."""
    chords = []
    for i, j in pairs:
        a = n - 1 - ranks[i] if signs[i] == RIGHT else n + ranks[i]
        b = n + ranks[j] if signs[j] == RIGHT else n - 1 - ranks[j]
        if a != b:
            chords.append((a, b) if a < b else (b, a))
    return chords


def _has_crossing(chords) -> bool:
    """Stack sweep: chords sharing an endpoint never count as crossing."""
    if len(chords) < 2:
        return False
    opening: dict = {}
    for a, b in chords:
        opening.setdefault(a, []).append(b)
    closing = Counter(b for _, b in chords)
    stack: list = []
    open_ends: Counter = Counter()
    for p in sorted(set(opening) | set(closing)):
        if p in closing:
            while stack and stack[-1] == p:
                stack.pop()
                open_ends[p] -= 1
            if open_ends[p]:
                return True
        for b in sorted(opening.get(p, ()), reverse=True):
            stack.append(b)
            open_ends[b] += 1
    return False


def _index_ranks(space: DirectedStateSet) -> list:
    if space.order is None:
        raise MissingOrder("planarity needs an order on the states")
    return [space.rank(q) for q in space.states]


def is_planar_transition(space: DirectedStateSet, relation) -> bool:
    f = as_behavior(space, relation)
    chords = _chords(len(space), space.signs, _index_ranks(space), f.index_pairs())
    return not _has_crossing(chords)


def planarity_witness(space: DirectedStateSet, relation) -> Optional[PlanarityWitness]:
    """The lexicographically least interleaving ``u < r < v < s``, or None if planar."""
    f = as_behavior(space, relation)
    ranks = _index_ranks(space)
    n = len(space)
    edges = []
    for i, j in f.index_pairs():
        chord = _chords(n, space.signs, ranks, [(i, j)])
        if chord:
            edges.append((chord[0], _edge_vertices(space, i, j)))
    best = None
    for (c1, e1), (c2, e2) in combinations(edges, 2):
        (a, b), (c, d) = c1, c2
        if a < c < b < d:
            candidate = ((a, c, b, d), e1, e2)
        elif c < a < d < b:
            candidate = ((c, a, d, b), e2, e1)
        else:
            continue
        if best is None or candidate[0] < best[0]:
            best = candidate
    if best is None:
        return None
    vertex_at = {pos: vertex for vertex, pos in extend_order(space).items()}
    (pu, pr, pv, ps), edge1, edge2 = best
    return PlanarityWitness(vertex_at[pu], vertex_at[pr], vertex_at[pv], vertex_at[ps],
                            edge1, edge2)


def witness_is_valid(space: DirectedStateSet, relation, witness: PlanarityWitness) -> bool:
    """Re-check a witness directly against the profile edges and the extended order."""
    pos = extend_order(space)
    points = [pos[witness.u], pos[witness.r], pos[witness.v], pos[witness.s]]
    if not points[0] < points[1] < points[2] < points[3]:
        return False
    edges = set(transition_profile(space, relation).edges)
    return (witness.edge1 in edges and witness.edge2 in edges
            and {witness.u, witness.v} == set(witness.edge1)
            and {witness.r, witness.s} == set(witness.edge2))


def geometric_planarity_oracle(space: DirectedStateSet, relation) -> bool:
    """Place the ``2|Q|`` vertices on a circle and test chords for proper intersection.

    Independent of the interleaving test: it works with float coordinates and
    orientation signs.  Chords that share an endpoint only touch there.
    """
    f = as_behavior(space, relation)
    pos = extend_order(space)
    m = 2 * len(space)

    def point(vertex):
        angle = 2 * math.pi * pos[vertex] / m
        return math.cos(angle), math.sin(angle)

    segments = []
    for i, j in f.index_pairs():
        src, dst = _edge_vertices(space, i, j)
        segments.append((point(src), point(dst)))

    def orient(p, q, r):
        value = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        if abs(value) < 1e-12:
            return 0
        return 1 if value > 0 else -1

    for (p1, p2), (p3, p4) in combinations(segments, 2):
        d1, d2 = orient(p3, p4, p1), orient(p3, p4, p2)
        d3, d4 = orient(p1, p2, p3), orient(p1, p2, p4)
        if d1 * d2 < 0 and d3 * d4 < 0:
            return False
    return True


INPUT_ONLY = "input"
ALL_SYMBOLS = "all"


def _letters(machine: TwoWayMachine, letters: str) -> tuple:
    if letters in (INPUT_ONLY, "input_only"):
        return tuple(sorted(machine.input_alphabet))
    if letters == ALL_SYMBOLS:
        return machine.symbols
    raise ValueError(f"letters must be 'all' or 'input', got {letters!r}")


def machine_planarity_witness(machine: TwoWayMachine, letters: str = ALL_SYMBOLS):
    """First ``(symbol, witness)`` whose projected transition is not planar, or None."""
    space = machine.state_space
    for x in _letters(machine, letters):
        witness = planarity_witness(space, machine.projected(x))
        if witness is not None:
            return x, witness
    return None


def is_planar_machine(machine: TwoWayMachine, letters: str = ALL_SYMBOLS) -> bool:
    space = machine.state_space
    return all(is_planar_transition(space, machine.projected(x))
               for x in _letters(machine, letters))


def find_planar_order(machine: TwoWayMachine, letters: str = ALL_SYMBOLS,
                      max_states: int = 10) -> Optional[tuple]:
    """Search all total orders, abandoning a prefix once some letter is non-planar on it.

    Orders are explored in lexicographic order of state positions, so the
    answer is the first valid order in that enumeration.
    """
    space = machine.state_space
    n = len(space)
    if n > max_states:
        raise StateSpaceTooLarge(f"{n} states exceeds the search cap of {max_states}")
    relations = []
    for x in _letters(machine, letters):
        f = Behavior.from_pairs(space, machine.projected(x))
        relations.append(f.index_pairs())
    signs = space.signs
    ranks = [0] * n
    placed: list = []
    used = [False] * n

    def prefix_ok() -> bool:
        k = len(placed)
        members = set(placed)
        for pairs in relations:
            sub = [(i, j) for i, j in pairs if i in members and j in members]
            if _has_crossing(_chords(k, signs, ranks, sub)):
                return False
        return True

    def extend() -> bool:
        if len(placed) == n:
            return True
        for i in range(n):
            if used[i]:
                continue
            used[i] = True
            ranks[i] = len(placed)
            placed.append(i)
            if prefix_ok() and extend():
                return True
            placed.pop()
            used[i] = False
        return False

    if not extend():
        return None
    return tuple(space.states[i] for i in placed)


def with_planar_order(machine: TwoWayMachine, letters: str = ALL_SYMBOLS,
                      max_states: int = 10) -> Optional[TwoWayMachine]:
    """Copy of ``machine`` carrying a planar order found by search, or None."""
    order = find_planar_order(machine, letters, max_states)
    if order is None:
        return None
    return machine.replace(state_space=machine.state_space.with_order(order))


__all__ = [
    "LEFT", "RIGHT", "TransitionProfile", "PlanarityWitness", "transition_profile",
    "extend_order", "is_planar_transition", "planarity_witness", "witness_is_valid",
    "geometric_planarity_oracle", "machine_planarity_witness", "is_planar_machine",
    "find_planar_order", "with_planar_order", "INPUT_ONLY", "ALL_SYMBOLS",
]
