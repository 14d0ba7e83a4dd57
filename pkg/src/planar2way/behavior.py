"""Relations on a finite state set, stored as ``|Q|**2``-bit integers.

Cell ``(i, j)`` lives at bit ``i * n + j`` where ``i`` and ``j`` index
``state_space.states``.  The encoding is canonical, so equality and hashing
are structural.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import UnknownState


@dataclass(frozen=True)
class Behavior:
    size: int
    bits: int = 0

    @classmethod
    def from_index_pairs(cls, size: int, pairs: Iterable) -> "Behavior":
        bits = 0
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size):
                raise UnknownState((i, j))
            bits |= 1 << (i * size + j)
        return cls(size, bits)

    @classmethod
    def from_pairs(cls, space, pairs: Iterable) -> "Behavior":
        """Build from pairs of state names of ``space``."""
        idx = space.index
        return cls.from_index_pairs(len(space), ((idx(q), idx(r)) for q, r in pairs))

    @classmethod
    def identity(cls, size: int) -> "Behavior":
        return cls.from_index_pairs(size, ((i, i) for i in range(size)))

    @classmethod
    def empty(cls, size: int) -> "Behavior":
        return cls(size, 0)

    def index_pairs(self) -> list:
        out = []
        bits, n = self.bits, self.size
        while bits:
            low = bits & -bits
            k = low.bit_length() - 1
            out.append(divmod(k, n))
            bits ^= low
        return out

    def pairs(self, space) -> frozenset:
        states = space.states
        return frozenset((states[i], states[j]) for i, j in self.index_pairs())

    def __contains__(self, pair) -> bool:
        i, j = pair
        return bool(self.bits >> (i * self.size + j) & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __or__(self, other: "Behavior") -> "Behavior":
        return Behavior(self.size, self.bits | other.bits)

    def __and__(self, other: "Behavior") -> "Behavior":
        return Behavior(self.size, self.bits & other.bits)

    def __sub__(self, other: "Behavior") -> "Behavior":
        return Behavior(self.size, self.bits & ~other.bits)

    def row(self, i: int) -> list:
        """Indices ``j`` with ``(i, j)`` in the relation."""
        n = self.size
        chunk = (self.bits >> (i * n)) & ((1 << n) - 1)
        return [j for j in range(n) if chunk >> j & 1]

    def is_partial_function(self) -> bool:
        n = self.size
        mask = (1 << n) - 1
        for i in range(n):
            chunk = (self.bits >> (i * n)) & mask
            if chunk & (chunk - 1):
                return False
        return True

    def is_injective(self) -> bool:
        seen = 0
        for _, j in self.index_pairs():
            if seen >> j & 1:
                return False
            seen |= 1 << j
        return True

    def as_function(self) -> dict:
        """``{i: j}`` for a partial function."""
        return {i: j for i, j in self.index_pairs()}

    def __repr__(self) -> str:
        return f"Behavior({sorted(self.index_pairs())})"


def as_behavior(space, relation) -> Behavior:
    """Accept a :class:`Behavior` or an iterable of state-name pairs."""
    if isinstance(relation, Behavior):
        if relation.size != len(space):
            raise ValueError("behaviour size does not match the state space")
        return relation
    return Behavior.from_pairs(space, relation)
