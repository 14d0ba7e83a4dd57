"""Random planar reversible machines and other generators shared by the tests."""

from __future__ import annotations

import random
from itertools import product

from planar2way.behavior import Behavior
from planar2way.core import LMARK, RMARK, TRANSDUCER, DirectedStateSet, TwoWayMachine, evaluate
from planar2way.oracles import enumerate_words
from planar2way.planarity import is_planar_transition


def random_space(rng: random.Random, n: int) -> DirectedStateSet:
    signs = [1] + [rng.choice((1, -1)) for _ in range(n - 1)]
    states = [str(i) for i in range(n)]
    return DirectedStateSet(tuple(states), tuple(signs), tuple(states))


def random_partial_injection(rng: random.Random, n: int) -> list:
    targets = list(range(n))
    rng.shuffle(targets)
    return [(i, targets[i]) for i in range(n) if rng.random() < 0.75]


def random_planar_injection(rng: random.Random, space: DirectedStateSet) -> list:
    n = len(space)
    while True:
        pairs = random_partial_injection(rng, n)
        if is_planar_transition(space, Behavior.from_index_pairs(n, pairs)):
            return pairs


def random_word(rng: random.Random, alphabet: str, max_len: int) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


def random_planar_2rft(rng: random.Random, max_states: int = 3, sigma: str = "ab",
                       gamma: str = "ab", min_domain: int = 3) -> TwoWayMachine:
    """A planar reversible transducer under the natural order, defined on a few short words."""
    while True:
        n = rng.randint(1, max_states)
        space = random_space(rng, n)
        names = space.states
        delta = {}
        for x in list(sigma) + [LMARK, RMARK]:
            delta[x] = {(names[i], random_word(rng, gamma, 2), names[j])
                        for i, j in random_planar_injection(rng, space)}
        forward = [q for q in names if space.rho(q) == 1]
        finals = {q for q in forward if rng.random() < 0.7} or {rng.choice(forward)}
        machine = TwoWayMachine(TRANSDUCER, sigma, gamma, space, "0", finals, delta)
        domain = sum(evaluate(machine, w) is not None for w in enumerate_words(sigma, 3))
        if domain >= min_domain:
            return machine


def random_relation(rng: random.Random, n: int) -> Behavior:
    return Behavior(n, rng.getrandbits(n * n))


def random_partial_function(rng: random.Random, n: int) -> Behavior:
    pairs = [(i, rng.randrange(n)) for i in range(n) if rng.random() < 0.8]
    return Behavior.from_index_pairs(n, pairs)


def all_sign_tuples(n: int):
    return product((1, -1), repeat=n)


def natural_space(signs) -> DirectedStateSet:
    states = tuple(f"q{i}" for i in range(len(signs)))
    return DirectedStateSet(states, tuple(signs), states)
