import random
import warnings

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import natural_space, random_planar_2rft
from planar2way.behavior import Behavior
from planar2way.constructions import (
    CompositionOrderWarning,
    RegisterUpdate,
    MonotoneRegisterTransducer,
    compose_transducers,
    mrt_apply,
    mrt_to_planar,
    reverse_transducer,
)
from planar2way.core import evaluate, is_reversible, run
from planar2way.monoid import compose_behaviors, compose_by_reachability, factor_turns
from planar2way.planarity import geometric_planarity_oracle, is_planar_transition
from planar2way.textio import parse_machine, serialize_machine


@st.composite
def spaces_and_relations(draw, max_n=5, functions=False):
    n = draw(st.integers(1, max_n))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=n, max_size=n))
    space = natural_space(signs)
    if functions:
        images = draw(st.lists(st.integers(-1, n - 1), min_size=n, max_size=n))
        rel = Behavior.from_index_pairs(n, [(i, j) for i, j in enumerate(images) if j >= 0])
    else:
        rel = Behavior(n, draw(st.integers(0, (1 << (n * n)) - 1)))
    return space, rel


@given(spaces_and_relations())
def test_planarity_oracles_agree(case):
    space, f = case
    assert is_planar_transition(space, f) == geometric_planarity_oracle(space, f)


@given(spaces_and_relations(max_n=4), st.data())
def test_glued_product_matches_reachability(case, data):
    space, f = case
    g = Behavior(len(space), data.draw(st.integers(0, (1 << len(space) ** 2) - 1)))
    assert compose_behaviors(space, f, g) == compose_by_reachability(space, f, g)


@given(spaces_and_relations(functions=True))
def test_turn_factorization_of_functions(case):
    space, f = case
    assert factor_turns(space, f).recompose(space) == f


@given(st.text(alphabet="abc", max_size=12))
def test_reverse_reverses(word):
    assert evaluate(reverse_transducer("abc"), word) == word[::-1]


@given(st.text(alphabet="abc", max_size=10))
def test_run_is_deterministic(word):
    rev = reverse_transducer("abc")
    assert run(rev, word) == run(rev, word)


_FRAGMENTS = st.text(alphabet="ab", max_size=2)


@st.composite
def monotone_register_transducers(draw):
    registers = ("X", "Y", "Z")[: draw(st.integers(1, 3))]
    updates = {}
    for letter in "ab":
        assignment, used = {}, 0
        for r in registers:
            tokens = list(draw(_FRAGMENTS))
            # registers in increasing order, each used at most once across the update
            available = list(registers[used:])
            chosen = draw(st.lists(st.sampled_from(available), unique=True,
                                   max_size=len(available))) if available else []
            for s in sorted(chosen, key=registers.index):
                tokens += [s, *draw(_FRAGMENTS)]
            if chosen:
                used = max(registers.index(s) for s in chosen) + 1
            assignment[r] = tokens
        updates[letter] = RegisterUpdate(assignment)
    return MonotoneRegisterTransducer("ab", "ab", registers, updates)


@settings(max_examples=40, deadline=None)
@given(monotone_register_transducers(), st.text(alphabet="ab", max_size=6))
def test_register_translation_agrees(mrt, word):
    m = mrt_to_planar(mrt)
    assert is_reversible(m)
    assert evaluate(m, word) == mrt_apply(mrt, word)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.text(alphabet="ab", max_size=5))
def test_composition_agrees(seed, word):
    rng = random.Random(seed)
    first, second = random_planar_2rft(rng), random_planar_2rft(rng)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CompositionOrderWarning)
        composite = compose_transducers(first, second)
    mid = evaluate(first, word)
    assert evaluate(composite, word) == (None if mid is None else evaluate(second, mid))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_serialization_round_trip(seed):
    m = random_planar_2rft(random.Random(seed), min_domain=0)
    text = serialize_machine(m, "2dft")
    assert serialize_machine(parse_machine(text), "2dft") == text
