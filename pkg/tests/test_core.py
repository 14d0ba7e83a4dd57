import re

import pytest

from planar2way.catalog import LOOKBACK_LANGUAGE, lookback_automaton, swap_mrt
from planar2way.constructions import mrt_to_planar, reverse_transducer
from planar2way.core import (
    ACCEPTED,
    AUTOMATON,
    LMARK,
    LOOPING,
    REJECTED_NONFINAL,
    REJECTED_STUCK,
    RMARK,
    TRANSDUCER,
    Configuration,
    DirectedStateSet,
    TwoWayMachine,
    accepts,
    domain_automaton,
    evaluate,
    is_deterministic,
    is_reversible,
    make_machine,
    reversed_transitions,
    run,
    step,
)
from planar2way.errors import (
    AlphabetError,
    MissingOrder,
    NondeterministicMachine,
    UnknownState,
    ValidationError,
)
from planar2way.oracles import enumerate_words


@pytest.fixture
def lookback():
    return lookback_automaton()


def test_state_set_parse_and_rank():
    space = DirectedStateSet.parse("0:> 1:< 2:<")
    assert space.forward == ("0",)
    assert space.backward == ("1", "2")
    assert space.rho("1") == -1
    assert [space.rank(q) for q in "012"] == [0, 1, 2]
    reordered = space.with_order(["2", "0", "1"])
    assert reordered.rank("2") == 0


def test_state_set_without_order():
    space = DirectedStateSet.parse("0:> 1:<", ordered=False)
    with pytest.raises(MissingOrder):
        space.rank("0")


@pytest.mark.parametrize("states,signs,order", [
    (("a", "a"), (1, 1), None),
    (("a", "b"), (1,), None),
    (("a",), (0,), None),
    (("a", "b"), (1, 1), ("a", "a")),
])
def test_state_set_rejects_malformed(states, signs, order):
    with pytest.raises(ValidationError):
        DirectedStateSet(states, signs, order)


def test_unknown_state_lookup():
    with pytest.raises(UnknownState):
        DirectedStateSet.parse("0:>").index("9")


def test_initial_state_must_be_forward():
    with pytest.raises(ValidationError):
        make_machine("0:< 1:>", "0", set(), {})


def test_markers_are_reserved():
    space = DirectedStateSet.parse("0:>")
    with pytest.raises(ValidationError):
        TwoWayMachine(AUTOMATON, {"a", LMARK}, set(), space, "0", set(), {})


def test_automaton_outputs_must_be_empty():
    space = DirectedStateSet.parse("0:>")
    with pytest.raises(ValidationError):
        TwoWayMachine(AUTOMATON, {"a"}, set(), space, "0", set(), {"a": {("0", "x", "0")}})


def test_output_outside_alphabet():
    space = DirectedStateSet.parse("0:>")
    with pytest.raises(ValidationError):
        TwoWayMachine(TRANSDUCER, {"a"}, {"b"}, space, "0", set(), {"a": {("0", "c", "0")}})


def test_step_reads_left_marker(lookback):
    start = Configuration("", "0", LMARK + "abac" + RMARK)
    nxt, out = step(lookback, start)
    assert nxt == Configuration(LMARK, "0", "abac" + RMARK)
    assert out == ""


def test_step_crosses_forward(lookback):
    nxt, _ = step(lookback, Configuration(LMARK + "ab", "0", "ac" + RMARK))
    assert nxt == Configuration(LMARK + "aba", "0", "c" + RMARK)


def test_step_blocked_on_right_marker(lookback):
    assert step(lookback, Configuration(LMARK + "abac", "0", RMARK)) is None


def test_step_turn_keeps_head(lookback):
    nxt, _ = step(lookback, Configuration(LMARK + "aba", "0", "c" + RMARK))
    assert nxt == Configuration(LMARK + "aba", "1", "c" + RMARK)


def test_backward_state_reads_left_neighbour(lookback):
    nxt, _ = step(lookback, Configuration(LMARK + "aba", "1", "c" + RMARK))
    assert nxt == Configuration(LMARK + "ab", "2", "ac" + RMARK)


def test_step_refuses_nondeterminism():
    m = make_machine("0:> 1:>", "0", {"0"}, {"a": [("0", "0"), ("0", "1")]})
    with pytest.raises(NondeterministicMachine):
        step(m, Configuration(LMARK, "0", "a" + RMARK))


def test_run_accepts_and_exits_in_final_state(lookback):
    result = run(lookback, "abac", trace=True)
    assert result.status == ACCEPTED
    last, _ = result.trace[-1]
    assert last.state == "3" and last.right == ""


def test_run_empty_word_gets_stuck(lookback):
    assert run(lookback, "").status == REJECTED_STUCK


def test_run_rejects_in_nonfinal_state():
    m = make_machine("0:> 1:>", "0", {"1"}, {"⊳": [("0", "0")], "a": [("0", "0")],
                                              "⊲": [("0", "0")]}, input_alphabet="a")
    result = run(m, "aa")
    assert result.status == REJECTED_NONFINAL
    assert result.value is None


def test_run_detects_loops():
    m = make_machine("0:> 1:<", "0", {"0"},
                     {"⊳": [("0", "0"), ("1", "0")], "a": [("0", "1")]}, input_alphabet="a")
    result = run(m, "a", trace=True)
    assert result.status == LOOPING
    configs = [c for c, _ in result.trace]
    assert len(set(configs)) < len(configs)


def test_run_tape_is_conserved(lookback):
    for word in ("abac", "bbc", "cab"):
        tape = LMARK + word + RMARK
        for config, _ in run(lookback, word, trace=True).trace:
            assert config.left + config.right == tape


def test_run_rejects_foreign_symbols(lookback):
    with pytest.raises(AlphabetError):
        run(lookback, "abd")


def test_run_refuses_nondeterministic_machine():
    m = make_machine("0:> 1:>", "0", {"0"}, {"a": [("0", "0"), ("0", "1")]})
    with pytest.raises(NondeterministicMachine):
        run(m, "a")


def test_run_output_is_concatenated_emissions():
    rev = reverse_transducer("ab")
    result = run(rev, "aab", trace=True)
    assert result.output == "".join(out for _, out in result.trace) == "baa"


def test_language_matches_regex_up_to_length_seven(lookback):
    pattern = re.compile(LOOKBACK_LANGUAGE)
    for word in enumerate_words("abc", 7):
        assert accepts(lookback, word) == bool(pattern.fullmatch(word)), word


def test_lookback_is_deterministic_not_reversible(lookback):
    assert is_deterministic(lookback)
    assert not is_reversible(lookback)


def test_empty_machine_is_reversible():
    m = make_machine("0:>", "0", set(), {})
    assert is_deterministic(m) and is_reversible(m)


def test_same_pair_with_two_outputs_is_nondeterministic():
    m = make_machine("0:>", "0", set(), {"a": [("0", "x", "0"), ("0", "y", "0")]},
                     output_alphabet="xy")
    assert not is_deterministic(m)


def test_reversed_transitions_deterministic_iff_reversible(lookback):
    assert not is_deterministic(reversed_transitions(lookback))
    rev = reverse_transducer("abc")
    assert is_deterministic(reversed_transitions(rev))


def test_domain_of_register_translation_is_everything():
    dom = domain_automaton(mrt_to_planar(swap_mrt()))
    assert dom.kind == AUTOMATON
    assert all(accepts(dom, w) for w in enumerate_words("abc", 6))


def test_domain_of_empty_transducer_is_empty():
    m = make_machine("0:>", "0", {"0"}, {}, input_alphabet="ab", kind=TRANSDUCER)
    dom = domain_automaton(m)
    assert not any(accepts(dom, w) for w in enumerate_words("ab", 4))


def test_domain_of_reverse_is_everything():
    dom = domain_automaton(reverse_transducer("ab"))
    assert all(accepts(dom, w) for w in enumerate_words("ab", 10))


def test_evaluate_is_repeatable(lookback):
    assert run(lookback, "babca") == run(lookback, "babca")
    assert evaluate(reverse_transducer("ab"), "ab") == "ba"
