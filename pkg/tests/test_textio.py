import warnings

import pytest

from planar2way.catalog import LOOKBACK_DOCUMENT, lookback_automaton, reset_sequential, swap_mrt
from planar2way.constructions import (
    compose_transducers,
    flipflop_to_planar,
    mrt_apply,
    mrt_to_planar,
    reverse_transducer,
    seq_run,
)
from planar2way.core import evaluate
from planar2way.errors import ParseError, ValidationError
from planar2way.oracles import enumerate_words
from planar2way.textio import (
    load_document,
    parse_document,
    parse_machine,
    serialize_machine,
    state_label,
    stringify_states,
)


def test_lookback_document_matches_catalog():
    parsed = parse_machine(LOOKBACK_DOCUMENT)
    expected = lookback_automaton()
    assert parsed.state_space == expected.state_space
    assert parsed._table == expected._table
    assert parsed.finals == expected.finals


@pytest.mark.parametrize("build,kind", [
    (lookback_automaton, "2dfa"),
    (lambda: reverse_transducer("abc"), "2rft-claim"),
    (lambda: flipflop_to_planar(reset_sequential()), "2dft"),
    (lambda: stringify_states(mrt_to_planar(swap_mrt())), "2dft"),
])
def test_two_way_round_trip(build, kind):
    m = build()
    text = serialize_machine(m, kind)
    again = parse_machine(text)
    assert serialize_machine(again, kind) == text
    for w in enumerate_words(sorted(m.input_alphabet), 4):
        assert evaluate(again, w) == evaluate(m, w)


def test_sequential_round_trip():
    seq = reset_sequential()
    doc = parse_document(serialize_machine(seq))
    assert doc.kind == "seq"
    assert all(seq_run(doc.machine, w) == seq_run(seq, w) for w in enumerate_words("abc", 4))


def test_mrt_round_trip():
    mrt = swap_mrt()
    text = serialize_machine(mrt)
    assert 'u b Y := X "e" Y' in text
    again = parse_machine(text)
    assert all(mrt_apply(again, w) == mrt_apply(mrt, w) for w in enumerate_words("abc", 4))


def test_sample_files_load():
    assert load_document("machines/lookback.2dfa").kind == "2dfa"
    assert load_document("machines/reset.seq").kind == "seq"
    assert load_document("machines/registers.mrt").kind == "mrt"


def test_missing_order_uses_declaration_order():
    m = parse_machine("machine 2dfa\ninput a\nstates 1:< 0:>\ninitial 0\n")
    assert m.state_space.order == ("1", "0")


def test_comments_and_quotes():
    m = parse_machine('machine 2dft  # header\ninput a\noutput x\nstates 0:>\ninitial 0\n'
                      'final 0\nt 0 a -> 0 : "x"  # copy\nt 0 ^ -> 0\nt 0 $ -> 0\n')
    assert evaluate(m, "aa") == "xx"


def test_tuple_labels():
    assert state_label(("1", "q")) == "(1,q)"
    assert state_label(("X", -1)) == "(X,-1)"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rr = compose_transducers(reverse_transducer("a"), reverse_transducer("a"))
    assert "(1,1)" in stringify_states(rr).states


@pytest.mark.parametrize("text,line,column", [
    ("machine 2xyz\n", 1, 9),
    ("machine 2dfa\ninput a\nstates 0\n", 3, 8),
    ("machine 2dfa\ninput a\nstates 0:>\ninitial 0\nt 0 a 0\n", 5, None),
    ("machine 2dft\ninput a\nstates 0:>\ninitial 0\nt 0 a -> 0 : x\n", 5, 14),
    ("machine 2dfa\nbogus 1\n", 2, 1),
    ("machine 2dfa\ninput ab\n", 2, 7),
])
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    assert info.value.line == line
    if column is not None:
        assert info.value.column == column


def test_empty_document():
    with pytest.raises(ParseError):
        parse_document("# nothing\n\n")


@pytest.mark.parametrize("text", [
    "machine 2dfa\ninput a\nstates 0:<\ninitial 0\n",          # backward initial state
    "machine 2dfa\ninput a ^\nstates 0:>\ninitial 0\n",        # marker in alphabet
    "machine 2dfa\ninput a\nstates 0:>\ninitial 9\n",          # unknown state
    "machine 2dfa\ninput a\nstates 0:>\ninitial 0\nt 0 b -> 0\n",
    "machine 2dfa\ninput a\nstates 0:>\n",                     # no initial line
])
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        parse_document(text)
