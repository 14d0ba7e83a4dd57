"""Small named machines and relations used by the tests, the CLI demos and the README."""

from __future__ import annotations

from .constructions import MonotoneRegisterTransducer, SequentialTransducer
from .core import DirectedStateSet, TwoWayMachine, TRANSDUCER, make_machine

LOOKBACK_LANGUAGE = r"[ab]*b[ab]c[abc]*"


def lookback_automaton() -> TwoWayMachine:
    """Accepts ``{a,b}* b {a,b} c {a,b,c}*``: find the first c, look two cells back for b."""
    return make_machine(
        "0:> 1:< 2:< 3:>", "0", {"3"},
        {
            "a": [("0", "0"), ("1", "2"), ("3", "3")],
            "b": [("0", "0"), ("1", "2"), ("2", "3"), ("3", "3")],
            "c": [("0", "1"), ("1", "2"), ("3", "3")],
            "⊳": [("0", "0"), ("3", "3")],
            "⊲": [("3", "3")],
        },
        input_alphabet="abc",
    )


def swap_automaton() -> TwoWayMachine:
    """Parity of a's.  ``a`` swaps two forward states, so no order makes it planar."""
    return make_machine(
        "0:> 1:>", "0", {"1"},
        {
            "a": [("0", "1"), ("1", "0")],
            "b": [("0", "0"), ("1", "1")],
            "⊳": [("0", "0")],
            "⊲": [("0", "0"), ("1", "1")],
        },
        input_alphabet="ab",
    )


def reset_sequential() -> SequentialTransducer:
    """Two states; ``a`` resets to 1, ``b`` resets to 2, ``c`` keeps the state."""
    return SequentialTransducer(
        "abc", "abc", ("1", "2"), "1",
        {
            "a": {"1": ("1", "a"), "2": ("1", "c")},
            "b": {"1": ("2", "c"), "2": ("2", "bb")},
            "c": {"1": ("1", "a"), "2": ("2", "bb")},
        },
        {"1": "ab", "2": "bbb"},
    )


def swap_mrt() -> MonotoneRegisterTransducer:
    """Two registers; ``b`` and ``c`` each pass one register's content into the other."""
    return MonotoneRegisterTransducer(
        "abc", "abcde", ("X", "Y"),
        {
            "a": {"X": "aXb", "Y": "bYa"},
            "b": {"X": "d", "Y": "XeY"},
            "c": {"X": "Yc", "Y": ""},
        },
    )


def three_transitions_pair() -> tuple:
    """A one-letter first machine whose output ``b`` makes the second turn both ways."""
    first = TwoWayMachine(
        TRANSDUCER, {"x"}, {"a", "b"}, DirectedStateSet.parse("1:> 2:< 3:<"), "1", {"1"},
        {"x": {("1", "a", "1"), ("2", "b", "3")}},
    )
    second = TwoWayMachine(
        TRANSDUCER, {"a", "b"}, {"x", "y", "z", "w"}, DirectedStateSet.parse("q:> r:<"),
        "q", {"q"},
        {"a": {("q", "x", "q"), ("r", "y", "r")}, "b": {("q", "z", "r"), ("r", "w", "q")}},
    )
    return first, second


THREE_TRANSITIONS_EXPECTED = frozenset({
    (("1", "q"), "x", ("1", "q")),
    (("1", "r"), "y", ("1", "r")),
    (("2", "q"), "z", ("2", "r")),
    (("3", "r"), "w", ("3", "q")),
})


# (state space, relation) fixtures for planarity and behaviour composition.
THREE_STATE_SPACE = DirectedStateSet.parse("q1:> q2:< q3:<")
PLANAR_RELATION = frozenset({("q1", "q2"), ("q2", "q3")})
CROSSING_RELATION = frozenset({("q1", "q3"), ("q3", "q2")})

GLUE_F = frozenset({("q1", "q1"), ("q2", "q3")})
GLUE_G = frozenset({("q1", "q2"), ("q2", "q1"), ("q3", "q3")})
GLUE_PRODUCT = frozenset({("q1", "q3"), ("q2", "q1")})

TWO_FORWARD_SPACE = DirectedStateSet.parse("q1:> q2:>")
MERGE_F = frozenset({("q1", "q1"), ("q2", "q1")})
SPLIT_G = frozenset({("q1", "q1"), ("q1", "q2")})
# MERGE_F and SPLIT_G are planar but glue into the full relation, which is not.


LOOKBACK_DOCUMENT = """\
machine 2dfa
input a b c
states 0:> 1:< 2:< 3:>
order 0 1 2 3
initial 0
final 3
t 0 a -> 0
t 0 b -> 0
t 0 c -> 1
t 0 ^ -> 0
t 1 a -> 2
t 1 b -> 2
t 1 c -> 2
t 2 b -> 3
t 3 a -> 3
t 3 b -> 3
t 3 c -> 3
t 3 ^ -> 3
t 3 $ -> 3
"""
