"""Brute-force references: enumerate short words and compare evaluators on all of them."""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .core import TwoWayMachine, evaluate

Evaluator = Callable[[str], Optional[str]]


def enumerate_words(alphabet: Iterable, max_length: int) -> Iterator[str]:
    """Every word up to ``max_length``, shorter first, then by sorted symbol order."""
    if max_length < 0:
        raise ValueError("max_length must be non-negative")
    symbols = sorted(set(alphabet))
    for n in range(max_length + 1):
        for letters in product(symbols, repeat=n):
            yield "".join(letters)


def count_words(alphabet: Iterable, max_length: int) -> int:
    k = len(set(alphabet))
    return sum(k**n for n in range(max_length + 1))


@dataclass(frozen=True)
class EquivalenceReport:
    equal: bool
    counterexample: Optional[tuple]
    words_checked: int
    max_length: int

    def __bool__(self):
        return self.equal

    def describe(self) -> str:
        if self.equal:
            return f"equal on {self.words_checked} words up to length {self.max_length}"
        word, left, right = self.counterexample
        return (f"differ on {word!r}: left gives {_show(left)}, right gives {_show(right)}"
                f" ({self.words_checked} words checked)")


def _show(value: Optional[str]) -> str:
    return "undefined" if value is None else repr(value)


def semantic_equiv(left: Evaluator, right: Evaluator, alphabet: Iterable,
                   max_length: int = 8) -> EquivalenceReport:
    """Compare two partial word functions on every word up to ``max_length``.

    Stops at the first difference, which is therefore the least one.
    """
    checked = 0
    for word in enumerate_words(alphabet, max_length):
        checked += 1
        a, b = left(word), right(word)
        if a != b:
            return EquivalenceReport(False, (word, a, b), checked, max_length)
    return EquivalenceReport(True, None, checked, max_length)


def machine_evaluator(machine: TwoWayMachine) -> Evaluator:
    return lambda word: evaluate(machine, word)


def acceptance_evaluator(machine: TwoWayMachine) -> Evaluator:
    """Accepted words map to ``""``, rejected ones to undefined."""
    return lambda word: "" if evaluate(machine, word) is not None else None


def regex_evaluator(pattern: str) -> Evaluator:
    compiled = re.compile(pattern)
    return lambda word: "" if compiled.fullmatch(word) else None


def language_of(machine: TwoWayMachine, max_length: int) -> frozenset:
    return frozenset(w for w in enumerate_words(machine.input_alphabet, max_length)
                     if evaluate(machine, w) is not None)
