"""``planar2way`` command line.

Exit status: 0 when the checked property holds (or the command simply
succeeded), 1 when it fails, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import Optional

from .constructions import (
    MonotoneRegisterTransducer,
    SequentialTransducer,
    compose_transducers,
    copyless_monotone_violation,
    flipflop_to_planar,
    is_aperiodic_sequential,
    mrt_apply,
    mrt_to_planar,
    reverse_transducer,
    seq_run,
)
from .core import AUTOMATON, TwoWayMachine, is_deterministic, is_reversible, run
from .dot import emit_dot
from .errors import (
    AlphabetError,
    CapExceeded,
    NotAperiodic,
    NotCopylessMonotone,
    NotPlanar,
    NotReversible,
    ParseError,
    StateSpaceTooLarge,
    TwoWayError,
    ValidationError,
    WrongStateCount,
)
from .monoid import DEFAULT_CAP, machine_monoid
from .oracles import regex_evaluator, semantic_equiv
from .planarity import find_planar_order, machine_planarity_witness
from .textio import (
    FILE_LMARK,
    FILE_RMARK,
    MachineDocument,
    load_document,
    serialize_machine,
    state_label,
    stringify_states,
)

OK, FAIL, USAGE = 0, 1, 2

PROPERTY_ERRORS = (NotReversible, NotPlanar, NotAperiodic, NotCopylessMonotone, WrongStateCount,
                   CapExceeded, StateSpaceTooLarge)


class UsageError(Exception):
    pass


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _two_way(doc: MachineDocument) -> TwoWayMachine:
    """A two-way machine for ``doc``, translating sequential and register files."""
    if isinstance(doc.machine, SequentialTransducer):
        return flipflop_to_planar(doc.machine)
    if isinstance(doc.machine, MonotoneRegisterTransducer):
        return mrt_to_planar(doc.machine)
    return doc.machine


# -- subcommands ---------------------------------------------------------------

def cmd_check(args) -> int:
    doc = load_document(args.file)
    m = doc.machine
    if isinstance(m, SequentialTransducer):
        aperiodic = is_aperiodic_sequential(m)
        print(f"kind: seq\nstates: {len(m.states)}\naperiodic: {_yes(aperiodic)}")
        return OK if aperiodic else FAIL
    if isinstance(m, MonotoneRegisterTransducer):
        print(f"kind: mrt\nregisters: {' '.join(m.registers)}")
        status = OK
        for a in sorted(m.input_alphabet):
            bad = copyless_monotone_violation(m.updates[a], m.registers)
            if bad is not None:
                print(f"update {a}: {bad[1]} occurs after {bad[0]} (not copyless monotone)")
                status = FAIL
        print(f"copyless monotone: {_yes(status == OK)}")
        return status
    deterministic = is_deterministic(m)
    reversible = is_reversible(m)
    print(f"kind: {doc.kind}\nstates: {len(m.states)}")
    print(f"deterministic: {_yes(deterministic)}\nreversible: {_yes(reversible)}")
    found = machine_planarity_witness(m, args.letters)
    order = " < ".join(map(state_label, m.state_space.order))
    if found is None:
        print(f"planar: yes (order {order})")
        planar = True
    else:
        symbol, witness = found
        print(f"planar: no under {order}")
        print(f"witness on {_file_symbol(symbol)}: {witness.describe()}")
        planar = False
        if args.search_order:
            new = find_planar_order(m, args.letters, max_states=args.max_states)
            if new is None:
                print("no planar order exists")
            else:
                print(f"planar order found: {' < '.join(map(state_label, new))}")
                planar = True
    if doc.kind == "2rft-claim":
        holds = planar and reversible
        print(f"2rft claim: {'holds' if holds else 'fails'}")
        return OK if holds else FAIL
    return OK if planar else FAIL


def _file_symbol(x: str) -> str:
    return {"⊳": FILE_LMARK, "⊲": FILE_RMARK}.get(x, x)


def cmd_run(args) -> int:
    m = load_document(args.file).machine
    if isinstance(m, SequentialTransducer):
        print(seq_run(m, args.word))
        return OK
    if isinstance(m, MonotoneRegisterTransducer):
        print(mrt_apply(m, args.word))
        return OK
    result = run(m, args.word, trace=args.trace)
    if args.trace:
        for config, out in result.trace:
            left = config.left.replace("⊳", FILE_LMARK).replace("⊲", FILE_RMARK)
            right = config.right.replace("⊳", FILE_LMARK).replace("⊲", FILE_RMARK)
            suffix = f"  emits {out!r}" if out else ""
            print(f"({left}, {state_label(config.state)}, {right}){suffix}")
    print(f"status: {result.status}")
    if result.accepted and m.kind != AUTOMATON:
        print(f"output: {result.output}")
    return OK if result.accepted else FAIL


def cmd_monoid(args) -> int:
    m = _two_way(load_document(args.file))
    monoid = machine_monoid(m, cap=args.cap)
    report = monoid.aperiodicity_report
    print(f"size: {len(monoid)}")
    print(f"aperiodic: {_yes(report.aperiodic)}")
    if report.aperiodic:
        print(f"index: {report.index}")
    else:
        print(f"offending element: {sorted(report.offending.pairs(m.state_space), key=repr)}")
        print(f"period: {report.period}")
    return OK if report.aperiodic else FAIL


def cmd_compose(args) -> int:
    first = _two_way(load_document(args.first))
    second = _two_way(load_document(args.second))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = compose_transducers(first, second)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write(serialize_machine(stringify_states(result), "2rft-claim"), args.output)
    return OK


def cmd_translate(args) -> int:
    doc = load_document(args.file)
    if not isinstance(doc.machine, (SequentialTransducer, MonotoneRegisterTransducer)):
        raise UsageError("translate expects a 'seq' or 'mrt' file")
    result = stringify_states(_two_way(doc))
    _write(serialize_machine(result, "2rft-claim"), args.output)
    return OK


def cmd_gen_reverse(args) -> int:
    letters = args.alphabet.split()
    if any(len(x) != 1 for x in letters):
        raise UsageError("alphabet symbols must be single characters")
    _write(serialize_machine(reverse_transducer(letters), "2rft-claim"), args.output)
    return OK


def _evaluator(doc: MachineDocument):
    m = doc.machine
    if isinstance(m, SequentialTransducer):
        fn = lambda w: seq_run(m, w)  # noqa: E731
    elif isinstance(m, MonotoneRegisterTransducer):
        fn = lambda w: mrt_apply(m, w)  # noqa: E731
    elif m.kind == AUTOMATON:
        fn = lambda w: "" if run(m, w).accepted else None  # noqa: E731
    else:
        fn = lambda w: run(m, w).value  # noqa: E731

    def safe(word: str):
        try:
            return fn(word)
        except AlphabetError:
            return None

    return safe, m.input_alphabet


def cmd_equiv(args) -> int:
    left, sigma = _evaluator(load_document(args.left))
    if args.right.startswith("re:"):
        right = regex_evaluator(args.right[3:])
    else:
        right, other = _evaluator(load_document(args.right))
        sigma = sigma | other
    report = semantic_equiv(left, right, sigma, args.maxlen)
    print(report.describe())
    return OK if report.equal else FAIL


def cmd_diagram(args) -> int:
    m = _two_way(load_document(args.file))
    if args.letter is not None:
        symbol = {FILE_LMARK: "⊳", FILE_RMARK: "⊲"}.get(args.letter, args.letter)
        if symbol not in m.symbols:
            raise UsageError(f"unknown letter {args.letter!r}")
        text = emit_dot(m, symbol=symbol)
    else:
        text = emit_dot(m, word=args.run)
    _write(text, args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planar2way",
                                     description="Planar two-way automata and transducers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="determinism, reversibility and planarity")
    p.add_argument("file")
    p.add_argument("--search-order", action="store_true",
                   help="look for a planar order when the given one fails")
    p.add_argument("--letters", choices=("all", "input"), default="all")
    p.add_argument("--max-states", type=int, default=10)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("run", help="run a machine on a word")
    p.add_argument("file")
    p.add_argument("word")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("monoid", help="behaviour monoid size and aperiodicity")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_monoid)

    p = sub.add_parser("compose", help="machine for SECOND after FIRST")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("translate", help="planar two-way machine for a seq or mrt file")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("gen-reverse", help="the reversal transducer")
    p.add_argument("--alphabet", required=True, help='space separated, e.g. "a b c"')
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_reverse)

    p = sub.add_parser("equiv", help="compare on all short words (RIGHT may be re:PATTERN)")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--maxlen", type=int, default=8)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("diagram", help="DOT for a transition profile or a run")
    p.add_argument("file")
    view = p.add_mutually_exclusive_group(required=True)
    view.add_argument("--letter")
    view.add_argument("--run", metavar="WORD")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_diagram)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PROPERTY_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}")
        return FAIL
    except (ParseError, ValidationError, UsageError, AlphabetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except TwoWayError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
