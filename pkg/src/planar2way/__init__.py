"""Planar two-way automata and transducers.

Machines whose per-letter transitions can be drawn without crossings recognise
exactly the star-free languages, and as transducers they compute first-order
transductions.  The package simulates such machines, checks planarity, builds
behaviour monoids, and constructs planar reversible transducers from
sequential, register and reversal building blocks.
"""

from .behavior import Behavior
from .constructions import (
    CompositionOrderWarning,
    MonotoneRegisterTransducer,
    RegisterUpdate,
    SequentialTransducer,
    compose_chain,
    compose_transducers,
    flipflop_to_planar,
    identity_transducer,
    is_aperiodic_sequential,
    is_copyless_monotone,
    mrt_apply,
    mrt_to_planar,
    normalize_two_state,
    reverse_transducer,
    seq_run,
)
from .core import (
    LMARK,
    RMARK,
    Configuration,
    DirectedStateSet,
    RunResult,
    TwoWayMachine,
    accepts,
    evaluate,
    is_deterministic,
    is_reversible,
    make_machine,
    run,
    step,
)
from .dot import emit_dot
from .errors import *  # noqa: F401,F403
from .monoid import (
    BehaviorMonoid,
    aperiodicity,
    behavior_of_word,
    compose_behaviors,
    factor_turns,
    generate_monoid,
    machine_monoid,
    verify_tl_submonoid,
)
from .oracles import EquivalenceReport, enumerate_words, language_of, semantic_equiv
from .planarity import (
    extend_order,
    find_planar_order,
    is_planar_machine,
    is_planar_transition,
    planarity_witness,
    transition_profile,
)
from .textio import MachineDocument, parse_document, parse_machine, serialize_machine

__version__ = "0.1.0"
