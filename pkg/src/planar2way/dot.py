"""Graphviz text for transition profiles and runs.  Layout is left to ``dot``."""

from __future__ import annotations

from .core import LMARK, RMARK, TwoWayMachine, run
from .errors import NondeterministicMachine
from .planarity import LEFT, RIGHT, transition_profile
from .textio import state_label

RUN_COLOR = "red"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _arrow(sign: int) -> str:
    return "→" if sign == 1 else "←"


def _ranked_states(machine: TwoWayMachine) -> list:
    space = machine.state_space
    if space.order is None:
        return list(space.states)
    return list(space.order)


def profile_dot(machine: TwoWayMachine, symbol) -> str:
    """One cell: left-boundary copies of the states, right-boundary copies, and the edges."""
    space = machine.state_space
    outputs = {(s, d): o for s, o, d in machine.transitions(symbol)}
    profile = transition_profile(space, machine.projected(symbol))
    lines = [f"digraph {_quote('profile ' + symbol)} {{", "  rankdir=LR;",
             "  node [shape=plaintext];"]
    states = _ranked_states(machine)
    for side, name in ((LEFT, "left"), (RIGHT, "right")):
        lines.append(f"  subgraph cluster_{name} {{")
        lines.append(f"    label={_quote(name)}; style=invis;")
        for q in states:
            node = _quote(f"{state_label(q)}@{side:+d}")
            label = _quote(f"{state_label(q)}{_arrow(space.rho(q))}")
            lines.append(f"    {node} [label={label}];")
        lines.append("  }")
    for src, dst in profile.edges:
        s, d = src[0], dst[0]
        out = outputs.get((s, d), "")
        attrs = f" [label={_quote(out)}]" if out else ""
        lines.append(f"  {_quote(f'{state_label(s)}@{src[1]:+d}')} -> "
                     f"{_quote(f'{state_label(d)}@{dst[1]:+d}')}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def run_dot(machine: TwoWayMachine, word: str) -> str:
    """Boundary columns ``0 .. |⊳w⊲|``, every state in every column, the run in red."""
    if not machine.deterministic:
        raise NondeterministicMachine("the run view needs a deterministic machine")
    result = run(machine, word, trace=True)
    tape = LMARK + word + RMARK
    space = machine.state_space
    states = _ranked_states(machine)
    lines = [f"digraph {_quote('run ' + word)} {{", "  rankdir=LR;",
             "  node [shape=plaintext];",
             f"  label={_quote(f'{result.status}: {result.output!r}')};"]
    for pos in range(len(tape) + 1):
        lines.append(f"  subgraph cluster_{pos} {{")
        caption = tape[pos] if pos < len(tape) else ""
        lines.append(f"    label={_quote(str(pos) + ' ' + caption)}; style=invis;")
        for q in states:
            node = _quote(f"{pos}:{state_label(q)}")
            lines.append(f"    {node} [label={_quote(state_label(q) + _arrow(space.rho(q)))}];")
        lines.append("  }")
    trace = result.trace
    edges = []
    for (config, out), (nxt, _) in zip(trace, trace[1:]):
        edges.append((config.position, state_label(config.state), nxt.position,
                      state_label(nxt.state), out))
    for k, (p, s, p2, d, out) in enumerate(edges):
        label = f"{k + 1}" + (f": {out}" if out else "")
        lines.append(f"  {_quote(f'{p}:{s}')} -> {_quote(f'{p2}:{d}')} "
                     f"[color={RUN_COLOR}, penwidth=2, label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot(machine: TwoWayMachine, *, symbol=None, word=None) -> str:
    """Profile view when ``symbol`` is given, run view when ``word`` is given."""
    if (symbol is None) == (word is None):
        raise ValueError("give exactly one of symbol= or word=")
    if symbol is not None:
        return profile_dot(machine, symbol)
    return run_dot(machine, word)
