"""Pushdown machines with Buchi / Muller acceptance on omega-words.

Exact lasso acceptance works by taking the product of the machine with the
lasso's position graph, which yields an input-free Buchi pushdown system,
and deciding emptiness of that system by repeating-head saturation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from .buchi import _sccs
from .words import Alphabet, Lasso, Word

PUSH_CAP = 4

# (state, letter-or-None, top, successor, pushed word); None reads nothing
PdRule = tuple[str, "str | None", str, str, tuple[str, ...]]


@dataclass(frozen=True)
class Pdm:
    """A pushdown machine; the leftmost stack symbol is the top."""

    states: frozenset[str]
    input_alphabet: Alphabet
    stack_alphabet: tuple[str, ...]
    initial: str
    start_stack: str
    rules: frozenset[PdRule]

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state undeclared")
        if self.start_stack not in self.stack_alphabet:
            raise ValueError("start stack symbol undeclared")
        if len(set(self.stack_alphabet)) != len(self.stack_alphabet):
            raise ValueError("duplicate stack symbols")
        for q, a, z, p, push in self.rules:
            if q not in self.states or p not in self.states:
                raise ValueError(f"rule {q, a, z, p, push} uses undeclared state")
            if a is not None and a not in self.input_alphabet:
                raise ValueError(f"rule letter {a!r} undeclared")
            if z not in self.stack_alphabet:
                raise ValueError(f"rule stack symbol {z!r} undeclared")
            if any(s not in self.stack_alphabet for s in push):
                raise ValueError(f"pushed word {push} uses undeclared symbol")
            if len(push) > PUSH_CAP:
                raise ValueError(
                    f"pushed word longer than {PUSH_CAP}; factor it through "
                    "fresh states at construction time")

    def moves(self, q: str, a: "str | None", z: str) -> list[tuple[str, tuple[str, ...]]]:
        return [(p, push) for (q2, a2, z2, p, push) in self.rules
                if q2 == q and a2 == a and z2 == z]


@dataclass(frozen=True)
class Configuration:
    """A machine state plus stack content (top first)."""

    state: str
    stack: tuple[str, ...]

    @property
    def top(self) -> "str | None":
        return self.stack[0] if self.stack else None


def initial_configuration(m: Pdm) -> Configuration:
    return Configuration(m.initial, (m.start_stack,))


def step(m: Pdm, c: Configuration, a: "str | None") -> frozenset[Configuration]:
    """One move reading a (None for a silent move); empty stack allows none."""
    if not c.stack:
        return frozenset()
    out = set()
    for p, push in m.moves(c.state, a, c.stack[0]):
        out.add(Configuration(p, push + c.stack[1:]))
    return frozenset(out)


def bounded_runs(m: Pdm, x: Word, lambda_budget: int,
                 marked: frozenset[str]) -> dict[Configuration, int]:
    """All configurations reachable by consuming exactly x, with the maximum
    number of visits to `marked` states along some run reaching them.

    At most `lambda_budget` consecutive silent moves are explored between
    input letters, so the result under-approximates machines whose runs need
    longer silent stretches.
    """
    if lambda_budget < 0:
        raise ValueError("lambda budget must be >= 0")
    init = initial_configuration(m)
    arrived: dict[Configuration, int] = {init: 1 if m.initial in marked else 0}
    pos = 0
    while True:
        merged = dict(arrived)
        level = arrived
        for _ in range(lambda_budget):
            nxt: dict[Configuration, int] = {}
            for c, cnt in level.items():
                for c2 in step(m, c, None):
                    val = cnt + (1 if c2.state in marked else 0)
                    if nxt.get(c2, -1) < val:
                        nxt[c2] = val
            level = {c: v for c, v in nxt.items() if merged.get(c, -1) < v}
            for c, v in level.items():
                merged[c] = v
            if not level:
                break
        if pos == len(x):
            return merged
        a = x.symbols[pos]
        arrived = {}
        for c, cnt in merged.items():
            for c2 in step(m, c, a):
                val = cnt + (1 if c2.state in marked else 0)
                if arrived.get(c2, -1) < val:
                    arrived[c2] = val
        pos += 1


@dataclass(frozen=True)
class Bpda:
    """Pushdown machine with Buchi final states."""

    machine: Pdm
    final: frozenset[str]

    def __post_init__(self):
        if not self.final <= self.machine.states:
            raise ValueError("final states must be machine states")

    def bounded_runs(self, x: Word, lambda_budget: int) -> dict[Configuration, int]:
        return bounded_runs(self.machine, x, lambda_budget, self.final)

    def accepts_lasso(self, w: Lasso) -> bool:
        """Exact: is u.v^omega in the machine's omega-language?"""
        return not buchi_pds_empty(product_with_lasso(self, w))


@dataclass(frozen=True)
class Mpda:
    """Pushdown machine with a Muller table.  Only bounded simulation is
    offered for the Muller condition; exact lasso acceptance is not."""

    machine: Pdm
    table: frozenset[frozenset[str]]

    def __post_init__(self):
        for entry in self.table:
            if not entry <= self.machine.states:
                raise ValueError("table entry must be a set of machine states")

    def bounded_runs(self, x: Word, lambda_budget: int) -> dict[Configuration, int]:
        marked = frozenset().union(*self.table) if self.table else frozenset()
        return bounded_runs(self.machine, x, lambda_budget, marked)


# --------------------------------------------------- Buchi pushdown systems

PdsRule = tuple[Hashable, str, Hashable, tuple[str, ...]]


@dataclass(frozen=True)
class BuchiPds:
    """An input-free pushdown system with a set of repeating control states."""

    states: frozenset
    stack_alphabet: tuple[str, ...]
    initial: Hashable
    start_stack: str
    rules: frozenset[PdsRule]
    repeating: frozenset

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state undeclared")
        for p, z, q, push in self.rules:
            if p not in self.states or q not in self.states:
                raise ValueError("rule uses undeclared state")
            if z not in self.stack_alphabet or any(
                    s not in self.stack_alphabet for s in push):
                raise ValueError("rule uses undeclared stack symbol")
            if len(push) > PUSH_CAP:
                raise ValueError(f"pushed word longer than {PUSH_CAP}")
        if not self.repeating <= self.states:
            raise ValueError("repeating states must be states")


def _phase_step(ph: int, target_final: bool, is_input: bool) -> int:
    # phase 0/2: waiting for a final-state visit; phase 1: waiting for an
    # input move; phase 2 marks a completed 0 -> 1 -> 0 round trip.
    if ph in (0, 2):
        return 1 if target_final else 0
    return 2 if is_input else 1


def product_with_lasso(m: Bpda, w: Lasso) -> BuchiPds:
    """Product of the machine with the lasso's position graph.

    Control states are (machine state, lasso position, phase).  The phase
    bits track "a final state was visited, then an input letter was read",
    so a run of the product hits the repeating set infinitely often exactly
    when it both consumes the whole omega-word (rather than diverging on
    silent moves) and visits final states infinitely often.
    """
    if w.alphabet.letters != m.machine.input_alphabet.letters:
        raise ValueError("lasso alphabet differs from machine input alphabet")
    su, sv = len(w.spoke), len(w.cycle)
    length = su + sv

    def nxt(i: int) -> int:
        return i + 1 if i + 1 < length else su

    rules: set[PdsRule] = set()
    states = set()
    for q, a, z, p, push in m.machine.rules:
        for i in range(length):
            for ph in (0, 1, 2):
                if a is None:
                    tgt = (p, i, _phase_step(ph, p in m.final, False))
                elif a == w.symbol_at(i):
                    tgt = (p, nxt(i), _phase_step(ph, p in m.final, True))
                else:
                    continue
                src = (q, i, ph)
                rules.add((src, z, tgt, push))
                states.add(src)
                states.add(tgt)
    init = (m.machine.initial, 0, 0)
    states.add(init)
    repeating = frozenset(s for s in states if s[2] == 2)
    return BuchiPds(frozenset(states), m.machine.stack_alphabet, init,
                    m.machine.start_stack, frozenset(rules), repeating)


def buchi_pds_empty(pds: BuchiPds) -> bool:
    """True iff no run of the system visits repeating states infinitely often.

    Exact and terminating: computes, over heads (state, top symbol) reachable
    from the initial configuration, the pop relation with a "visited a
    repeating state" flag, builds the head reachability graph from it, and
    looks for a head cycle carrying a repeating visit.
    """
    rules_by_head: dict[tuple, list[tuple]] = {}
    for p, z, q, push in pds.rules:
        rules_by_head.setdefault((p, z), []).append((q, push))
    rep = pds.repeating

    init_head = (pds.initial, pds.start_stack)
    heads: set[tuple] = {init_head}
    # pops[(p, Z)][q] = best flag over runs (p, Z-only stack) => (q, empty)
    pops: dict[tuple, dict] = {}
    # edges[h][h'] = best flag over hidden pop excursions between the heads
    edges: dict[tuple, dict[tuple, int]] = {}

    def upd_pop(head, q, flag) -> bool:
        d = pops.setdefault(head, {})
        if d.get(q, -1) < flag:
            d[q] = flag
            return True
        return False

    def upd_edge(h, h2, flag) -> bool:
        d = edges.setdefault(h, {})
        if d.get(h2, -1) < flag:
            d[h2] = flag
            return True
        return False

    changed = True
    while changed:
        changed = False
        for head in list(heads):
            p, z = head
            for q, push in rules_by_head.get((p, z), []):
                if not push:
                    if upd_pop(head, q, 1 if (p in rep or q in rep) else 0):
                        changed = True
                    continue
                # walk the pushed word left to right, popping a prefix of it
                frontier = {q: 0}
                for j, sym in enumerate(push):
                    for s, b in frontier.items():
                        h2 = (s, sym)
                        if h2 not in heads:
                            heads.add(h2)
                            changed = True
                        if upd_edge(head, h2, b):
                            changed = True
                    nxt_frontier: dict = {}
                    for s, b in frontier.items():
                        for t, b2 in pops.get((s, sym), {}).items():
                            val = b | b2
                            if nxt_frontier.get(t, -1) < val:
                                nxt_frontier[t] = val
                    frontier = nxt_frontier
                    if not frontier:
                        break
                else:
                    base = 1 if p in rep else 0
                    for t, b in frontier.items():
                        if upd_pop(head, t, base | b):
                            changed = True

    return not _good_cycle(heads, edges, rep)


def _good_cycle(heads, edges, rep) -> bool:
    graph = {h: list(edges.get(h, {})) for h in heads}
    for comp in _sccs(graph):
        internal = [(h, h2, f) for h in comp
                    for h2, f in edges.get(h, {}).items() if h2 in comp]
        if not internal:
            continue
        if any(f == 1 for _, _, f in internal):
            return True
        if any(h[0] in rep for h in comp):
            return True
    return False
