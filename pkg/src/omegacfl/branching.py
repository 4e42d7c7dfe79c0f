"""The branch-guessing pushdown transform.

Given a Buchi pushdown machine over sigma and a separator letter, the
transform builds a machine over sigma+separator that reads a coded tree,
guesses a maximal branch, and simulates the base machine on the labels of
that branch.  A counter symbol pushed once per skipped letter and popped
once per two letters of the next level keeps the guess aligned with the
level-order coding.

Each state of the result is tagged with its provenance (base copy number or
reject sink) and each transition with the rule group that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cfg import filler_insertion
from .kleene import OmegaKleeneExpr, kc_substitute
from .pushdown import Bpda, Pdm, PdRule, bounded_runs
from .trees import RegularTree, h_prefix
from .words import Word

GROUPS = "abcdefghijklmnopqrs"


@dataclass(frozen=True)
class BranchGuessMachine:
    """The transformed machine plus provenance maps."""

    bpda: Bpda
    base: Bpda
    separator: str
    counter_symbol: str
    reject_state: str
    copies: dict          # (kind, base state) -> state token; kind 1..5
    state_kind: dict      # state token -> "base" | "copy1".."copy5" | "reject"
    rule_group: dict      # rule tuple -> group letter


def _copy_namer(base_states: frozenset[str]):
    suffix = "^"
    while True:
        names = {(i, q): f"{q}{suffix}{i}" for q in base_states
                 for i in range(1, 6)}
        if set(names.values()) & base_states:
            suffix += "^"
            continue
        return names


def _fresh_token(wanted: str, taken) -> str:
    while wanted in taken:
        wanted += "'"
    return wanted


def branch_guess_machine(m: Bpda, separator: str = "A",
                         counter_symbol: str | None = None) -> BranchGuessMachine:
    """Install the nineteen rule groups (a)-(s) over the base machine.

    All groups are unioned into one nondeterministic transition relation.
    Final states are the base finals plus their silent-move copies.
    """
    base = m.machine
    sigma = base.input_alphabet
    if separator in sigma:
        raise ValueError(f"separator {separator!r} already an input letter")
    if counter_symbol is None:
        counter_symbol = _fresh_token("E", set(base.stack_alphabet))
    elif counter_symbol in base.stack_alphabet:
        raise ValueError(f"counter symbol {counter_symbol!r} already a stack symbol")
    e = counter_symbol
    copies = _copy_namer(base.states)
    taken = set(base.states) | set(copies.values())
    reject = _fresh_token("qr", taken)

    gamma = tuple(base.stack_alphabet)
    gamma_e = gamma + (e,)
    q0, z0 = base.initial, base.start_stack
    input_rules = [(q, a, z, p, push) for (q, a, z, p, push) in base.rules
                   if a is not None]
    silent_rules = [(q, a, z, p, push) for (q, a, z, p, push) in base.rules
                    if a is None]

    rules: dict[PdRule, str] = {}

    def add(rule: PdRule, group: str):
        if rule in rules and rules[rule] != group:
            raise AssertionError(f"rule {rule} tagged {rules[rule]} and {group}")
        rules[rule] = group

    def c1(q):
        return copies[(1, q)]

    def c2(q):
        return copies[(2, q)]

    def c3(q):
        return copies[(3, q)]

    def c4(q):
        return copies[(4, q)]

    def c5(q):
        return copies[(5, q)]

    # (a) initial simulation moves, straight from the base machine
    for (q, a, z, p, push) in input_rules:
        if q == q0 and z == z0:
            add((q0, a, z0, p, push), "a")
    # (b) a word may not open with the separator
    add((q0, separator, z0, reject, (z0,)), "b")
    # (c)/(d) skip the rest of the level, one counter push per letter
    for q in sorted(base.states):
        for a in sigma:
            for z in gamma_e:
                add((q, a, z, c1(q), (e, z)), "c")
            add((c1(q), a, e, c1(q), (e, e)), "d")
    # (e)/(f) cross the separator into the popping phase
    for q in sorted(base.states):
        for z in gamma_e:
            add((c1(q), separator, z, c2(q), (z,)), "e")
            add((q, separator, z, c2(q), (z,)), "f")
    # (g)/(h) pop one counter per two letters of the next level
    for q in sorted(base.states):
        for a in sigma:
            add((c2(q), a, e, c3(q), (e,)), "g")
            add((c3(q), a, e, c2(q), ()), "h")
        # (i)/(j) a separator inside the popping phase breaks the code shape
        add((c2(q), separator, e, reject, (e,)), "i")
        add((c3(q), separator, e, reject, (e,)), "j")
    # (k) the reject sink consumes everything
    for a in tuple(sigma) + (separator,):
        for z in gamma_e:
            add((reject, a, z, reject, (z,)), "k")
    # (l) simulate the chosen child's label
    for (q, a, z, p, push) in input_rules:
        add((c2(q), a, z, p, push), "l")
    # (m)/(n) silent base moves, tracked in the fifth copy
    for (q, a, z, p, push) in silent_rules:
        add((c2(q), None, z, c5(p), push), "m")
        add((c5(q), None, z, c5(p), push), "n")
    # (o) consume the child label after silent moves
    for (q, a, z, p, push) in input_rules:
        add((c5(q), a, z, p, push), "o")
    # (p)/(q) wait one letter for the other child
    for q in sorted(base.states):
        for a in sigma:
            for z in gamma:
                add((c5(q), a, z, c4(q), (z,)), "p")
                add((c2(q), a, z, c4(q), (z,)), "q")
    # (r) simulate from the waiting state
    for (q, a, z, p, push) in input_rules:
        add((c4(q), a, z, p, push), "r")
    # (s) waiting past the level end breaks the code shape
    for q in sorted(base.states):
        for z in gamma:
            add((c4(q), separator, z, reject, (z,)), "s")

    states = (set(base.states) | set(copies.values()) | {reject})
    final = frozenset(m.final) | frozenset(c5(q) for q in m.final)
    machine = Pdm(frozenset(states), sigma.with_letter(separator), gamma_e,
                  q0, z0, frozenset(rules))
    state_kind = {q: "base" for q in base.states}
    for (i, q), name in copies.items():
        state_kind[name] = f"copy{i}"
    state_kind[reject] = "reject"
    return BranchGuessMachine(Bpda(machine, final), m, separator, e, reject,
                              dict(copies), state_kind, dict(rules))


def filler_image_expr(e: OmegaKleeneExpr, separator: str = "A") -> OmegaKleeneExpr:
    """The grammar-level description of the transform's target language:
    insert one doubling-gap filler word after every letter."""
    return kc_substitute(e, filler_insertion(e.alphabet, separator))


# ----------------------------------------------------------- evidence runs

def branch_evidence(bm: BranchGuessMachine, t: RegularTree, levels: int,
                    lambda_budget: int) -> int:
    """Maximum number of final-state visits over all runs of the transformed
    machine consuming the coded tree through `levels`.

    For silent-move-free finite-state bases on depth-homogeneous trees the
    score is computed by an exact per-level recurrence instead of the
    configuration enumeration, which keeps deep prefixes tractable."""
    prefix = h_prefix(t, levels, bm.separator)
    machine_alpha = bm.bpda.machine.input_alphabet
    for s in prefix.symbols:
        if s not in machine_alpha:
            raise ValueError(f"tree label {s!r} outside the machine alphabet")
    depth_labels = _depth_labels(t, levels)
    if depth_labels is not None and _fa_encoded(bm.base):
        return _fa_evidence(bm, depth_labels)
    x = Word(machine_alpha, prefix.symbols)
    reached = bounded_runs(bm.bpda.machine, x, lambda_budget, bm.bpda.final)
    return max(reached.values(), default=0)


def _depth_labels(t: RegularTree, levels: int) -> list[str] | None:
    """Per-depth labels when the tree is depth-homogeneous, else None."""
    states = {t.initial}
    out = []
    for _ in range(levels + 1):
        labels = {t.output[s] for s in states}
        if len(labels) != 1:
            return None
        out.append(labels.pop())
        states = {t.left[s] for s in states} | {t.right[s] for s in states}
    return out


def _fa_encoded(base: Bpda) -> bool:
    """A finite automaton written as a pushdown machine: the stack holds the
    untouched start symbol and every move reads a letter."""
    m = base.machine
    if m.stack_alphabet != (m.start_stack,):
        return False
    return all(a is not None and push == (m.start_stack,)
               for (_, a, _, _, push) in m.rules)


def _fa_evidence(bm: BranchGuessMachine, depth_labels: list[str]) -> int:
    """Exact evidence score for finite-automaton bases on depth-homogeneous
    trees, by transforming (state, counter height, score) sets level by
    level.  Mirrors the rule groups exactly; cross-checked against the
    configuration enumeration in the test suite."""
    base = bm.base
    q0 = base.machine.initial
    final = base.final
    delta: dict[str, dict[str, list[str]]] = {q: {} for q in base.machine.states}
    for (q, a, _, p, _) in base.machine.rules:
        delta[q].setdefault(a, []).append(p)

    best_reject = None  # runs absorbed by the reject sink keep their score

    def note_reject(c: int):
        nonlocal best_reject
        if best_reject is None or best_reject < c:
            best_reject = c

    def closure(seed: dict[tuple[str, int], int], x: str) -> dict:
        """From base state q with r letters of the level left: either push a
        counter per remaining letter and exit at the separator, or (from the
        initial state only) simulate the next letter again.  One shared
        max-count table serves all seeds of the level."""
        out: dict[tuple[str, int], int] = {}
        work = list(seed.items())
        while work:
            (q, r), c = work.pop()
            if out.get((q, r), -1) >= c:
                continue
            out[(q, r)] = c
            if r == 0 and q == q0:
                note_reject(c)  # group (b) on the separator
            if r >= 1 and q == q0:
                for p in delta[q0].get(x, []):
                    work.append(((p, r - 1), c + (1 if p in final else 0)))
        return out

    # level 0: one letter, machine still in the base initial state
    entries = closure({(q0, 1): 1 if q0 in final else 0}, depth_labels[0])

    for n in range(1, len(depth_labels)):
        x = depth_labels[n]
        m = 2 ** n
        seed: dict[tuple[str, int], int] = {}

        def plant(p, r, c):
            if seed.get((p, r), -1) < c:
                seed[(p, r)] = c

        for (q, h), c in entries.items():
            if 2 * h > m:
                note_reject(c)  # groups (i)/(j): separator hits mid-pop
                continue
            if 2 * h == m:
                continue  # popping eats the level; no move on the separator
            rem = m - 2 * h
            for p in delta[q].get(x, []):
                c2 = c + (1 if p in final else 0)
                plant(p, rem - 1, c2)  # group (l): simulate now
                if rem >= 2:
                    plant(p, rem - 2, c2)  # groups (q)+(r): wait one letter
            if rem == 1:
                note_reject(c)  # group (q) then (s): waited past the level
        entries = closure(seed, x)

    candidates = list(entries.values())
    if best_reject is not None:
        candidates.append(best_reject)
    return max(candidates, default=0)
