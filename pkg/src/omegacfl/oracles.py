"""Brute-force reference implementations and seeded generators.

Everything here re-derives results from first principles (exhaustive
enumeration, explicit-state search, direct arithmetic predicates) so the
production algorithms can be cross-checked against an independent path.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable

from .buchi import BuchiAutomaton, Fsm, MullerAutomaton
from .cfg import Cfg, min_lengths
from .pushdown import Bpda, BuchiPds, Pdm
from .trees import RegularTree
from .words import Alphabet, Lasso, lasso


# ------------------------------------------------------------- enumeration

def all_words(alpha: Alphabet, max_len: int) -> Iterable[tuple[str, ...]]:
    for n in range(max_len + 1):
        yield from itertools.product(alpha.letters, repeat=n)


def _own_lambda_free_productions(g: Cfg) -> set[tuple[str, tuple[str, ...]]]:
    """Lambda-production-free rules for L(g) minus the empty word."""
    nullable = _own_nullable(g)
    prods: set[tuple[str, tuple[str, ...]]] = set()
    for h, b in g.productions:
        opt = [i for i, s in enumerate(b) if s in nullable]
        if len(opt) > 14:
            raise RuntimeError("right-hand side too nullable to enumerate")
        for k in range(len(opt) + 1):
            for drop in itertools.combinations(opt, k):
                kept = tuple(s for i, s in enumerate(b) if i not in drop)
                if kept:
                    prods.add((h, kept))
    return prods


def derivable_words(g: Cfg, max_len: int, cap: int = 500_000) -> set[tuple[str, ...]]:
    """All terminal words of length <= max_len, by exhaustive leftmost
    derivation with shortest-yield pruning.

    Works on a lambda-free restatement of the grammar so every sentential
    form of k symbols yields a word of length >= k; the search space is
    therefore finite and the enumeration exhaustive.  Raises if it exceeds
    `cap` sentential forms anyway."""
    out: set[tuple[str, ...]] = set()
    if g.start in _own_nullable(g):
        out.add(())
    prods = _own_lambda_free_productions(g)
    g2 = Cfg(g.terminals, g.nonterminals, g.start, frozenset(prods))
    shortest = min_lengths(g2)

    def lower_bound(form: tuple[str, ...]) -> int:
        total = 0
        for s in form:
            if s in g.terminals:
                total += 1
            elif s in shortest:
                total += shortest[s]
            else:
                return max_len + 1
        return total

    by_head: dict[str, list[tuple[str, ...]]] = {}
    for h, b in prods:
        by_head.setdefault(h, []).append(b)

    seen: set[tuple[str, ...]] = set()
    frontier: list[tuple[str, ...]] = [(g.start,)]
    seen.add((g.start,))
    while frontier:
        form = frontier.pop()
        idx = next((i for i, s in enumerate(form) if s not in g.terminals), None)
        if idx is None:
            if len(form) <= max_len:
                out.add(form)
            continue
        for body in by_head.get(form[idx], []):
            nxt = form[:idx] + body + form[idx + 1:]
            if lower_bound(nxt) > max_len or nxt in seen:
                continue
            seen.add(nxt)
            if len(seen) > cap:
                raise RuntimeError("derivation enumeration exceeded its cap")
            frontier.append(nxt)
    return out


# ---------------------------------------------- CNF + CYK membership oracle

def _own_nullable(g: Cfg) -> set[str]:
    nullable: set[str] = set()
    grown = True
    while grown:
        grown = False
        for h, b in g.productions:
            if h not in nullable and all(s in nullable for s in b):
                nullable.add(h)
                grown = True
    return nullable


def _cnf(g: Cfg):
    """Chomsky-style rules for L(g) minus lambda: (A, a) terminal rules and
    (A, B, C) binary rules."""
    prods = _own_lambda_free_productions(g)
    # unit closure
    units: dict[str, set[str]] = {n: {n} for n in g.nonterminals}
    grown = True
    while grown:
        grown = False
        for a in g.nonterminals:
            for b2 in list(units[a]):
                for h, body in prods:
                    if h == b2 and len(body) == 1 and body[0] in g.nonterminals:
                        if body[0] not in units[a]:
                            units[a].add(body[0])
                            grown = True
    flat: set[tuple[str, tuple[str, ...]]] = set()
    for a in g.nonterminals:
        for b2 in units[a]:
            for h, body in prods:
                if h == b2 and not (len(body) == 1 and body[0] in g.nonterminals):
                    flat.add((a, body))
    # TERM + BIN
    counter = itertools.count()
    wrap: dict[str, str] = {}
    term_rules: set[tuple[str, str]] = set()
    bin_rules: set[tuple[str, str, str]] = set()

    def wrapped(sym: str) -> str:
        if sym not in wrap:
            wrap[sym] = f"_T{next(counter)}"
            term_rules.add((wrap[sym], sym))
        return wrap[sym]

    for h, body in flat:
        if len(body) == 1:
            term_rules.add((h, body[0]))
            continue
        syms = [s if s in g.nonterminals else wrapped(s) for s in body]
        head = h
        while len(syms) > 2:
            mid = f"_B{next(counter)}"
            bin_rules.add((head, syms[0], mid))
            head = mid
            syms = syms[1:]
        bin_rules.add((head, syms[0], syms[1]))
    return term_rules, bin_rules


def cnf_cyk_member(g: Cfg, syms: tuple[str, ...]) -> bool:
    """Independent membership check (CNF conversion plus CYK table)."""
    if not syms:
        return g.start in _own_nullable(g)
    term_rules, bin_rules = _cnf(g)
    n = len(syms)
    table: list[list[set[str]]] = [[set() for _ in range(n + 1)] for _ in range(n)]
    for i, a in enumerate(syms):
        for h, t in term_rules:
            if t == a:
                table[i][i + 1].add(h)
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span
            cell = table[i][j]
            for mid in range(i + 1, j):
                left, right = table[i][mid], table[mid][j]
                for h, b, c in bin_rules:
                    if b in left and c in right:
                        cell.add(h)
    return g.start in table[0][n]


# ------------------------------------------------- gap-structure predicates

def doubling_filler_predicate(syms: tuple[str, ...], sigma: Alphabet,
                              sep: str) -> bool:
    """u.sep.v with u, v over sigma and |v| in {2|u|, 2|u|+1}."""
    if syms.count(sep) != 1:
        return False
    at = syms.index(sep)
    u, v = syms[:at], syms[at + 1:]
    if any(s not in sigma for s in u + v):
        return False
    return len(v) in (2 * len(u), 2 * len(u) + 1)


def gap_too_short_predicate(syms: tuple[str, ...], sigma: Alphabet,
                            sep: str) -> bool:
    """sep.u.sep.v.sep with u, v over sigma and |v| < 2|u|."""
    if len(syms) < 3 or syms[0] != sep or syms[-1] != sep:
        return False
    inner = syms[1:-1]
    if inner.count(sep) != 1:
        return False
    at = inner.index(sep)
    u, v = inner[:at], inner[at + 1:]
    if any(s not in sigma for s in u + v):
        return False
    return len(v) < 2 * len(u)


def gap_too_long_predicate(syms: tuple[str, ...], sigma: Alphabet,
                           sep: str) -> bool:
    """sep.u.sep.v with u, v over sigma and |v| > 2|u|."""
    if len(syms) < 2 or syms[0] != sep:
        return False
    inner = syms[1:]
    if inner.count(sep) != 1:
        return False
    at = inner.index(sep)
    u, v = inner[:at], inner[at + 1:]
    if any(s not in sigma for s in u + v):
        return False
    return len(v) > 2 * len(u)


def has_bad_prefix(syms: tuple[str, ...], sigma: Alphabet, sep: str) -> bool:
    """Does the word fail to open with letter sep letter letter sep?"""
    pats = ([(sep,)]
            + [(x, y) for x in sigma for y in sigma]
            + [(x, sep, sep) for x in sigma]
            + [(x, sep, y, sep) for x in sigma for y in sigma]
            + [(x, sep, y, z, w) for x in sigma for y in sigma
               for z in sigma for w in sigma])
    return any(syms[:len(p)] == p for p in pats)


def has_gap_defect_factor_slow(syms: tuple[str, ...], sigma: Alphabet,
                               sep: str) -> bool:
    """Any factor witnessing a too-short or too-long separator gap, by
    exhaustive factor enumeration (quadratic; for short words)."""
    n = len(syms)
    for i in range(n):
        for j in range(i + 2, n + 1):
            f = syms[i:j]
            if gap_too_short_predicate(f, sigma, sep) or \
                    gap_too_long_predicate(f, sigma, sep):
                return True
    return False


def has_gap_defect_factor(syms: tuple[str, ...], sigma: Alphabet,
                          sep: str) -> bool:
    """Any factor witnessing a too-short or too-long separator gap.

    Linear scan over separator positions: a short witness needs two
    consecutive complete gaps with the second under twice the first; a long
    witness needs the letter run after a complete gap to overshoot twice its
    length."""
    if any(s != sep and s not in sigma for s in syms):
        raise ValueError("word not over sigma plus separator")
    positions = [i for i, s in enumerate(syms) if s == sep]
    n = len(syms)
    for k in range(len(positions) - 1):
        a0, a1 = positions[k], positions[k + 1]
        gap = a1 - a0 - 1
        if k + 2 < len(positions):
            nxt = positions[k + 2] - a1 - 1
            if nxt < 2 * gap:
                return True
        run = (positions[k + 2] if k + 2 < len(positions) else n) - a1 - 1
        if run > 2 * gap:
            return True
    return False


# ------------------------------------- finite-automaton acceptance oracles

def _explicit_product(fsm: Fsm, w: Lasso):
    su, sv = len(w.spoke), len(w.cycle)
    length = su + sv
    edges = {}
    for q in fsm.states:
        for i in range(length):
            j = i + 1 if i + 1 < length else su
            edges[(q, i)] = sorted((p, j) for p in fsm.delta(q, w.symbol_at(i)))
    start = (fsm.initial, 0)
    reach = {start}
    todo = [start]
    while todo:
        n = todo.pop()
        for m in edges[n]:
            if m not in reach:
                reach.add(m)
                todo.append(m)
    return edges, reach, su


def _strongly_connected_with_edge(edges, sub: frozenset) -> bool:
    """Is there a closed walk visiting exactly the nodes of sub?  True iff
    the sub-restricted graph is strongly connected and has an edge."""
    if not sub:
        return False
    if not any(m in sub for n in sub for m in edges[n]):
        return False
    for src in sub:
        seen = {src}
        todo = [src]
        while todo:
            n = todo.pop()
            for m in edges[n]:
                if m in sub and m not in seen:
                    seen.add(m)
                    todo.append(m)
        if seen != set(sub):
            return False
    return True


def _infinity_sets(fsm: Fsm, w: Lasso, cap: int = 1 << 17):
    """All realizable infinity sets of runs on w, by exhausting subsets of the
    reachable cycle-section product nodes."""
    edges, reach, su = _explicit_product(fsm, w)
    cyc_nodes = sorted(n for n in reach if n[1] >= su)
    if 2 ** len(cyc_nodes) > cap:
        raise RuntimeError("product too large for the subset oracle")
    out: set[frozenset[str]] = set()
    for k in range(1, len(cyc_nodes) + 1):
        for combo in itertools.combinations(cyc_nodes, k):
            sub = frozenset(combo)
            if not _strongly_connected_with_edge(edges, sub):
                continue
            out.add(frozenset(q for q, _ in sub))
    return out


def buchi_oracle(aut: BuchiAutomaton, w: Lasso) -> bool:
    return any(s & aut.final for s in _infinity_sets(aut.machine, w))


def muller_oracle(aut: MullerAutomaton, w: Lasso) -> bool:
    return any(s in aut.table for s in _infinity_sets(aut.machine, w))


# ------------------------------------ explicit-state pushdown-system oracle

def pds_explicit_empty(pds: BuchiPds, max_height: int) -> tuple[bool, bool]:
    """(empty?, truncation-closed?) for the height-truncated configuration
    graph.  The emptiness verdict is meaningful only when the truncation is
    reachability-closed (no reachable configuration wants to grow past the
    bound)."""
    by_head: dict = {}
    for p, z, q, push in pds.rules:
        by_head.setdefault((p, z), []).append((q, push))
    start = (pds.initial, (pds.start_stack,))
    reach = {start}
    todo = [start]
    closed = True
    edges: dict = {start: []}
    while todo:
        cfg = todo.pop()
        state, stack = cfg
        succs = []
        if stack:
            for q, push in by_head.get((state, stack[0]), []):
                nstack = push + stack[1:]
                if len(nstack) > max_height:
                    closed = False
                    continue
                succs.append((q, nstack))
        edges[cfg] = succs
        for m in succs:
            if m not in reach:
                reach.add(m)
                todo.append(m)
    # accepting cycle: an SCC with an internal edge containing a repeating state
    comps = _kosaraju(edges)
    for comp in comps:
        internal = any(m in comp for n in comp for m in edges[n])
        if internal and any(n[0] in pds.repeating for n in comp):
            return False, closed
    return True, closed


def _kosaraju(edges: dict) -> list[set]:
    order: list = []
    seen: set = set()
    for root in edges:
        if root in seen:
            continue
        stack = [(root, iter(edges[root]))]
        seen.add(root)
        while stack:
            node, it = stack[-1]
            pushed = False
            for m in it:
                if m not in seen:
                    seen.add(m)
                    stack.append((m, iter(edges[m])))
                    pushed = True
                    break
            if not pushed:
                order.append(node)
                stack.pop()
    rev: dict = {n: [] for n in edges}
    for n, ms in edges.items():
        for m in ms:
            rev[m].append(n)
    comps: list[set] = []
    assigned: set = set()
    for node in reversed(order):
        if node in assigned:
            continue
        comp = {node}
        todo = [node]
        assigned.add(node)
        while todo:
            n = todo.pop()
            for m in rev[n]:
                if m not in assigned:
                    assigned.add(m)
                    comp.add(m)
                    todo.append(m)
        comps.append(comp)
    return comps


# ------------------------------------------------------- seeded generators

def random_lasso(rng: random.Random, alpha: Alphabet, max_u: int,
                 max_v: int) -> Lasso:
    lu = rng.randint(0, max_u)
    lv = rng.randint(1, max_v)
    return lasso(alpha,
                 [rng.choice(alpha.letters) for _ in range(lu)],
                 [rng.choice(alpha.letters) for _ in range(lv)])


def random_tree(rng: random.Random, labels: Alphabet,
                max_states: int = 5) -> RegularTree:
    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    left = {s: rng.choice(states) for s in states}
    right = {s: rng.choice(states) for s in states}
    output = {s: rng.choice(labels.letters) for s in states}
    return RegularTree(labels, states, "s0", left, right, output)


def random_bpda(rng: random.Random, sigma: Alphabet, max_states: int = 4,
                n_rules: int = 10, allow_silent: bool = True) -> Bpda:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    gamma = ("Z", "Y")
    rules = set()
    letters: tuple = tuple(sigma.letters)
    if allow_silent:
        letters = letters + (None,)
    for _ in range(n_rules):
        q = rng.choice(states)
        a = rng.choice(letters)
        z = rng.choice(gamma)
        p = rng.choice(states)
        push = tuple(rng.choice(gamma)
                     for _ in range(rng.choice((0, 1, 1, 2))))
        rules.add((q, a, z, p, push))
    final = frozenset(s for s in states if rng.random() < 0.4)
    m = Pdm(frozenset(states), sigma, gamma, states[0], "Z", frozenset(rules))
    return Bpda(m, final)


def random_one_counter_pds(rng: random.Random,
                           max_states: int = 4) -> BuchiPds:
    """A random input-free one-counter system (stack alphabet bottom+counter),
    biased toward shallow stacks."""
    n = rng.randint(1, max_states)
    states = tuple(f"p{i}" for i in range(n))
    bottom, e = "Z0", "E"
    rules: set = set()
    for _ in range(rng.randint(2, 9)):
        p = rng.choice(states)
        q = rng.choice(states)
        if rng.random() < 0.5:
            push = rng.choice(((bottom,), (bottom,), (e, bottom)))
            rules.add((p, bottom, q, push))
        else:
            push = rng.choice(((), (), (), (e,), (e,), (e, e)))
            rules.add((p, e, q, push))
    rep = frozenset(s for s in states if rng.random() < 0.4)
    return BuchiPds(frozenset(states), (bottom, e), states[0], bottom,
                    frozenset(rules), rep)
