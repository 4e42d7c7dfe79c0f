"""Finite-state machines with Buchi and Muller acceptance, decided exactly
on ultimately periodic words via the product with the lasso's position graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import Alphabet, Lasso

Transition = tuple[str, str, str]  # (state, letter, successor)


@dataclass(frozen=True)
class Fsm:
    """A (possibly nondeterministic) finite state machine."""

    states: frozenset[str]
    alphabet: Alphabet
    initial: str
    transitions: frozenset[Transition]

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state undeclared")
        for q, a, p in self.transitions:
            if q not in self.states or p not in self.states:
                raise ValueError(f"transition {q, a, p} uses undeclared state")
            if a not in self.alphabet:
                raise ValueError(f"transition letter {a!r} undeclared")

    def delta(self, q: str, a: str) -> frozenset[str]:
        return frozenset(p for (s, b, p) in self.transitions
                         if s == q and b == a)

    @property
    def deterministic(self) -> bool:
        for q in self.states:
            for a in self.alphabet:
                if len(self.delta(q, a)) != 1:
                    return False
        return True


@dataclass(frozen=True)
class RunWitness:
    """A lasso-shaped accepting run: spoke states, then the cycle forever."""

    spoke_states: tuple[str, ...]
    cycle_states: tuple[str, ...]

    def __post_init__(self):
        if not self.cycle_states:
            raise ValueError("witness cycle must be non-empty")

    @property
    def inf_set(self) -> frozenset[str]:
        return frozenset(self.cycle_states)

    def state_at(self, i: int) -> str:
        s, c = self.spoke_states, self.cycle_states
        return s[i] if i < len(s) else c[(i - len(s)) % len(c)]


def _product_edges(fsm: Fsm, w: Lasso):
    """The finite graph of (state, lasso position) nodes."""
    su, sv = len(w.spoke), len(w.cycle)
    length = su + sv

    def nxt(i: int) -> int:
        return i + 1 if i + 1 < length else su

    edges: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for q in sorted(fsm.states):
        for i in range(length):
            a = w.symbol_at(i)
            edges[(q, i)] = [(p, nxt(i)) for p in sorted(fsm.delta(q, a))]
    return edges


def _reachable(edges, start):
    seen = {start}
    parent = {start: None}
    frontier = [start]
    while frontier:
        n = frontier.pop()
        for m in edges[n]:
            if m not in seen:
                seen.add(m)
                parent[m] = n
                frontier.append(m)
    return seen, parent


def _path_from_parents(parent, node):
    path = [node]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


@dataclass(frozen=True)
class BuchiAutomaton:
    machine: Fsm
    final: frozenset[str]

    def __post_init__(self):
        if not self.final <= self.machine.states:
            raise ValueError("final states must be machine states")

    def decide_lasso(self, w: Lasso) -> tuple[bool, RunWitness | None]:
        """Does some run on w visit a final state infinitely often?"""
        if w.alphabet.letters != self.machine.alphabet.letters:
            raise ValueError("lasso alphabet differs from machine alphabet")
        edges = _product_edges(self.machine, w)
        start = (self.machine.initial, 0)
        reach, parent = _reachable(edges, start)
        for node in sorted(reach):
            q, _ = node
            if q not in self.final:
                continue
            cycle_path = _find_cycle(edges, node)
            if cycle_path is not None:
                spoke_path = _path_from_parents(parent, node)
                spoke = tuple(q2 for q2, _ in spoke_path[:-1])
                cycle = tuple(q2 for q2, _ in cycle_path[:-1])
                return True, RunWitness(spoke, cycle)
        return False, None

    def accepts_lasso(self, w: Lasso) -> bool:
        return self.decide_lasso(w)[0]


def _find_cycle(edges, node):
    """A closed path [node, ..., node] of length >= 1, or None."""
    parent: dict = {}
    frontier = []
    for m in edges[node]:
        if m == node:
            return [node, node]
        if m not in parent:
            parent[m] = None
            frontier.append(m)
    while frontier:
        n = frontier.pop()
        for m in edges[n]:
            if m == node:
                path = [n]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                path.reverse()
                return [node] + path + [node]
            if m not in parent:
                parent[m] = n
                frontier.append(m)
    return None


@dataclass(frozen=True)
class MullerAutomaton:
    machine: Fsm
    table: frozenset[frozenset[str]]

    def __post_init__(self):
        for entry in self.table:
            if not entry <= self.machine.states:
                raise ValueError("table entry must be a set of machine states")

    def decide_lasso(self, w: Lasso) -> tuple[bool, RunWitness | None]:
        """Does some run have infinity set exactly equal to a table entry?"""
        if w.alphabet.letters != self.machine.alphabet.letters:
            raise ValueError("lasso alphabet differs from machine alphabet")
        edges = _product_edges(self.machine, w)
        start = (self.machine.initial, 0)
        reach, parent = _reachable(edges, start)
        for entry in sorted(self.table, key=sorted):
            sub_nodes = {n for n in edges if n[0] in entry}
            sub = {n: [m for m in edges[n] if m in sub_nodes] for n in sub_nodes}
            for comp in _sccs(sub):
                internal = any(m in comp for n in comp for m in sub[n])
                if not internal:
                    continue
                if {q for q, _ in comp} != set(entry):
                    continue
                anchor = next((n for n in sorted(comp) if n in reach), None)
                if anchor is None:
                    continue
                walk = _covering_walk(sub, comp, anchor)
                spoke_path = _path_from_parents(parent, anchor)
                spoke = tuple(q for q, _ in spoke_path[:-1])
                cycle = tuple(q for q, _ in walk[:-1])
                return True, RunWitness(spoke, cycle)
        return False, None

    def accepts_lasso(self, w: Lasso) -> bool:
        return self.decide_lasso(w)[0]


def _sccs(graph: dict) -> list[set]:
    """Tarjan's strongly connected components."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[set] = []
    counter = [0]

    def strong(v):
        work = [(v, iter(graph[v]))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for m in it:
                if m not in index:
                    index[m] = low[m] = counter[0]
                    counter[0] += 1
                    stack.append(m)
                    on_stack.add(m)
                    work.append((m, iter(graph[m])))
                    advanced = True
                    break
                elif m in on_stack:
                    low[node] = min(low[node], index[m])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp.add(u)
                    if u == node:
                        break
                out.append(comp)

    for v in graph:
        if v not in index:
            strong(v)
    return out


def _covering_walk(sub, comp, anchor):
    """A closed walk from anchor through every node of its SCC."""

    def bfs_path(src, target):
        # shortest path src -> target within comp, length >= 1
        parent: dict = {}
        seen = set()
        frontier = [src]
        while frontier:
            nxt = []
            for n in frontier:
                for m in sub[n]:
                    if m == target:
                        path = [target]
                        cur = n
                        while cur != src:
                            path.append(cur)
                            cur = parent[cur]
                        path.append(src)
                        path.reverse()
                        return path
                    if m in comp and m not in seen:
                        seen.add(m)
                        parent[m] = n
                        nxt.append(m)
            frontier = nxt
        raise AssertionError("SCC not strongly connected")

    walk = [anchor]
    remaining = set(comp) - {anchor}
    cur = anchor
    while remaining:
        target = sorted(remaining)[0]
        seg = bfs_path(cur, target)
        walk.extend(seg[1:])
        remaining -= set(seg)
        cur = target
    seg = bfs_path(cur, anchor)
    walk.extend(seg[1:])
    return walk
