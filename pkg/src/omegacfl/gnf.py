"""Greibach normal form conversion.

Every production of the result starts with a terminal followed by
nonterminals only.  A machine built from such a grammar consumes one input
letter per rule application and needs no silent moves, which the pushdown
constructions in this package rely on.
"""

from __future__ import annotations

from .cfg import (Cfg, Production, cfg_generates_lambda, remove_useless,
                  strip_lambda, _fresh)


def to_gnf(g: Cfg) -> tuple[Cfg, bool]:
    """Return (GNF grammar for L(g) minus lambda, whether lambda in L(g)).

    The result has no productions at all when L(g) contains no non-empty
    word.
    """
    had_lambda = cfg_generates_lambda(g)
    g1 = remove_useless(strip_lambda(g))
    if not g1.productions:
        return g1, had_lambda
    g2 = _eliminate_units(g1)
    g3 = _paull(g2)
    g4 = _head_substitute(g3)
    g5 = _cascade_terminals(g4)
    return remove_useless(g5), had_lambda


def _eliminate_units(g: Cfg) -> Cfg:
    by_head = g.by_head()
    closure: dict[str, set[str]] = {n: {n} for n in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for a in g.nonterminals:
            for b in list(closure[a]):
                for body in by_head.get(b, []):
                    if len(body) == 1 and body[0] in g.nonterminals:
                        if body[0] not in closure[a]:
                            closure[a].add(body[0])
                            changed = True
    prods: set[Production] = set()
    for a in g.nonterminals:
        for b in closure[a]:
            for body in by_head.get(b, []):
                if not (len(body) == 1 and body[0] in g.nonterminals):
                    prods.add((a, body))
    return remove_useless(Cfg(g.terminals, g.nonterminals, g.start,
                              frozenset(prods)))


def _paull(g: Cfg) -> Cfg:
    """Order nonterminals and remove left recursion.

    Afterwards every production's first symbol is a terminal, a strictly
    later nonterminal, or one of the fresh tail symbols.
    """
    order = sorted(g.nonterminals)
    index = {n: i for i, n in enumerate(order)}
    taken = set(g.terminals.letters) | set(g.nonterminals)
    prods: dict[str, set[tuple[str, ...]]] = {n: set() for n in order}
    for h, b in g.productions:
        prods[h].add(b)
    tails: dict[str, set[tuple[str, ...]]] = {}

    for i, a in enumerate(order):
        # substitute away leading earlier nonterminals
        stable = False
        guard = 0
        while not stable:
            stable = True
            guard += 1
            if guard > 10_000:
                raise RuntimeError("left-recursion elimination diverged")
            for body in list(prods[a]):
                lead = body[0] if body else None
                if lead in index and index[lead] < i:
                    prods[a].discard(body)
                    for sub in prods[lead]:
                        prods[a].add(sub + body[1:])
                    stable = False
        # direct left recursion
        rec = {b[1:] for b in prods[a] if b and b[0] == a}
        base = {b for b in prods[a] if not b or b[0] != a}
        if rec:
            rec = {r for r in rec if r}  # a -> a alone cannot occur (unit-free)
            prime = _fresh(a + "^tail", taken)
            tails[prime] = set()
            for r in rec:
                tails[prime].add(r)
                tails[prime].add(r + (prime,))
            prods[a] = set()
            for b in base:
                prods[a].add(b)
                prods[a].add(b + (prime,))

    all_prods: set[Production] = set()
    nts = set(order) | set(tails)
    for h, bodies in prods.items():
        for b in bodies:
            all_prods.add((h, b))
    for h, bodies in tails.items():
        for b in bodies:
            all_prods.add((h, b))
    return Cfg(g.terminals, frozenset(nts), g.start, frozenset(all_prods))


def _head_substitute(g: Cfg) -> Cfg:
    """Expand leading nonterminals until every production starts with a
    terminal.  Sound after _paull because leading-nonterminal chains are
    acyclic there."""
    prods: dict[str, set[tuple[str, ...]]] = {n: set() for n in g.nonterminals}
    for h, b in g.productions:
        prods[h].add(b)
    for _ in range(len(g.nonterminals) * 2 + 4):
        changed = False
        for a in list(prods):
            for body in list(prods[a]):
                if body and body[0] in prods:
                    lead = body[0]
                    if all(sb and sb[0] in g.terminals for sb in prods[lead]):
                        prods[a].discard(body)
                        for sb in prods[lead]:
                            prods[a].add(sb + body[1:])
                        changed = True
        if not changed:
            break
    else:
        raise RuntimeError("head substitution did not converge")
    flat = frozenset((h, b) for h, bodies in prods.items() for b in bodies)
    for h, b in flat:
        if not b or b[0] not in g.terminals:
            raise RuntimeError(f"non-GNF production survived: {h} -> {b}")
    return Cfg(g.terminals, g.nonterminals, g.start, flat)


def _cascade_terminals(g: Cfg) -> Cfg:
    """Replace terminals after the leading one by wrapper nonterminals."""
    taken = set(g.terminals.letters) | set(g.nonterminals)
    wrappers: dict[str, str] = {}
    prods: set[Production] = set()
    for h, b in g.productions:
        new = [b[0]]
        for s in b[1:]:
            if s in g.terminals:
                if s not in wrappers:
                    wrappers[s] = _fresh("lit:" + s, taken)
                new.append(wrappers[s])
            else:
                new.append(s)
        prods.add((h, tuple(new)))
    for t, w in wrappers.items():
        prods.add((w, (t,)))
    nts = frozenset(set(g.nonterminals) | set(wrappers.values()))
    return Cfg(g.terminals, nts, g.start, frozenset(prods))
