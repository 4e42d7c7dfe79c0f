"""Omega-Kleene expressions: finite unions of U.V^omega over context-free
grammars, their conversion to Buchi pushdown machines, closure operations,
and an independent factorization oracle for lasso membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .cfg import (Cfg, Substitution, apply_substitution, cfg_empty,
                  cfg_generates_lambda, lambda_grammar, strip_lambda, _fresh)
from .gnf import to_gnf
from .pushdown import PUSH_CAP, Bpda, Pdm
from .words import Alphabet, Lasso

Verdict = Literal["yes", "no", "unknown"]


@dataclass(frozen=True)
class KcPair:
    """One U.V^omega component; v is stored lambda-stripped."""

    u: Cfg
    v: Cfg
    v_was_lambda_only: bool


@dataclass(frozen=True)
class OmegaKleeneExpr:
    """A non-empty union of U_i.V_i^omega components over one alphabet."""

    alphabet: Alphabet
    pairs: tuple[KcPair, ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("expression needs at least one pair")
        for p in self.pairs:
            if (p.u.terminals.letters != self.alphabet.letters
                    or p.v.terminals.letters != self.alphabet.letters):
                raise ValueError("all component grammars must share the "
                                 "expression alphabet")


def omega_kleene(pairs: list[tuple[Cfg, Cfg]]) -> OmegaKleeneExpr:
    """Build an expression; each V is replaced by V minus the empty word."""
    if not pairs:
        raise ValueError("expression needs at least one pair")
    alpha = pairs[0][0].terminals
    out = []
    for u, v in pairs:
        had_lambda = cfg_generates_lambda(v)
        v2 = strip_lambda(v)
        out.append(KcPair(u, v2, had_lambda and cfg_empty(v2)))
    return OmegaKleeneExpr(alpha, tuple(out))


def kc_union(e1: OmegaKleeneExpr, e2: OmegaKleeneExpr) -> OmegaKleeneExpr:
    if e1.alphabet.letters != e2.alphabet.letters:
        raise ValueError("union across different alphabets")
    return OmegaKleeneExpr(e1.alphabet, e1.pairs + e2.pairs)


def kc_substitute(e: OmegaKleeneExpr, f: Substitution) -> OmegaKleeneExpr:
    """Apply a lambda-free substitution letter-wise to the denotation."""
    if not f.is_lambda_free():
        raise ValueError("omega-word substitution must be lambda-free")
    if sorted(f.domain.letters) != sorted(e.alphabet.letters):
        raise ValueError("substitution domain must equal the expression alphabet")
    return omega_kleene([(apply_substitution(f, p.u), apply_substitution(f, p.v))
                         for p in e.pairs])


def omega_power(v: Cfg) -> OmegaKleeneExpr:
    """The expression for V^omega (a single pair with U = {lambda})."""
    e = omega_kleene([(lambda_grammar(v.terminals), v)])
    if e.pairs[0].v_was_lambda_only:
        raise ValueError("the cycle language contains only the empty word")
    return e


# ------------------------------------------------------ machine conversion

def kc_to_bpda(e: OmegaKleeneExpr) -> Bpda:
    """A Buchi pushdown machine accepting the union of the U_i.V_i^omega.

    The component grammars are run in Greibach normal form, so the machine
    consumes one input letter per move: it has no silent moves at all and
    its initial state is never re-entered.  Block starts pass through a
    per-component final state, which therefore recurs exactly on words that
    factor into U followed by infinitely many V blocks.
    """
    start_state = "q0"
    bottom = "Z0"
    states = {start_state}
    stack_syms = [bottom]
    rules: set = set()
    final = set()
    fresh_counter = [0]

    def new_chain_state() -> str:
        name = f"push{fresh_counter[0]}"
        fresh_counter[0] += 1
        states.add(name)
        return name

    def add_move(src, letter, top, tgt, push):
        # factor pushes beyond the cap through fresh silent chain states,
        # installing the word bottom-up
        push = tuple(push)
        if len(push) <= PUSH_CAP:
            rules.add((src, letter, top, tgt, push))
            return
        remaining = list(push[:-PUSH_CAP])
        bottom_chunk = push[-PUSH_CAP:]
        cur_top = bottom_chunk[0]
        cur_state = new_chain_state()
        rules.add((src, letter, top, cur_state, bottom_chunk))
        while remaining:
            take = min(PUSH_CAP - 1, len(remaining))
            chunk = tuple(remaining[-take:])
            del remaining[-take:]
            nxt_state = tgt if not remaining else new_chain_state()
            rules.add((cur_state, None, cur_top, nxt_state, chunk + (cur_top,)))
            cur_top = chunk[0]
            cur_state = nxt_state

    for idx, pair in enumerate(e.pairs):
        if pair.v_was_lambda_only:
            raise ValueError(f"component {idx}: cycle language is {{lambda}}")
        gu, u_has_lambda = to_gnf(pair.u)
        gv, _ = to_gnf(pair.v)
        if not gv.productions:
            continue  # V empty: the component denotes the empty set
        st_u, st_v, st_f = f"u{idx}", f"v{idx}", f"f{idx}"
        states.update({st_u, st_v, st_f})
        final.add(st_f)

        def tag(which, name, idx=idx):
            return f"{which}{idx}:{name}"

        for n in sorted(gu.nonterminals):
            stack_syms.append(tag("u", n))
        for n in sorted(gv.nonterminals):
            stack_syms.append(tag("v", n))

        u_starts = [(b[0], tuple(tag("u", s) for s in b[1:]))
                    for h, b in sorted(gu.productions) if h == gu.start]
        v_starts = [(b[0], tuple(tag("v", s) for s in b[1:]))
                    for h, b in sorted(gv.productions) if h == gv.start]

        # choose this component and start reading U (or, with lambda in U,
        # start the first V block straight away)
        for a, alpha_push in u_starts:
            add_move(start_state, a, bottom, st_u, alpha_push + (bottom,))
        if u_has_lambda:
            for a, alpha_push in v_starts:
                add_move(start_state, a, bottom, st_f, alpha_push + (bottom,))

        # parsing moves inside the U word
        for h, b in sorted(gu.productions):
            push = tuple(tag("u", s) for s in b[1:])
            add_move(st_u, b[0], tag("u", h), st_u, push)
        # U finished (bottom exposed): begin the first V block
        for a, alpha_push in v_starts:
            add_move(st_u, a, bottom, st_f, alpha_push + (bottom,))

        # parsing moves inside a V block, from the block-start state too
        for h, b in sorted(gv.productions):
            push = tuple(tag("v", s) for s in b[1:])
            add_move(st_v, b[0], tag("v", h), st_v, push)
            add_move(st_f, b[0], tag("v", h), st_v, push)
        # block finished: start the next one through the final state
        for a, alpha_push in v_starts:
            add_move(st_v, a, bottom, st_f, alpha_push + (bottom,))
            add_move(st_f, a, bottom, st_f, alpha_push + (bottom,))

    machine = Pdm(frozenset(states), e.alphabet, tuple(stack_syms),
                  start_state, bottom, frozenset(rules))
    return Bpda(machine, frozenset(final))


# ------------------------------------------------------------------ oracle

def _binarized(g: Cfg):
    """Bodies of length <= 2 (fresh chain heads); lambda bodies preserved."""
    taken = set(g.terminals.letters) | set(g.nonterminals)
    bodies: list[tuple[str, tuple[str, ...]]] = []
    for h, b in sorted(g.productions):
        while len(b) > 2:
            chain = _fresh(f"{h};bin", taken)
            bodies.append((h, (b[0], chain)))
            h, b = chain, b[1:]
        bodies.append((h, b))
    return bodies


def _reach_matrices(g: Cfg, letter_mats: dict[str, np.ndarray], size: int):
    """M[X][s, t] = some word derivable from X walks the automaton s -> t.

    The empty word contributes the diagonal (only derivable where the
    grammar allows it)."""
    bodies = _binarized(g)
    heads = {h for h, _ in bodies}
    mats = {h: np.zeros((size, size), dtype=bool) for h in heads}
    eye = np.eye(size, dtype=bool)

    def sym_mat(s):
        return letter_mats[s] if s in g.terminals else mats.get(s)

    changed = True
    while changed:
        changed = False
        for h, b in bodies:
            if not b:
                new = eye
            elif len(b) == 1:
                m = sym_mat(b[0])
                if m is None:
                    continue
                new = m
            else:
                m1, m2 = sym_mat(b[0]), sym_mat(b[1])
                if m1 is None or m2 is None:
                    continue
                new = (m1.astype(np.uint16) @ m2.astype(np.uint16)) > 0
            merged = mats[h] | new
            if not np.array_equal(merged, mats[h]):
                mats[h] = merged
                changed = True
    return mats


def _transitive_plus(m: np.ndarray) -> np.ndarray:
    t = m.copy()
    while True:
        step = (t.astype(np.uint16) @ t.astype(np.uint16)) > 0
        merged = t | step
        if np.array_equal(merged, t):
            return t
        t = merged


def _lasso_letter_mats(w: Lasso):
    su, sv = len(w.spoke), len(w.cycle)
    size = su + sv
    mats = {a: np.zeros((size, size), dtype=bool) for a in w.alphabet}
    for i in range(size):
        j = i + 1 if i + 1 < size else su
        mats[w.symbol_at(i)][i, j] = True
    return mats, size


def _line_letter_mats(w: Lasso, bound: int):
    size = bound + 1
    mats = {a: np.zeros((size, size), dtype=bool) for a in w.alphabet}
    for i in range(bound):
        mats[w.symbol_at(i)][i, i + 1] = True
    return mats, size


def _component_unbounded_member(pair: KcPair, w: Lasso) -> bool:
    """Exact membership of the lasso in U.V^omega via the boundary-phase
    closure over the lasso's position automaton."""
    mats, size = _lasso_letter_mats(w)
    mu = _reach_matrices(pair.u, mats, size)
    mv = _reach_matrices(pair.v, mats, size)
    if pair.u.start not in mu or pair.v.start not in mv:
        return False
    has_u = mu[pair.u.start][0]
    ev = mv[pair.v.start]
    t = _transitive_plus(ev)
    cyc = np.diag(t)
    good = cyc | ((t & cyc[None, :]).any(axis=1))
    return bool((has_u & good).any())


def _component_pumping(pair: KcPair, w: Lasso, bound: int) -> bool:
    """Bounded search for a pumpable factorization of a prefix."""
    su, sv = len(w.spoke), len(w.cycle)
    mats, size = _line_letter_mats(w, bound)
    mu = _reach_matrices(pair.u, mats, size)
    mv = _reach_matrices(pair.v, mats, size)
    if pair.u.start not in mu or pair.v.start not in mv:
        return False
    b_u = mu[pair.u.start][0]
    ev = mv[pair.v.start]
    t = _transitive_plus(ev)
    reach = b_u | ((b_u.astype(np.uint16) @ t.astype(np.uint16)) > 0)
    for k1 in range(su, bound + 1):
        if not reach[k1]:
            continue
        for k2 in range(k1 + sv, bound + 1, sv):
            if t[k1, k2]:
                return True
    return False


def lasso_in_kc(e: OmegaKleeneExpr, w: Lasso, bound: int) -> Verdict:
    """Three-valued factorization oracle for membership of w in e.

    "yes" is justified by a pumpable factorization of a prefix of length at
    most `bound`; "no" by closure of the boundary-phase reachability
    relation (no component admits an infinite block decomposition);
    "unknown" remains possible when the bound is too small to exhibit a
    pumping pair.  Independent of the machine conversion and saturation.
    """
    w = w.normalize()
    if bound < len(w.spoke) + len(w.cycle):
        raise ValueError("bound must be at least the lasso length")
    if w.alphabet.letters != e.alphabet.letters:
        raise ValueError("lasso alphabet differs from expression alphabet")
    if any(_component_pumping(p, w, bound) for p in e.pairs):
        return "yes"
    if not any(_component_unbounded_member(p, w) for p in e.pairs):
        return "no"
    return "unknown"
