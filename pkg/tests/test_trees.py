"""Regular trees, level enumerations, the word coding and the embeddings."""

import itertools
import random

import pytest

from omegacfl import (RegularTree, alphabet, coding_complement_expr, f_embed,
                      h_prefix, j_leftmost, kc_to_bpda, lasso,
                      level_homogeneous_tree, level_nodes)
from omegacfl.oracles import (has_bad_prefix, has_gap_defect_factor,
                              has_gap_defect_factor_slow, random_lasso,
                              random_tree)
from omegacfl.trees import LevelEnumeration

A1 = alphabet("a")
AB = alphabet("a", "b")
BITS = alphabet("0", "1")


def constant_tree(letter="a", labels=A1):
    return RegularTree(labels, ("n",), "n", {"n": "n"}, {"n": "n"},
                       {"n": letter})


def test_level_nodes_examples():
    assert level_nodes(1, "lex").nodes == ("l", "r")
    assert level_nodes(3, "lex").nodes == (
        "lll", "llr", "lrl", "lrr", "rll", "rlr", "rrl", "rrr")
    assert level_nodes(0, "lex").nodes == ("",)


def test_level_order_reversal_identity():
    for n in range(7):
        lex = level_nodes(n, "lex").nodes
        rev = level_nodes(n, "revlex").nodes
        for i in range(1, 2 ** n + 1):
            assert rev[i - 1] == lex[2 ** n + 1 - i - 1]


def test_level_enumeration_invariants():
    with pytest.raises(ValueError):
        LevelEnumeration(1, ("l",))
    with pytest.raises(ValueError):
        LevelEnumeration(1, ("l", "l"))
    with pytest.raises(ValueError):
        LevelEnumeration(1, ("l", "x"))


def test_h_prefix_constant_tree():
    t = constant_tree()
    got = h_prefix(t, 3)
    assert "".join(got.symbols) == "aA" + "aa" + "A" + "aaaa" + "A" + "a" * 8 + "A"


def test_h_prefix_alternating_depth():
    # a at even depth, b at odd depth
    t = RegularTree(AB, ("e", "o"), "e", {"e": "o", "o": "e"},
                    {"e": "o", "o": "e"}, {"e": "a", "o": "b"})
    assert "".join(h_prefix(t, 2).symbols) == "aAbbAaaaaA"


def test_h_prefix_level_zero():
    t = constant_tree("b", AB)
    assert "".join(h_prefix(t, 0).symbols) == "bA"


def test_h_prefix_rejects_separator_in_labels():
    t = constant_tree("A", alphabet("A"))
    with pytest.raises(ValueError):
        h_prefix(t, 1)


def test_h_prefix_block_shape_and_labels():
    rng = random.Random(17)
    for _ in range(10):
        t = random_tree(rng, AB, 4)
        syms = h_prefix(t, 6).symbols
        # block structure: lengths 1, 2, 4, ..., each closed by the separator
        idx = 0
        for n in range(7):
            block = syms[idx:idx + 2 ** n]
            assert all(s != "A" for s in block)
            assert syms[idx + 2 ** n] == "A"
            # labels agree with a recursive enumeration in parity order
            addresses = sorted("".join(p) for p in
                               itertools.product("lr", repeat=n))
            if n % 2 == 0 and n > 0:
                addresses.reverse()
            assert list(block) == [t.label(addr) for addr in addresses]
            idx += 2 ** n + 1
        assert idx == len(syms)


def test_coding_complement_accepts_examples():
    m = kc_to_bpda(coding_complement_expr(A1))
    sa = alphabet("a", "A")
    assert m.accepts_lasso(lasso(sa, "", ["A"]))
    w = lasso(sa, "", ["a", "A", "a", "A"])
    assert m.accepts_lasso(w)
    # the unrolled stream indeed contains a too-short-gap factor
    syms = tuple(w.symbol_at(i) for i in range(12))
    assert has_gap_defect_factor(syms, A1, "A")


def test_gap_scan_fast_matches_slow():
    rng = random.Random(23)
    sa = alphabet("0", "1", "A")
    for _ in range(300):
        n = rng.randint(0, 12)
        syms = tuple(rng.choice(sa.letters) for _ in range(n))
        assert has_gap_defect_factor(syms, BITS, "A") == \
            has_gap_defect_factor_slow(syms, BITS, "A")


def test_coded_prefixes_carry_no_witnesses():
    rng = random.Random(19)
    for _ in range(8):
        t = random_tree(rng, BITS, 4)
        for lv in range(7):
            syms = h_prefix(t, lv).symbols
            assert not has_bad_prefix(syms, BITS, "A")
            assert not has_gap_defect_factor(syms, BITS, "A")


def test_f_embed_examples():
    w = lasso(A1, "", "a")
    t = f_embed(w)
    assert t.label("ll") == "a"
    assert t.label("r") == "A"
    w2 = lasso(AB, "", "ab")
    t2 = f_embed(w2)
    assert t2.label("") == "a"
    assert t2.label("l") == "b"
    assert t2.label("ll") == "a"
    assert t2.label("lr") == "A"


def test_f_embed_rejects_separator_clash():
    with pytest.raises(ValueError):
        f_embed(lasso(alphabet("a", "A"), "", "a"))


def test_j_leftmost_examples():
    assert j_leftmost(constant_tree()) == lasso(A1, "", "a")
    w = lasso(AB, "", "ab")
    back = j_leftmost(f_embed(w))
    assert (back.spoke.symbols, back.cycle.symbols) == ((), ("a", "b"))


def test_j_leftmost_bounds_from_walk():
    # left-successor walk: two spoke node-states, then a three-state loop
    states = ("s0", "s1", "c0", "c1", "c2")
    left = {"s0": "s1", "s1": "c0", "c0": "c1", "c1": "c2", "c2": "c0"}
    right = {s: "s0" for s in states}
    out = {"s0": "a", "s1": "b", "c0": "a", "c1": "b", "c2": "b"}
    t = RegularTree(AB, states, "s0", left, right, out)
    w = j_leftmost(t)
    assert len(w.spoke) <= 2 and len(w.cycle) <= 3
    assert [w.symbol_at(i) for i in range(8)] == list("ababbabb")


def test_roundtrip_is_normalization():
    rng = random.Random(29)
    for _ in range(80):
        w = random_lasso(rng, AB, 5, 5)
        n = w.normalize()
        back = j_leftmost(f_embed(w))
        assert (back.spoke.symbols, back.cycle.symbols) == \
            (n.spoke.symbols, n.cycle.symbols)


def test_level_homogeneous_tree():
    w = lasso(A1, "", "a")
    assert level_homogeneous_tree(w).label("lrl") == "a"
    w2 = lasso(BITS, "", "01")
    t = level_homogeneous_tree(w2)
    for depth in range(7):
        for addr in itertools.product("lr", repeat=depth):
            assert t.label("".join(addr)) == w2.symbol_at(depth)
    assert "".join(h_prefix(t, 2).symbols) == "0A11A0000A"


def test_tree_validation():
    with pytest.raises(ValueError):
        RegularTree(A1, ("n", "n"), "n", {"n": "n"}, {"n": "n"}, {"n": "a"})
    with pytest.raises(ValueError):
        RegularTree(A1, ("n",), "m", {"n": "n"}, {"n": "n"}, {"n": "a"})
    with pytest.raises(ValueError):
        RegularTree(A1, ("n",), "n", {}, {"n": "n"}, {"n": "a"})
    with pytest.raises(ValueError):
        RegularTree(A1, ("n",), "n", {"n": "n"}, {"n": "n"}, {"n": "b"})
