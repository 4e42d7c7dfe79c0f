"""Greibach normal form: language preservation and shape."""

from omegacfl import alphabet, cfg, doubling_filler, gap_too_long, gap_too_short
from omegacfl.cfg import (alphabet_star_grammar, concat_grammars,
                          lambda_grammar)
from omegacfl.gnf import to_gnf
from omegacfl.oracles import derivable_words

BITS = alphabet("0", "1")


def zoo():
    yield "doubling filler", doubling_filler(BITS)
    yield "gap too short", gap_too_short(BITS)
    yield "gap too long", gap_too_long(BITS)
    yield "star", alphabet_star_grammar(BITS)
    yield "star then gap", concat_grammars(alphabet_star_grammar(
        gap_too_short(BITS).terminals), gap_too_short(BITS))
    yield "lambda only", lambda_grammar(BITS)
    yield "left recursive", cfg(BITS, "E", [("E", ("E", "0")), ("E", ("1",))])
    yield "mutual", cfg(BITS, "S", [("S", ("T", "0")), ("T", ("S", "1")),
                                    ("T", ("0",))])
    yield "nullable mix", cfg(BITS, "S", [("S", ("T", "T", "1")), ("T", ()),
                                          ("T", ("0",))])
    yield "unit chain", cfg(BITS, "S", [("S", ("T",)), ("T", ("U",)),
                                        ("U", ("0", "S")), ("U", ("1",))])


def test_gnf_preserves_language():
    for name, g in zoo():
        gnf, had_lambda = to_gnf(g)
        want = derivable_words(g, 6)
        assert ((() in want) == had_lambda), name
        assert derivable_words(gnf, 6) == want - {()}, name


def test_gnf_shape():
    for name, g in zoo():
        gnf, _ = to_gnf(g)
        for head, body in gnf.productions:
            assert body, name
            assert body[0] in gnf.terminals, (name, head, body)
            assert all(s in gnf.nonterminals for s in body[1:]), (name, body)


def test_gnf_of_empty_language():
    g = cfg(BITS, "S", [("S", ("0", "S"))])
    gnf, had_lambda = to_gnf(g)
    assert not gnf.productions
    assert not had_lambda


def test_gnf_left_recursion_depth():
    # a grammar whose naive expansion loops; Paull's ordering must terminate
    g = cfg(BITS, "A", [("A", ("B", "1")), ("B", ("A", "0")), ("A", ("0",)),
                        ("B", ("1",))])
    gnf, _ = to_gnf(g)
    assert derivable_words(gnf, 7) == derivable_words(g, 7)
