"""Lasso words: prefixes, normal forms, concatenation, literals."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegacfl import alphabet, concat, format_lasso, lasso, parse_lasso, word

# brute-force oracles can be slow on shared machines
settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

AB = alphabet("a", "b")
BITS = alphabet("0", "1")


def stream(w, n):
    return [w.symbol_at(i) for i in range(n)]


def minimal_form_bruteforce(w):
    """Smallest spoke, then smallest cycle, by exhaustive search over
    candidate representations read off the symbol stream."""
    su, sv = len(w.spoke), len(w.cycle)
    horizon = 2 * (su + sv) + 4
    for lu in range(su + sv + 1):
        for lv in range(1, su + sv + 1):
            n = max(lu, su) + lv * sv + lv + sv
            cand = lasso(w.alphabet, stream(w, lu), stream(w, lu + lv)[lu:])
            if stream(cand, n) == stream(w, n):
                return cand
    raise AssertionError("no representation found")


def test_prefix_examples():
    assert "".join(lasso(AB, "", "ab").prefix(3)) == "aba"
    assert "".join(lasso(BITS, "0", "1").prefix(1)) == "0"
    assert list(lasso(AB, "", "a").prefix(0)) == []


def test_prefix_rejects_negative():
    with pytest.raises(ValueError):
        lasso(AB, "", "a").prefix(-1)


def test_normalize_examples():
    assert lasso(AB, "", "aa").normalize() == lasso(AB, "", "a")
    assert lasso(AB, "a", "ba").normalize() == lasso(AB, "", "ab")
    already = lasso(AB, "ab", "a")
    assert already.normalize() == already


def test_concat_examples():
    w = lasso(AB, "a", "b")
    assert concat(word(AB, ""), w) == w.normalize()
    assert concat(word(BITS, "0"), lasso(BITS, "", "1")) == lasso(BITS, "0", "1")
    # prepending one letter can close the loop entirely
    assert concat(word(AB, "a"), lasso(AB, "b", "ab")) == lasso(AB, "", "ab")


def test_concat_stream_is_prefix_plus_stream():
    p = word(AB, "ab")
    w = lasso(AB, "b", "ab")
    got = concat(p, w)
    n = 4 * (len(got.spoke) + len(got.cycle)) + 8
    want = list(p.symbols) + stream(w, n)
    assert stream(got, n) == want[:n]


def test_cycle_must_be_nonempty():
    with pytest.raises(ValueError):
        lasso(AB, "a", "")


lasso_strategy = st.tuples(
    st.lists(st.sampled_from("ab"), max_size=5),
    st.lists(st.sampled_from("ab"), min_size=1, max_size=5),
).map(lambda t: lasso(AB, t[0], t[1]))


@given(lasso_strategy, st.integers(0, 20), st.integers(0, 20))
def test_prefix_monotone(w, n, m):
    lo, hi = min(n, m), max(n, m)
    assert w.prefix(hi).symbols[:lo] == w.prefix(lo).symbols


@given(lasso_strategy)
def test_normalize_idempotent_and_stream_preserving(w):
    n = w.normalize()
    assert n.normalize() == n
    bound = 4 * (len(w.spoke) + len(w.cycle))
    assert stream(n, bound) == stream(w, bound)


@given(lasso_strategy)
@settings(max_examples=60)
def test_normalize_is_minimal(w):
    assert w.normalize() == minimal_form_bruteforce(w)


@given(lasso_strategy)
def test_literal_roundtrip(w):
    assert parse_lasso(format_lasso(w), AB) == w


def test_literal_multichar_tokens():
    alpha = alphabet("a", "~>")
    w = lasso(alpha, ["a"], ["~>", "a"])
    text = format_lasso(w)
    assert text == "a(~>.a)^w"
    assert parse_lasso(text, alpha) == w
    single = lasso(alpha, [], ["~>"])
    assert parse_lasso(format_lasso(single), alpha) == single


def test_literal_empty_spoke():
    assert parse_lasso("(10)^w", BITS) == lasso(BITS, "", "10")


def test_literal_rejects_garbage():
    for bad in ("01", "(01)", "01^w", "(ab", "()^w"):
        with pytest.raises(ValueError):
            parse_lasso(bad, BITS)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        alphabet()
    with pytest.raises(ValueError):
        alphabet("a", "a")
    with pytest.raises(ValueError):
        alphabet("a b")
    with pytest.raises(ValueError):
        word(AB, "ax")
