"""Alphabets, finite words and ultimately periodic omega-words.

An ultimately periodic word (a "lasso") is written ``u(v)^w`` and denotes the
infinite word u v v v ...  Lassos are the only omega-words this library
decides questions about; everything infinite is reduced to them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

# Characters that would collide with the textual formats (lasso literals,
# grammar and machine files).  Symbols may be several characters long, e.g.
# "~>", but must avoid these.
_RESERVED = set(" \t\n\r.()#|,")


def _check_symbol(sym: str) -> None:
    if not sym or any(c in _RESERVED for c in sym):
        raise ValueError(f"bad symbol token {sym!r}: must be non-empty, "
                         "without whitespace or . ( ) # | ,")


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of symbol tokens."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        seen = set()
        for sym in self.letters:
            _check_symbol(sym)
            if sym in seen:
                raise ValueError(f"duplicate symbol {sym!r} in alphabet")
            seen.add(sym)

    def __contains__(self, sym: str) -> bool:
        return sym in self.letters

    def __iter__(self):
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def with_letter(self, sym: str) -> "Alphabet":
        """Extended alphabet; `sym` must be fresh."""
        if sym in self.letters:
            raise ValueError(f"symbol {sym!r} already in alphabet")
        return Alphabet(self.letters + (sym,))

    def union(self, other: "Alphabet") -> "Alphabet":
        extra = tuple(s for s in other.letters if s not in self.letters)
        return Alphabet(self.letters + extra) if extra else self


def alphabet(*letters: str) -> Alphabet:
    return Alphabet(tuple(letters))


@dataclass(frozen=True)
class Word:
    """A finite word over a declared alphabet.  The empty word is Word(a, ())."""

    alphabet: Alphabet
    symbols: tuple[str, ...]

    def __post_init__(self):
        for sym in self.symbols:
            if sym not in self.alphabet:
                raise ValueError(f"symbol {sym!r} not in alphabet")

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("concatenation across different alphabets")
        return Word(self.alphabet, self.symbols + other.symbols)

    def __str__(self) -> str:
        if _dotted(self.alphabet):
            return ".".join(self.symbols)
        return "".join(self.symbols)


def word(alpha: Alphabet, symbols: Iterable[str]) -> Word:
    return Word(alpha, tuple(symbols))


def _dotted(alpha: Alphabet) -> bool:
    # '.'-separated rendering whenever the alphabet has a multi-char token,
    # so that literals parse back unambiguously.
    return any(len(s) > 1 for s in alpha.letters)


@dataclass(frozen=True)
class Lasso:
    """The omega-word spoke . cycle^omega; the cycle must be non-empty.

    Lassos are compared structurally; two lassos denoting the same omega-word
    become equal after normalize().
    """

    spoke: Word
    cycle: Word

    def __post_init__(self):
        if self.spoke.alphabet != self.cycle.alphabet:
            raise ValueError("spoke and cycle over different alphabets")
        if len(self.cycle) == 0:
            raise ValueError("lasso cycle must be non-empty")

    @property
    def alphabet(self) -> Alphabet:
        return self.spoke.alphabet

    def symbol_at(self, i: int) -> str:
        """0-based symbol of the denoted omega-word."""
        s, c = self.spoke.symbols, self.cycle.symbols
        if i < len(s):
            return s[i]
        return c[(i - len(s)) % len(c)]

    def prefix(self, n: int) -> Word:
        """The first n symbols of the denoted omega-word."""
        if n < 0:
            raise ValueError("prefix length must be >= 0")
        return Word(self.alphabet, tuple(self.symbol_at(i) for i in range(n)))

    def normalize(self) -> "Lasso":
        """Canonical form: minimal spoke, then minimal (primitive) cycle.

        The representation with shortest spoke and then shortest cycle is
        unique, so normalized lassos compare equal iff they denote the same
        omega-word.
        """
        cyc = list(self.cycle.symbols)
        # primitive root of the cycle
        n = len(cyc)
        for d in range(1, n + 1):
            if n % d == 0 and cyc[:d] * (n // d) == cyc:
                cyc = cyc[:d]
                break
        spoke = list(self.spoke.symbols)
        # rotate the last spoke symbol into the cycle while it matches
        while spoke and spoke[-1] == cyc[-1]:
            cyc = [cyc[-1]] + cyc[:-1]
            spoke.pop()
        a = self.alphabet
        return Lasso(Word(a, tuple(spoke)), Word(a, tuple(cyc)))

    def same_word(self, other: "Lasso") -> bool:
        return self.normalize() == other.normalize()

    def __str__(self) -> str:
        return format_lasso(self)


def lasso(alpha: Alphabet, spoke: Iterable[str], cycle: Iterable[str]) -> Lasso:
    return Lasso(Word(alpha, tuple(spoke)), Word(alpha, tuple(cycle)))


def concat(prefix: Word, w: Lasso) -> Lasso:
    """prefix . w as a normalized lasso."""
    if prefix.alphabet != w.alphabet:
        raise ValueError("alphabet mismatch")
    return Lasso(prefix + w.spoke, w.cycle).normalize()


def format_lasso(w: Lasso) -> str:
    """Literal form ``u(v)^w``; '.'-separated when the alphabet is multi-char."""
    if _dotted(w.alphabet):
        u = ".".join(w.spoke.symbols)
        v = ".".join(w.cycle.symbols)
        return f"{u}({v})^w"
    return f"{''.join(w.spoke.symbols)}({''.join(w.cycle.symbols)})^w"


def parse_lasso(text: str, alpha: Alphabet) -> Lasso:
    """Parse the ``u(v)^w`` literal over the given alphabet."""
    text = text.strip()
    if not text.endswith("^w"):
        raise ValueError(f"lasso literal must end in ')^w': {text!r}")
    body = text[:-2]
    if not body.endswith(")") or "(" not in body:
        raise ValueError(f"malformed lasso literal: {text!r}")
    open_at = body.index("(")
    u_part, v_part = body[:open_at], body[open_at + 1:-1]

    def split(part: str) -> tuple[str, ...]:
        if not part:
            return ()
        if _dotted(alpha) or "." in part:
            return tuple(t for t in part.split(".") if t)
        return tuple(part)

    return Lasso(Word(alpha, split(u_part)), Word(alpha, split(v_part)))
