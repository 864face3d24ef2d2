"""Braid words for plat presentations.

Three word modes are supported:

``b4``  standard 4-plats. Only two generators occur; following the usual
        reindexing, ``s1`` and ``s2`` are the classical sigma_2 and sigma_3
        of B_4, i.e. they twist boundary points (2,3) and (3,4).
``b6``  B_6 with generators ``s1`` .. ``s5`` twisting points (i, i+1).
``b6x`` B_6 plus the extra generator ``s6`` twisting points 6 and 1 across
        the wrap-around position of the boundary circle.

Letters are stored one per crossing, in order from the top of the plat
(boundary) down to the bottom caps.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple


class BraidParseError(ValueError):
    pass


class Mode(enum.Enum):
    B4 = "b4"
    B6 = "b6"
    B6X = "b6x"

    @property
    def n(self) -> int:
        """Number of arcs of the tangle (half the number of boundary points)."""
        return 2 if self is Mode.B4 else 3

    @property
    def generators(self) -> int:
        return {Mode.B4: 2, Mode.B6: 5, Mode.B6X: 6}[self]

    def points(self, index: int) -> tuple[int, int]:
        """Boundary points (1-based) twisted by generator ``index``."""
        if self is Mode.B4:
            return index + 1, index + 2
        return index, index % 6 + 1

    @classmethod
    def parse(cls, text: str | Mode) -> Mode:
        if isinstance(text, Mode):
            return text
        aliases = {"b4": cls.B4, "b4-standard": cls.B4, "b6": cls.B6,
                   "b6x": cls.B6X, "b6-extended": cls.B6X}
        try:
            return aliases[text.lower()]
        except KeyError:
            raise BraidParseError(f"unknown mode {text!r}") from None


class BraidLetter(NamedTuple):
    index: int
    sign: int

    def inverse(self) -> BraidLetter:
        return BraidLetter(self.index, -self.sign)

    def __str__(self) -> str:
        return f"s{self.index}" + ("" if self.sign > 0 else "^-1")


@dataclass(frozen=True)
class BraidWord:
    mode: Mode
    letters: tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(BraidLetter(*l) for l in self.letters))
        g = self.mode.generators
        for l in self.letters:
            if not 1 <= l.index <= g:
                raise BraidParseError(f"generator s{l.index} out of range for mode {self.mode.value}")
            if l.sign not in (1, -1):
                raise BraidParseError(f"bad sign {l.sign}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[BraidLetter]:
        return iter(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.mode is not self.mode:
            raise ValueError("cannot concatenate words of different modes")
        return BraidWord(self.mode, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.mode, tuple(l.inverse() for l in reversed(self.letters)))

    def mirror(self) -> BraidWord:
        return BraidWord(self.mode, tuple(BraidLetter(l.index, -l.sign) for l in self.letters))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(l.index for l in self.letters)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(l.sign for l in self.letters)

    def __str__(self) -> str:
        return format_word(self)


_TOKEN = re.compile(r"s(\d+)(?:\^([+-]?\d+))?")


def parse_word(text: str, mode: Mode | str) -> BraidWord:
    """Parse ``"s1 s2^-1 s1"``-style text; ``"e"`` (or blank) is the empty word."""
    mode = Mode.parse(mode)
    tokens = text.split()
    if tokens == ["e"] or not tokens:
        return BraidWord(mode)
    letters = []
    for tok in tokens:
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise BraidParseError(f"malformed token {tok!r}")
        index = int(m.group(1))
        power = int(m.group(2)) if m.group(2) is not None else 1
        if power == 0:
            raise BraidParseError(f"zero exponent in {tok!r}")
        if not 1 <= index <= mode.generators:
            raise BraidParseError(f"generator s{index} out of range for mode {mode.value}")
        sign = 1 if power > 0 else -1
        letters.extend([BraidLetter(index, sign)] * abs(power))
    return BraidWord(mode, tuple(letters))


def format_word(w: BraidWord) -> str:
    """Canonical text with runs collapsed into exponents."""
    if not w.letters:
        return "e"
    out = []
    run_letter, run = w.letters[0], 0
    for l in w.letters:
        if l == run_letter:
            run += 1
            continue
        out.append(_fmt_run(run_letter, run))
        run_letter, run = l, 1
    out.append(_fmt_run(run_letter, run))
    return " ".join(out)


def _fmt_run(l: BraidLetter, run: int) -> str:
    power = run * l.sign
    return f"s{l.index}" if power == 1 else f"s{l.index}^{power}"


def word(mode: Mode | str, letters: Iterable[tuple[int, int]]) -> BraidWord:
    return BraidWord(Mode.parse(mode), tuple(letters))


def free_reduce(w: BraidWord) -> BraidWord:
    stack: list[BraidLetter] = []
    for l in w.letters:
        if stack and stack[-1].index == l.index and stack[-1].sign == -l.sign:
            stack.pop()
        else:
            stack.append(l)
    return BraidWord(w.mode, tuple(stack))


def is_freely_reduced(w: BraidWord) -> bool:
    return all(not (x.index == y.index and x.sign == -y.sign)
               for x, y in zip(w.letters, w.letters[1:]))


def invert_concat(w: BraidWord, v: BraidWord) -> BraidWord:
    """The word ``w^-1 v``."""
    if w.mode is not v.mode:
        raise ValueError("mode mismatch")
    return w.inverse() + v


class SignClass(enum.Enum):
    POSITIVE = "positive-alternating"
    NEGATIVE = "negative-alternating"
    NEITHER = "neither"


class SignPattern(NamedTuple):
    kind: SignClass
    ambiguous: bool  # True only for the empty word, which fits both classes


def letter_class(l: BraidLetter) -> SignClass:
    # positive: odd generators with +, even generators with -
    return SignClass.POSITIVE if (l.index % 2 == 1) == (l.sign > 0) else SignClass.NEGATIVE


def sign_class(w: BraidWord) -> SignPattern:
    if not w.letters:
        return SignPattern(SignClass.POSITIVE, True)
    kinds = {letter_class(l) for l in w.letters}
    if len(kinds) == 1:
        return SignPattern(kinds.pop(), False)
    return SignPattern(SignClass.NEITHER, False)
