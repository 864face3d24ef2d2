"""Crossingless matchings and the Temperley-Lieb action of braid generators.

Boundary points of a tangle are numbered 1..2n along the top of the plat,
left to right; around the boundary circle, point 2n is adjacent to point 1.

A crossing twisting points (p, q) acts on a matching by the skein expansion

    s^+  ->  a * id + a^-1 * e_p
    s^-  ->  a^-1 * id + a * e_p

where ``e_p`` is the cup-cap on (p, q) and each closed loop contributes
delta = -a^2 - a^-2. Transfer matrices hold in column j the image of basis
matching j. With the basis orders below, the n=2 matrices of ``s1`` and
``s2`` are

    [[-a^-3, a^-1],      [[a,    0    ],
     [ 0,    a   ]]       [a^-1, -a^-3]].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .braid import BraidLetter, BraidWord, Mode
from .laurent import A, A_INV, ONE, ZERO, LaurentPoly, delta_power

MAX_N = 6


@dataclass(frozen=True, order=True)
class Matching:
    """Noncrossing perfect matching of points 1..2n, stored as sorted pairs."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        pts = [x for p in pairs for x in p]
        if sorted(pts) != list(range(1, len(pts) + 1)):
            raise ValueError(f"not a perfect matching of 1..{len(pts)}: {pairs}")
        for (i, j), (k, l) in itertools.combinations(pairs, 2):
            if i < k < j < l or k < i < l < j:
                raise ValueError(f"pairs {(i, j)} and {(k, l)} cross")

    @property
    def n(self) -> int:
        return len(self.pairs)

    def partner(self, p: int) -> int:
        for i, j in self.pairs:
            if i == p:
                return j
            if j == p:
                return i
        raise KeyError(p)

    def partners(self) -> tuple[int, ...]:
        """0-based partner array: ``partners()[p-1] == partner(p) - 1``."""
        out = [0] * (2 * self.n)
        for i, j in self.pairs:
            out[i - 1], out[j - 1] = j - 1, i - 1
        return tuple(out)

    @classmethod
    def from_partners(cls, partners: Sequence[int]) -> Matching:
        return cls(tuple((i + 1, j + 1) for i, j in enumerate(partners) if i < j))

    def __str__(self) -> str:
        return "{" + ",".join(f"({i},{j})" for i, j in self.pairs) + "}"


def _noncrossing(points: list[int]) -> list[list[tuple[int, int]]]:
    if not points:
        return [[]]
    first, rest = points[0], points[1:]
    out = []
    for k in range(0, len(rest), 2):
        inside, outside = rest[:k], rest[k + 1:]
        for a in _noncrossing(inside):
            for b in _noncrossing(outside):
                out.append([(first, rest[k])] + a + b)
    return out


# Basis orders with their customary labels. n=2: [T_0, T_inf]. n=3: 0_1..0_5, where 0_3 is the
# standard plat bottom {(1,2),(3,4),(5,6)}, 0_1 is its rotation by one point,
# and 0_2, 0_4, 0_5 are the three matchings with a nested arc.
_LABELLED_ORDER = {
    2: [((1, 4), (2, 3)), ((1, 2), (3, 4))],
    3: [((1, 6), (2, 3), (4, 5)),
        ((1, 4), (2, 3), (5, 6)),
        ((1, 2), (3, 4), (5, 6)),
        ((1, 2), (3, 6), (4, 5)),
        ((1, 6), (2, 5), (3, 4))],
}


@lru_cache(maxsize=None)
def enumerate_matchings(n: int) -> tuple[Matching, ...]:
    """All C_n noncrossing matchings of 2n points in basis order.

    n=2 and n=3 use the labelled bases above; other n use lexicographic order.
    """
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
    if n in _LABELLED_ORDER:
        return tuple(Matching(p) for p in _LABELLED_ORDER[n])
    return tuple(sorted(Matching(tuple(m)) for m in _noncrossing(list(range(1, 2 * n + 1)))))


@lru_cache(maxsize=None)
def _index_map(n: int) -> dict[Matching, int]:
    return {m: k for k, m in enumerate(enumerate_matchings(n))}


def matching_index(m: Matching) -> int:
    """1-based basis label of ``m``."""
    return _index_map(m.n)[m] + 1


def basis_matching(n: int, index: int) -> Matching:
    """Basis matching with 1-based label ``index``."""
    basis = enumerate_matchings(n)
    if not 1 <= index <= len(basis):
        raise IndexError(f"matching index {index} out of range 1..{len(basis)}")
    return basis[index - 1]


def apply_cupcap(m: Matching, i: int) -> tuple[Matching, int]:
    """Cup-cap on points (i, i+1), with 2n wrapping to 1. Returns (matching, loops)."""
    size = 2 * m.n
    if not 1 <= i <= size:
        raise ValueError(f"cup-cap position {i} out of range 1..{size}")
    p, q = i - 1, i % size
    partner = list(m.partners())
    if partner[p] == q:
        return m, 1
    x, y = partner[p], partner[q]
    partner[x], partner[y] = y, x
    partner[p], partner[q] = q, p
    return Matching.from_partners(partner), 0


def cap_pairing(i: Matching, j: Matching) -> int:
    """Number of circles formed by gluing ``j`` to the mirror image of ``i``."""
    if i.n != j.n:
        raise ValueError("matchings of different sizes")
    pi, pj = i.partners(), j.partners()
    seen = [False] * (2 * i.n)
    loops = 0
    for start in range(2 * i.n):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            q = pi[p]
            seen[q] = True
            p = pj[q]
    return loops


class TransferMatrix:
    """Square matrix over Z[a, a^-1] acting on the matching basis."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Sequence[Sequence[LaurentPoly]]):
        self.n = n
        self.entries = tuple(tuple(row) for row in entries)
        size = len(enumerate_matchings(n))
        if len(self.entries) != size or any(len(r) != size for r in self.entries):
            raise ValueError(f"expected a {size}x{size} matrix")

    @classmethod
    def identity(cls, n: int) -> TransferMatrix:
        size = len(enumerate_matchings(n))
        return cls(n, [[ONE if r == c else ZERO for c in range(size)] for r in range(size)])

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, rc: tuple[int, int]) -> LaurentPoly:
        r, c = rc
        return self.entries[r][c]

    def __matmul__(self, other: TransferMatrix) -> TransferMatrix:
        if other.n != self.n:
            raise ValueError("size mismatch")
        k = self.size
        out = []
        for r in range(k):
            row = []
            for c in range(k):
                acc = ZERO
                for j in range(k):
                    x, y = self.entries[r][j], other.entries[j][c]
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return TransferMatrix(self.n, out)

    def apply(self, vector: Sequence[LaurentPoly]) -> list[LaurentPoly]:
        out = []
        for row in self.entries:
            acc = ZERO
            for x, y in zip(row, vector):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return out

    def column(self, j: int) -> list[LaurentPoly]:
        """0-based column ``j``."""
        return [row[j] for row in self.entries]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransferMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.n, self.entries))

    def to_json(self) -> list[list[list[list[int]]]]:
        """Row-major array of term lists."""
        return [[p.to_terms() for p in row] for row in self.entries]

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(str(p) for p in row) + "]" for row in self.entries)
        return f"TransferMatrix(n={self.n}, [{rows}])"


def generator_points(index: int, n: int) -> tuple[int, int]:
    """Boundary points twisted by generator ``index`` of the n-arc word mode.

    For n=2 the standard-plat indexing applies (s1 -> (2,3), s2 -> (3,4)).
    For n=3 generators 1..5 twist (i, i+1) and 6 twists the wrap-around (6, 1).
    """
    if n == 2:
        if index not in (1, 2):
            raise ValueError(f"n=2 generator must be 1 or 2, got {index}")
        return Mode.B4.points(index)
    if n == 3:
        if not 1 <= index <= 6:
            raise ValueError(f"n=3 generator must be in 1..6, got {index}")
        return Mode.B6X.points(index)
    if not 1 <= index <= 2 * n:
        raise ValueError(f"generator {index} out of range for n={n}")
    return index, index % (2 * n) + 1


@lru_cache(maxsize=None)
def cupcap_matrix(position: int, n: int) -> TransferMatrix:
    """Matrix of the cup-cap ``e_position`` on the basis."""
    basis = enumerate_matchings(n)
    index = _index_map(n)
    size = len(basis)
    cols = [[ZERO] * size for _ in range(size)]
    for j, m in enumerate(basis):
        image, loops = apply_cupcap(m, position)
        cols[j][index[image]] = delta_power(loops)
    return TransferMatrix(n, [[cols[c][r] for c in range(size)] for r in range(size)])


@lru_cache(maxsize=None)
def _transfer(index: int, sign: int, n: int) -> TransferMatrix:
    p, _ = generator_points(index, n)
    e = cupcap_matrix(p, n)
    ident, other = (A, A_INV) if sign > 0 else (A_INV, A)
    size = e.size
    return TransferMatrix(n, [
        [(ident if r == c else ZERO) + other * e[r, c] for c in range(size)]
        for r in range(size)
    ])


def transfer_matrix(letter: BraidLetter | tuple[int, int], n: int) -> TransferMatrix:
    index, sign = letter
    if sign not in (1, -1):
        raise ValueError(f"bad sign {sign}")
    return _transfer(index, sign, n)


def word_matrix(w: BraidWord | Sequence[tuple[int, int]], n: int | None = None) -> TransferMatrix:
    """Ordered product of the letters' transfer matrices (top letter leftmost)."""
    if isinstance(w, BraidWord):
        n = w.mode.n if n is None else n
        letters = w.letters
    else:
        letters = tuple(w)
        if n is None:
            raise ValueError("n is required for a bare letter sequence")
    out = TransferMatrix.identity(n)
    for l in letters:
        out = out @ transfer_matrix(l, n)
    return out
