"""Bracket-vector invariants of rational 2- and 3-tangles.

The vector of a tangle is defined up to the unit (-a^-3)^k: adding a kink
multiplies it by -a^(+-3). :func:`canonicalize` picks one representative per
orbit by placing the lowest exponent of the first nonzero entry in {0, 1, 2},
which is possible because each unit step shifts every exponent by exactly 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .braid import BraidWord, Mode, SignClass, sign_class
from .bracket import BracketVector, state_sum_tangle
from .diagram import PlatTangle, build_plat, standard_bottom
from .laurent import ONE, ZERO, LaurentPoly, unit_power, unit_quotient
from .tl import TransferMatrix, enumerate_matchings, transfer_matrix, word_matrix

Method = Literal["matrix", "oracle"]

#: Word and bottom label reproducing the reference Borromean vector.
BORROMEAN_WORD = "s2 s3^-1 s2 s3^-1 s2 s1^-1"
BORROMEAN_BOTTOM = 4
BORROMEAN_VECTOR = (
    LaurentPoly({-6: -1, -2: 3, 2: -3, 6: 1}),
    LaurentPoly({0: 1, 4: -2, 8: 1}),
    LaurentPoly({6: -2, 10: 1}),
    LaurentPoly({4: -1}),
    LaurentPoly({0: 1, 4: -2, 8: 1}),
)


def _check_method(method: str) -> None:
    if method not in ("matrix", "oracle"):
        raise ValueError(f"unknown method {method!r}; use 'matrix' or 'oracle'")


def vector_2tangle(w: BraidWord, method: Method = "matrix") -> BracketVector:
    """Coefficients (f, g) of <T> = f<T_0> + g<T_inf> for the 4-plat of ``w``."""
    if w.mode is not Mode.B4:
        raise ValueError("2-tangle vectors need a b4 word")
    _check_method(method)
    if method == "matrix":
        return BracketVector(2, tuple(word_matrix(w).column(1)))
    return state_sum_tangle(build_plat(PlatTangle(w)))


def vector_3tangle(p: PlatTangle, method: Method = "matrix") -> BracketVector:
    """Five-entry vector of the 6-plat tangle ``p`` over the basis 0_1..0_5."""
    if p.n != 3:
        raise ValueError("3-tangle vectors need a b6 or b6x word")
    _check_method(method)
    if method == "matrix":
        return BracketVector(3, tuple(word_matrix(p.word).column(p.bottom - 1)))
    return state_sum_tangle(build_plat(p))


def vector(p: PlatTangle, method: Method = "matrix") -> BracketVector:
    return vector_2tangle(p.word, method) if p.n == 2 else vector_3tangle(p, method)


def a2_power(m: int) -> TransferMatrix:
    """Closed form for the m-th power of the s2 matrix (m != 0).

    The lower-left entry (a^(m+2) + (-1)^(m+1) a^(2-3m)) / (1 + a^4) is
    computed by exact division.
    """
    if m == 0:
        raise ValueError("a2_power is defined for nonzero m only")
    sign = -1 if m % 2 else 1  # (-1)^m
    numer = LaurentPoly.monomial(m + 2) + LaurentPoly.monomial(2 - 3 * m, -sign)
    lower = numer.exact_div(LaurentPoly({0: 1, 4: 1}))
    return TransferMatrix(2, [[LaurentPoly.monomial(m), ZERO],
                              [lower, LaurentPoly.monomial(-3 * m, sign)]])


# -- unit orbits ------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalInvariant:
    """Orbit representative ``vector`` = (-a^-3)^unit_shift * input."""

    vector: BracketVector
    unit_shift: int

    def key(self) -> tuple:
        return (self.vector.n,) + tuple(tuple(map(tuple, e.to_terms())) for e in self.vector)

    def to_json(self) -> list:
        return self.vector.to_json()


def canonicalize(v: BracketVector) -> CanonicalInvariant:
    for e in v:
        if e:
            low = e.degree_bounds()[1]
            k = low // 3
            return CanonicalInvariant(v.scale(unit_power(k)), k)
    raise ValueError("the zero vector has no canonical form")


def equivalent(v: BracketVector, u: BracketVector) -> int | None:
    """Return k with v = (-a^-3)^k u, or None."""
    if len(v) != len(u):
        raise ValueError("vectors of different length")
    k: int | None = None
    for x, y in zip(v, u):
        if x.is_zero() and y.is_zero():
            continue
        q = unit_quotient(x, y)
        if q is None or (k is not None and q != k):
            return None
        k = q
    return 0 if k is None else k


def is_trivial_infinity(v: BracketVector) -> bool:
    if v.n != 2:
        raise ValueError("is_trivial_infinity applies to 2-tangle vectors")
    return equivalent(v, BracketVector(2, (ZERO, ONE))) is not None


# -- Conway fraction -------------------------------------------------------------------

@dataclass(frozen=True)
class Slope:
    """Extended rational p/q in lowest terms with q >= 0; infinity is 1/0."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        g = math.gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def __str__(self) -> str:
        if self.q == 0:
            return "inf"
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


INFINITY = Slope(1, 0)


def conway_fraction(w: BraidWord) -> Slope:
    """Fraction of the 4-plat tangle of an alternating b4 word.

    The bottom caps form the infinity tangle. Reading the word from the caps
    upward, a letter s2^e adds a horizontal twist (F -> F - e) and a letter
    s1^e adds a vertical twist (1/F -> 1/F + e).
    """
    if w.mode is not Mode.B4:
        raise ValueError("conway_fraction needs a b4 word")
    if sign_class(w).kind is SignClass.NEITHER:
        raise ValueError("conway_fraction needs an alternating word")
    p, q = 1, 0
    for index, sign in reversed(w.letters):
        if index == 2:
            p = p - sign * q
        else:
            q = q + sign * p
    return Slope(p, q)


# -- enumeration ------------------------------------------------------------------

Filter = Literal["reduced-alternating", "all"]


@dataclass(frozen=True)
class PlatRecord:
    plat: PlatTangle
    vector: BracketVector


def _adjacent(i: int, j: int, mode: Mode) -> bool:
    if mode is Mode.B6X:
        return (i - j) % 6 in (1, 5)
    return abs(i - j) == 1


def _braid_step(state: tuple[int, ...], letter: tuple[int, int], mode: Mode) -> tuple[int, ...] | None:
    """Advance per-position passage memory; None if a strand repeats over or under.

    ``state[p]`` is 0 (no crossing yet), 1 (last passed over) or 2 (under)
    for the strand currently at position p.
    """
    index, sign = letter
    p, q = mode.points(index)
    left, right = p - 1, q - 1
    # s^+ sends the left strand under to the right position; s^- sends it over.
    was_left, was_right = (2, 1) if sign > 0 else (1, 2)
    if state[left] == was_left or state[right] == was_right:
        return None
    new = list(state)
    new[right], new[left] = was_left, was_right
    return tuple(new)


def iter_words(mode: Mode, max_len: int, alternating: bool, min_len: int = 0):
    """Freely reduced words up to ``max_len``, with their word matrices.

    With ``alternating`` set, only words whose braid strands alternate over
    and under are produced (a prefix that fails can never recover).
    """
    letters = [(i, s) for i in range(1, mode.generators + 1) for s in (1, -1)]
    n = mode.n
    size = 2 * n

    def rec(word, state, mat):
        if len(word) >= min_len:
            yield BraidWord(mode, word), mat
        if len(word) == max_len:
            return
        for l in letters:
            if word and word[-1][0] == l[0] and word[-1][1] == -l[1]:
                continue
            nxt = state
            if alternating:
                nxt = _braid_step(state, l, mode)
                if nxt is None:
                    continue
            yield from rec(word + (l,), nxt, mat @ transfer_matrix(l, n))

    yield from rec((), (0,) * size, TransferMatrix.identity(n))



def iter_plats(max_crossings: int, mode: Mode = Mode.B6X, filter: Filter = "reduced-alternating",
               min_crossings: int = 0):
    """Plat tangles (every bottom) of freely reduced words, with matrix vectors.

    ``reduced-alternating`` keeps the plats whose tangle diagram is reduced
    and alternating.
    """
    from .diagram import is_alternating, is_reduced

    if filter not in ("reduced-alternating", "all"):
        raise ValueError(f"unknown filter {filter!r}")
    strict = filter == "reduced-alternating"
    bottoms = range(1, len(enumerate_matchings(mode.n)) + 1) if mode.n == 3 else [standard_bottom(2)]
    for w, mat in iter_words(mode, max_crossings, strict, min_crossings):
        for b in bottoms:
            p = PlatTangle(w, b)
            if strict:
                d = build_plat(p)
                if not (is_alternating(d) and is_reduced(d)):
                    continue
            yield PlatRecord(p, BracketVector(mode.n, tuple(mat.column(b - 1))))


# -- word moves and collision search ---------------------------------------------------

def _move_neighbours(letters: tuple, mode: Mode):
    """Words one far commutation or braid relation away."""
    L = len(letters)
    for k in range(L - 1):
        (i, s), (j, t) = letters[k], letters[k + 1]
        if i != j and not _adjacent(i, j, mode):
            yield letters[:k] + ((j, t), (i, s)) + letters[k + 2:]
    for k in range(L - 2):
        (i, e1), (j, e2), (i2, e3) = letters[k:k + 3]
        if i == i2 and _adjacent(i, j, mode) and e2 in (e1, e3):
            # s_i^e1 s_j^e2 s_i^e3 = s_j^e3 s_i^e2 s_j^e1
            yield letters[:k] + ((j, e3), (i, e2), (j, e1)) + letters[k + 3:]


def move_orbit(w: BraidWord) -> set[tuple]:
    """All words reachable from ``w`` by far commutation and braid relations."""
    start = tuple(w.letters)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for y in _move_neighbours(x, w.mode):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@dataclass
class CollisionClass:
    canonical: CanonicalInvariant
    plats: list[PlatTangle]
    suspect: bool

    def to_json(self) -> dict:
        return {"canonical": self.canonical.to_json(),
                "words": [{"word": str(p.word), "bottom": p.bottom} for p in self.plats],
                "suspect": self.suspect}


@dataclass
class CollisionReport:
    bound: int
    mode: Mode
    filter: str
    classes: list[CollisionClass]

    @property
    def suspects(self) -> list[CollisionClass]:
        return [c for c in self.classes if c.suspect]

    def to_json(self) -> dict:
        return {"bound": self.bound, "mode": self.mode.value, "filter": self.filter,
                "classes": [c.to_json() for c in self.classes]}


def _plat_sort_key(p: PlatTangle):
    return (len(p.word), p.bottom, [(i, -s) for i, s in p.word.letters])


def search_collisions(max_crossings: int, filter: Filter = "reduced-alternating",
                      mode: Mode = Mode.B6X) -> CollisionReport:
    """Group plats by canonical invariant and flag groups that moves do not connect.

    Two plats count as the same tangle when their tangle diagrams are related
    by flypes and planar isotopy fixing the boundary, or when their words (on
    the same bottom) are related by far commutation and braid relations. A class is
    suspect when this relation splits it into more than one part.
    """
    groups: dict[tuple, list[PlatRecord]] = {}
    canon: dict[tuple, CanonicalInvariant] = {}
    for rec in iter_plats(max_crossings, mode, filter):
        ci = canonicalize(rec.vector)
        key = ci.key()
        canon.setdefault(key, ci)
        groups.setdefault(key, []).append(rec)
    classes = []
    for key, recs in groups.items():
        plats = sorted((r.plat for r in recs), key=_plat_sort_key)
        classes.append(CollisionClass(canon[key], plats, _split(plats)))
    classes.sort(key=lambda c: _plat_sort_key(c.plats[0]))
    return CollisionReport(max_crossings, mode, filter, classes)


_FLYPE_CACHE: dict[tuple, frozenset] = {}


def _flype_class_cached(d) -> frozenset:
    from .diagram import flype_class

    code = d.canonical_code()
    if code not in _FLYPE_CACHE:
        cls = frozenset(flype_class(d))
        for x in cls:
            _FLYPE_CACHE[x] = cls
    return _FLYPE_CACHE[code]


def _split(plats: list[PlatTangle]) -> bool:
    if len(plats) == 1:
        return False
    parent = list(range(len(plats)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    anchor: dict[tuple, int] = {}
    orbit_of: dict[tuple, frozenset] = {}
    for k, p in enumerate(plats):
        d = build_plat(p)
        keys = [("diagram", min(_flype_class_cached(d)))]
        letters = tuple(p.word.letters)
        if letters not in orbit_of:
            orb = frozenset(move_orbit(p.word))
            for x in orb:
                orbit_of[x] = orb
        keys.append(("moves", p.bottom, min(orbit_of[letters])))
        for key in keys:
            if key in anchor:
                parent[find(k)] = find(anchor[key])
            else:
                anchor[key] = k
    return len({find(k) for k in range(len(plats))}) > 1
