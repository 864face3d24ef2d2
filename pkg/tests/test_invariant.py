from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tanglebracket.braid import Mode, free_reduce, is_freely_reduced, parse_word, word
from tanglebracket.bracket import BracketVector
from tanglebracket.diagram import PlatTangle, build_plat, is_alternating, is_reduced
from tanglebracket.invariant import (BORROMEAN_BOTTOM, BORROMEAN_VECTOR, BORROMEAN_WORD, INFINITY,
                                     Slope, a2_power, canonicalize, conway_fraction, equivalent,
                                     is_trivial_infinity, iter_plats, iter_words, move_orbit,
                                     search_collisions, vector, vector_2tangle, vector_3tangle)
from tanglebracket.laurent import A, DELTA, ONE, ZERO, LaurentPoly, unit_power
from tanglebracket.tl import TransferMatrix, word_matrix

U = unit_power(1)  # -a^-3


def v2(*entries):
    return BracketVector(2, entries)


def v3(*entries):
    return BracketVector(3, entries)


@pytest.mark.parametrize("text, expected", [
    ("e", (ZERO, ONE)),
    ("s1", (A ** -1, A)),
    ("s1^-1", (A, A ** -1)),
    ("s2^-1 s1", (A ** -2, 1 - A ** 4)),
])
@pytest.mark.parametrize("method", ["matrix", "oracle"])
def test_vector_2tangle(text, expected, method):
    assert tuple(vector_2tangle(parse_word(text, "b4"), method)) == expected


def test_vector_rejects_bad_input():
    with pytest.raises(ValueError):
        vector_2tangle(parse_word("s1", "b6"))
    with pytest.raises(ValueError):
        vector_3tangle(PlatTangle(parse_word("s1", "b4")))
    with pytest.raises(ValueError):
        vector_2tangle(parse_word("s1", "b4"), "magic")


@pytest.mark.parametrize("m, expected", [
    (1, [[A, ZERO], [A ** -1, -A ** -3]]),
    (2, [[A ** 2, ZERO], [1 - A ** -4, A ** -6]]),
    (-1, [[A ** -1, ZERO], [A, -A ** 3]]),
])
def test_a2_power_examples(m, expected):
    assert a2_power(m) == TransferMatrix(2, expected)


@pytest.mark.parametrize("m", [k for k in range(-12, 13) if k])
def test_a2_power_closed_form(m):
    assert a2_power(m) == word_matrix(word(Mode.B4, [(2, 1 if m > 0 else -1)] * abs(m)))


def test_a2_power_zero_rejected():
    with pytest.raises(ValueError):
        a2_power(0)


def test_empty_word_at_standard_bottom():
    v = vector_3tangle(PlatTangle(parse_word("e", "b6"), 3))
    assert tuple(v) == (ZERO, ZERO, ONE, ZERO, ZERO)


def test_borromean_example():
    p = PlatTangle(parse_word(BORROMEAN_WORD, "b6x"), BORROMEAN_BOTTOM)
    expected = (
        -A ** -6 + 3 * A ** -2 - 3 * A ** 2 + A ** 6,
        1 - 2 * A ** 4 + A ** 8,
        -2 * A ** 6 + A ** 10,
        -A ** 4,
        1 - 2 * A ** 4 + A ** 8,
    )
    assert BORROMEAN_VECTOR == expected
    assert tuple(vector_3tangle(p)) == expected
    assert tuple(vector_3tangle(p, "oracle")) == expected
    trivial = vector_3tangle(PlatTangle(parse_word("e", "b6"), 3))
    assert equivalent(trivial, vector_3tangle(p)) is None


@pytest.mark.parametrize("index", range(1, 7))
@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("bottom", range(1, 6))
def test_one_crossing_vectors(index, sign, bottom):
    p = PlatTangle(word(Mode.B6X, [(index, sign)]), bottom)
    entries = [e for e in vector_3tangle(p) if e]
    pts = Mode.B6X.points(index)
    if tuple(sorted(pts)) in p.bottom_matching.pairs:
        assert entries == [-(A ** (-3 * sign))]  # a kink on a cap
    else:
        assert sorted(entries, key=lambda e: e.degree_bounds()) == sorted([A ** sign, A ** -sign],
                                                                         key=lambda e: e.degree_bounds())


@pytest.mark.parametrize("v, expected, k", [
    (v2(ZERO, ONE), v2(ZERO, ONE), 0),
    (v2(ZERO, U), v2(ZERO, ONE), -1),
    (v2(A ** -6, A ** -5), v2(ONE, A), -2),
])
def test_canonicalize(v, expected, k):
    c = canonicalize(v)
    assert c.vector == expected
    assert c.unit_shift == k


@given(st.integers(-8, 8))
def test_canonical_form_is_a_class_invariant(k):
    v = v3(A ** -1 - A ** 3, DELTA, ZERO, A ** 5, ONE)
    assert canonicalize(v.scale(unit_power(k))).key() == canonicalize(v).key()


@pytest.mark.parametrize("v, u, k", [
    (v2(A, A ** -1), v2(A, A ** -1), 0),
    (v2(U * A, U * A ** -1), v2(A, A ** -1), 1),
    (v2(ZERO, ONE), v2(A ** -1, A), None),
    (v2(ONE, ONE), v2(ONE, -ONE), None),
])
def test_equivalent(v, u, k):
    assert equivalent(v, u) == k


def test_equivalent_needs_same_length():
    with pytest.raises(ValueError):
        equivalent(v2(ONE, ONE), v3(ONE, ONE, ONE, ONE, ONE))


@pytest.mark.parametrize("v, expected", [
    (v2(ZERO, A ** -6), True),
    (v2(A ** -1, A), False),
    (v2(A ** -2, 1 - A ** 4), False),
    (v2(ZERO, ONE), True),
])
def test_is_trivial_infinity(v, expected):
    assert is_trivial_infinity(v) is expected


@pytest.mark.parametrize("text, slope", [
    ("e", INFINITY),
    ("s1", Slope(1, 1)),
    ("s1^3", Slope(1, 3)),
    ("s1^-2", Slope(-1, 2)),
    ("s2^-1 s1", Slope(2, 1)),
])
def test_conway_fraction(text, slope):
    assert conway_fraction(parse_word(text, "b4")) == slope


def test_twists_on_the_caps_do_not_change_the_fraction():
    assert conway_fraction(parse_word("s1 s2^-3", "b4")) == conway_fraction(parse_word("s1", "b4"))


def test_conway_fraction_rejects():
    with pytest.raises(ValueError):
        conway_fraction(parse_word("s1 s2", "b4"))
    with pytest.raises(ValueError):
        conway_fraction(parse_word("s1", "b6"))


def test_slope_normalisation():
    assert Slope(2, -4) == Slope(-1, 2)
    assert Slope(-3, 0) == INFINITY
    assert str(INFINITY) == "inf"
    assert str(Slope(3, -6)) == "-1/2"
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_fraction_classes_match_invariant_classes():
    by_inv, by_frac = {}, {}
    for n in range(5):
        for letters in itertools.product(((1, 1), (2, -1)), repeat=n):
            for w in (word(Mode.B4, letters), word(Mode.B4, letters).mirror()):
                inv = canonicalize(vector_2tangle(w)).key()
                frac = conway_fraction(w)
                by_inv.setdefault(inv, set()).add(frac)
                by_frac.setdefault(frac, set()).add(inv)
    assert all(len(s) == 1 for s in by_inv.values())
    assert all(len(s) == 1 for s in by_frac.values())


def test_iter_words_matrices_and_reduction():
    for w, m in iter_words(Mode.B6X, 3, alternating=False):
        assert is_freely_reduced(w)
        assert m == word_matrix(w)
    count = sum(1 for _ in iter_words(Mode.B4, 3, alternating=False))
    assert count == 1 + 4 + 4 * 3 + 4 * 9


def test_alternating_pruning_loses_no_plats():
    got = {(p.plat.word, p.plat.bottom) for p in iter_plats(3, Mode.B6X)}
    brute = set()
    letters = [(i, s) for i in range(1, 7) for s in (1, -1)]
    for n in range(4):
        for ls in itertools.product(letters, repeat=n):
            w = word(Mode.B6X, ls)
            if free_reduce(w) != w:
                continue
            for b in range(1, 6):
                d = build_plat(PlatTangle(w, b))
                if is_alternating(d) and is_reduced(d):
                    brute.add((w, b))
    assert got == brute


def test_iter_plats_vectors():
    for rec in iter_plats(2, Mode.B6X, "all"):
        assert rec.vector == vector(rec.plat, "oracle")


def test_move_orbit():
    orbit = move_orbit(parse_word("s1 s2 s1", "b6"))
    assert tuple(parse_word("s2 s1 s2", "b6").letters) in orbit
    far = move_orbit(parse_word("s1 s3", "b6"))
    assert tuple(parse_word("s3 s1", "b6").letters) in far
    wrap = move_orbit(parse_word("s6 s1 s6", "b6x"))
    assert tuple(parse_word("s1 s6 s1", "b6x").letters) in wrap


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 6), st.sampled_from((1, -1))), max_size=5),
       st.integers(1, 6), st.integers(0, 5), st.integers(1, 5))
def test_inserting_a_cancelling_pair_keeps_the_vector(ls, g, pos, bottom):
    pos = min(pos, len(ls))
    longer = ls[:pos] + [(g, 1), (g, -1)] + ls[pos:]
    v = vector(PlatTangle(word(Mode.B6X, ls), bottom))
    u = vector(PlatTangle(word(Mode.B6X, longer), bottom))
    assert equivalent(v, u) == 0


def test_search_with_no_crossings():
    report = search_collisions(0)
    assert len(report.classes) == 5
    assert all(len(c.plats) == 1 and not c.suspect for c in report.classes)


def test_search_three_crossings_is_clean():
    report = search_collisions(3)
    assert report.suspects == []
    data = report.to_json()
    assert data["bound"] == 3
    assert set(data["classes"][0]) == {"canonical", "words", "suspect"}
    assert sum(len(c["words"]) for c in data["classes"]) == sum(len(c.plats) for c in report.classes)


def test_search_four_plats():
    report = search_collisions(4, mode=Mode.B4)
    assert report.suspects == []
    assert all(isinstance(c.canonical.vector[0], LaurentPoly) for c in report.classes)
