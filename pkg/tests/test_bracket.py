from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tanglebracket import _dense
from tanglebracket.braid import Mode, parse_word, word
from tanglebracket.bracket import (BoundExceeded, BracketVector, closure_bracket, family_vectors_dense,
                                   kauffman_polynomial, smoothing_table, smoothing_tables,
                                   state_sum_link, state_sum_tangle)
from tanglebracket.diagram import PlanarDiagram, PlatTangle, build_plat, close
from tanglebracket.laurent import A, DELTA, ONE, ZERO, LaurentPoly, delta_power
from tanglebracket.tl import word_matrix


def plat(text: str, mode: str = "b4", bottom: int = 0) -> PlatTangle:
    return PlatTangle(parse_word(text, mode), bottom)


def random_plats(mode: Mode, max_len: int = 6):
    letter = st.tuples(st.integers(1, mode.generators), st.sampled_from((1, -1)))
    bottoms = st.integers(1, 5) if mode.n == 3 else st.just(0)
    return st.builds(lambda ls, b: PlatTangle(word(mode, ls), b),
                     st.lists(letter, max_size=max_len), bottoms)


@pytest.mark.parametrize("text, expected", [
    ("e", (ZERO, ONE)),
    ("s1", (A ** -1, A)),
    ("s2^-1 s1", (A ** -2, 1 - A ** 4)),
])
def test_four_plat_state_sums(text, expected):
    assert tuple(state_sum_tangle(build_plat(plat(text)))) == expected


def test_unknot_and_unlink():
    assert state_sum_link(PlanarDiagram((), free_loops=1)) == ONE
    assert state_sum_link(PlanarDiagram((), free_loops=2)) == DELTA
    assert state_sum_link(close(plat("e", "b6", 3), 3)) == DELTA * DELTA


def test_hopf_link():
    d = close(plat("s1^2"))
    assert d.component_count() == 2
    assert state_sum_link(d) == -A ** 4 - A ** -4


def test_kinked_unknot_has_trivial_x():
    d = close(plat("s1"))  # a one-crossing unknot
    assert d.component_count() == 1
    assert kauffman_polynomial(d) == ONE
    assert kauffman_polynomial(d.insert_kink(d.edges[0], 3)) == ONE


def test_trefoil_span():
    x = kauffman_polynomial(close(plat("s1 s2^-1 s1")))
    assert x.span() == 12


@pytest.mark.parametrize("i", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("letter", [(g, s) for g in range(1, 7) for s in (1, -1)])
def test_one_crossing_closures(letter, i):
    for bottom in range(1, 6):
        d = close(PlatTangle(word(Mode.B6X, [letter]), bottom), i)
        assert kauffman_polynomial(d) == delta_power(d.component_count() - 1)


def test_closure_bracket_of_trivial_vector():
    v = BracketVector(3, (ZERO, ZERO, ONE, ZERO, ZERO))
    assert closure_bracket(v, 3) == DELTA * DELTA


@settings(max_examples=80, deadline=None)
@given(random_plats(Mode.B6X), st.integers(1, 5))
def test_closure_bracket_matches_link_state_sum(p, i):
    v = BracketVector(3, tuple(word_matrix(p.word).column(p.bottom - 1)))
    assert closure_bracket(v, i) == state_sum_link(close(p, i))


@settings(max_examples=80, deadline=None)
@given(random_plats(Mode.B6X))
def test_state_sum_matches_matrix_path(p):
    expected = tuple(word_matrix(p.word).column(p.bottom - 1))
    assert tuple(state_sum_tangle(build_plat(p))) == expected


@settings(max_examples=40, deadline=None)
@given(random_plats(Mode.B4, 8))
def test_mirror_conjugates(p):
    v = state_sum_tangle(build_plat(p))
    m = state_sum_tangle(build_plat(PlatTangle(p.word.mirror())))
    assert m == v.mirror()


def test_bound_is_enforced():
    d = close(plat("s1^21"))
    with pytest.raises(BoundExceeded):
        state_sum_link(d)
    with pytest.raises(BoundExceeded):
        state_sum_link(close(plat("s1^5")), max_crossings=4)


def test_open_and_empty_diagrams_rejected():
    with pytest.raises(ValueError):
        state_sum_link(build_plat(plat("s1")))
    with pytest.raises(ValueError):
        state_sum_link(PlanarDiagram(()))


def test_batched_tables_match_single_tables():
    plats = [plat(w, "b6x", b) for w in ("s1 s2 s6^-1", "s3^-1 s4 s5") for b in (1, 3, 5)]
    ds = [build_plat(p) for p in plats]
    for d, t in zip(ds, smoothing_tables(ds)):
        single = smoothing_table(d)
        assert np.array_equal(single.basis, t.basis)
        assert np.array_equal(single.loops, t.loops)


def test_sign_family_matches_individual_state_sums():
    indices = (2, 6, 3, 2)
    off = _dense.width_for(len(indices), 3)
    plus = build_plat(PlatTangle(word(Mode.B6X, [(i, 1) for i in indices]), 4))
    fam = family_vectors_dense(smoothing_table(plus), off)
    for p, signs in enumerate(itertools.product((1, -1), repeat=len(indices))):
        v = state_sum_tangle(build_plat(PlatTangle(word(Mode.B6X, zip(indices, signs)), 4)))
        got = tuple(_dense.from_dense(fam[p, j], off) for j in range(5))
        assert got == tuple(v)


def test_dense_matrix_family_matches_exact_products():
    indices = (1, 2, 1)
    off = _dense.width_for(3, 2)
    fam = _dense.word_matrix_family(indices, 2, off)
    for p, signs in enumerate(itertools.product((1, -1), repeat=3)):
        m = word_matrix(word(Mode.B4, zip(indices, signs)))
        for r, c in itertools.product(range(2), repeat=2):
            assert _dense.from_dense(fam[p, r, c], off) == m[r, c]


def test_vector_json_and_text():
    v = state_sum_tangle(build_plat(plat("s1")))
    assert v.to_json() == [[[-1, 1]], [[1, 1]]]
    assert str(v) == "(a^-1, a)"
    assert v.scale(A) == BracketVector(2, (ONE, A ** 2))
    assert LaurentPoly.from_terms(v.to_json()[1]) == A
