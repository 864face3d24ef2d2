from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from tanglebracket.braid import Mode, SignClass, free_reduce, parse_word, sign_class, word
from tanglebracket.bracket import state_sum_link, state_sum_tangle
from tanglebracket.diagram import (DiagramError, PlanarDiagram, PlatTangle, build_plat, close,
                                   crossing_signs, euler_genus, flype_class, flypes, is_alternating,
                                   is_reduced, iter_plat_closures, writhe)


def plat(text: str, mode: str = "b4", bottom: int = 0) -> PlatTangle:
    return PlatTangle(parse_word(text, mode), bottom)


def random_plats(mode: Mode, max_len: int = 6):
    letter = st.tuples(st.integers(1, mode.generators), st.sampled_from((1, -1)))
    bottoms = st.integers(1, 5) if mode.n == 3 else st.just(0)
    return st.builds(lambda ls, b: PlatTangle(word(mode, ls), b),
                     st.lists(letter, max_size=max_len), bottoms)


def test_empty_six_plat():
    d = build_plat(plat("e", "b6", 3))
    assert d.n_crossings == 0
    assert d.arc_count() == 3
    assert len(d.endpoints) == 6


def test_single_letter_four_plat():
    d = build_plat(plat("s1"))
    assert d.n_crossings == 1
    assert len(d.endpoints) == 4


@given(random_plats(Mode.B6X))
def test_one_crossing_per_letter(p):
    d = build_plat(p)
    assert d.n_crossings == len(p.word)
    assert euler_genus(d) == 0
    assert d.arc_count() == 3


def test_unlink_closure():
    d = close(plat("e", "b6", 3), 3)
    assert d.n_crossings == 0
    assert d.component_count() == 3
    assert writhe(d) == 0


def test_trefoil_closure():
    d = close(plat("s1 s2^-1 s1"))
    assert d.n_crossings == 3
    assert d.component_count() == 1
    assert is_alternating(d)
    assert is_reduced(d)
    signs = crossing_signs(d)
    assert len(set(signs)) == 1
    assert abs(writhe(d)) == 3


@pytest.mark.parametrize("text, alternating", [
    ("s1 s2^-1 s1", True),
    ("s1 s2", False),
    ("e", True),
    ("s1^-1 s2 s1^-1 s2", True),
])
def test_four_plat_alternation(text, alternating):
    assert is_alternating(build_plat(plat(text))) is alternating


def test_direct_kink_is_nugatory():
    d = PlanarDiagram(((0, 0, 1, 1),))
    assert d.nugatory_crossings() == [0]
    assert not is_reduced(d)


@pytest.mark.parametrize("text, reduced", [
    ("s1 s2^-1 s1", True),
    ("s1 s2^-1 s1 s2", False),
    ("s2", False),
])
def test_four_plat_closure_reduced(text, reduced):
    assert is_reduced(close(plat(text))) is reduced


def test_mirror_negates_writhe():
    d = close(plat("s1 s2^-1 s1 s2^-1"))
    assert writhe(d.mirror()) == -writhe(d)


def test_bad_diagrams_rejected():
    with pytest.raises(DiagramError):
        PlanarDiagram(((0, 1, 2, 3),))
    with pytest.raises(DiagramError):
        PlanarDiagram((), endpoints=(0, 0))
    with pytest.raises(DiagramError):
        close(plat("s1"), 1)


def test_closures_of_six_plat():
    p = plat("s2 s3^-1", "b6", 3)
    closures = list(iter_plat_closures(p))
    assert [i for i, _ in closures] == [1, 2, 3, 4, 5]
    assert all(d.is_closed for _, d in closures)


def test_pd_export():
    text = close(plat("s1 s2^-1 s1")).to_pd()
    lines = text.splitlines()
    assert len(lines) == 3
    assert all(line.startswith("X ") and len(line.split()) == 5 for line in lines)
    tangle = build_plat(plat("s1")).to_pd()
    assert tangle.splitlines()[-1].startswith("ENDPOINTS ")


def test_kink_insertion():
    d = close(plat("s1 s2^-1 s1"))
    k = d.insert_kink(d.edges[0], 0)
    assert k.n_crossings == 4
    assert not is_reduced(k)
    assert k.component_count() == 1


@given(random_plats(Mode.B6X), st.randoms(use_true_random=False))
def test_canonical_code_ignores_edge_names(p, rnd):
    d = build_plat(p)
    names = d.edges
    shuffled = names[:]
    rnd.shuffle(shuffled)
    ren = dict(zip(names, (1000 + k for k in shuffled)))
    other = PlanarDiagram(tuple(tuple(ren[e] for e in c) for c in d.crossings),
                          tuple(ren[e] for e in d.endpoints), d.free_loops)
    assert other.canonical_code() == d.canonical_code()


@settings(max_examples=60, deadline=None)
@given(random_plats(Mode.B6X, 6))
def test_flypes_preserve_the_bracket(p):
    d = build_plat(p)
    base = state_sum_tangle(d)
    for f in flypes(d):
        assert euler_genus(f) == 0
        assert state_sum_tangle(f) == base
        assert is_alternating(f) == is_alternating(d)


def test_flype_moves_a_crossing_across_a_twist():
    # the two words differ by a flype of the s1^-2 twist region
    a = build_plat(plat("s2 s1^-2", "b6x", 1))
    b = build_plat(plat("s6 s1^-2", "b6x", 1))
    assert b.canonical_code() in flype_class(a)


def test_alternating_plat_closure_matches_sign_class():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 8)
        w = word(Mode.B4, [(rng.randint(1, 2), rng.choice((1, -1))) for _ in range(n)])
        w = free_reduce(w)
        expected = sign_class(w).kind is not SignClass.NEITHER
        assert is_alternating(close(PlatTangle(w))) is expected


def test_link_bracket_of_closures_is_consistent():
    d = close(plat("s1^2"))
    assert d.component_count() == 2
    assert state_sum_link(d) == state_sum_link(d.mirror()).mirror()
