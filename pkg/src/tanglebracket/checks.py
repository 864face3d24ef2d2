"""Acceptance checks, shared by ``tanglebracket verify`` and the test suite.

Each check returns a :class:`CheckResult`; a check passes when its property
holds exactly and it finishes within its time budget.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _dense
from .braid import BraidWord, Mode, parse_word, word
from .bracket import (closure_bracket, family_vectors_batch, kauffman_polynomial,
                      smoothing_tables, state_sum_link)
from .diagram import (PlatTangle, build_plat, close, is_alternating, is_reduced,
                      writhe)
from .invariant import (BORROMEAN_BOTTOM, BORROMEAN_VECTOR, BORROMEAN_WORD, a2_power,
                        equivalent, iter_plats, search_collisions, vector_3tangle)
from .laurent import LaurentPoly, delta_power, unit_power
from .tl import TransferMatrix, enumerate_matchings, transfer_matrix, word_matrix


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: str = ""
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail} ({self.seconds:.1f}s, budget {self.budget:g}s)"


def _timed(number: int, name: str, budget: float, body: Callable[[], tuple[bool, str, list[str]]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail, failures = body()
    dt = time.perf_counter() - t0
    if dt > budget:
        ok = False
        detail += "; exceeded time budget"
    return CheckResult(number, name, ok, dt, budget, detail, failures)


def _mono(exp: int, coeff: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(exp, coeff)


def reference_matrix(index: int, sign: int) -> TransferMatrix:
    """The n=2 generator matrices in their reference form, for sign +1 or -1."""
    s = sign
    if index == 1:
        rows = [[_mono(-3 * s, -1), _mono(-s)], [LaurentPoly(), _mono(s)]]
    else:
        rows = [[_mono(s), LaurentPoly()], [_mono(-s), _mono(-3 * s, -1)]]
    return TransferMatrix(2, rows)


# -- 1 ---------------------------------------------------------------------------

def check_reference_matrices(transfer=transfer_matrix) -> CheckResult:
    """A_1, A_2 in reference form, and the closed form for powers of A_2."""

    def body():
        fails = []
        for idx in (1, 2):
            for sign in (1, -1):
                got = transfer((idx, sign), 2)
                if got != reference_matrix(idx, sign):
                    fails.append(f"A_{idx}^{sign}: got {got!r}")
        for m in range(-12, 13):
            if m == 0:
                continue
            prod = TransferMatrix.identity(2)
            for _ in range(abs(m)):
                prod = prod @ transfer((2, 1 if m > 0 else -1), 2)
            if a2_power(m) != prod:
                fails.append(f"a2_power({m}) differs from the product")
        return not fails, f"4 reference matrices, 24 powers, {len(fails)} mismatches", fails

    return _timed(1, "reference-matrix fidelity", 1.0, body)


# -- 2 ---------------------------------------------------------------------------

def check_borromean_example() -> CheckResult:
    def body():
        fails = []
        w = parse_word(BORROMEAN_WORD, Mode.B6X)
        v = vector_3tangle(PlatTangle(w, BORROMEAN_BOTTOM))
        if tuple(v) != BORROMEAN_VECTOR:
            fails.append(f"vector of {BORROMEAN_WORD} at bottom {BORROMEAN_BOTTOM} is {v}")
        e = vector_3tangle(PlatTangle(BraidWord(Mode.B6X), 3))
        unit = (0, 0, 1, 0, 0)
        if tuple(e) != tuple(LaurentPoly.constant(x) for x in unit):
            fails.append(f"empty word at bottom 3 gives {e}")
        if equivalent(e, v) is not None:
            fails.append("empty tangle and example tangle reported equivalent")
        return not fails, f"word '{BORROMEAN_WORD}' at bottom {BORROMEAN_BOTTOM}", fails

    return _timed(2, "worked example vector", 1.0, body)


# -- 3 ---------------------------------------------------------------------------

def _index_tree(gens: int, depth: int, n: int, off: int):
    """Depth-first walk over index sequences, extending each parent's family.

    Families are yielded in the (pattern, row, exponent, column) layout.
    """
    stack = [((), _dense.identity_family(n, off))]
    while stack:
        indices, fam = stack.pop()
        yield indices, fam
        if len(indices) < depth:
            for i in range(gens, 0, -1):
                stack.append((indices + (i,), _dense.extend_family(fam, i, n)))


def _compare_batch(mode: Mode, batch: list, off: int) -> list[str]:
    """Compare matrix families with state-sum families for sequences of one length."""
    if not batch:
        return []
    n = mode.n
    bottoms = range(1, len(enumerate_matchings(n)) + 1) if n == 3 else [2]
    plats = [(indices, b) for indices, _ in batch for b in bottoms]
    tangles = [build_plat(PlatTangle(word(mode, [(i, 1) for i in indices]), b)) for indices, b in plats]
    fams = {indices: fam for indices, fam in batch}
    out = []
    oracles = family_vectors_batch(smoothing_tables(tangles), off)
    for (indices, b), oracle in zip(plats, oracles):
        bad = np.nonzero(np.any(oracle != fams[indices][:, :, :, b - 1], axis=(1, 2)))[0]
        for p in bad[:3]:
            signs = list(itertools.product((1, -1), repeat=len(indices)))[p]
            out.append(f"{word(mode, zip(indices, signs))} bottom {b}")
    return out


def check_oracle_equivalence(max_b4: int = 8, max_b6: int = 6, batch_size: int = 64) -> CheckResult:
    def body():
        fails: list[str] = []
        counts = {Mode.B4: 0, Mode.B6X: 0}
        for mode, top in ((Mode.B4, max_b4), (Mode.B6X, max_b6)):
            off = _dense.width_for(top, mode.n)
            pending: dict[int, list] = {}
            for indices, fam in _index_tree(mode.generators, top, mode.n, off):
                counts[mode] += fam.shape[0]
                group = pending.setdefault(len(indices), [])
                group.append((indices, fam))
                if len(group) >= batch_size:
                    fails += _compare_batch(mode, group, off)
                    group.clear()
            for group in pending.values():
                fails += _compare_batch(mode, group, off)
        nb = len(enumerate_matchings(3))
        detail = (f"{counts[Mode.B4]} b4 words, {counts[Mode.B6X]} b6x words x {nb} bottoms "
                  f"(b6 words included), {len(fails)} mismatches")
        return not fails, detail, fails[:20]

    return _timed(3, "matrix path = state-sum path", 300.0, body)


# -- 4 ---------------------------------------------------------------------------

def _adjacent_pairs(mode: Mode):
    g = mode.generators
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            if i == j:
                continue
            adj = abs(i - j) == 1 or (mode is Mode.B6X and {i, j} == {1, 6})
            yield i, j, adj


def check_regular_isotopy(kinks: int = 100, seed: int = 2024) -> CheckResult:
    def body():
        fails = []
        relations = 0
        for mode in (Mode.B4, Mode.B6X):
            n = mode.n
            for i in range(1, mode.generators + 1):
                for s in (1, -1):
                    if word_matrix(word(mode, [(i, s), (i, -s)])) != TransferMatrix.identity(n):
                        fails.append(f"{mode.value}: s{i}^{s} s{i}^{-s} is not the identity")
                    relations += 1
            for i, j, adj in _adjacent_pairs(mode):
                for e in itertools.product((1, -1), repeat=3 if adj else 2):
                    if adj:
                        if e[1] not in (e[0], e[2]):
                            continue
                        lhs = word(mode, [(i, e[0]), (j, e[1]), (i, e[2])])
                        rhs = word(mode, [(j, e[2]), (i, e[1]), (j, e[0])])
                    else:
                        lhs = word(mode, [(i, e[0]), (j, e[1])])
                        rhs = word(mode, [(j, e[1]), (i, e[0])])
                    if word_matrix(lhs) != word_matrix(rhs):
                        fails.append(f"{mode.value}: {lhs} != {rhs}")
                    relations += 1
        rng = random.Random(seed)
        good_units = {unit_power(1), unit_power(-1)}
        for _ in range(kinks):
            mode = rng.choice((Mode.B4, Mode.B6X))
            length = rng.randint(1, 6)
            letters = [(rng.randint(1, mode.generators), rng.choice((1, -1))) for _ in range(length)]
            p = PlatTangle(word(mode, letters), rng.randint(1, 5) if mode.n == 3 else 0)
            d = close(p, rng.randint(1, 5) if mode.n == 3 else None)
            edge = rng.choice(d.edges)
            k = d.insert_kink(edge, rng.randrange(4))
            before, after = state_sum_link(d), state_sum_link(k)
            ratio = [u for u in good_units if u * before == after]
            if not ratio or kauffman_polynomial(k) != kauffman_polynomial(d):
                fails.append(f"kink on edge {edge} of {p.word} closure")
        detail = f"{relations} matrix identities, {kinks} kinks, {len(fails)} failures"
        return not fails, detail, fails

    return _timed(4, "regular isotopy and R1 covariance", 60.0, body)


# -- 5 ---------------------------------------------------------------------------

def check_single_crossing_closures() -> CheckResult:
    def body():
        fails = []
        count = 0
        for i in range(1, 7):
            for s in (1, -1):
                for b in range(1, 6):
                    p = PlatTangle(word(Mode.B6X, [(i, s)]), b)
                    for c in range(1, 6):
                        d = close(p, c)
                        t = d.component_count()
                        x = kauffman_polynomial(d)
                        count += 1
                        if x != delta_power(t - 1):
                            fails.append(f"s{i}^{s} bottom {b} closure {c}: X = {x}, t = {t}")
        return not fails, f"{count} closures of one-crossing tangles, {len(fails)} failures", fails

    return _timed(5, "one-crossing closures give delta^(t-1)", 1.0, body)


# -- 6 and 7 -------------------------------------------------------------------------

@dataclass
class SweepStats:
    tangles: int = 0
    without_good_closure: list[str] = field(default_factory=list)
    murasugi_checked: int = 0
    murasugi_failures: list[str] = field(default_factory=list)
    seconds: float = 0.0


def reduced_alternating_sweep(min_crossings: int = 2, max_crossings: int = 5) -> SweepStats:
    """Closures of every reduced alternating 6-plat tangle in the size range."""
    stats = SweepStats()
    t0 = time.perf_counter()
    for rec in iter_plats(max_crossings, Mode.B6X, "reduced-alternating", min_crossings):
        stats.tangles += 1
        p = rec.plat
        c = len(p.word)
        found = False
        for i in range(1, 6):
            d = close(p, i)
            if not (is_alternating(d) and is_reduced(d)):
                continue
            found = True
            if not d.is_connected():
                continue
            x = unit_power(writhe(d)) * closure_bracket(rec.vector, i)
            stats.murasugi_checked += 1
            if x.span() != 4 * c:
                stats.murasugi_failures.append(f"{p.word} bottom {p.bottom} closure {i}: span {x.span()}")
        if not found:
            stats.without_good_closure.append(f"{p.word} bottom {p.bottom}")
    stats.seconds = time.perf_counter() - t0
    return stats


def check_good_closure(stats: SweepStats) -> CheckResult:
    ok = not stats.without_good_closure and stats.seconds <= 600.0
    detail = f"{stats.tangles} tangles with 2..5 crossings, {len(stats.without_good_closure)} without a reduced alternating closure"
    if stats.seconds > 600.0:
        detail += "; exceeded time budget"
    return CheckResult(6, "some closure is reduced alternating", ok, stats.seconds, 600.0, detail,
                       stats.without_good_closure[:20])


def check_murasugi(stats: SweepStats) -> CheckResult:
    ok = not stats.murasugi_failures and stats.murasugi_checked > 0
    detail = f"{stats.murasugi_checked} connected reduced alternating closures, {len(stats.murasugi_failures)} with span/4 != crossings"
    return CheckResult(7, "span of X is 4x crossings", ok, 0.0, 600.0, detail, stats.murasugi_failures[:20])


# -- 8 ---------------------------------------------------------------------------

def check_two_tangle_classification(max_len: int = 6) -> CheckResult:
    from .invariant import canonicalize, conway_fraction, vector_2tangle

    def body():
        by_inv: dict = {}
        by_frac: dict = {}
        words = 0
        for length in range(max_len + 1):
            for cls in (((1, 1), (2, -1)), ((1, -1), (2, 1))):
                for letters in itertools.product(cls, repeat=length):
                    w = word(Mode.B4, letters)
                    words += 1
                    inv = canonicalize(vector_2tangle(w)).key()
                    frac = str(conway_fraction(w))
                    by_inv.setdefault(inv, set()).add(frac)
                    by_frac.setdefault(frac, set()).add(inv)
        fails = [f"invariant class with fractions {sorted(v)}" for v in by_inv.values() if len(v) > 1]
        fails += [f"fraction {k} split over {len(v)} invariant classes" for k, v in by_frac.items() if len(v) > 1]
        detail = f"{words} words, {len(by_inv)} invariant classes, {len(by_frac)} fractions, {len(fails)} mismatches"
        return not fails, detail, fails

    return _timed(8, "2-tangle classes = Conway fraction classes", 60.0, body)


# -- 9 ---------------------------------------------------------------------------

def check_collisions(max_crossings: int = 5) -> CheckResult:
    def body():
        rep = search_collisions(max_crossings, "reduced-alternating", Mode.B6X)
        sus = rep.suspects
        fails = ["; ".join(f"{p.word} @ {p.bottom}" for p in c.plats) for c in sus]
        words = sum(len(c.plats) for c in rep.classes)
        detail = f"{words} plats in {len(rep.classes)} invariant classes, {len(sus)} suspect classes"
        return not sus, detail, fails

    return _timed(9, "collision search finds no suspects", 900.0, body)


def run_all(progress: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    results = []

    def emit(r):
        results.append(r)
        if progress:
            progress(r)

    emit(check_reference_matrices())
    emit(check_borromean_example())
    emit(check_oracle_equivalence())
    emit(check_regular_isotopy())
    emit(check_single_crossing_closures())
    stats = reduced_alternating_sweep()
    emit(check_good_closure(stats))
    emit(check_murasugi(stats))
    emit(check_two_tangle_classification())
    emit(check_collisions())
    return results
