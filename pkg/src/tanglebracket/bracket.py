"""Kauffman bracket state sums over planar diagrams.

This is the slow, independent path: every one of the 2^c smoothings is
enumerated and its loops are counted with a connected-components pass, so it
shares nothing with the transfer matrices except the skein rules themselves.

At a crossing with slots (s0, s1, s2, s3) the A-smoothing joins s0-s1 and
s2-s3 and the B-smoothing joins s0-s3 and s1-s2. State bit k set means
crossing k takes its B-smoothing; states are enumerated in binary counting
order on the crossing index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _dense
from .diagram import PlanarDiagram, writhe
from .laurent import ZERO, LaurentPoly, delta_power, unit_power
from .tl import cap_pairing, enumerate_matchings, basis_matching

DEFAULT_MAX_CROSSINGS = 20
_CHUNK_NODES = 1 << 21
FAMILY_MAX_CROSSINGS = _dense.MAX_LETTERS


class BoundExceeded(RuntimeError):
    """The requested computation is larger than the configured bound."""


@dataclass(frozen=True)
class BracketVector:
    """Bracket coefficients over the matching basis (C_n entries)."""

    n: int
    entries: tuple[LaurentPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != len(enumerate_matchings(self.n)):
            raise ValueError(f"an n={self.n} bracket vector has {len(enumerate_matchings(self.n))} entries")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.entries[k]

    def __iter__(self) -> Iterator[LaurentPoly]:
        return iter(self.entries)

    def scale(self, p: LaurentPoly) -> BracketVector:
        return BracketVector(self.n, tuple(p * e for e in self.entries))

    def mirror(self) -> BracketVector:
        return BracketVector(self.n, tuple(e.mirror() for e in self.entries))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def to_json(self) -> list[list[list[int]]]:
        return [e.to_terms() for e in self.entries]

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


# -- smoothing tables ---------------------------------------------------------

@dataclass(frozen=True)
class SmoothingTable:
    """Per-state data of a diagram: residual matching, loop count, state bits.

    ``basis`` holds the 0-based basis label of the arcs left by each state
    (-1 for closed diagrams); ``loops`` counts closed circles, free loops
    included.
    """

    n: int
    basis: np.ndarray
    loops: np.ndarray
    bits: np.ndarray

    @property
    def crossings(self) -> int:
        return self.bits.shape[1]


def _state_bits(c: int, start: int, stop: int) -> np.ndarray:
    s = np.arange(start, stop, dtype=np.int64)
    return ((s[:, None] >> np.arange(c, dtype=np.int64)[None, :]) & 1).astype(np.int8)


def _smoothing_pairs(d: PlanarDiagram) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(d.crossings, dtype=np.int64).reshape(-1, 4)
    a_pairs = np.stack([x[:, [0, 1]], x[:, [2, 3]]], axis=1)  # (c, 2, 2)
    b_pairs = np.stack([x[:, [0, 3]], x[:, [1, 2]]], axis=1)
    return a_pairs, b_pairs


def _match_codes(n: int) -> tuple[np.ndarray, np.ndarray]:
    m = 2 * n
    weights = m ** np.arange(m, dtype=np.int64)
    codes = np.array([np.dot(b.partners(), weights) for b in enumerate_matchings(n)], dtype=np.int64)
    order = np.argsort(codes)
    return codes[order], order


def _compact(d: PlanarDiagram) -> PlanarDiagram:
    """Relabel edges to 0..E-1 so they can index a node array."""
    edges = d.edges
    if edges == list(range(len(edges))):
        return d
    remap = {e: k for k, e in enumerate(edges)}
    return PlanarDiagram(tuple(tuple(remap[e] for e in x) for x in d.crossings),
                         tuple(remap[e] for e in d.endpoints), d.free_loops)


def _label_states(a_pairs: np.ndarray, b_pairs: np.ndarray, bits: np.ndarray, E: int) -> np.ndarray:
    """Component labels of every edge in every state of every diagram.

    ``a_pairs``/``b_pairs`` have shape (D, c, 2, 2); ``bits`` has shape (k, c).
    Returns labels of shape (D, k, E).
    """
    D = a_pairs.shape[0]
    k, c = bits.shape
    nodes = D * k * E
    if c:
        choose = bits.astype(bool)[None, :, :, None, None]
        offs = (np.arange(D * k, dtype=np.int64) * E).reshape(D, k, 1, 1, 1)
        pairs = np.where(choose, b_pairs[:, None], a_pairs[:, None]) + offs
        u = pairs[..., 0].ravel()
        v = pairs[..., 1].ravel()
    else:
        u = v = np.zeros(0, dtype=np.int64)
    g = coo_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(nodes, nodes))
    _, labels = connected_components(g, directed=False)
    return labels.reshape(D, k, E)


def _summarise(labels: np.ndarray, ends: np.ndarray, n: int, free_loops: np.ndarray):
    """Loop counts and residual basis labels from component labels (D, k, E)."""
    D, k, E = labels.shape
    srt = np.sort(labels, axis=2)
    distinct = 1 + np.count_nonzero(np.diff(srt, axis=2), axis=2) if E else np.zeros((D, k), dtype=np.int64)
    loops = distinct - n + free_loops[:, None]
    basis = np.full((D, k), -1, dtype=np.int64)
    if n:
        m = 2 * n
        codes, order = _match_codes(n)
        weights = m ** np.arange(m, dtype=np.int64)
        el = np.take_along_axis(labels, np.broadcast_to(ends[:, None, :], (D, k, m)), axis=2)
        eq = el[..., :, None] == el[..., None, :]
        eq[..., np.arange(m), np.arange(m)] = False
        partner = np.argmax(eq, axis=-1)
        basis = order[np.searchsorted(codes, partner @ weights)]
    return basis, loops


def smoothing_table(d: PlanarDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> SmoothingTable:
    """Enumerate all smoothings of ``d`` and record their residual structure."""
    c = d.n_crossings
    if c > max_crossings:
        raise BoundExceeded(f"{c} crossings exceeds the state-sum bound {max_crossings}")
    n = len(d.endpoints) // 2
    S = 1 << c
    E = len(d.edges)
    if E == 0:
        return SmoothingTable(n, np.full(S, -1, dtype=np.int64), np.full(S, d.free_loops, dtype=np.int64),
                              _state_bits(c, 0, S))
    comp = _compact(d)
    a_pairs, b_pairs = _smoothing_pairs(comp)
    ends = np.asarray(comp.endpoints, dtype=np.int64)[None]
    free = np.array([d.free_loops], dtype=np.int64)
    basis = np.empty(S, dtype=np.int64)
    loops = np.empty(S, dtype=np.int64)
    chunk = max(1, _CHUNK_NODES // E)
    for start in range(0, S, chunk):
        stop = min(S, start + chunk)
        labels = _label_states(a_pairs[None], b_pairs[None], _state_bits(c, start, stop), E)
        basis[start:stop], loops[start:stop] = (x[0] for x in _summarise(labels, ends, n, free))
    return SmoothingTable(n, basis, loops, _state_bits(c, 0, S))


def smoothing_tables(diagrams: list[PlanarDiagram]) -> list[SmoothingTable]:
    """Smoothing tables of many small diagrams in one batched pass.

    All diagrams must share their crossing, edge and endpoint counts; the
    batch is meant for sweeps over plats of a fixed length.
    """
    if not diagrams:
        return []
    c = diagrams[0].n_crossings
    E = len(diagrams[0].edges)
    m = len(diagrams[0].endpoints)
    if any(d.n_crossings != c or len(d.edges) != E or len(d.endpoints) != m for d in diagrams):
        raise ValueError("batched diagrams must have the same shape")
    if E == 0 or c > 12:
        return [smoothing_table(d) for d in diagrams]
    comps = [_compact(d) for d in diagrams]
    pairs = [_smoothing_pairs(d) for d in comps]
    a_pairs = np.stack([p[0] for p in pairs])
    b_pairs = np.stack([p[1] for p in pairs])
    ends = np.array([d.endpoints for d in comps], dtype=np.int64).reshape(len(comps), m)
    free = np.array([d.free_loops for d in comps], dtype=np.int64)
    bits = _state_bits(c, 0, 1 << c)
    basis, loops = _summarise(_label_states(a_pairs, b_pairs, bits, E), ends, m // 2, free)
    return [SmoothingTable(m // 2, basis[k], loops[k], bits) for k in range(len(comps))]


# -- brackets -------------------------------------------------------------------

def _collect(table: SmoothingTable, closed: bool) -> dict[int, LaurentPoly]:
    c = table.crossings
    exps = c - 2 * table.bits.sum(axis=1).astype(np.int64)
    loops = table.loops - (1 if closed else 0)
    keys = np.stack([table.basis, exps, loops], axis=1)
    uniq, counts = np.unique(keys, axis=0, return_counts=True)
    out: dict[int, LaurentPoly] = {}
    for (b, e, l), k in zip(uniq.tolist(), counts.tolist()):
        out[b] = out.get(b, ZERO) + delta_power(l).shift(e) * k
    return out


def state_sum_tangle(d: PlanarDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> BracketVector:
    """Bracket vector of a tangle diagram by full state enumeration."""
    if len(d.endpoints) not in (4, 6):
        raise ValueError("state_sum_tangle needs a tangle with 4 or 6 endpoints")
    n = len(d.endpoints) // 2
    acc = _collect(smoothing_table(d, max_crossings), closed=False)
    return BracketVector(n, tuple(acc.get(j, ZERO) for j in range(len(enumerate_matchings(n)))))


def state_sum_link(d: PlanarDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPoly:
    """Bracket of a closed diagram, normalised so that one circle has bracket 1."""
    if d.endpoints:
        raise ValueError("state_sum_link needs a closed diagram")
    if d.n_crossings == 0 and d.free_loops == 0:
        raise ValueError("the empty diagram has no bracket")
    return _collect(smoothing_table(d, max_crossings), closed=True).get(-1, ZERO)


def kauffman_polynomial(d: PlanarDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPoly:
    """X = (-a^-3)^w <d> with the writhe of the canonical orientation."""
    return unit_power(writhe(d)) * state_sum_link(d, max_crossings)


def closure_bracket(v: BracketVector, i: int) -> LaurentPoly:
    """Bracket of the closure by basis matching ``i`` (1-based), from the vector alone."""
    cap = basis_matching(v.n, i)
    acc = ZERO
    for m, coeff in zip(enumerate_matchings(v.n), v.entries):
        if coeff:
            acc = acc + coeff * delta_power(cap_pairing(m, cap) - 1)
    return acc


# -- sign families ----------------------------------------------------------------

def sign_patterns(c: int) -> list[tuple[int, ...]]:
    """All sign patterns of length c, in ``product([1, -1])`` order."""
    return list(itertools.product((1, -1), repeat=c))


@lru_cache(maxsize=None)
def _pattern_onehot(c: int) -> np.ndarray:
    """O[state, p*(c+1) + j] = 1 when state has j B-smoothings under pattern p.

    Under pattern p a state's exponent is (number of A-smoothings) minus
    (number of B-smoothings), that is c - 2j.
    """
    bits = _state_bits(c, 0, 1 << c).astype(np.int64)
    pats = np.array(sign_patterns(c), dtype=np.int64).reshape(1 << c, c)
    exps = (1 - 2 * bits) @ pats.T
    j = (c - exps) // 2
    S = 1 << c
    out = np.zeros((S, S, c + 1))
    out[np.arange(S)[:, None], np.arange(S)[None, :], j] = 1
    return out.reshape(S, S * (c + 1))


@lru_cache(maxsize=None)
def _loop_kernel(c: int, max_loops: int, off: int) -> np.ndarray:
    """Row l*(c+1) + j is the dense form of a^(c-2j) delta^l."""
    rows = [_dense.to_dense(delta_power(l).shift(c - 2 * j), off)
            for l in range(max_loops + 1) for j in range(c + 1)]
    return np.stack(rows)


def family_vectors_dense(table: SmoothingTable, off: int) -> np.ndarray:
    """Dense bracket vectors for every sign pattern on a fixed projection.

    ``table`` must come from the diagram with every crossing positive.
    Changing a crossing exchanges its A- and B-smoothings, so a state with
    A/B signature x in {+1,-1}^c contributes a^(x . s) under sign pattern s.
    Returns a float64 array of integers with shape (2^c, C_n, 2*off+1).
    """
    return family_vectors_batch([table], off)[0]


def family_vectors_batch(tables: list[SmoothingTable], off: int) -> np.ndarray:
    """:func:`family_vectors_dense` for tables sharing crossing count and n.

    Returns shape (len(tables), 2^c, C_n, 2*off+1).
    """
    c = tables[0].crossings
    n = tables[0].n
    if c > FAMILY_MAX_CROSSINGS:
        raise BoundExceeded(f"sign families are limited to {FAMILY_MAX_CROSSINGS} crossings")
    S = 1 << c
    T = len(tables)
    size = len(enumerate_matchings(n))
    basis = np.stack([t.basis for t in tables])
    loops = np.stack([t.loops for t in tables])
    keys = (np.arange(T)[:, None] * (size + 1) + basis + 1) * 1024 + loops
    uniq, inv = np.unique(keys, return_inverse=True)
    groups = np.zeros((len(uniq), S))
    groups[inv.reshape(T, S), np.arange(S)[None, :]] = 1
    hist = (groups @ _pattern_onehot(c)).reshape(len(uniq), S, c + 1)
    g_loop = uniq % 1024
    g_basis = (uniq // 1024) % (size + 1) - 1
    g_table = uniq // 1024 // (size + 1)
    L = int(g_loop.max()) + 1
    # each (table, basis, loops) group is unique, so plain assignment suffices
    dense = np.zeros((T, size, L, S, c + 1))
    dense[g_table, g_basis, g_loop] = hist
    flat = dense.transpose(0, 1, 3, 2, 4).reshape(T * size * S, L * (c + 1))
    out = (flat @ _loop_kernel(c, L - 1, off)).reshape(T, size, S, 2 * off + 1)
    return out.transpose(0, 2, 1, 3)
