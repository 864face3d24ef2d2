"""Dense array Laurent polynomials for batched sweeps.

A polynomial is a 1-d array ``c`` with an exponent offset ``off``: ``c[k]``
is the coefficient of ``a^(k - off)``. Batched families keep the coefficient
axis last.

Arrays are float64 holding integers, so that products go through BLAS.
Every entry of a word matrix with c letters is bounded by 15^c in absolute
value (a letter's matrix has absolute row sums at most 15), and state sums
over c crossings by 4^c; for c <= MAX_LETTERS both stay far below 2^53,
where float64 arithmetic on integers is exact.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .laurent import LaurentPoly
from .tl import enumerate_matchings, transfer_matrix

MAX_LETTERS = 10


def width_for(crossings: int, n: int) -> int:
    """Exponent offset large enough for any bracket entry of a c-crossing plat."""
    return 3 * crossings + 2 * n + 4


def to_dense(p: LaurentPoly, off: int) -> np.ndarray:
    out = np.zeros(2 * off + 1)
    for e, c in p.terms.items():
        out[e + off] = c
    return out


def from_dense(arr: np.ndarray, off: int) -> LaurentPoly:
    nz = np.nonzero(arr)[0]
    return LaurentPoly({int(k) - off: int(round(arr[k])) for k in nz})


@lru_cache(maxsize=None)
def _letter_layers(index: int, n: int) -> tuple[tuple[int, ...], np.ndarray]:
    """Both signs of a letter as one matrix acting on exponent-shifted copies.

    Returns the exponents e_k occurring in either sign and a matrix M of
    shape (K*C, 2*C) such that, with row block k applied to the input
    multiplied by a^(e_k), column block 0 gives the product with the
    positive letter and block 1 the product with the negative letter.
    """
    mats = {sign: transfer_matrix((index, sign), n) for sign in (1, -1)}
    size = mats[1].size
    exps = tuple(sorted({e for m in mats.values() for r in range(size) for c in range(size)
                         for e in m[r, c].terms}))
    out = np.zeros((len(exps), size, 2, size))
    for half, sign in enumerate((1, -1)):
        m = mats[sign]
        for r in range(size):
            for c in range(size):
                for e, k in m[r, c].terms.items():
                    out[exps.index(e), r, half, c] = k
    return exps, out.reshape(len(exps) * size, 2 * size)


def identity_family(n: int, off: int) -> np.ndarray:
    """The empty word as a family, in the internal (P, R, X, C) layout."""
    size = len(enumerate_matchings(n))
    cur = np.zeros((1, size, 2 * off + 1, size))
    cur[0, np.arange(size), off, np.arange(size)] = 1
    return cur


def extend_family(cur: np.ndarray, index: int, n: int) -> np.ndarray:
    """Append generator ``index`` with both signs to every word of a family.

    Families here use the layout (pattern, row, exponent, column). The
    result doubles the pattern axis; the new letter's sign varies fastest,
    with +1 first, matching ``itertools.product([1, -1])``.
    """
    exps, stacked = _letter_layers(index, n)
    P, R, X, C = cur.shape
    shifted = np.zeros((P, R, X, len(exps), C))
    for k, e in enumerate(exps):
        if e >= 0:
            shifted[:, :, e:, k] = cur[:, :, : X - e]
        else:
            shifted[:, :, :e, k] = cur[:, :, -e:]
    out = shifted.reshape(-1, len(exps) * C) @ stacked
    return out.reshape(P, R, X, 2, C).transpose(0, 3, 1, 2, 4).reshape(2 * P, R, X, C)


def word_matrix_family(indices, n: int, off: int) -> np.ndarray:
    """Word matrices of every sign pattern on a fixed index sequence.

    Returns an array of shape (2^c, C_n, C_n, 2*off+1). Pattern p lists the
    signs in ``itertools.product([1, -1], repeat=c)`` order.
    """
    if len(indices) > MAX_LETTERS:
        raise ValueError(f"dense families are limited to {MAX_LETTERS} letters")
    cur = identity_family(n, off)
    for index in indices:
        cur = extend_family(cur, index, n)
    return cur.transpose(0, 1, 3, 2)
