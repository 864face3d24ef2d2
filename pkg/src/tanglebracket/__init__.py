"""Kauffman bracket vectors of rational 2- and 3-tangles presented as plat braid words."""

from __future__ import annotations

from .braid import BraidLetter, BraidParseError, BraidWord, Mode, format_word, parse_word, sign_class
from .bracket import (BoundExceeded, BracketVector, closure_bracket, kauffman_polynomial,
                      state_sum_link, state_sum_tangle)
from .diagram import PlanarDiagram, PlatTangle, build_plat, close, is_alternating, is_reduced, writhe
from .invariant import (CanonicalInvariant, CollisionReport, Slope, a2_power, canonicalize,
                        conway_fraction, equivalent, is_trivial_infinity, search_collisions,
                        vector, vector_2tangle, vector_3tangle)
from .laurent import DELTA, LaurentPoly, delta_power, unit_power
from .tl import Matching, TransferMatrix, enumerate_matchings, transfer_matrix, word_matrix

__all__ = [
    "BoundExceeded", "BracketVector", "BraidLetter", "BraidParseError", "BraidWord", "CanonicalInvariant",
    "CollisionReport", "DELTA", "LaurentPoly", "Matching", "Mode", "PlanarDiagram", "PlatTangle", "Slope",
    "TransferMatrix", "a2_power", "build_plat", "canonicalize", "close", "closure_bracket",
    "conway_fraction", "delta_power", "enumerate_matchings", "equivalent", "format_word", "is_alternating",
    "is_reduced", "is_trivial_infinity", "kauffman_polynomial", "parse_word", "search_collisions",
    "sign_class", "state_sum_link", "state_sum_tangle", "transfer_matrix", "unit_power", "vector",
    "vector_2tangle", "vector_3tangle", "word_matrix", "writhe",
]
