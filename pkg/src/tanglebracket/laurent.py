"""Exact Laurent polynomials in one variable ``a`` with integer coefficients.

Values are immutable and hashable; the term map is kept canonical (no zero
coefficients) so equality of values is equality of term maps.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                if c:
                    acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def from_terms(cls, pairs: Iterable[Iterable[int]]) -> LaurentPoly:
        """Inverse of :meth:`to_terms`."""
        return cls((int(e), int(c)) for e, c in pairs)

    # -- structure ------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def to_terms(self) -> list[list[int]]:
        """Sorted ``[exponent, coefficient]`` pairs, ascending exponent."""
        return [[e, self._terms[e]] for e in sorted(self._terms)]

    def degree_bounds(self) -> tuple[int, int]:
        """Return ``(max exponent, min exponent)``."""
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(self._terms), min(self._terms)

    def span(self) -> int:
        hi, lo = self.degree_bounds()
        return hi - lo

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return _coerce(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        other = _coerce(other)
        if not self._terms or not other._terms:
            return ZERO
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible in Z[a, a^-1]")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only monomials with coefficient +-1 are units")
            return LaurentPoly({e * k: 1 if k % 2 == 0 else c})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``a**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def mirror(self) -> LaurentPoly:
        """Substitute ``a -> a^-1``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def exact_div(self, divisor: LaurentPoly) -> LaurentPoly:
        """Quotient ``self / divisor`` in Z[a, a^-1]; raises if it does not divide.

        Long division on the lowest-order terms. The lowest coefficient of the
        divisor must be +-1 so that every step stays integral.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        d_hi, d_lo = divisor.degree_bounds()
        lead = divisor._terms[d_lo]
        if lead not in (1, -1):
            raise ValueError("divisor must have a unit lowest coefficient")
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        hi = max(rem)
        while rem:
            lo = min(rem)
            if lo + (d_hi - d_lo) > hi:
                raise ArithmeticError("inexact division in Z[a, a^-1]")
            q = rem[lo] * lead
            shift = lo - d_lo
            quot[shift] = q
            for e, c in divisor._terms.items():
                k = e + shift
                v = rem.get(k, 0) - q * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot)

    # -- comparison / display --------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "a" if e == 1 else f"a^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(x: LaurentPoly | int) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
A = LaurentPoly.monomial(1)
A_INV = LaurentPoly.monomial(-1)
#: loop value -a^2 - a^-2
DELTA = LaurentPoly({2: -1, -2: -1})
#: generator of the unit group used for framing changes
UNIT = LaurentPoly.monomial(-3, -1)

_delta_powers: list[LaurentPoly] = [ONE]


def delta_power(k: int) -> LaurentPoly:
    while len(_delta_powers) <= k:
        _delta_powers.append(_delta_powers[-1] * DELTA)
    return _delta_powers[k]


def unit_power(k: int) -> LaurentPoly:
    """``(-a^-3)**k`` for any integer k."""
    return LaurentPoly.monomial(-3 * k, -1 if k % 2 else 1)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def degree_bounds(p: LaurentPoly) -> tuple[int, int]:
    return p.degree_bounds()


def unit_quotient(p: LaurentPoly, q: LaurentPoly) -> int | None:
    """Return k with ``p == (-a^-3)**k * q``, or None if no such k exists.

    Two zero polynomials give k = 0.
    """
    if p.is_zero() and q.is_zero():
        return 0
    if p.is_zero() or q.is_zero():
        return None
    if len(p) != len(q):
        return None
    diff = min(q._terms) - min(p._terms)
    if diff % 3:
        return None
    k = diff // 3
    return k if unit_power(k) * q == p else None
