"""Exact probability types and certified Shannon information measures.

Probabilities are :class:`fractions.Fraction` throughout. Information
quantities are irrational in general, so every measure returns an
:class:`Entropy`: a closed interval with outward-rounded endpoints that is
guaranteed to contain the true value. All logarithms are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from mpmath import libmp
from mpmath.libmp import from_int, mpi_add, mpi_div, mpi_log, mpi_mul, mpi_neg, mpi_sub

Rational = Fraction
RationalLike = Union[Fraction, int, str]

DEFAULT_BITS = 40
MAX_BITS = 200


def as_rational(x: RationalLike) -> Fraction:
    """Parse ``x`` into a reduced Fraction. Floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {x!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class Distribution:
    """A finite probability vector with exact rational entries."""

    probs: tuple

    def __init__(self, probs: Iterable[RationalLike]):
        values = tuple(as_rational(p) for p in probs)
        if not values:
            raise ValueError("a distribution needs at least one entry")
        if any(p < 0 for p in values):
            raise ValueError("probabilities must be nonnegative")
        total = sum(values)
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "probs", values)

    @classmethod
    def from_weights(cls, weights: Sequence[int]) -> "Distribution":
        total = sum(weights)
        return cls(Fraction(w, total) for w in weights)

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls([Fraction(1, n)] * n)

    def __len__(self):
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    def __getitem__(self, i):
        return self.probs[i]

    def support(self) -> list:
        return [i for i, p in enumerate(self.probs) if p]

    def common_denominator(self) -> int:
        return math.lcm(*(p.denominator for p in self.probs))


@dataclass(frozen=True)
class Coupling:
    """A nonnegative rational ``n x m`` matrix whose cells sum to one."""

    cells: tuple

    def __init__(self, cells: Iterable[Iterable[RationalLike]]):
        rows = tuple(tuple(as_rational(c) for c in row) for row in cells)
        if not rows or not rows[0]:
            raise ValueError("a coupling needs at least one cell")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("coupling rows have unequal length")
        if any(c < 0 for r in rows for c in r):
            raise ValueError("coupling cells must be nonnegative")
        total = sum(sum(r) for r in rows)
        if total != 1:
            raise ValueError(f"coupling cells sum to {total}, not 1")
        object.__setattr__(self, "cells", rows)

    @property
    def shape(self) -> tuple:
        return len(self.cells), len(self.cells[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.cells[i][j]

    def nonzero(self) -> list:
        return [(i, j) for i, r in enumerate(self.cells) for j, c in enumerate(r) if c]

    def transpose(self) -> "Coupling":
        return Coupling(zip(*self.cells))

    def key(self) -> tuple:
        """Row-major cell tuple; the order used for listing vertices."""
        return tuple(c for r in self.cells for c in r)

    def support_key(self) -> tuple:
        """Sorted nonzero positions; the order used to break ties between optima.

        For row-deterministic couplings this is the row-to-column assignment
        order, so tie-breaks agree with the decision procedures.
        """
        return tuple(self.nonzero())

    def __str__(self):
        return "\n".join(" ".join(str(c) for c in r) for r in self.cells)


def product_coupling(p: Distribution, q: Distribution) -> Coupling:
    return Coupling([[pi * qj for qj in q] for pi in p])


def diagonal_coupling(p: Distribution) -> Coupling:
    n = len(p)
    return Coupling([[p[i] if i == j else 0 for j in range(n)] for i in range(n)])


def row_marginal(s: Coupling) -> Distribution:
    return Distribution(sum(r) for r in s.cells)


def col_marginal(s: Coupling) -> Distribution:
    return Distribution(sum(col) for col in zip(*s.cells))


def is_row_deterministic(s: Coupling) -> bool:
    """True iff every row has at most one nonzero cell (Y is a function of X)."""
    return all(sum(1 for c in r if c) <= 1 for r in s.cells)


def is_col_deterministic(s: Coupling) -> bool:
    return all(sum(1 for c in col if c) <= 1 for col in zip(*s.cells))


# ---------------------------------------------------------------------------
# Certified interval arithmetic
# ---------------------------------------------------------------------------

def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    if not man:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def _exact_interval(q: Fraction, prec: int):
    return mpi_div((from_int(q.numerator),) * 2, (from_int(q.denominator),) * 2, prec)


@lru_cache(maxsize=None)
def _log2_interval(prec: int):
    return mpi_log((from_int(2),) * 2, prec)


@dataclass(frozen=True)
class Entropy:
    """Closed interval ``[lower, upper]`` (in bits) enclosing an information value.

    Endpoints are raw mpmath mantissa/exponent tuples, rounded outward at
    every operation, so the enclosure is certified.
    """

    lo: tuple
    hi: tuple

    @classmethod
    def exact(cls, x: RationalLike, prec: int = 128) -> "Entropy":
        lo, hi = _exact_interval(as_rational(x), prec)
        return cls(lo, hi)

    @property
    def lower(self) -> float:
        return libmp.to_float(self.lo, rnd="f")

    @property
    def upper(self) -> float:
        return libmp.to_float(self.hi, rnd="c")

    @property
    def value(self) -> float:
        return float((self.lower_exact + self.upper_exact) / 2)

    @property
    def lower_exact(self) -> Fraction:
        return _mpf_to_fraction(self.lo)

    @property
    def upper_exact(self) -> Fraction:
        return _mpf_to_fraction(self.hi)

    @property
    def width(self) -> Fraction:
        return self.upper_exact - self.lower_exact

    def width_bits(self) -> float:
        """``-log2(width)``; infinite for a point interval."""
        w = self.width
        return math.inf if w == 0 else -math.log2(w)

    def contains(self, x) -> bool:
        if isinstance(x, float):
            x = Fraction(x)
        elif isinstance(x, Decimal):
            x = Fraction(x)
        return self.lower_exact <= x <= self.upper_exact

    def overlaps(self, other: "Entropy") -> bool:
        return not (libmp.mpf_lt(self.hi, other.lo) or libmp.mpf_lt(other.hi, self.lo))

    def certainly_below(self, other: "Entropy") -> bool:
        return libmp.mpf_lt(self.hi, other.lo)

    def _iv(self):
        return (self.lo, self.hi)

    def _prec(self, other=None) -> int:
        bits = [self.lo[3], self.hi[3]]
        if other is not None:
            bits += [other.lo[3], other.hi[3]]
        return max(128, 2 * max(bits) + 16)

    def __add__(self, other):
        if not isinstance(other, Entropy):
            other = Entropy.exact(other)
        return Entropy(*mpi_add(self._iv(), other._iv(), self._prec(other)))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Entropy):
            other = Entropy.exact(other)
        return Entropy(*mpi_sub(self._iv(), other._iv(), self._prec(other)))

    def __rsub__(self, other):
        return Entropy.exact(other) - self

    def __neg__(self):
        return Entropy(*mpi_neg(self._iv()))

    def __mul__(self, other):
        if not isinstance(other, Entropy):
            other = Entropy.exact(other)
        return Entropy(*mpi_mul(self._iv(), other._iv(), self._prec(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Entropy):
            other = Entropy.exact(other)
        return Entropy(*mpi_div(self._iv(), other._iv(), self._prec(other)))

    def __rtruediv__(self, other):
        return Entropy.exact(other) / self

    def decimal_bounds(self, digits: int = 12) -> tuple:
        """Endpoints as decimal strings, lower rounded down and upper rounded up."""
        lo = Context(prec=digits, rounding=ROUND_FLOOR).divide(
            Decimal(self.lower_exact.numerator), Decimal(self.lower_exact.denominator)
        )
        hi = Context(prec=digits, rounding=ROUND_CEILING).divide(
            Decimal(self.upper_exact.numerator), Decimal(self.upper_exact.denominator)
        )
        return str(lo), str(hi)

    def __repr__(self):
        lo, hi = self.decimal_bounds(15)
        return f"Entropy([{lo}, {hi}])"


def interval_min(a: Entropy, b: Entropy) -> Entropy:
    lo = a.lo if libmp.mpf_le(a.lo, b.lo) else b.lo
    hi = a.hi if libmp.mpf_le(a.hi, b.hi) else b.hi
    return Entropy(lo, hi)


def interval_max(a: Entropy, b: Entropy) -> Entropy:
    lo = a.lo if libmp.mpf_ge(a.lo, b.lo) else b.lo
    hi = a.hi if libmp.mpf_ge(a.hi, b.hi) else b.hi
    return Entropy(lo, hi)


def log2_interval(x: RationalLike, bits: int = DEFAULT_BITS) -> Entropy:
    return _weighted_log_sum([(Fraction(1), as_rational(x))], bits)


def _weighted_log_sum(terms: list, bits: int) -> Entropy:
    """Enclose ``sum(coef * log2(arg))`` to width at most ``2**-bits``.

    Terms with a zero coefficient are dropped (the ``0 log 0 = 0`` convention).
    """
    terms = [(c, a) for c, a in terms if c]
    if not terms:
        return Entropy(libmp.fzero, libmp.fzero)
    target = Fraction(1, 2**bits)
    guard = 2 * max(1, len(terms)).bit_length() + 16
    while True:
        prec = bits + guard
        log2 = _log2_interval(prec)
        acc = (libmp.fzero, libmp.fzero)
        for coef, arg in terms:
            term = mpi_mul(_exact_interval(coef, prec), mpi_div(mpi_log(_exact_interval(arg, prec), prec), log2, prec), prec)
            acc = mpi_add(acc, term, prec)
        result = Entropy(*acc)
        if result.width <= target:
            return result
        guard *= 2


def entropy(p: Distribution | Sequence, bits: int = DEFAULT_BITS) -> Entropy:
    """Shannon entropy ``-sum p log2 p`` of a distribution."""
    return _weighted_log_sum([(-x, x) for x in p if x], bits)


def joint_entropy(s: Coupling, bits: int = DEFAULT_BITS) -> Entropy:
    return _weighted_log_sum([(-c, c) for r in s.cells for c in r if c], bits)


def conditional_entropy_x_given_y(s: Coupling, bits: int = DEFAULT_BITS) -> Entropy:
    """``H(X|Y) = -sum s_ij log2(s_ij / q_j)`` with ``q`` the column marginal."""
    q = col_marginal(s)
    return _weighted_log_sum(
        [(-c, c / q[j]) for r in s.cells for j, c in enumerate(r) if c], bits
    )


def conditional_entropy_y_given_x(s: Coupling, bits: int = DEFAULT_BITS) -> Entropy:
    p = row_marginal(s)
    return _weighted_log_sum(
        [(-c, c / p[i]) for i, r in enumerate(s.cells) for c in r if c], bits
    )


def mutual_information(s: Coupling, bits: int = DEFAULT_BITS) -> Entropy:
    """``I(X;Y) = sum s_ij log2(s_ij / (p_i q_j))``."""
    p, q = row_marginal(s), col_marginal(s)
    return _weighted_log_sum(
        [(c, c / (p[i] * q[j])) for i, r in enumerate(s.cells) for j, c in enumerate(r) if c],
        bits,
    )


def narrow_minimal(items: list, evaluate, bits: int = DEFAULT_BITS) -> list:
    """Items whose ``evaluate(item, prec)`` interval may still be the minimum.

    Precision doubles from ``bits`` up to ``MAX_BITS`` while more than one
    candidate remains; whatever is left then is numerically indistinguishable.
    """
    cand = list(items)
    prec = bits
    while True:
        vals = [evaluate(x, prec) for x in cand]
        top = min(vals, key=lambda e: e.upper_exact)
        cand = [x for x, v in zip(cand, vals) if v.overlaps(top)]
        if len(cand) == 1 or prec >= MAX_BITS:
            return cand
        prec = min(2 * prec, MAX_BITS)
