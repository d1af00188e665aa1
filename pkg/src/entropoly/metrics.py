"""Variation of information and its coupling-optimized pseudometrics.

Over C(P, Q) the identity ``I = H(P) + H(Q) - H(X,Y)`` gives

    Delta(S)  = H(X,Y) - I(X;Y)        = 2 H(X,Y) - H(P) - H(Q)
    Delta'(S) = 1 - I(X;Y) / H(X,Y)    = 2 - (H(P) + H(Q)) / H(X,Y)

Both are increasing in ``H(X,Y)``, so both infima are attained by the
joint-entropy minimizer and reuse the exact vertex solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest

from .core import (
    DEFAULT_BITS,
    Coupling,
    Distribution,
    Entropy,
    conditional_entropy_x_given_y,
    conditional_entropy_y_given_x,
    entropy,
    joint_entropy,
    mutual_information,
)
from .minentropy import decide_entropy_min, min_joint_entropy_exact
from .polytope import DEFAULT_LIMIT, TransportationPolytope


@dataclass(frozen=True)
class MetricResult:
    value: Entropy
    witness: Coupling
    exact: bool


def _single_atom(s: Coupling) -> bool:
    return len(s.nonzero()) == 1


def vi(s: Coupling, bits: int = DEFAULT_BITS) -> Entropy:
    """``H(X,Y) - I(X;Y)``, which also equals ``H(X|Y) + H(Y|X)``."""
    return joint_entropy(s, bits) - mutual_information(s, bits)


def vi_conditional_form(s: Coupling, bits: int = DEFAULT_BITS) -> Entropy:
    return conditional_entropy_x_given_y(s, bits) + conditional_entropy_y_given_x(s, bits)


def vi_normalized(s: Coupling, bits: int = DEFAULT_BITS) -> Entropy:
    """``1 - I/H``; zero for a single-atom coupling where ``H = 0``."""
    if _single_atom(s):
        return Entropy.exact(0)
    return 1 - mutual_information(s, bits) / joint_entropy(s, bits)


def vi_distance(p: Distribution, q: Distribution, limit: int = DEFAULT_LIMIT,
                bits: int = DEFAULT_BITS) -> MetricResult:
    """Infimum of ``Delta`` over C(P, Q), as ``2 H_min - H(P) - H(Q)``."""
    res = min_joint_entropy_exact(TransportationPolytope(p, q), limit, bits)
    value = 2 * res.value - entropy(p, bits) - entropy(q, bits)
    return MetricResult(value, res.best, res.optimal)


def vi_distance_normalized(p: Distribution, q: Distribution, limit: int = DEFAULT_LIMIT,
                           bits: int = DEFAULT_BITS) -> MetricResult:
    """Infimum of ``Delta'`` over C(P, Q), as ``2 - (H(P) + H(Q)) / H_min``."""
    res = min_joint_entropy_exact(TransportationPolytope(p, q), limit, bits)
    if _single_atom(res.best):
        return MetricResult(Entropy.exact(0), res.best, res.optimal)
    value = 2 - (entropy(p, bits) + entropy(q, bits)) / res.value
    return MetricResult(value, res.best, res.optimal)


def decide_vi_equals_entropy_gap(p: Distribution, q: Distribution) -> bool:
    """Exact test of ``inf Delta = H(P) - H(Q)``.

    Since ``inf Delta = 2 H_min - H(P) - H(Q)``, equality means
    ``H_min = H(P)``, which happens iff some coupling is row-deterministic.
    Such a coupling already forces ``H(P) >= H(Q)``, so no entropy needs to
    be compared.
    """
    return bool(decide_entropy_min(TransportationPolytope(p, q)))


def total_variation(p: Distribution, q: Distribution) -> Fraction:
    """``1 - sum min(p_i, q_i)`` on a common index set, zero-padded."""
    return 1 - sum(min(a, b) for a, b in zip_longest(p, q, fillvalue=Fraction(0)))
