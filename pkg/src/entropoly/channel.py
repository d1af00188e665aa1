"""Optimization over C(P, m): one marginal fixed, output alphabet of size m.

Minimizing ``H(X,Y)`` (or ``H(Y|X)``) here is trivial. Maximizing ``I(X;Y)``
is not. Two facts shape the exact search:

* For fixed ``P``, ``I(X;Y)`` is convex in the channel ``p(y|x)``, and the
  channels form a product of simplices (one per input row). A convex
  function on a product of simplices peaks at a vertex, i.e. at a channel
  where every row is a point mass. So some maximizer is row-deterministic.
* For a row-deterministic coupling ``H(X,Y) = H(X)``, hence
  ``I = H(Y)``: only the multiset of group sums matters.

The search therefore enumerates ways to split the row masses into at most
``m`` groups, keyed by the sorted group sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    DEFAULT_BITS,
    Coupling,
    Distribution,
    Entropy,
    entropy,
    interval_min,
    log2_interval,
    mutual_information,
    narrow_minimal,
)
from .grouping import GroupingSearch, assignment_to_cells, to_integers
from .minentropy import MinEntropyResult, NoWitness
from .polytope import DEFAULT_LIMIT


@dataclass(frozen=True)
class ChannelFamily:
    """All couplings with row marginal ``p`` and ``m`` output symbols."""

    p: Distribution
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("output alphabet size must be at least 1")


@dataclass(frozen=True)
class BalancedPartitionWitness:
    """Rows grouped into ``m`` columns that each carry exactly ``1/m``."""

    assignment: dict
    p: Distribution
    m: int

    @property
    def coupling(self) -> Coupling:
        cols = [self.assignment.get(i) for i in range(len(self.p))]
        return Coupling(assignment_to_cells(self.p, cols, self.m))

    def groups(self) -> list:
        out = [[] for _ in range(self.m)]
        for i, j in sorted(self.assignment.items()):
            out[j].append(i)
        return out


def min_joint_entropy_over_family(f: ChannelFamily) -> Coupling:
    """Put every row's mass in column 0, so ``H(X,Y) = H(P)`` and ``H(Y|X) = 0``."""
    return Coupling([[x] + [0] * (f.m - 1) for x in f.p])


def decide_optimal_channel(f: ChannelFamily, search: GroupingSearch | None = None):
    """Is there ``C`` in C(P, m) with ``I(X;Y) = log2 m``?

    Holds iff the masses split into ``m`` groups of exactly ``1/m``. The
    answer is exact; the witness is the lexicographically smallest assignment.
    """
    search = search or GroupingSearch()
    share = Fraction(1, f.m)
    _, (ws, cs) = to_integers(f.p, [share] * f.m)
    assignment = search.canonical_assignment(ws, cs)
    if assignment is None:
        return NoWitness(reason=f"masses cannot be split into {f.m} groups of {share}")
    return BalancedPartitionWitness(
        {i: j for i, j in enumerate(assignment) if j is not None}, f.p, f.m
    )


def capacity_upper_bound(f: ChannelFamily, bits: int = DEFAULT_BITS) -> Entropy:
    """``min(H(P), log2 m)``, the ceiling on ``I(X;Y)`` over the family."""
    return interval_min(entropy(f.p, bits), log2_interval(f.m, bits))


def _group_sum_multisets(ws: list, m: int, limit: int) -> tuple:
    """Distinct sorted group-sum tuples reachable by splitting ``ws`` into <= m groups.

    Returns (leaves, states, complete). Stops early, complete, when a leaf
    meets the upper bound combinatorially: ``m`` equal groups, or every
    weight alone in its own group.
    """
    ws = sorted((w for w in ws if w), reverse=True)
    total = sum(ws)
    seen = set()
    leaves = set()
    states = 0
    stack = [(0, ())]
    while stack:
        k, sums = stack.pop()
        if (k, sums) in seen:
            continue
        seen.add((k, sums))
        states += 1
        if states > limit:
            return leaves, states, False
        if k == len(ws):
            leaves.add(sums)
            if (len(sums) == m and total % m == 0 and all(s * m == total for s in sums)) or len(sums) == len(ws):
                return {sums}, states, True
            continue
        w = ws[k]
        if len(sums) < m:
            stack.append((k + 1, tuple(sorted(sums + (w,), reverse=True))))
        for s in set(sums):
            nxt = list(sums)
            nxt.remove(s)
            stack.append((k + 1, tuple(sorted(nxt + [s + w], reverse=True))))
    return leaves, states, True


def max_mutual_information(
    f: ChannelFamily, limit: int = DEFAULT_LIMIT, bits: int = DEFAULT_BITS
) -> MinEntropyResult:
    """Maximize ``I(X;Y)`` over C(P, m) exactly, among row-deterministic couplings.

    The returned coupling orders columns by decreasing mass and uses the
    lexicographically smallest row assignment realizing the optimal sums.
    ``vertices_visited`` counts search states. Past ``limit`` states the
    best split found so far is returned with ``optimal=False``.
    """
    den, (ws,) = to_integers(f.p)
    leaves, states, complete = _group_sum_multisets(ws, f.m, limit)
    if not leaves:
        # Budget died before any full split; fall back to the trivial coupling.
        best = min_joint_entropy_over_family(f)
        return MinEntropyResult(best, mutual_information(best, bits), False, states, limit_exceeded=True)

    def neg_h(sums, prec):
        return -entropy([Fraction(s, den) for s in sums], prec)

    winners = sorted(narrow_minimal(sorted(leaves), neg_h, bits), reverse=True)
    caps = list(winners[0]) + [0] * (f.m - len(winners[0]))
    assignment = GroupingSearch().canonical_assignment(ws, caps)
    best = Coupling(assignment_to_cells(f.p, assignment, f.m))
    return MinEntropyResult(
        best=best,
        value=mutual_information(best, bits),
        optimal=complete,
        vertices_visited=states,
        limit_exceeded=not complete,
    )
