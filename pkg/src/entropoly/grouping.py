"""Exact search for assignments of integer weights into bins of fixed capacity.

Both decision problems in this package reduce to the same question: can the
positive row masses be grouped so that each group sums exactly to a given
column mass? Everything here is integer arithmetic on a common denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction


def to_integers(*groups) -> tuple:
    """Scale several lists of Fractions to integers over one common denominator."""
    den = math.lcm(*(x.denominator for g in groups for x in g))
    return den, [[int(x * den) for x in g] for g in groups]


class GroupingSearch:
    """Feasibility of packing ``weights`` exactly into ``capacities``.

    Feasibility is memoized on (remaining weight multiset, remaining capacity
    multiset): bins with equal remaining capacity are interchangeable, which
    removes the column-permutation symmetry. Weights are placed largest
    first; a branch dies as soon as the largest weight fits no bin or some
    partly filled bin is smaller than the smallest weight left.
    """

    def __init__(self):
        self._memo = {}
        self.states = 0

    def feasible(self, weights, capacities) -> bool:
        ws = tuple(sorted((w for w in weights if w), reverse=True))
        cs = tuple(sorted(c for c in capacities if c))
        if sum(ws) != sum(cs):
            return False
        return self._feasible(ws, cs)

    def _feasible(self, ws: tuple, cs: tuple) -> bool:
        if not ws:
            return not cs
        key = (ws, cs)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.states += 1
        ok = False
        w = ws[0]
        if cs[-1] >= w and cs[0] >= ws[-1]:
            rest = ws[1:]
            tried = set()
            for k, c in enumerate(cs):
                if c < w or c in tried:
                    continue
                tried.add(c)
                left = c - w
                ncs = cs[:k] + cs[k + 1:]
                if left:
                    ncs = tuple(sorted(ncs + (left,)))
                if self._feasible(rest, ncs):
                    ok = True
                    break
        self._memo[key] = ok
        return ok

    def canonical_assignment(self, weights, capacities) -> list | None:
        """Lexicographically smallest assignment vector, or None if infeasible.

        ``result[i]`` is the bin index of weight ``i``; zero weights get None.
        Weights are assigned in index order and bins tried in index order,
        committing only when the remainder stays feasible.
        """
        weights, caps = list(weights), list(capacities)
        if not self.feasible(weights, caps):
            return None
        out = [None] * len(weights)
        for i, w in enumerate(weights):
            if not w:
                continue
            rest = weights[i + 1:]
            for j, c in enumerate(caps):
                if c < w:
                    continue
                caps[j] -= w
                if self.feasible(rest, caps):
                    out[i] = j
                    break
                caps[j] += w
            else:  # pragma: no cover - guarded by the feasibility check above
                raise AssertionError("feasible instance lost during canonicalization")
        return out


def assignment_to_cells(masses, assignment, m) -> list:
    """Place ``masses[i]`` at column ``assignment[i]`` of an ``n x m`` matrix."""
    cells = [[Fraction(0)] * m for _ in masses]
    for i, (x, j) in enumerate(zip(masses, assignment)):
        if x:
            cells[i][j] = x
    return cells
