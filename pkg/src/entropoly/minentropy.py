"""Minimizing joint entropy over a transportation polytope.

Joint entropy is concave, so its minimum over C(P, Q) sits at a vertex and
the exact solver enumerates vertices. The bound ``H(X,Y) >= max(H(P), H(Q))``
is attained exactly by couplings with at most one nonzero cell per row (or
per column); that condition is combinatorial, so the decision version is
answered without evaluating a single logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_BITS,
    Coupling,
    Distribution,
    Entropy,
    as_rational,
    is_col_deterministic,
    is_row_deterministic,
    joint_entropy,
    narrow_minimal,
    product_coupling,
)
from .errors import DenominatorOverflow, LimitExceeded
from .grouping import GroupingSearch, assignment_to_cells, to_integers
from .polytope import DEFAULT_LIMIT, TransportationPolytope, Vertex, enumerate_vertices, pivot_neighbors

DP_BUDGET = 10**7


@dataclass(frozen=True)
class MinEntropyResult:
    best: Coupling
    value: Entropy
    optimal: bool
    vertices_visited: int
    co_minimal: tuple = ()
    limit_exceeded: bool = False


@dataclass(frozen=True)
class DeterministicWitness:
    """Row ``i`` sends all of its mass ``p_i`` to column ``assignment[i]``."""

    assignment: dict
    p: Distribution
    m: int

    @property
    def coupling(self) -> Coupling:
        cols = [self.assignment.get(i) for i in range(len(self.p))]
        return Coupling(assignment_to_cells(self.p, cols, self.m))


@dataclass(frozen=True)
class NoWitness:
    exhausted: bool = True
    reason: str = ""

    def __bool__(self):
        return False


def _is_deterministic(s: Coupling) -> bool:
    return is_row_deterministic(s) or is_col_deterministic(s)


def _pick_minimum(vertices: list, bits: int) -> tuple:
    """Canonical minimizer among ``vertices`` plus its co-minimal companions.

    Deterministic vertices attain the lower bound exactly and beat everything
    else, so they are selected without numerics. Otherwise intervals are
    refined until they separate or reach the precision cap; the survivors are
    ordered by support positions and the first wins.
    """
    det = [v for v in vertices if _is_deterministic(v.coupling)]
    if det:
        det.sort(key=lambda v: v.coupling.support_key())
        return det[0], tuple(v.coupling for v in det[1:])
    cand = narrow_minimal(vertices, lambda v, prec: joint_entropy(v.coupling, prec), bits)
    cand.sort(key=lambda v: v.coupling.support_key())
    return cand[0], tuple(v.coupling for v in cand[1:])


def min_joint_entropy_exact(
    poly: TransportationPolytope, limit: int = DEFAULT_LIMIT, bits: int = DEFAULT_BITS
) -> MinEntropyResult:
    """Global minimizer of ``H(X,Y)`` over ``poly`` by exhaustive vertex search.

    If the vertex budget runs out the best vertex seen so far is returned
    with ``optimal=False`` and ``limit_exceeded=True``.
    """
    try:
        vertices = enumerate_vertices(poly, limit)
        exceeded = False
    except LimitExceeded as exc:
        vertices, exceeded = exc.partial, True
    best, ties = _pick_minimum(vertices, bits)
    return MinEntropyResult(
        best=best.coupling,
        value=joint_entropy(best.coupling, bits),
        optimal=not exceeded,
        vertices_visited=len(vertices),
        co_minimal=ties,
        limit_exceeded=exceeded,
    )


def max_joint_entropy(poly: TransportationPolytope) -> Coupling:
    """The independent coupling ``P x Q``, the unique maximizer of ``H(X,Y)``."""
    return product_coupling(poly.p, poly.q)


def decide_entropy_min(poly: TransportationPolytope, search: GroupingSearch | None = None):
    """Is there ``S`` in C(P, Q) with ``H(S) = H(P)``?

    Equivalent to grouping the positive row masses into bins of sizes
    ``q_j``. Returns the lexicographically smallest row-to-column assignment
    as a :class:`DeterministicWitness`, or :class:`NoWitness`.
    """
    search = search or GroupingSearch()
    _, (ws, cs) = to_integers(poly.p, poly.q)
    assignment = search.canonical_assignment(ws, cs)
    if assignment is None:
        return NoWitness(reason="no grouping of row masses matches the column marginal")
    return DeterministicWitness(
        {i: j for i, j in enumerate(assignment) if j is not None}, poly.p, len(poly.q)
    )


def decide_entropy_min_two_cols(p: Distribution, q, budget: int = DP_BUDGET):
    """The ``m = 2`` case, ``Q = (q, 1 - q)``, by subset-sum dynamic programming.

    Runs in ``O(n * D)`` bit operations for common denominator ``D``. The
    witness agrees with :func:`decide_entropy_min` (same canonical order).
    """
    q = as_rational(q)
    if not 0 <= q <= 1:
        raise ValueError("q must lie in [0, 1]")
    den, (ws, (s,)) = to_integers(p, [q])
    if den > budget:
        raise DenominatorOverflow(f"common denominator {den} exceeds budget {budget}")
    mask = (1 << (s + 1)) - 1
    suffix = [1] * (len(ws) + 1)
    for i in range(len(ws) - 1, -1, -1):
        suffix[i] = (suffix[i + 1] | (suffix[i + 1] << ws[i])) & mask
    if not (suffix[0] >> s) & 1:
        return NoWitness(reason=f"no subset of row masses sums to {q}")
    assignment = {}
    rem = s
    for i, w in enumerate(ws):
        if not w:
            continue
        if w <= rem and (suffix[i + 1] >> (rem - w)) & 1:
            assignment[i] = 0
            rem -= w
        else:
            assignment[i] = 1
    return DeterministicWitness(assignment, p, 2)


def local_search_min_entropy(
    poly: TransportationPolytope, start: Vertex, max_steps: int = 1000, bits: int = DEFAULT_BITS
) -> MinEntropyResult:
    """Steepest descent on ``H(X,Y)`` along pivot edges.

    Moves only when a neighbour is certainly lower. ``optimal`` is set when
    the current vertex is deterministic, i.e. it meets the lower bound.
    """
    current = start
    value = joint_entropy(current.coupling, bits)
    visited = 1
    for _ in range(max_steps):
        if _is_deterministic(current.coupling):
            break
        best = None
        for w in pivot_neighbors(current, poly):
            visited += 1
            h = joint_entropy(w.coupling, bits)
            if h.certainly_below(value) and (best is None or h.upper_exact < best[1].upper_exact):
                best = (w, h)
        if best is None:
            break
        current, value = best
    return MinEntropyResult(
        best=current.coupling,
        value=value,
        optimal=_is_deterministic(current.coupling),
        vertices_visited=visited,
    )
