"""Reductions from Subset Sum and 3-Partition, and certificate checking.

Subset Sum ``(d, s)`` maps to C(P, Q) with ``p_i = d_i / D`` and
``Q = (s/D, 1 - s/D)``, ``D = sum(d)``: a subset summing to ``s`` is exactly
a coupling with one nonzero cell per row. 3-Partition ``(d, k)`` maps to
C(P, m) with ``p_i = d_i / (m k)``: a valid partition is exactly a
row-deterministic channel with uniform output, i.e. ``I = log2 m``.

Indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .channel import ChannelFamily, decide_optimal_channel
from .core import Coupling, Distribution
from .errors import MalformedInstance, TargetExceedsTotal
from .grouping import GroupingSearch
from .minentropy import decide_entropy_min
from .polytope import TransportationPolytope

ROW_DETERMINISTIC_IN = "row_deterministic_in"
ROW_DETERMINISTIC_UNIFORM_COLS = "row_deterministic_uniform_cols"


@dataclass(frozen=True)
class SubsetSumInstance:
    weights: tuple
    target: int

    def __init__(self, weights: Sequence[int], target: int):
        weights = tuple(int(w) for w in weights)
        if not weights:
            raise MalformedInstance("subset sum needs at least one weight")
        if any(w < 1 for w in weights):
            raise MalformedInstance("subset sum weights must be positive")
        if target < 1:
            raise MalformedInstance("subset sum target must be positive")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "target", int(target))


@dataclass(frozen=True)
class ThreePartitionInstance:
    """Weights ``d_1..d_3m`` and bound ``k``; checked lazily by :meth:`validate`."""

    weights: tuple
    bound: int

    def __init__(self, weights: Sequence[int], bound: int):
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))
        object.__setattr__(self, "bound", int(bound))

    @property
    def m(self) -> int:
        return len(self.weights) // 3

    def validate(self) -> None:
        d, k = self.weights, self.bound
        if not d or len(d) % 3:
            raise MalformedInstance(f"need 3m weights, got {len(d)}")
        bad = [w for w in d if not (k < 4 * w and 2 * w < k)]
        if bad:
            raise MalformedInstance(f"weights {bad} not strictly between k/4 and k/2 (k={k})")
        if sum(d) != self.m * k:
            raise MalformedInstance(f"weights sum to {sum(d)}, expected m*k = {self.m * k}")


@dataclass(frozen=True)
class Certificate:
    """A claimed witness matrix. Cells are kept raw so broken claims can be rejected."""

    coupling: tuple
    claimed_property: str

    def __init__(self, coupling: Union[Coupling, Sequence], claimed_property: str):
        cells = coupling.cells if isinstance(coupling, Coupling) else coupling
        object.__setattr__(self, "coupling", tuple(tuple(r) for r in cells))
        object.__setattr__(self, "claimed_property", claimed_property)


def reduce_subset_sum(inst: SubsetSumInstance) -> TransportationPolytope:
    total = sum(inst.weights)
    if inst.target > total:
        raise TargetExceedsTotal(f"target {inst.target} exceeds total weight {total}")
    q = Fraction(inst.target, total)
    return TransportationPolytope(Distribution.from_weights(inst.weights), Distribution([q, 1 - q]))


def reduce_three_partition(inst: ThreePartitionInstance) -> ChannelFamily:
    inst.validate()
    return ChannelFamily(Distribution.from_weights(inst.weights), inst.m)


def solve_subset_sum_via_entropy(inst: SubsetSumInstance, search: GroupingSearch | None = None):
    """Subset of indices summing to the target, or None.

    The subset is the lexicographically smallest sorted index tuple.
    """
    d, s = inst.weights, inst.target
    total = sum(d)
    if s > total:
        return None
    if s == total:
        return tuple(range(len(d)))
    witness = decide_entropy_min(reduce_subset_sum(inst), search)
    if not witness:
        return None
    subset = tuple(sorted(i for i, j in witness.assignment.items() if j == 0))
    assert sum(d[i] for i in subset) == s
    return subset


def solve_three_partition_via_channel(inst: ThreePartitionInstance, search: GroupingSearch | None = None):
    """Partition of the indices into ``m`` triples of sum ``k``, or None.

    Raises :class:`MalformedInstance` for instances outside the problem's
    constraints.
    """
    witness = decide_optimal_channel(reduce_three_partition(inst), search)
    if not witness:
        return None
    groups = [tuple(g) for g in witness.groups()]
    assert all(len(g) == 3 and sum(inst.weights[i] for i in g) == inst.bound for g in groups)
    return groups


def _exact_cells(cells) -> bool:
    return all(isinstance(c, (int, Fraction)) and not isinstance(c, bool) for r in cells for c in r)


def verify_certificate(cert: Certificate, target: TransportationPolytope | ChannelFamily) -> bool:
    """Polynomial-time exact check of a witness; never evaluates an entropy.

    Accepts iff the matrix is nonnegative, has the required marginals (the
    column marginal is ``1/m`` everywhere for a channel family) and at most
    one nonzero cell per row.
    """
    cells = cert.coupling
    if isinstance(target, TransportationPolytope):
        if cert.claimed_property != ROW_DETERMINISTIC_IN:
            return False
        p, q = target.p.probs, target.q.probs
    elif isinstance(target, ChannelFamily):
        if cert.claimed_property != ROW_DETERMINISTIC_UNIFORM_COLS:
            return False
        p, q = target.p.probs, (Fraction(1, target.m),) * target.m
    else:
        raise TypeError(f"cannot verify against {type(target).__name__}")
    if len(cells) != len(p) or any(len(r) != len(q) for r in cells):
        return False
    if not _exact_cells(cells):
        return False
    col = [Fraction(0)] * len(q)
    for r, pi in zip(cells, p):
        nonzero = 0
        row = 0
        for j, c in enumerate(r):
            if c < 0:
                return False
            if c:
                nonzero += 1
            row += c
            col[j] += c
        if nonzero > 1 or row != pi:
            return False
    return all(a == b for a, b in zip(col, q))
