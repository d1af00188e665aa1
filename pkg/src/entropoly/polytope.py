"""Transportation polytopes C(P, Q): membership, bases, pivots and vertices.

Vertices are visited through transportation-simplex bases (spanning trees of
the bipartite row/column graph). Degenerate polytopes are handled with the
classical lexicographic perturbation: every row supply gets ``+eps`` and the
last column demand gets ``+n*eps``. Under that perturbation every feasible
tree is nondegenerate ("strongly feasible"), the pivot graph on those trees
is connected, and every vertex of the unperturbed polytope is the
``eps -> 0`` limit of at least one of them. Flows are therefore stored as
pairs ``(a, b)`` meaning ``a + b*eps`` and compared lexicographically.

Zero rows and columns are fixed at zero in every coupling; they are stripped
before any tree work and reinserted in results.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .core import Coupling, Distribution, product_coupling
from .errors import LimitExceeded

DEFAULT_LIMIT = 10**6


@dataclass(frozen=True)
class TransportationPolytope:
    """The set of couplings with row marginal ``p`` and column marginal ``q``."""

    p: Distribution
    q: Distribution

    @property
    def shape(self) -> tuple:
        return len(self.p), len(self.q)

    def dimension(self) -> int:
        """Affine dimension ``(n'-1)(m'-1)`` over the supports (diagnostic only)."""
        return (len(self.p.support()) - 1) * (len(self.q.support()) - 1)

    def transpose(self) -> "TransportationPolytope":
        return TransportationPolytope(self.q, self.p)

    def product(self) -> Coupling:
        return product_coupling(self.p, self.q)


@dataclass(frozen=True)
class BasisTree:
    basic_cells: frozenset

    def __iter__(self):
        return iter(sorted(self.basic_cells))

    def __len__(self):
        return len(self.basic_cells)

    def is_acyclic(self) -> bool:
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.basic_cells:
            a, b = find(("r", i)), find(("c", j))
            if a == b:
                return False
            parent[a] = b
        return True


@dataclass(frozen=True)
class Vertex:
    coupling: Coupling
    basis: BasisTree

    def key(self) -> tuple:
        return self.coupling.key()


def is_member(s: Coupling, poly: TransportationPolytope) -> bool:
    """Exact check that ``s`` has nonnegative cells and marginals ``(P, Q)``."""
    n, m = poly.shape
    if s.shape != (n, m):
        return False
    if any(c < 0 for r in s.cells for c in r):
        return False
    if any(sum(r) != poly.p[i] for i, r in enumerate(s.cells)):
        return False
    return all(sum(col) == poly.q[j] for j, col in enumerate(zip(*s.cells)))


# ---------------------------------------------------------------------------
# Perturbed tree machinery on the support-reduced problem
# ---------------------------------------------------------------------------

def _lex_pos(x) -> bool:
    return x[0] > 0 or (x[0] == 0 and x[1] > 0)


def _sub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _add(x, y):
    return (x[0] + y[0], x[1] + y[1])


class _Reduced:
    """The polytope restricted to positive rows/columns, with eps-perturbed marginals."""

    def __init__(self, poly: TransportationPolytope):
        self.poly = poly
        self.rows = poly.p.support()
        self.cols = poly.q.support()
        n, m = len(self.rows), len(self.cols)
        self.n, self.m = n, m
        self.supply = [(poly.p[i], 1) for i in self.rows]
        self.demand = [(poly.q[j], 0) for j in self.cols]
        self.demand[-1] = (self.demand[-1][0], n)

    def northwest(self) -> dict:
        supply, demand = list(self.supply), list(self.demand)
        flows = {}
        i = j = 0
        while i < self.n and j < self.m:
            # Perturbed partial sums never tie before the last cell.
            if supply[i] < demand[j]:
                x = supply[i]
            else:
                x = demand[j]
            flows[(i, j)] = x
            supply[i] = _sub(supply[i], x)
            demand[j] = _sub(demand[j], x)
            if supply[i] == (0, 0) and i < self.n - 1:
                i += 1
            else:
                j += 1
        return flows

    def solve(self, cells) -> dict | None:
        """Flows of a spanning tree by leaf peeling; None if not a spanning tree."""
        n = self.n
        if len(cells) != n + self.m - 1:
            return None
        adj = {u: set() for u in range(n + self.m)}
        for i, j in cells:
            adj[i].add((i, j))
            adj[n + j].add((i, j))
        rest = list(self.supply) + list(self.demand)
        flows = {}
        leaves = deque(u for u, e in adj.items() if len(e) == 1)
        while leaves:
            u = leaves.popleft()
            if len(adj[u]) != 1:
                continue
            (cell,) = adj[u]
            i, j = cell
            v = n + j if u == i else i
            flows[cell] = rest[u]
            rest[u] = (0, 0)
            rest[v] = _sub(rest[v], flows[cell])
            adj[u].clear()
            adj[v].discard(cell)
            if len(adj[v]) == 1:
                leaves.append(v)
        if len(flows) != len(cells) or any(x != (0, 0) for x in rest):
            return None
        return flows

    def path(self, cells, start: int, goal: int) -> list:
        """Tree path between two nodes as a list of cells (nodes: rows 0..n-1, cols n..)."""
        n = self.n
        adj = {}
        for i, j in cells:
            adj.setdefault(i, []).append((n + j, (i, j)))
            adj.setdefault(n + j, []).append((i, (i, j)))
        prev = {start: None}
        todo = deque([start])
        while todo:
            u = todo.popleft()
            if u == goal:
                break
            for v, cell in adj.get(u, ()):
                if v not in prev:
                    prev[v] = (u, cell)
                    todo.append(v)
        out = []
        u = goal
        while prev[u] is not None:
            u, cell = prev[u]
            out.append(cell)
        out.reverse()
        return out

    def pivot(self, flows: dict, enter) -> tuple:
        """Pivot ``enter`` into the tree. Returns (new flows, leaving cell)."""
        i, j = enter
        path = self.path(flows, self.n + j, i)
        minus = path[0::2]
        plus = path[1::2]
        leave = min(minus, key=lambda c: flows[c])
        theta = flows[leave]
        new = dict(flows)
        for c in minus:
            new[c] = _sub(new[c], theta)
        for c in plus:
            new[c] = _add(new[c], theta)
        del new[leave]
        new[enter] = theta
        return new, leave

    def lift(self, flows: dict) -> Vertex:
        poly = self.poly
        n, m = poly.shape
        cells = [[Fraction(0)] * m for _ in range(n)]
        basis = set()
        for (i, j), x in flows.items():
            cells[self.rows[i]][self.cols[j]] = x[0]
            basis.add((self.rows[i], self.cols[j]))
        return Vertex(Coupling(cells), BasisTree(frozenset(basis)))

    def lower(self, basis: BasisTree) -> list:
        ri = {r: k for k, r in enumerate(self.rows)}
        ci = {c: k for k, c in enumerate(self.cols)}
        return [(ri[i], ci[j]) for i, j in basis.basic_cells]


def northwest_corner(poly: TransportationPolytope) -> Vertex:
    """Basic feasible solution from the north-west corner rule.

    Zero rows and columns are skipped. When a row and a column run out
    together the column advances first and the next basic cell carries a
    zero, so the tree always has ``n' + m' - 1`` cells.
    """
    red = _Reduced(poly)
    return red.lift(red.northwest())


def pivot_neighbors(v: Vertex, poly: TransportationPolytope) -> list:
    """Distinct vertices one pivot away from ``v`` through its basis, sorted."""
    red = _Reduced(poly)
    flows = red.solve(red.lower(v.basis))
    if flows is None or not all(_lex_pos(x) for x in flows.values()):
        raise ValueError("vertex basis is not a strongly feasible tree of this polytope")
    own = v.key()
    found = {}
    for enter in _nonbasic(red, flows):
        new, _ = red.pivot(flows, enter)
        w = red.lift(new)
        if w.key() != own:
            found.setdefault(w.key(), w)
    return [found[k] for k in sorted(found)]


def _nonbasic(red: _Reduced, flows: dict) -> Iterator:
    for i in range(red.n):
        for j in range(red.m):
            if (i, j) not in flows:
                yield (i, j)


def iter_vertices(poly: TransportationPolytope) -> Iterator[Vertex]:
    """Yield each vertex once, in depth-first pivot order from the NW corner."""
    red = _Reduced(poly)
    start = red.northwest()
    seen_bases = {frozenset(start)}
    seen = set()
    stack = [start]
    while stack:
        flows = stack.pop()
        v = red.lift(flows)
        if v.key() not in seen:
            seen.add(v.key())
            yield v
        for enter in _nonbasic(red, flows):
            new, _ = red.pivot(flows, enter)
            b = frozenset(new)
            if b not in seen_bases:
                seen_bases.add(b)
                stack.append(new)


def enumerate_vertices(poly: TransportationPolytope, limit: int = DEFAULT_LIMIT) -> list:
    """All vertices of ``poly`` sorted by cell values.

    Raises :class:`LimitExceeded` (with the vertices found so far in
    ``partial``) once more than ``limit`` distinct vertices have been seen.
    """
    if limit <= 0:
        raise ValueError("limit must be positive")
    found = []
    for v in iter_vertices(poly):
        found.append(v)
        if len(found) > limit:
            found.sort(key=Vertex.key)
            raise LimitExceeded(f"more than {limit} vertices", partial=found)
    found.sort(key=Vertex.key)
    return found
