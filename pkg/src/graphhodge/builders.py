"""Graph approximations of one-dimensional example spaces.

Families: ``cycle``, ``path``, ``tree``, ``ladder``, ``metric_graph`` and
``sierpinski_gasket``.  All constructors are deterministic, so edge bases
(and hence 1-form coordinates) are reproducible.

Sierpinski gasket vertices are generated cell by cell: level ``k`` cells are
visited in lexicographic order of their addresses (words over ``{0,1,2}``)
for ``k = 0, 1, ..., n`` and each new corner is appended.  The vertex list
of level ``n`` is therefore a prefix of the list of level ``n + 1``, which
makes the renormalization check a plain Schur trace onto ``range(V_n)``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .exceptions import PreconditionError
from .graph import WeightedGraph

FAMILIES = ("cycle", "path", "tree", "sierpinski_gasket", "metric_graph", "ladder")

SG_RENORMALIZATION = 5.0 / 3.0


@dataclass(frozen=True)
class BuilderSpec:
    """Description of one member of a builder family.

    ``level_or_size`` is the number of vertices for ``cycle``/``path``, the
    depth for ``tree``, the number of rungs for ``ladder`` and the level for
    ``sierpinski_gasket``; it is ignored for ``metric_graph``.
    ``renormalization`` defaults to 5/3 for the gasket (conductance
    ``r**level`` on every edge) and to 1 otherwise (every conductance is
    multiplied by ``r``).
    """

    family: str
    level_or_size: int = 0
    renormalization: float = None
    tree_arity: int = 2
    metric_graph_edges: tuple = ()
    subdivision: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if int(self.level_or_size) < 0:
            raise PreconditionError("level_or_size must be nonnegative")
        if self.renormalization is not None and not float(self.renormalization) > 0:
            raise PreconditionError("renormalization factor must be positive")
        if int(self.tree_arity) < 1:
            raise PreconditionError("tree_arity must be positive")
        if int(self.subdivision) < 1:
            raise PreconditionError("subdivision must be a positive integer")
        object.__setattr__(
            self, "metric_graph_edges", tuple((int(t), int(h), float(r)) for t, h, r in self.metric_graph_edges)
        )

    @property
    def factor(self):
        if self.renormalization is not None:
            return float(self.renormalization)
        return SG_RENORMALIZATION if self.family == "sierpinski_gasket" else 1.0


def build(spec):
    """Construct the graph described by ``spec``."""
    n = int(spec.level_or_size)
    r = spec.factor
    if spec.family == "cycle":
        return cycle_graph(n, r)
    if spec.family == "path":
        return path_graph(n, r)
    if spec.family == "tree":
        return tree_graph(n, spec.tree_arity, r)
    if spec.family == "ladder":
        return ladder_graph(n, r)
    if spec.family == "metric_graph":
        return metric_graph(spec.metric_graph_edges, spec.subdivision, r)
    return sierpinski_gasket(n, r)


def cycle_graph(n, conductance=1.0):
    """``C_n`` with edges ``i -> i+1 (mod n)``, so the all-ones form circulates."""
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return WeightedGraph(n, edges, np.full(n, float(conductance)))


def path_graph(n, conductance=1.0):
    if n < 1:
        raise PreconditionError("a path needs at least 1 vertex")
    edges = np.array([(i, i + 1) for i in range(n - 1)], dtype=np.int64).reshape(-1, 2)
    return WeightedGraph(n, edges, np.full(n - 1, float(conductance)))


def tree_graph(depth, arity=2, conductance=1.0):
    """Complete ``arity``-ary rooted tree of the given depth, root 0, BFS labels."""
    edges = []
    frontier = [0]
    count = 1
    for _ in range(depth):
        nxt = []
        for parent in frontier:
            for _ in range(arity):
                edges.append((parent, count))
                nxt.append(count)
                count += 1
        frontier = nxt
    edges = np.array(edges, dtype=np.int64).reshape(-1, 2)
    return WeightedGraph(count, edges, np.full(len(edges), float(conductance)))


def ladder_graph(rungs, conductance=1.0):
    """Two rails ``0..k-1`` and ``k..2k-1`` joined by ``k`` rungs; ``b1 = k - 1``."""
    k = int(rungs)
    if k < 1:
        raise PreconditionError("a ladder needs at least one rung")
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(k + i, k + i + 1) for i in range(k - 1)]
    edges += [(i, k + i) for i in range(k)]
    edges = sorted(edges)
    return WeightedGraph(2 * k, edges, np.full(len(edges), float(conductance)))


def metric_graph(edge_records, subdivision=1, factor=1.0):
    """Graph from ``(tail, head, resistance)`` records.

    Each metric edge becomes a chain of ``subdivision`` graph edges of
    resistance ``r / subdivision``; the interior vertices are appended after
    the original ones, edge by edge.
    """
    records = list(edge_records)
    if not records:
        raise PreconditionError("metric graph needs at least one edge")
    if any(not r > 0 for _, _, r in records):
        raise PreconditionError("metric edge resistances must be positive")
    n = max(max(t, h) for t, h, _ in records) + 1
    k = int(subdivision)
    edges, cond = [], []
    nxt = n
    for t, h, r in records:
        chain = [t] + list(range(nxt, nxt + k - 1)) + [h]
        nxt += k - 1
        for a, b in zip(chain[:-1], chain[1:]):
            edges.append((a, b))
            cond.append(factor * k / r)
    return WeightedGraph(nxt, edges, cond)


def sierpinski_vertices(level):
    """Integer coordinates (at scale ``2**level``) of the level-``level`` vertices, in build order.

    Coordinates are affine: corners ``(0,0), (1,0), (0,1)`` at scale 1.
    """
    corners = np.array([(0, 0), (1, 0), (0, 1)], dtype=np.int64)
    order, index = [], {}
    cells = []
    for k in range(level + 1):
        scale = 2 ** (level - k)
        for word in itertools.product(range(3), repeat=k):
            origin = np.zeros(2, dtype=np.int64)
            for depth, letter in enumerate(word):
                origin += corners[letter] * 2 ** (level - depth - 1)
            pts = [tuple(int(c) for c in origin + scale * corners[i]) for i in range(3)]
            for p in pts:
                if p not in index:
                    index[p] = len(order)
                    order.append(p)
            if k == level:
                cells.append(tuple(index[p] for p in pts))
    return order, cells


def sierpinski_gasket(level, factor=SG_RENORMALIZATION):
    """Level-``level`` gasket graph with conductance ``factor**level`` on every edge.

    ``(3**(level+1) + 3) / 2`` vertices and ``3**(level+1)`` edges.  Edges
    are oriented from lower to higher vertex index and listed in that
    lexicographic order.
    """
    if level < 0:
        raise PreconditionError("level must be nonnegative")
    points, cells = sierpinski_vertices(level)
    edges = sorted({tuple(sorted(pair)) for cell in cells for pair in itertools.combinations(cell, 2)})
    return WeightedGraph(len(points), edges, np.full(len(edges), float(factor) ** level))


def first_betti(g):
    """``|E| - |V| + 1``, the cycle rank of the (connected) graph."""
    return int(g.n_edges - g.n_vertices + 1)
