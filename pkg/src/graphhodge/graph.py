"""Finite weighted graphs as discrete strongly local Dirichlet forms.

A :class:`WeightedGraph` carries oriented edges with positive conductances
and a positive vertex measure ``m``.  Its energy is

    E(f, h) = sum_e c_e (f(head) - f(tail)) (h(head) - h(tail)),

and everything else in the package (1-forms, capacities, Neumann problems)
is built on top of the incidence matrix and weighted Laplacian exposed here.

Vertex functions are plain 1-d numpy arrays of length ``n_vertices``;
vertex measures use the same representation.
"""

from dataclasses import dataclass, field

import networkx as nx
import numpy as np
import scipy.linalg as sla

from .exceptions import PreconditionError


def _frozen(array):
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Connected oriented graph with conductances and a vertex measure.

    Args:
        n_vertices: number of vertices, labelled ``0 .. n_vertices - 1``.
        edges: ``(E, 2)`` integer array of ``(tail, head)`` pairs.  The
            orientation is kept exactly as given.
        conductance: ``(E,)`` strictly positive edge weights (1/resistance).
        vertex_measure: ``(n_vertices,)`` strictly positive weights; defaults
            to all ones.

    Raises:
        PreconditionError: on self-loops, repeated vertex pairs, non-positive
            weights, shape mismatches or a disconnected graph.
    """

    n_vertices: int
    edges: np.ndarray
    conductance: np.ndarray
    vertex_measure: np.ndarray = None
    _incidence: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = int(self.n_vertices)
        if n < 1:
            raise PreconditionError("a graph needs at least one vertex")
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        cond = np.asarray(self.conductance, dtype=float).reshape(-1)
        if self.vertex_measure is None:
            measure = np.ones(n)
        else:
            measure = np.asarray(self.vertex_measure, dtype=float).reshape(-1)

        if cond.shape[0] != edges.shape[0]:
            raise PreconditionError(f"{edges.shape[0]} edges but {cond.shape[0]} conductances")
        if measure.shape[0] != n:
            raise PreconditionError(f"vertex measure has length {measure.shape[0]}, expected {n}")
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise PreconditionError("edge endpoint out of range")
        if np.any(edges[:, 0] == edges[:, 1]):
            raise PreconditionError("self-loops are not allowed")
        pairs = {tuple(sorted(map(int, e))) for e in edges}
        if len(pairs) != edges.shape[0]:
            raise PreconditionError("at most one edge per unordered vertex pair")
        if not np.all(np.isfinite(cond)) or np.any(cond <= 0):
            raise PreconditionError("conductances must be finite and strictly positive")
        if not np.all(np.isfinite(measure)) or np.any(measure <= 0):
            raise PreconditionError("vertex measure must be finite and strictly positive")

        incidence = np.zeros((edges.shape[0], n))
        rows = np.arange(edges.shape[0])
        incidence[rows, edges[:, 1]] += 1.0
        incidence[rows, edges[:, 0]] -= 1.0

        object.__setattr__(self, "n_vertices", n)
        object.__setattr__(self, "edges", _frozen(edges))
        object.__setattr__(self, "conductance", _frozen(cond))
        object.__setattr__(self, "vertex_measure", _frozen(measure))
        object.__setattr__(self, "_incidence", _frozen(incidence))

        if not nx.is_connected(self.to_networkx()):
            raise PreconditionError("graph must be connected")

    @classmethod
    def from_edge_list(cls, n_vertices, edge_list, vertex_measure=None):
        """Build from ``[(tail, head, conductance), ...]`` records."""
        records = list(edge_list)
        edges = np.array([(int(t), int(h)) for t, h, _ in records], dtype=np.int64).reshape(-1, 2)
        cond = np.array([float(c) for _, _, c in records])
        return cls(n_vertices, edges, cond, vertex_measure)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.n_vertices == other.n_vertices
            and np.array_equal(self.edges, other.edges)
            and np.array_equal(self.conductance, other.conductance)
            and np.array_equal(self.vertex_measure, other.vertex_measure)
        )

    __hash__ = None

    @property
    def n_edges(self):
        return self.edges.shape[0]

    @property
    def tails(self):
        return self.edges[:, 0]

    @property
    def heads(self):
        return self.edges[:, 1]

    @property
    def incidence(self):
        """``(E, n)`` matrix with ``+1`` at the head and ``-1`` at the tail of each edge."""
        return self._incidence

    @property
    def laplacian(self):
        """Weighted graph Laplacian ``D^T C D`` (positive semidefinite)."""
        d = self._incidence
        return d.T @ (self.conductance[:, None] * d)

    def edge_index(self, u, v):
        """Return ``(index, sign)`` of the edge joining ``u`` and ``v``.

        ``sign`` is +1 if the edge is stored as ``u -> v`` and -1 otherwise.
        """
        hit = np.flatnonzero((self.tails == u) & (self.heads == v))
        if hit.size:
            return int(hit[0]), 1
        hit = np.flatnonzero((self.tails == v) & (self.heads == u))
        if hit.size:
            return int(hit[0]), -1
        raise KeyError(f"no edge between {u} and {v}")

    def neighbors(self, x):
        out = np.concatenate([self.heads[self.tails == x], self.tails[self.heads == x]])
        return sorted(int(y) for y in out)

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self.n_vertices))
        for k, (t, h) in enumerate(self.edges):
            g.add_edge(int(t), int(h), index=k, conductance=float(self.conductance[k]))
        return g

    def with_conductance(self, conductance):
        return WeightedGraph(self.n_vertices, self.edges, conductance, self.vertex_measure)

    def with_measure(self, vertex_measure):
        return WeightedGraph(self.n_vertices, self.edges, self.conductance, vertex_measure)


def as_function(g, f, name="f"):
    """Validate a vertex function and return it as a float array."""
    arr = np.asarray(f, dtype=float)
    if arr.shape != (g.n_vertices,):
        raise PreconditionError(f"{name} has shape {arr.shape}, expected ({g.n_vertices},)")
    return arr


def as_vertex_set(g, vertices, name="vertex set", allow_empty=False):
    """Validate a collection of vertex indices and return a sorted tuple."""
    out = sorted({int(v) for v in vertices})
    if not out and not allow_empty:
        raise PreconditionError(f"{name} must be nonempty")
    if out and (out[0] < 0 or out[-1] >= g.n_vertices):
        raise PreconditionError(f"{name} contains a vertex out of range")
    return tuple(out)


def energy(g, f, h=None):
    """Symmetric bilinear energy ``E(f, h)``; ``h`` defaults to ``f``."""
    df = g.incidence @ as_function(g, f)
    dh = df if h is None else g.incidence @ as_function(g, h, "h")
    return float(np.sum(g.conductance * df * dh))


def energy_measure(g, f, h=None):
    """Mutual energy measure ``Gamma(f, h)`` as vertex weights.

    Each edge's energy is split half-half onto its endpoints, which is the
    only vertex measure satisfying

        2 sum_x phi(x) Gamma(f,h)({x}) = E(phi f, h) + E(phi h, f) - E(f h, phi)

    for every vertex function ``phi``.  Total mass equals ``energy(g, f, h)``.
    """
    df = g.incidence @ as_function(g, f)
    dh = df if h is None else g.incidence @ as_function(g, h, "h")
    return edge_to_vertex_measure(g, g.conductance * df * dh)


def edge_to_vertex_measure(g, edge_weights):
    """Distribute per-edge weights half onto each endpoint."""
    out = np.zeros(g.n_vertices)
    half = 0.5 * np.asarray(edge_weights, dtype=float)
    np.add.at(out, g.tails, half)
    np.add.at(out, g.heads, half)
    return out


def generator(g, f):
    """Generator ``(Af)(x) = -(1/m(x)) sum_{y~x} c_xy (f(x) - f(y))``.

    Sign convention: ``<h, Af>_{L2(m)} = -E(h, f)``.
    """
    return -(g.laplacian @ as_function(g, f)) / g.vertex_measure


def l2_inner(g, f, h):
    """Inner product in ``L2(m)``."""
    return float(np.sum(g.vertex_measure * as_function(g, f) * as_function(g, h, "h")))


def m_mean(g, f):
    return float(np.sum(g.vertex_measure * f) / np.sum(g.vertex_measure))


def schur_complement(matrix, keep):
    """Schur complement of a symmetric matrix onto the index set ``keep``."""
    keep = np.asarray(keep, dtype=np.int64)
    drop = np.setdiff1d(np.arange(matrix.shape[0]), keep)
    a = matrix[np.ix_(keep, keep)]
    if drop.size == 0:
        return a.copy()
    b = matrix[np.ix_(keep, drop)]
    c = matrix[np.ix_(drop, drop)]
    return a - b @ sla.solve(c, b.T, assume_a="pos")


def schur_trace(g, coarse_vertices, rtol=1e-13):
    """Effective network on ``coarse_vertices`` (Kron reduction).

    Interior vertices are eliminated from the Laplacian; the result is again
    a Laplacian whose off-diagonal entries give the effective conductances.
    Vertices are relabelled ``0..k-1`` in increasing order of the original
    indices, edges are oriented from lower to higher label, and the vertex
    measure is the restriction of ``g``'s measure.  Couplings below
    ``rtol`` times the largest one are treated as absent.
    """
    keep = as_vertex_set(g, coarse_vertices, "coarse vertex set")
    reduced = schur_complement(g.laplacian, keep)
    k = len(keep)
    iu, ju = np.triu_indices(k, 1)
    weights = -reduced[iu, ju]
    if weights.size:
        cutoff = rtol * max(float(np.max(np.abs(weights))), np.finfo(float).tiny)
        mask = weights > cutoff
        iu, ju, weights = iu[mask], ju[mask], weights[mask]
    edges = np.column_stack([iu, ju]) if iu.size else np.zeros((0, 2), dtype=np.int64)
    measure = g.vertex_measure[list(keep)]
    return WeightedGraph(k, edges, weights, measure)


def spectral_gap(g):
    """Smallest nonzero eigenvalue of ``L f = lambda M f``.

    Its reciprocal is the best constant ``c`` in the Poincare inequality
    ``int (f - f_X)^2 dm <= c E(f)``.  Returns ``inf`` for a single vertex.
    """
    if g.n_vertices == 1:
        return float("inf")
    eig = sla.eigh(g.laplacian, np.diag(g.vertex_measure), eigvals_only=True)
    return float(np.sort(eig)[1])
