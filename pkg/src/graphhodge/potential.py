"""Harmonic extension, capacity, disconnecting sets, locally constant subspaces."""

import itertools
from dataclasses import dataclass

import networkx as nx
import numpy as np
import scipy.linalg as sla

from .exceptions import PreconditionError
from .forms import numerical_rank
from .graph import as_function, as_vertex_set


@dataclass(frozen=True, eq=False)
class BoundaryData:
    """Dirichlet data: prescribed ``values`` on the vertex set ``boundary``."""

    boundary: tuple
    values: np.ndarray

    def __post_init__(self):
        boundary = tuple(int(b) for b in self.boundary)
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if not boundary:
            raise PreconditionError("boundary must be nonempty")
        if len(set(boundary)) != len(boundary):
            raise PreconditionError("boundary vertices must be distinct")
        if values.shape[0] != len(boundary):
            raise PreconditionError("one boundary value per boundary vertex is required")
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "values", values)


def _split(g, boundary):
    b = np.asarray(boundary, dtype=np.int64)
    rest = np.setdiff1d(np.arange(g.n_vertices), b)
    return b, rest


def harmonic_extension(g, data):
    """Extend boundary values harmonically: ``Af = 0`` off the boundary.

    The result minimizes the energy among all functions with the given
    boundary values, and satisfies the maximum principle.
    """
    as_vertex_set(g, data.boundary, "boundary")
    b, rest = _split(g, data.boundary)
    f = np.zeros(g.n_vertices)
    f[b] = data.values
    if rest.size:
        lap = g.laplacian
        f[rest] = sla.solve(lap[np.ix_(rest, rest)], -lap[np.ix_(rest, b)] @ data.values, assume_a="pos")
    return f


def equilibrium_potential(g, target):
    """Minimizer of ``E_1(u) = E(u) + ||u||^2`` subject to ``u = 1`` on ``target``."""
    target = as_vertex_set(g, target, "target")
    b, rest = _split(g, target)
    u = np.ones(g.n_vertices)
    if rest.size:
        op = g.laplacian + np.diag(g.vertex_measure)
        u[rest] = sla.solve(op[np.ix_(rest, rest)], -op[np.ix_(rest, b)] @ np.ones(b.size), assume_a="pos")
    return u


def capacity(g, target):
    """``cap(A) = min { E(u) + ||u||^2_{L2(m)} : u = 1 on A }``.

    On a finite graph the constraint ``u >= 1`` may be replaced by ``u = 1``:
    the equilibrium potential takes values in ``(0, 1]``.
    """
    u = equilibrium_potential(g, target)
    op = g.laplacian + np.diag(g.vertex_measure)
    return float(u @ op @ u)


def neighborhood(g, vertices, radius=1):
    """Vertices at graph distance at most ``radius`` from ``vertices``."""
    start = as_vertex_set(g, vertices, allow_empty=True)
    nxg = g.to_networkx()
    dist = nx.multi_source_dijkstra_path_length(nxg, set(start), cutoff=radius) if start else {}
    return tuple(sorted(dist))


@dataclass(frozen=True)
class DisconnectingSet:
    vertices: tuple
    capacity: float


def disconnecting_sets(g, region=None, max_size=3):
    """Minimal vertex sets ``D`` whose removal disconnects ``region``.

    ``region`` defaults to all vertices and must induce a connected
    subgraph.  Candidates are enumerated by size up to ``max_size``; a set is
    kept only if no smaller kept set is contained in it.  Each result comes
    with its capacity.
    """
    region = as_vertex_set(g, range(g.n_vertices) if region is None else region, "region")
    sub = g.to_networkx().subgraph(region)
    if not nx.is_connected(sub):
        raise PreconditionError("region does not induce a connected subgraph")
    found = []
    for size in range(1, max_size + 1):
        for cand in itertools.combinations(region, size):
            cs = set(cand)
            if any(set(d) <= cs for d in found):
                continue
            remaining = [v for v in region if v not in cs]
            if len(remaining) < 2:
                continue
            if not nx.is_connected(sub.subgraph(remaining)):
                found.append(cand)
    return [DisconnectingSet(d, capacity(g, d)) for d in found]


def _components(g, vertices):
    sub = g.to_networkx().subgraph(vertices)
    return [tuple(sorted(c)) for c in sorted(nx.connected_components(sub), key=min)]


def locally_constant_subspace(g, vertices, radius=1):
    """``E_1``-orthonormal basis of functions locally constant near ``vertices``.

    The subspace consists of all functions that are constant on every
    connected component of the radius-``radius`` neighborhood of the given
    set, and arbitrary elsewhere.  Returned as an ``(n, k)`` array whose
    columns ``b`` satisfy ``b_i^T (L + M) b_j = delta_ij``.
    """
    as_vertex_set(g, vertices, "vertex set")
    nbhd = neighborhood(g, vertices, radius)
    columns = []
    for comp in _components(g, nbhd):
        col = np.zeros(g.n_vertices)
        col[list(comp)] = 1.0
        columns.append(col)
    inside = set(nbhd)
    for x in range(g.n_vertices):
        if x not in inside:
            col = np.zeros(g.n_vertices)
            col[x] = 1.0
            columns.append(col)
    raw = np.column_stack(columns)
    gram = raw.T @ (g.laplacian + np.diag(g.vertex_measure)) @ raw
    chol = sla.cholesky(gram, lower=True)
    return sla.solve_triangular(chol, raw.T, lower=True).T


@dataclass(frozen=True)
class ReconstructionReport:
    dim_first: int
    dim_second: int
    dim_sum: int
    n_vertices: int

    @property
    def full_span(self):
        return self.dim_sum == self.n_vertices


def reconstruction_check(g, first, second, radius=1):
    """Do the locally constant subspaces of two separated sets span everything?

    Raises:
        PreconditionError: if the two neighborhoods intersect.
    """
    n1 = set(neighborhood(g, as_vertex_set(g, first, "first set"), radius))
    n2 = set(neighborhood(g, as_vertex_set(g, second, "second set"), radius))
    if n1 & n2:
        raise PreconditionError("the neighborhoods of the two sets overlap")
    b1 = locally_constant_subspace(g, first, radius)
    b2 = locally_constant_subspace(g, second, radius)
    return ReconstructionReport(
        dim_first=b1.shape[1],
        dim_second=b2.shape[1],
        dim_sum=numerical_rank(np.hstack([b1, b2])),
        n_vertices=g.n_vertices,
    )


def maximum_principle_holds(g, data, f=None, rtol=1e-12):
    """Check ``min(values) <= f <= max(values)`` everywhere, up to rounding."""
    if f is None:
        f = harmonic_extension(g, data)
    f = as_function(g, f)
    lo, hi = float(np.min(data.values)), float(np.max(data.values))
    slack = rtol * max(1.0, abs(lo), abs(hi))
    return bool(np.all(f >= lo - slack) and np.all(f <= hi + slack))
