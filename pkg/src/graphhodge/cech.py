"""Finite covers of a graph, their nerves and first Cech cohomology.

A cover is a list of vertex sets, each inducing a connected subgraph, whose
union is the whole vertex set.  Read topologically, a set ``U`` stands for
a small open neighborhood of the induced subgraph ``G[U]`` in the metric
graph; the cover is then an honest open cover exactly when every edge lies
inside some set, and intersections of the thickened sets correspond to
intersections of the vertex sets.

Cohomology is taken with real coefficients.  Simplices are tuples of cover
indices in increasing order, which is the positive orientation.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np
import scipy.linalg as sla

from .exceptions import PreconditionError, VerificationError
from .forms import RANK_RTOL, harmonic_dimension, numerical_rank
from .graph import as_vertex_set
from .potential import disconnecting_sets

EXACT_RANK_LIMIT = 64


@dataclass(frozen=True)
class Cover:
    """Labelled family of vertex sets.

    ``sets`` are stored as sorted tuples; ``labels`` default to
    ``0 .. len(sets) - 1``.
    """

    sets: tuple
    labels: tuple = None

    def __post_init__(self):
        sets = tuple(tuple(sorted({int(v) for v in s})) for s in self.sets)
        if not sets:
            raise PreconditionError("a cover needs at least one set")
        if any(not s for s in sets):
            raise PreconditionError("cover sets must be nonempty")
        labels = tuple(range(len(sets))) if self.labels is None else tuple(self.labels)
        if len(labels) != len(sets):
            raise PreconditionError("one label per cover set is required")
        if len(set(labels)) != len(labels):
            raise PreconditionError("cover labels must be distinct")
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.sets)


def validate_cover(g, cover):
    """Raise :class:`PreconditionError` unless ``cover`` is a valid cover of ``g``."""
    nxg = g.to_networkx()
    union = set()
    for label, s in zip(cover.labels, cover.sets):
        as_vertex_set(g, s, f"cover set {label!r}")
        if not nx.is_connected(nxg.subgraph(s)):
            raise PreconditionError(f"cover set {label!r} does not induce a connected subgraph")
        union.update(s)
    if len(union) != g.n_vertices:
        raise PreconditionError("cover sets do not cover every vertex")


@dataclass(frozen=True)
class Nerve:
    """Nerve of a cover up to dimension 2.

    Simplices are increasing tuples of cover indices with nonempty common
    intersection; ``labels`` carries the cover labels for reporting.
    """

    labels: tuple
    simplices_1: tuple
    simplices_2: tuple

    @property
    def n_vertices(self):
        return len(self.labels)

    def d0(self):
        """Coboundary ``C^0 -> C^1`` as a dense integer matrix."""
        mat = np.zeros((len(self.simplices_1), self.n_vertices), dtype=np.int64)
        for row, (a, b) in enumerate(self.simplices_1):
            mat[row, a] = -1
            mat[row, b] = 1
        return mat

    def d1(self):
        """Coboundary ``C^1 -> C^2``: ``(df)(abc) = f(bc) - f(ac) + f(ab)``."""
        index = {s: k for k, s in enumerate(self.simplices_1)}
        mat = np.zeros((len(self.simplices_2), len(self.simplices_1)), dtype=np.int64)
        for row, (a, b, c) in enumerate(self.simplices_2):
            mat[row, index[(b, c)]] += 1
            mat[row, index[(a, c)]] -= 1
            mat[row, index[(a, b)]] += 1
        return mat

    def simplices(self, degree):
        if degree == 0:
            return tuple((a,) for a in range(self.n_vertices))
        if degree == 1:
            return self.simplices_1
        if degree == 2:
            return self.simplices_2
        raise PreconditionError("only degrees 0, 1, 2 are represented")


def nerve(g, cover):
    """Record all nonempty pairwise and triple intersections of ``cover``.

    ``g`` may be ``None`` to skip validation against a graph.
    """
    if g is not None:
        validate_cover(g, cover)
    sets = [set(s) for s in cover.sets]
    k = len(sets)
    edges = tuple((a, b) for a, b in itertools.combinations(range(k), 2) if sets[a] & sets[b])
    edge_set = set(edges)
    triangles = tuple(
        (a, b, c)
        for a, b, c in itertools.combinations(range(k), 3)
        if (a, b) in edge_set and (a, c) in edge_set and sets[a] & sets[b] & sets[c]
    )
    return Nerve(cover.labels, edges, triangles)


def _permutation_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class Cochain:
    """Real values on the positively oriented ``degree``-simplices of a nerve."""

    nerve: Nerve
    degree: int
    values: np.ndarray

    def __post_init__(self):
        if self.degree not in (0, 1, 2):
            raise PreconditionError("cochain degree must be 0, 1 or 2")
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if values.shape[0] != len(self.nerve.simplices(self.degree)):
            raise PreconditionError("cochain length does not match the number of simplices")
        object.__setattr__(self, "values", values)

    def value(self, simplex):
        """Value on an arbitrarily ordered simplex, alternating in its ordering."""
        simplex = tuple(int(a) for a in simplex)
        if len(set(simplex)) != len(simplex):
            return 0.0
        key = tuple(sorted(simplex))
        index = self.nerve.simplices(self.degree).index(key)
        return _permutation_sign(simplex) * float(self.values[index])


def coboundary(n, c):
    """Cech coboundary of a 0- or 1-cochain."""
    if c.degree == 0:
        return Cochain(n, 1, n.d0() @ c.values)
    if c.degree == 1:
        return Cochain(n, 2, n.d1() @ c.values)
    raise PreconditionError("coboundary of a 2-cochain is not represented")


def exact_rank(matrix):
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(matrix)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / p
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def h1_dimension(n):
    """``dim Z^1 - dim B^1`` of the nerve.

    The numerical ranks are cross-checked by exact rational elimination
    when the nerve has fewer than 64 simplices.
    """
    d0, d1 = n.d0(), n.d1()
    r0, r1 = numerical_rank(d0), numerical_rank(d1)
    if n.n_vertices + len(n.simplices_1) + len(n.simplices_2) < EXACT_RANK_LIMIT:
        e0, e1 = exact_rank(d0), exact_rank(d1)
        if (e0, e1) != (r0, r1):
            raise VerificationError(f"numerical ranks {(r0, r1)} disagree with exact ranks {(e0, e1)}")
    return len(n.simplices_1) - r1 - r0


def harmonic_cochains(n):
    """Orthonormal basis (columns) of ``ker d1 cap ker d0^T``.

    Each cohomology class has exactly one representative in this space.
    """
    n1 = len(n.simplices_1)
    if n1 == 0:
        return np.zeros((0, 0))
    stacked = np.vstack([n.d1().astype(float).reshape(-1, n1), n.d0().T.astype(float)])
    return sla.null_space(stacked, rcond=RANK_RTOL)


def refinement_map(coarse, fine):
    """Refining map ``pi`` with ``fine.sets[b] <= coarse.sets[pi[b]]``.

    The smallest admissible coarse index is chosen for every fine set.
    Returns ``None`` if ``fine`` does not refine ``coarse``.
    """
    coarse_sets = [set(s) for s in coarse.sets]
    pi = []
    for s in fine.sets:
        s = set(s)
        hit = next((a for a, u in enumerate(coarse_sets) if s <= u), None)
        if hit is None:
            return None
        pi.append(hit)
    return tuple(pi)


def cochain_map(coarse_nerve, fine_nerve, pi):
    """Matrix of ``pi^*: C^1(coarse) -> C^1(fine)``."""
    index = {s: k for k, s in enumerate(coarse_nerve.simplices_1)}
    mat = np.zeros((len(fine_nerve.simplices_1), len(coarse_nerve.simplices_1)))
    for row, (b0, b1) in enumerate(fine_nerve.simplices_1):
        a0, a1 = pi[b0], pi[b1]
        if a0 == a1:
            continue
        key = (min(a0, a1), max(a0, a1))
        if key not in index:
            raise PreconditionError(f"refining map sends nerve edge {(b0, b1)} to a non-simplex {key}")
        mat[row, index[key]] = 1.0 if a0 < a1 else -1.0
    return mat


@dataclass(frozen=True, eq=False)
class InducedMap:
    """Induced map on first cohomology in harmonic-cochain coordinates."""

    matrix: np.ndarray
    dim_coarse: int
    dim_fine: int
    rank: int
    maps_cocycles: bool
    maps_coboundaries: bool

    @property
    def well_defined(self):
        return self.maps_cocycles and self.maps_coboundaries

    @property
    def injective(self):
        return self.rank == self.dim_coarse


def induced_h1_map(coarse, fine, pi):
    """The map ``H^1(coarse) -> H^1(fine)`` induced by a refining map ``pi``.

    Raises:
        PreconditionError: if ``pi`` is not a refining map from ``fine`` to ``coarse``.
    """
    pi = tuple(int(a) for a in pi)
    if len(pi) != len(fine.sets):
        raise PreconditionError("refining map needs one entry per fine set")
    for b, a in enumerate(pi):
        if not 0 <= a < len(coarse.sets) or not set(fine.sets[b]) <= set(coarse.sets[a]):
            raise PreconditionError(f"fine set {b} is not contained in coarse set {a}")
    nc, nf = nerve(None, coarse), nerve(None, fine)
    p = cochain_map(nc, nf, pi)
    hc, hf = harmonic_cochains(nc), harmonic_cochains(nf)
    dim_c = hc.shape[1] if hc.size else 0
    dim_f = hf.shape[1] if hf.size else 0

    d1f = nf.d1().astype(float)
    zc = sla.null_space(nc.d1().astype(float), rcond=RANK_RTOL) if len(nc.simplices_1) else np.zeros((0, 0))
    if zc.size and d1f.size:
        maps_cocycles = bool(np.max(np.abs(d1f @ p @ zc)) < 1e-9)
    else:
        maps_cocycles = True
    d0f = nf.d0().astype(float)
    image_b = p @ nc.d0().astype(float) if len(nc.simplices_1) else np.zeros((len(nf.simplices_1), 0))
    if image_b.size:
        maps_coboundaries = numerical_rank(np.hstack([d0f, image_b])) == numerical_rank(d0f)
    else:
        maps_coboundaries = True

    if dim_c and dim_f:
        matrix = hf.T @ p @ hc
        rank = numerical_rank(matrix)
    else:
        matrix = np.zeros((dim_f, dim_c))
        rank = 0
    return InducedMap(matrix, dim_c, dim_f, rank, maps_cocycles, maps_coboundaries)


@dataclass(frozen=True)
class CoverValidity:
    """Checks on a cover of a graph.

    ``good`` is the cofinality condition used for the cohomology comparison:
    connected sets and no triple intersections.  ``leray`` additionally asks
    for an honest open cover (every edge inside a set) whose sets and
    pairwise intersections induce trees; under it the nerve has the same
    first Betti number as the graph.
    """

    covers_vertices: bool
    connected_sets: bool
    triple_free: bool
    covers_edges: bool
    connected_intersections: bool
    acyclic_sets: bool
    max_set_size: int

    @property
    def good(self):
        return self.covers_vertices and self.connected_sets and self.triple_free

    @property
    def leray(self):
        return self.good and self.covers_edges and self.connected_intersections and self.acyclic_sets


def cover_validity(g, cover):
    nxg = g.to_networkx()
    sets = [set(s) for s in cover.sets]
    covers_vertices = set().union(*sets) == set(range(g.n_vertices))
    connected = all(nx.is_connected(nxg.subgraph(s)) for s in sets)
    counts = np.zeros(g.n_vertices, dtype=int)
    for s in sets:
        counts[list(s)] += 1
    triple_free = bool(np.all(counts <= 2))
    covers_edges = all(any(int(t) in s and int(h) in s for s in sets) for t, h in g.edges)
    inter_ok = True
    for a, b in itertools.combinations(range(len(sets)), 2):
        common = sets[a] & sets[b]
        if common and not nx.is_tree(nxg.subgraph(common)):
            inter_ok = False
            break
    acyclic = all(nx.is_forest(nxg.subgraph(s)) for s in sets)
    return CoverValidity(
        covers_vertices=bool(covers_vertices),
        connected_sets=bool(connected),
        triple_free=triple_free,
        covers_edges=bool(covers_edges),
        connected_intersections=inter_ok,
        acyclic_sets=bool(acyclic),
        max_set_size=max(len(s) for s in sets),
    )


def good_cover(g, max_set_size=3):
    """Greedy cover by connected sets without triple intersections.

    Edges are visited in depth-first order from vertex 0 and grouped into
    connected clusters; the vertex sets of the clusters form the cover.
    A cluster is extended across an edge only if it stays within
    ``max_set_size`` vertices and meets every other cluster in at most one
    vertex, and no vertex ever lies in more than two clusters.  Extensions
    that keep the induced subgraph a tree are preferred; otherwise a new
    two-vertex cluster is opened, and only then is a cluster allowed to
    close a cycle.  When no such move exists the edge falls back to a cluster
    already containing both endpoints, then to an oversized extension, and
    finally two clusters are merged; these fallbacks keep the cover valid
    but may give up the size bound or the Leray property, which
    :func:`cover_validity` reports.

    Raises:
        PreconditionError: if ``max_set_size < 2``.
        VerificationError: if the result is not a good cover.
    """
    if max_set_size < 2:
        raise PreconditionError("max_set_size must be at least 2")
    if g.n_vertices == 1:
        return Cover(((0,),))
    nxg = g.to_networkx()
    clusters = {}
    at = {v: set() for v in range(g.n_vertices)}
    next_id = 0

    def meets_others(cid, y):
        return any(clusters[cid] & clusters[o] for o in at[y] if o != cid)

    def closes_cycle(cid, x, y):
        # the induced subgraph stays a tree only if x is y's sole neighbor in the cluster
        return any(z != x and z in clusters[cid] for z in nxg.neighbors(y))

    def add(cid, y):
        clusters[cid].add(y)
        at[y].add(cid)

    def extend(a, b, keep_tree):
        for x, y in ((a, b), (b, a)):
            for cid in sorted(at[x]):
                if y in clusters[cid] or len(clusters[cid]) >= max_set_size or len(at[y]) >= 2:
                    continue
                if meets_others(cid, y) or (keep_tree and closes_cycle(cid, x, y)):
                    continue
                add(cid, y)
                return True
        return False

    for a, b in nx.edge_dfs(nxg, 0):
        placed = extend(a, b, keep_tree=True)
        if not placed and len(at[a]) < 2 and len(at[b]) < 2 and not (at[a] & at[b]):
            clusters[next_id] = set()
            add(next_id, a)
            add(next_id, b)
            next_id += 1
            placed = True
        if not placed:
            placed = extend(a, b, keep_tree=False)
        if not placed and at[a] & at[b]:
            placed = True
        if not placed:
            for x, y in ((a, b), (b, a)):
                if len(at[y]) < 2 and at[x]:
                    add(min(at[x]), y)
                    placed = True
                    break
        if not placed:
            keep, gone = min(at[a]), min(at[b])
            for v in clusters.pop(gone):
                at[v].discard(gone)
                at[v].add(keep)
                clusters[keep].add(v)
    cover = Cover(tuple(tuple(sorted(clusters[c])) for c in sorted(clusters)))
    validity = cover_validity(g, cover)
    if not validity.good:
        raise VerificationError(f"greedy cover construction failed: {validity}")
    return cover


@dataclass(frozen=True)
class CorrespondenceReport:
    """Comparison of harmonic 1-forms with the Cech cohomology of one cover."""

    harmonic_dimension: int
    cech_dimension: int
    validity: CoverValidity
    capacity_hypothesis: bool
    min_disconnecting_capacity: float
    n_disconnecting_sets: int
    notes: tuple

    @property
    def harmonic_nontrivial(self):
        return self.harmonic_dimension > 0

    @property
    def cech_nontrivial(self):
        return self.cech_dimension > 0

    @property
    def agree(self):
        return self.harmonic_nontrivial == self.cech_nontrivial


def correspondence_check(g, cover, separator_size=2):
    """Compare ``dim ker d* > 0`` with ``dim H^1(cover) > 0``.

    The capacity hypothesis is checked literally: every disconnecting set
    (up to ``separator_size`` vertices) of every cover set has positive
    capacity.  On a graph this always holds, since every nonempty vertex set
    has positive capacity.
    """
    n = nerve(g, cover)
    cech_dim = h1_dimension(n)
    harm_dim = harmonic_dimension(g)
    validity = cover_validity(g, cover)
    caps = []
    for s in cover.sets:
        caps.extend(d.capacity for d in disconnecting_sets(g, s, separator_size))
    notes = [
        "capacity hypothesis: every nonempty vertex set has positive capacity on a graph with positive conductances"
    ]
    if not validity.good:
        notes.append("cover has triple intersections or disconnected sets; it is not in the cofinal family")
    if harm_dim > 0 and cech_dim == 0:
        notes.append(
            "this single cover sees no cohomology; nontriviality of the limit requires some finer cover, "
            "since one cover is not cofinal"
        )
    if cech_dim > 0:
        notes.append("refining maps are injective, so a nontrivial class here survives in the direct limit")
    if validity.leray:
        notes.append("Leray cover: nerve and graph have the same first Betti number")
    elif harm_dim > 0 and cech_dim > 0 and harm_dim != cech_dim:
        notes.append("dimensions differ; only nontriviality is expected to agree")
    return CorrespondenceReport(
        harmonic_dimension=harm_dim,
        cech_dimension=cech_dim,
        validity=validity,
        capacity_hypothesis=all(c > 0 for c in caps),
        min_disconnecting_capacity=min(caps) if caps else float("inf"),
        n_disconnecting_sets=len(caps),
        notes=tuple(notes),
    )
