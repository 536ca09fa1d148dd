"""Green operators and the Neumann problem on a finite boundary.

The Neumann derivative at a vertex is the net conductance-weighted outflow

    (df)_p = sum_{y ~ p} c_py (f(p) - f(y)) = (L f)(p),

with the sign chosen so that the boundary derivatives of a function that
is harmonic off ``B`` add up to zero (Gauss-Green with a plus sign).
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .exceptions import PreconditionError, SolvabilityError
from .graph import as_function, as_vertex_set, m_mean, schur_complement
from .potential import BoundaryData, harmonic_extension


@dataclass(frozen=True, eq=False)
class NeumannData:
    """Boundary vertices with prescribed Neumann derivatives (fluxes)."""

    boundary: tuple
    fluxes: np.ndarray

    def __post_init__(self):
        boundary = tuple(int(b) for b in self.boundary)
        fluxes = np.asarray(self.fluxes, dtype=float).reshape(-1)
        if not boundary:
            raise PreconditionError("boundary must be nonempty")
        if len(set(boundary)) != len(boundary):
            raise PreconditionError("boundary vertices must be distinct")
        if fluxes.shape[0] != len(boundary):
            raise PreconditionError("one flux per boundary vertex is required")
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "fluxes", fluxes)

    def __eq__(self, other):
        if not isinstance(other, NeumannData):
            return NotImplemented
        return self.boundary == other.boundary and np.array_equal(self.fluxes, other.fluxes)

    __hash__ = None

    @property
    def imbalance(self):
        return float(np.sum(self.fluxes))

    def is_solvable(self, rtol=1e-12):
        scale = float(np.sum(np.abs(self.fluxes)))
        return abs(self.imbalance) <= rtol * scale


def green_operator(g, boundary, source):
    """Solve ``-Af = source`` off ``boundary`` with ``f = 0`` on ``boundary``.

    Values of ``source`` on the boundary are ignored.
    """
    b = as_vertex_set(g, boundary, "boundary")
    source = as_function(g, source, "source")
    rest = np.setdiff1d(np.arange(g.n_vertices), b)
    f = np.zeros(g.n_vertices)
    if rest.size:
        lap = g.laplacian[np.ix_(rest, rest)]
        f[rest] = sla.solve(lap, g.vertex_measure[rest] * source[rest], assume_a="pos")
    return f


def green_matrix(g, boundary):
    """Matrix of the Green operator acting on functions (columns: unit sources)."""
    return np.column_stack([green_operator(g, boundary, e) for e in np.eye(g.n_vertices)])


def neumann_derivative(g, f, p):
    """Outward flux ``(df)_p = sum_{y ~ p} c_py (f(p) - f(y))``."""
    f = as_function(g, f)
    return float(g.laplacian[int(p)] @ f)


def dirichlet_to_neumann(g, boundary):
    """Boundary response matrix: maps boundary values to Neumann derivatives
    of their harmonic extension.  It is the Schur complement of ``L`` onto
    ``boundary`` and has the constants as its kernel.
    """
    b = as_vertex_set(g, boundary, "boundary")
    return schur_complement(g.laplacian, list(b))


def solve_neumann(g, data, rtol=1e-12):
    """Harmonic function off ``data.boundary`` with the prescribed fluxes.

    The boundary values solve the response system restricted to the
    mean-zero flux subspace (one boundary value is pinned, which removes
    the constant kernel).  The result is normalized to mean zero with
    respect to the vertex measure.

    Raises:
        SolvabilityError: if the fluxes do not sum to zero (relative to
            their total magnitude).
    """
    as_vertex_set(g, data.boundary, "boundary")
    if not data.is_solvable(rtol):
        raise SolvabilityError(f"Neumann fluxes sum to {data.imbalance:.6g}; a solution exists only for zero sum")
    order = np.argsort(data.boundary)
    boundary = np.asarray(data.boundary)[order]
    fluxes = data.fluxes[order]
    response = dirichlet_to_neumann(g, boundary)
    values = np.zeros(boundary.size)
    if boundary.size > 1:
        values[1:] = sla.solve(response[1:, 1:], fluxes[1:], assume_a="pos")
    h = harmonic_extension(g, BoundaryData(tuple(boundary), values))
    return h - m_mean(g, h)
