"""Hodge theory, Cech cohomology and stationary Navier-Stokes flows on weighted graphs.

A finite weighted graph carries a discrete Dirichlet form.  From it this
package builds 1-forms (edge vectors with the conductance inner product),
the derivation and codifferential, the Hodge decomposition, harmonic
forms, Cech cohomology of vertex covers, capacities, the Neumann problem
and the weak Navier-Stokes system, whose solutions are stationary.
"""

from .builders import (
    FAMILIES,
    SG_RENORMALIZATION,
    BuilderSpec,
    build,
    cycle_graph,
    first_betti,
    ladder_graph,
    metric_graph,
    path_graph,
    sierpinski_gasket,
    sierpinski_vertices,
    tree_graph,
)
from .cech import (
    Cochain,
    CorrespondenceReport,
    Cover,
    CoverValidity,
    InducedMap,
    Nerve,
    coboundary,
    correspondence_check,
    cover_validity,
    good_cover,
    h1_dimension,
    induced_h1_map,
    nerve,
    refinement_map,
)
from .exceptions import (
    DocumentError,
    GraphHodgeError,
    NotLocallyExact,
    PreconditionError,
    SolvabilityError,
    VerificationError,
)
from .forms import (
    HodgeSplit,
    LocalPatchWitness,
    codifferential,
    d_gamma_h,
    d_measure,
    derivation,
    gamma_h,
    harmonic_basis,
    harmonic_dimension,
    hodge_decompose,
    hodge_laplacian,
    hodge_laplacian_kernel_dimension,
    inner,
    module_action,
    norm,
    simple_tensor,
    test_local_exactness,
)
from .graph import (
    WeightedGraph,
    energy,
    energy_measure,
    generator,
    l2_inner,
    schur_trace,
    spectral_gap,
)
from .navier_stokes import (
    DEFAULT_TIMES,
    NsSolution,
    WeakSolutionReport,
    solve_ns_boundary,
    solve_ns_free,
    verify_weak_solution,
)
from .neumann import (
    NeumannData,
    dirichlet_to_neumann,
    green_operator,
    neumann_derivative,
    solve_neumann,
)
from .potential import (
    BoundaryData,
    DisconnectingSet,
    ReconstructionReport,
    capacity,
    disconnecting_sets,
    equilibrium_potential,
    harmonic_extension,
    locally_constant_subspace,
    maximum_principle_holds,
    reconstruction_check,
)

__version__ = "0.1.0"
