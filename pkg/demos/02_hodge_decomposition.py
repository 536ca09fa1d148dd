"""
Hodge decomposition
===================

Every 1-form splits into an exact part ``dh`` and a harmonic part whose
codifferential vanishes.  The harmonic forms have dimension equal to the
number of independent cycles.
"""
import numpy as np

from graphhodge import (
    codifferential,
    cycle_graph,
    first_betti,
    harmonic_basis,
    harmonic_dimension,
    hodge_decompose,
    hodge_laplacian_kernel_dimension,
    inner,
    ladder_graph,
    sierpinski_gasket,
    tree_graph,
)

###############################################################################
# Splitting a form on the four-cycle
# ----------------------------------
# ``(0, 1, 1, 2)`` is the gradient of a vertex indicator plus the unit
# circulation around the cycle.

c4 = cycle_graph(4)
split = hodge_decompose(c4, [0.0, 1.0, 1.0, 2.0])
print("exact   :", np.round(split.exact, 12))
print("harmonic:", np.round(split.harmonic, 12))
print("potential:", np.round(split.potential, 12))
print("<exact, harmonic> =", inner(c4, split.exact, split.harmonic))
print("d* harmonic =", codifferential(c4, split.harmonic))

###############################################################################
# Dimensions of the harmonic space
# --------------------------------
# Trees have none.  Cycles have one.  Gaskets gain loops geometrically.

graphs = {
    "tree depth 3": tree_graph(3, 2),
    "cycle 8": cycle_graph(8),
    "ladder 5": ladder_graph(5),
    "SG1": sierpinski_gasket(1),
    "SG2": sierpinski_gasket(2),
    "SG3": sierpinski_gasket(3),
}
print(f"{'graph':<14}{'b1':>4}{'harm':>6}{'ker':>6}")
for name, g in graphs.items():
    print(f"{name:<14}{first_betti(g):>4}{harmonic_dimension(g):>6}{hodge_laplacian_kernel_dimension(g):>6}")

###############################################################################
# An orthonormal harmonic basis
# -----------------------------
# The basis is built from fundamental cycles and orthonormalized in the
# conductance inner product.

basis = harmonic_basis(graphs["SG1"])
gram = np.array([[inner(graphs["SG1"], a, b) for b in basis] for a in basis])
print("Gram matrix deviation from identity:", np.abs(gram - np.eye(len(basis))).max())
