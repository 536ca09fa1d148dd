"""
Neumann problems and stationary Navier-Stokes flows
===================================================

Boundary fluxes that sum to zero determine a harmonic function up to a
constant.  Navier-Stokes flows on a graph built from harmonic forms never
move: the velocity is constant in time and the pressure balances the
kinetic energy density.
"""
import numpy as np

from graphhodge import (
    NeumannData,
    SolvabilityError,
    cycle_graph,
    dirichlet_to_neumann,
    gamma_h,
    harmonic_basis,
    neumann_derivative,
    path_graph,
    sierpinski_gasket,
    solve_neumann,
    solve_ns_boundary,
    solve_ns_free,
    verify_weak_solution,
)

###############################################################################
# A Neumann problem on a path
# ---------------------------

p3 = path_graph(3)
h = solve_neumann(p3, NeumannData((0, 2), [-1.0, 1.0]))
print("solution:", h)
print("derivatives:", [neumann_derivative(p3, h, p) for p in (0, 2)])

try:
    solve_neumann(p3, NeumannData((0, 2), [1.0, 1.0]))
except SolvabilityError as err:
    print("rejected:", err)

###############################################################################
# The gasket seen from its corners
# --------------------------------
# The Dirichlet-to-Neumann map of SG2 at the three corners is the
# Laplacian of a unit triangle.

print(np.round(dirichlet_to_neumann(sierpinski_gasket(2), (0, 1, 2)), 12))

###############################################################################
# A flow around the four-cycle
# ----------------------------
# Unit circulation is harmonic, so it is a stationary solution for every
# viscosity.  Pressure is minus half the kinetic density.

c4 = cycle_graph(4)
u0 = np.ones(4)
for nu in (0.1, 1.0, 10.0):
    sol = solve_ns_free(c4, u0, nu)
    print(f"nu={nu:<5} velocity={sol.velocity} pressure={sol.pressure}")
print("kinetic density:", gamma_h(c4, u0))
print("weak solution:", verify_weak_solution(c4, sol).passed)

###############################################################################
# A boundary-driven flow on a path
# --------------------------------
# On a tree the only free flow is zero, but boundary fluxes drive a
# potential flow through it.

p3 = path_graph(3)
print("harmonic basis on a path:", harmonic_basis(p3))
sol = solve_ns_boundary(p3, NeumannData((0, 2), [-1.0, 1.0]), 1.0)
print("velocity:", sol.velocity, "pressure:", sol.pressure)
print("weak solution:", verify_weak_solution(p3, sol).passed)
