"""
Capacity, harmonic extension and reconstruction
===============================================

Capacities measure how hard it is to separate a set from the rest of the
graph.  Harmonic extensions obey a maximum principle.  Functions that are
locally constant near two far-apart sets span the whole function space.
"""
import numpy as np

from graphhodge import (
    BoundaryData,
    capacity,
    cycle_graph,
    disconnecting_sets,
    equilibrium_potential,
    harmonic_extension,
    maximum_principle_holds,
    reconstruction_check,
    sierpinski_gasket,
)

###############################################################################
# Capacity of a single vertex on C4
# ---------------------------------
# With unit conductances and the standard normalization the value is 15/7.

c4 = cycle_graph(4)
print("cap({0}) =", capacity(c4, [0]), " (15/7 =", 15 / 7, ")")
print("equilibrium potential:", equilibrium_potential(c4, [0]))

###############################################################################
# Disconnecting sets
# ------------------
# Removing two opposite vertices cuts the four-cycle.

for s in disconnecting_sets(c4):
    print("separator", s.vertices, "capacity", round(s.capacity, 6))

###############################################################################
# Maximum principle
# -----------------
# Extend random corner data harmonically into the level-3 gasket.

sg3 = sierpinski_gasket(3)
rng = np.random.default_rng(3)
data = BoundaryData((0, 1, 2), rng.uniform(-1, 1, 3))
f = harmonic_extension(sg3, data)
print("boundary values:", np.round(data.values, 6))
print("range of extension:", f.min().round(6), f.max().round(6))
print("maximum principle:", maximum_principle_holds(sg3, data, f))

###############################################################################
# Reconstruction from locally constant functions
# ----------------------------------------------
# Two far-apart vertices on a ten-cycle.

c10 = cycle_graph(10)
report = reconstruction_check(c10, [0], [5])
print(report)
print("spans everything:", report.full_span)
