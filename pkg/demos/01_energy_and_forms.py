"""
Energy, derivations and 1-forms
===============================

A weighted graph carries an energy form.  Its derivative ``df`` lives on
edges, and the conductance-weighted norm of ``df`` recovers the energy.
This script walks through that identity on a four-cycle and on a small
Sierpinski gasket.
"""
import numpy as np

from graphhodge import (
    codifferential,
    cycle_graph,
    derivation,
    energy,
    energy_measure,
    generator,
    inner,
    module_action,
    norm,
    sierpinski_gasket,
    simple_tensor,
)

###############################################################################
# The four-cycle
# --------------
# The indicator of vertex 0 changes across two edges, so its energy is 2.

c4 = cycle_graph(4)
f = np.array([1.0, 0.0, 0.0, 0.0])
print("edges:", c4.edges.tolist())
print("E(1_0) =", energy(c4, f))
print("df =", derivation(c4, f))
print("||df||^2 =", norm(c4, derivation(c4, f)) ** 2)

###############################################################################
# Where the energy sits
# ---------------------
# Each edge splits its energy evenly between its two endpoints.

print("energy measure:", energy_measure(c4, f))
print("generator A f:", generator(c4, f))

###############################################################################
# The codifferential is the adjoint of d
# --------------------------------------
# ``<f, d*v> = -<df, v>`` for every function ``f`` and 1-form ``v``.

rng = np.random.default_rng(1)
v = rng.standard_normal(c4.n_edges)
lhs = float(np.dot(f * c4.vertex_measure, codifferential(c4, v)))
rhs = -inner(c4, derivation(c4, f), v)
print(f"<f, d*v> = {lhs:.15f}")
print(f"-<df, v> = {rhs:.15f}")

###############################################################################
# Leibniz rule and simple tensors
# -------------------------------
# Functions act on forms by averaging over edge endpoints, which makes
# ``d(fh) = f.dh + h.df`` exact.

h = rng.standard_normal(4)
leibniz = derivation(c4, f * h) - module_action(c4, f, derivation(c4, h)) - module_action(c4, h, derivation(c4, f))
print("Leibniz defect:", np.abs(leibniz).max())
print("1_0 (x) h =", simple_tensor(c4, f, h))

###############################################################################
# A fractal example
# -----------------
# On the level-1 gasket, with conductance 5/3 per edge, a corner indicator
# has energy 10/3.

sg1 = sierpinski_gasket(1)
corner = np.zeros(sg1.n_vertices)
corner[0] = 1.0
print("SG1 vertices:", sg1.n_vertices, "edges:", sg1.n_edges)
print("E(1_corner) =", energy(sg1, corner), " (10/3 =", 10 / 3, ")")
