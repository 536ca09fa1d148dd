"""
Sierpinski gasket renormalization
=================================

Tracing the level-n gasket down to its three corners reproduces the
level-0 triangle exactly when each level multiplies conductances by 5/3.
"""
import numpy as np

from graphhodge import SG_RENORMALIZATION, schur_trace, sierpinski_gasket, spectral_gap

###############################################################################
# Trace to the corners
# --------------------

base = sierpinski_gasket(0).laplacian
for level in range(4):
    g = sierpinski_gasket(level)
    traced = schur_trace(g, (0, 1, 2)).laplacian
    print(f"level {level}: {g.n_vertices:>3} vertices, trace error {np.abs(traced - base).max():.2e}")

###############################################################################
# A wrong factor drifts
# ---------------------
# Using 3/2 in place of 5/3 makes the trace shrink by 9/10 per level.

for level in range(1, 4):
    g = sierpinski_gasket(level, factor=1.5)
    ratio = schur_trace(g, (0, 1, 2)).laplacian[0, 0] / base[0, 0]
    print(f"level {level}: ratio {ratio:.6f}  (0.9^{level} = {0.9 ** level:.6f})")

###############################################################################
# Spectral gaps
# -------------

print("renormalization factor:", SG_RENORMALIZATION)
for level in range(4):
    print(f"level {level}: spectral gap {spectral_gap(sierpinski_gasket(level)):.6f}")
