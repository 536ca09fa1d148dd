"""Randomized self-checks on a single graph, driven by a seed."""

from typing import NamedTuple

import numpy as np

from .forms import codifferential, derivation, hodge_decompose, hodge_laplacian, inner, norm
from .graph import energy, l2_inner
from .neumann import NeumannData, neumann_derivative, solve_neumann
from .potential import BoundaryData, harmonic_extension, maximum_principle_holds


class Check(NamedTuple):
    name: str
    max_residual: float
    tolerance: float
    passed: bool


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(a), abs(b))


def run_property_checks(g, seed=0, trials=20, tol=None):
    """Energy identity, adjointness, Hodge split, maximum principle, Neumann round trip.

    ``tol`` overrides every per-check tolerance when given.
    """
    rng = np.random.default_rng(seed)
    n, m = g.n_vertices, g.n_edges
    res = {k: 0.0 for k in ("energy_identity", "adjointness", "hodge_self_adjoint", "hodge_split", "neumann_round_trip")}
    max_principle_ok = True
    for _ in range(trials):
        f, h = rng.standard_normal(n), rng.standard_normal(n)
        u, v = rng.standard_normal(m), rng.standard_normal(m)
        res["energy_identity"] = max(res["energy_identity"], _rel(norm(g, derivation(g, f)) ** 2, energy(g, f)))
        res["adjointness"] = max(
            res["adjointness"], _rel(inner(g, derivation(g, f), v), -l2_inner(g, f, codifferential(g, v)))
        )
        res["hodge_self_adjoint"] = max(
            res["hodge_self_adjoint"], _rel(inner(g, hodge_laplacian(g, u), v), inner(g, u, hodge_laplacian(g, v)))
        )
        split = hodge_decompose(g, u)
        scale = max(1.0, norm(g, u))
        res["hodge_split"] = max(
            res["hodge_split"],
            float(np.max(np.abs(split.exact + split.harmonic - u))) / scale,
            abs(inner(g, split.exact, split.harmonic)) / scale**2,
        )
        if n >= 2:
            k = int(rng.integers(1, n)) if n > 2 else 1
            boundary = tuple(sorted(rng.choice(n, size=k, replace=False).tolist()))
            data = BoundaryData(boundary, rng.standard_normal(len(boundary)))
            max_principle_ok &= maximum_principle_holds(g, data, harmonic_extension(g, data))
            if len(boundary) >= 2:
                flux = rng.standard_normal(len(boundary))
                flux -= flux.mean()
                sol = solve_neumann(g, NeumannData(boundary, flux))
                back = np.array([neumann_derivative(g, sol, p) for p in boundary])
                res["neumann_round_trip"] = max(
                    res["neumann_round_trip"], float(np.max(np.abs(back - flux))) / max(1.0, float(np.max(np.abs(flux))))
                )
    defaults = {
        "energy_identity": 1e-12,
        "adjointness": 1e-12,
        "hodge_self_adjoint": 1e-12,
        "hodge_split": 1e-10,
        "neumann_round_trip": 1e-10,
    }
    checks = [
        Check(name, float(r), defaults[name] if tol is None else float(tol), bool(r <= (defaults[name] if tol is None else tol)))
        for name, r in res.items()
    ]
    checks.append(Check("maximum_principle", 0.0 if max_principle_ok else 1.0, 0.0, bool(max_principle_ok)))
    return checks
