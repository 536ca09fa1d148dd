"""Stationary Navier-Stokes solutions on graphs.

The model is

    du/dt + 1/2 dGamma_H(u) - nu Delta_1 u + dp = 0,    d* u = 0,

tested weakly against divergence-free forms.  Every weak solution is
stationary, so a solution is determined by its initial condition: without
boundary it is any harmonic 1-form, and with a Neumann boundary it is the
gradient of the Neumann solution.  The pressure is reported as the vertex
measure ``-1/2 Gamma_H(u)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import PreconditionError
from .forms import as_form, codifferential, d_gamma_h, derivation, gamma_h, inner, norm
from .graph import energy_measure, l2_inner
from .neumann import NeumannData, solve_neumann

DEFAULT_TIMES = tuple(float(t) for t in np.linspace(0.0, 9.0, 10))


@dataclass(frozen=True, eq=False)
class NsSolution:
    """A time-independent velocity form with its pressure measure."""

    velocity: np.ndarray
    pressure: np.ndarray
    viscosity: float
    boundary: NeumannData = None
    potential: np.ndarray = field(default=None, repr=False)

    def velocity_at(self, t):
        """Velocity at time ``t``; identical for all ``t >= 0``."""
        if t < 0:
            raise PreconditionError("time must be nonnegative")
        return self.velocity

    def __eq__(self, other):
        if not isinstance(other, NsSolution):
            return NotImplemented
        same_pot = (self.potential is None and other.potential is None) or (
            self.potential is not None
            and other.potential is not None
            and np.array_equal(self.potential, other.potential)
        )
        return (
            np.array_equal(self.velocity, other.velocity)
            and np.array_equal(self.pressure, other.pressure)
            and self.viscosity == other.viscosity
            and self.boundary == other.boundary
            and same_pot
        )

    __hash__ = None


def _check_viscosity(viscosity):
    viscosity = float(viscosity)
    if not np.isfinite(viscosity) or viscosity < 0:
        raise PreconditionError("viscosity must be a nonnegative number (0 gives the Euler system)")
    return viscosity


def solve_ns_free(g, u0, viscosity, tol=1e-10):
    """Weak solution without boundary for the initial condition ``u0``.

    Raises:
        PreconditionError: if ``u0`` is not divergence free, i.e. not an
            admissible initial condition.
    """
    viscosity = _check_viscosity(viscosity)
    u0 = np.array(as_form(g, u0, "u0"), dtype=float)
    div = codifferential(g, u0)
    scale = max(1.0, norm(g, u0))
    if np.max(np.abs(div), initial=0.0) > tol * scale:
        raise PreconditionError(
            f"inadmissible initial condition: divergence {np.max(np.abs(div)):.3e} is not zero"
        )
    u0.setflags(write=False)
    pressure = -0.5 * gamma_h(g, u0)
    pressure.setflags(write=False)
    return NsSolution(velocity=u0, pressure=pressure, viscosity=viscosity)


def solve_ns_boundary(g, data, viscosity):
    """Weak solution on the complement of ``data.boundary`` with Neumann data.

    The velocity is ``dh`` for the Neumann solution ``h``, and the pressure
    is ``-1/2 Gamma(h)``.

    Raises:
        SolvabilityError: propagated from :func:`solve_neumann`.
    """
    viscosity = _check_viscosity(viscosity)
    h = solve_neumann(g, data)
    velocity = derivation(g, h)
    pressure = -0.5 * energy_measure(g, h)
    for arr in (h, velocity, pressure):
        arr.setflags(write=False)
    return NsSolution(velocity=velocity, pressure=pressure, viscosity=viscosity, boundary=data, potential=h)


@dataclass(frozen=True)
class WeakSolutionReport:
    """Residuals of the weak formulation on a grid of times.

    ``residuals[i][j]`` is the residual for ``test_forms[i]`` at ``times[j]``;
    ``constraint_residuals[j]`` measures the divergence condition at
    ``times[j]``; ``test_form_divergence[i]`` flags inadmissible test forms.
    """

    times: tuple
    residuals: tuple
    constraint_residuals: tuple
    test_form_divergence: tuple
    tolerance: float

    @property
    def max_residual(self):
        vals = [abs(r) for row in self.residuals for r in row]
        return max(vals, default=0.0)

    @property
    def max_constraint_residual(self):
        return max(self.constraint_residuals, default=0.0)

    @property
    def admissible_tests(self):
        return all(d <= self.tolerance for d in self.test_form_divergence)

    @property
    def passed(self):
        return (
            self.max_residual < self.tolerance
            and self.max_constraint_residual < self.tolerance
            and self.admissible_tests
        )


def _constraint_residual(g, sol, u):
    scale = max(1.0, norm(g, u))
    if sol.boundary is None:
        return float(np.max(np.abs(codifferential(g, u)), initial=0.0) / scale)
    # <u, d psi> for the indicator of every non-boundary vertex
    inside = set(sol.boundary.boundary)
    flux = g.incidence.T @ (g.conductance * u)
    interior = [x for x in range(g.n_vertices) if x not in inside]
    return float(np.max(np.abs(flux[interior]), initial=0.0) / scale)


def verify_weak_solution(g, sol, test_forms=None, times=DEFAULT_TIMES, tol=1e-10):
    """Evaluate the weak formulation for each test form and time.

    For stationary ``u`` the time integrals are evaluated in closed form:

        <u(t) - u(0), v> + t dGamma_H(u)(v) + nu t <d* u, d* v>_{L2(m)}.

    Test forms default to a harmonic basis; they must be divergence free.
    """
    from .forms import harmonic_basis

    if test_forms is None:
        test_forms = harmonic_basis(g)
    test_forms = [as_form(g, v, "test form") for v in test_forms]
    u0 = sol.velocity_at(0.0)
    residuals, constraints = [], []
    for t in times:
        constraints.append(_constraint_residual(g, sol, sol.velocity_at(t)))
    for v in test_forms:
        div_v = codifferential(g, v)
        row = []
        for t in times:
            u = sol.velocity_at(t)
            r = (
                inner(g, u, v)
                - inner(g, u0, v)
                + t * d_gamma_h(g, u, v)
                + sol.viscosity * t * l2_inner(g, codifferential(g, u), div_v)
            )
            row.append(float(r))
        residuals.append(tuple(row))
    divergence = tuple(
        float(np.max(np.abs(codifferential(g, v)), initial=0.0) / max(1.0, norm(g, v))) for v in test_forms
    )
    return WeakSolutionReport(
        times=tuple(float(t) for t in times),
        residuals=tuple(residuals),
        constraint_residuals=tuple(constraints),
        test_form_divergence=divergence,
        tolerance=tol,
    )
