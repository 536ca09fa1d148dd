"""Batch command-line front end.

Usage::

    python -m graphhodge --command hodge --input in.json --output out.json

The input is one JSON object.  It names the graph either explicitly
(``"graph"``: a WeightedGraph document) or through a builder
(``"builder"``: a BuilderSpec document), plus command-specific fields:

========  ==============================================================
build     (graph or builder only)
hodge     ``"form"``: edge-indexed list of reals
cech      ``"cover"``: Cover document, or ``"good_cover": {"max_set_size": k}``
capacity  ``"target"``: vertex list; optional ``"region"`` for disconnecting sets
neumann   ``"neumann"``: NeumannData document
ns        ``"viscosity"``, and ``"u0"`` (boundary free) or ``"neumann"``;
          optional ``"times"``
verify    optional ``"trials"``; randomized checks driven by ``--seed``
========  ==============================================================

``hodge`` and ``ns`` also write ``<output>.edges.csv`` and
``<output>.vertices.csv`` next to a file output.

Exit status: 0 success, 2 parse error, 3 precondition violation,
4 solvability violation, 5 verification failure.
"""

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import documents as docs
from .builders import build, first_betti
from .cech import correspondence_check, good_cover, h1_dimension, nerve
from .exceptions import DocumentError, PreconditionError, SolvabilityError, VerificationError
from .forms import (
    codifferential,
    harmonic_basis,
    harmonic_dimension,
    hodge_decompose,
    inner,
    norm,
)
from .graph import spectral_gap
from .navier_stokes import DEFAULT_TIMES, solve_ns_boundary, solve_ns_free, verify_weak_solution
from .neumann import neumann_derivative, solve_neumann
from .potential import capacity, disconnecting_sets, equilibrium_potential
from .verification import run_property_checks

COMMANDS = ("build", "hodge", "cech", "capacity", "neumann", "ns", "verify")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_SOLVABILITY = 4
EXIT_VERIFICATION = 5


class _CheckFailed(VerificationError):
    """A verification failure that still produced an output document."""

    def __init__(self, message, result, tables=None):
        super().__init__(message)
        self.result = result
        self.tables = tables


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise DocumentError(message)


def make_parser():
    parser = _Parser(prog="graphhodge", description="Hodge theory and Navier-Stokes steady states on weighted graphs.")
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--input", default="-", help="input JSON document ('-' for stdin)")
    parser.add_argument("--output", default="-", help="output JSON document ('-' for stdout)")
    parser.add_argument("--tolerance", type=_positive_float, default=None, help="override the default verification tolerance")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return parser


def _load_graph(doc):
    if "graph" in doc:
        return docs.graph_from_doc(doc["graph"])
    if "builder" in doc:
        return build(docs.builder_from_doc(doc["builder"]))
    raise DocumentError("input needs a 'graph' or a 'builder' field")


def _tol(config, default):
    return default if config.tolerance is None else float(config.tolerance)


def cmd_build(g, doc, config):
    return {
        "graph": docs.graph_to_doc(g),
        "first_betti": first_betti(g),
        "spectral_gap": docs._float(spectral_gap(g)),
    }, None


def cmd_hodge(g, doc, config):
    if "form" not in doc:
        raise DocumentError("hodge needs a 'form' field")
    v = docs.parse_floats(doc["form"], "form")
    if v.shape != (g.n_edges,):
        raise PreconditionError(f"form has {v.size} entries, graph has {g.n_edges} edges")
    split = hodge_decompose(g, v)
    scale = max(1.0, norm(g, v))
    residuals = {
        "reconstruction": float(np.max(np.abs(split.exact + split.harmonic - v), initial=0.0) / scale),
        "orthogonality": abs(inner(g, split.exact, split.harmonic)) / scale**2,
        "harmonic_divergence": float(np.max(np.abs(codifferential(g, split.harmonic)), initial=0.0) / scale),
    }
    tol = _tol(config, 1e-10)
    result = {
        "graph": docs.graph_to_doc(g),
        "form": docs._floats(v),
        "split": docs.hodge_split_to_doc(split),
        "residuals": residuals,
        "tolerance": tol,
        "harmonic_dimension": harmonic_dimension(g),
        "first_betti": first_betti(g),
    }
    edges = [
        [k, int(t), int(h), g.conductance[k], v[k], split.exact[k], split.harmonic[k]]
        for k, (t, h) in enumerate(g.edges)
    ]
    verts = [[x, g.vertex_measure[x], split.potential[x]] for x in range(g.n_vertices)]
    tables = {
        "edges": (["edge", "tail", "head", "conductance", "form", "exact", "harmonic"], edges),
        "vertices": (["vertex", "measure", "potential"], verts),
    }
    if max(residuals.values()) > tol:
        raise _CheckFailed(f"Hodge residuals exceed {tol:g}: {residuals}", result, tables)
    return result, tables


def _report_doc(report):
    v = report.validity
    return {
        "harmonic_dimension": report.harmonic_dimension,
        "cech_dimension": report.cech_dimension,
        "harmonic_nontrivial": report.harmonic_nontrivial,
        "cech_nontrivial": report.cech_nontrivial,
        "agree": report.agree,
        "capacity_hypothesis": report.capacity_hypothesis,
        "min_disconnecting_capacity": docs._float(report.min_disconnecting_capacity),
        "n_disconnecting_sets": report.n_disconnecting_sets,
        "validity": {
            "good": v.good,
            "leray": v.leray,
            "covers_vertices": v.covers_vertices,
            "connected_sets": v.connected_sets,
            "triple_free": v.triple_free,
            "covers_edges": v.covers_edges,
            "connected_intersections": v.connected_intersections,
            "acyclic_sets": v.acyclic_sets,
            "max_set_size": v.max_set_size,
        },
        "notes": list(report.notes),
    }


def cmd_cech(g, doc, config):
    if "cover" in doc:
        cover = docs.cover_from_doc(doc["cover"])
    elif "good_cover" in doc:
        spec = doc["good_cover"] if isinstance(doc["good_cover"], dict) else {}
        cover = good_cover(g, int(spec.get("max_set_size", 3)))
    else:
        raise DocumentError("cech needs a 'cover' or a 'good_cover' field")
    n = nerve(g, cover)
    report = correspondence_check(g, cover)
    return {
        "graph": docs.graph_to_doc(g),
        "cover": docs.cover_to_doc(cover),
        "nerve": {
            "simplices_0": list(n.labels),
            "simplices_1": [[n.labels[a], n.labels[b]] for a, b in n.simplices_1],
            "simplices_2": [[n.labels[a], n.labels[b], n.labels[c]] for a, b, c in n.simplices_2],
        },
        "h1_dimension": h1_dimension(n),
        "correspondence": _report_doc(report),
    }, None


def cmd_capacity(g, doc, config):
    if "target" not in doc:
        raise DocumentError("capacity needs a 'target' field")
    target = docs.parse_ints(doc["target"], "target")
    if not target:
        raise PreconditionError("target must be nonempty")
    result = {
        "graph": docs.graph_to_doc(g),
        "target": sorted(set(target)),
        "capacity": capacity(g, target),
        "equilibrium_potential": docs._floats(equilibrium_potential(g, target)),
    }
    if "region" in doc:
        region = docs.parse_ints(doc["region"], "region")
        result["disconnecting_sets"] = [
            {"vertices": list(d.vertices), "capacity": d.capacity} for d in disconnecting_sets(g, region)
        ]
    return result, None


def _neumann_data(doc):
    if "neumann" not in doc:
        raise DocumentError("missing 'neumann' field")
    return docs.neumann_from_doc(doc["neumann"])


def cmd_neumann(g, doc, config):
    data = _neumann_data(doc)
    h = solve_neumann(g, data)
    derivs = [neumann_derivative(g, h, p) for p in data.boundary]
    residual = float(np.max(np.abs(np.array(derivs) - data.fluxes), initial=0.0))
    tol = _tol(config, 1e-10)
    result = {
        "graph": docs.graph_to_doc(g),
        "neumann": docs.neumann_to_doc(data),
        "solution": docs._floats(h),
        "neumann_derivatives": derivs,
        "round_trip_residual": residual,
        "tolerance": tol,
    }
    if residual > tol * max(1.0, float(np.max(np.abs(data.fluxes), initial=0.0))):
        raise _CheckFailed(f"Neumann round trip residual {residual:.3e} exceeds {tol:g}", result)
    return result, None


def cmd_ns(g, doc, config):
    if "viscosity" not in doc:
        raise DocumentError("ns needs a 'viscosity' field")
    viscosity = docs._parse_float(doc["viscosity"])
    times = docs.parse_floats(doc["times"], "times") if "times" in doc else DEFAULT_TIMES
    tol = _tol(config, 1e-10)
    if "u0" in doc:
        u0 = docs.parse_floats(doc["u0"], "u0")
        sol = solve_ns_free(g, u0, viscosity, tol=tol)
    elif "neumann" in doc:
        sol = solve_ns_boundary(g, _neumann_data(doc), viscosity)
    else:
        raise DocumentError("ns needs 'u0' (boundary free) or 'neumann' (boundary data)")
    report = verify_weak_solution(g, sol, harmonic_basis(g), times, tol)
    result = {
        "graph": docs.graph_to_doc(g),
        "solution": docs.ns_solution_to_doc(sol),
        "pressure_note": "pressure reported as the vertex measure -1/2 Gamma_H(u) (heuristic identification)",
        "verification": {
            "times": list(report.times),
            "max_residual": report.max_residual,
            "max_constraint_residual": report.max_constraint_residual,
            "admissible_test_forms": report.admissible_tests,
            "n_test_forms": len(report.residuals),
            "tolerance": tol,
            "passed": report.passed,
        },
    }
    edges = [[k, int(t), int(h), g.conductance[k], sol.velocity[k]] for k, (t, h) in enumerate(g.edges)]
    verts = [[x, g.vertex_measure[x], sol.pressure[x]] for x in range(g.n_vertices)]
    tables = {
        "edges": (["edge", "tail", "head", "conductance", "velocity"], edges),
        "vertices": (["vertex", "measure", "pressure"], verts),
    }
    if not report.passed:
        raise _CheckFailed("weak formulation residuals exceed the tolerance", result, tables)
    return result, tables


def cmd_verify(g, doc, config):
    trials = int(doc.get("trials", 20))
    checks = run_property_checks(g, seed=config.seed, trials=trials, tol=config.tolerance)
    result = {
        "graph": docs.graph_to_doc(g),
        "seed": config.seed,
        "checks": [c._asdict() for c in checks],
        "passed": all(c.passed for c in checks),
    }
    return result, None


_DISPATCH = {
    "build": cmd_build,
    "hodge": cmd_hodge,
    "cech": cmd_cech,
    "capacity": cmd_capacity,
    "neumann": cmd_neumann,
    "ns": cmd_ns,
    "verify": cmd_verify,
}


def _write_tables(output, tables):
    if not tables or output == "-":
        return
    base = Path(output)
    stem = base.with_suffix("") if base.suffix else base
    for name, (header, rows) in tables.items():
        with open(f"{stem}.{name}.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])


def _emit(output, text):
    if output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def run(config):
    """Execute one command; returns ``(exit_status, document or None)``.

    The output document is written to ``config.output`` even when a
    verification check fails, so the failing residuals can be inspected.
    """
    try:
        if config.input == "-":
            text = sys.stdin.read()
        else:
            try:
                text = Path(config.input).read_text()
            except OSError as exc:
                raise DocumentError(f"cannot read {config.input}: {exc}") from exc
        doc = docs.loads(text)
        if not isinstance(doc, dict):
            raise DocumentError("input document must be a JSON object")
        g = _load_graph(doc)
        result, tables = None, None
        status = EXIT_OK
        try:
            result, tables = _DISPATCH[config.command](g, doc, config)
        except _CheckFailed as exc:
            print(f"graphhodge: verification failure: {exc}", file=sys.stderr)
            result, tables = exc.result, exc.tables
            status = EXIT_VERIFICATION
        if result is not None:
            if config.command == "verify" and not result["passed"]:
                failed = [c["name"] for c in result["checks"] if not c["passed"]]
                print(f"graphhodge: verification failure: {', '.join(failed)}", file=sys.stderr)
                status = EXIT_VERIFICATION
            result = {"command": config.command, **result}
            _emit(config.output, docs.dumps(result))
            _write_tables(config.output, tables)
        return status, result
    except DocumentError as exc:
        print(f"graphhodge: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE, None
    except SolvabilityError as exc:
        print(f"graphhodge: solvability violation: {exc}", file=sys.stderr)
        return EXIT_SOLVABILITY, None
    except PreconditionError as exc:
        print(f"graphhodge: precondition violation: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION, None
    except VerificationError as exc:
        print(f"graphhodge: verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION, None


def main(argv=None):
    try:
        config = make_parser().parse_args(argv)
    except DocumentError as exc:
        print(f"graphhodge: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    status, _ = run(config)
    return status


if __name__ == "__main__":
    sys.exit(main())
