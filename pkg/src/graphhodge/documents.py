"""JSON documents for graphs, covers, boundary data, forms and results.

Every structured value is a JSON object with a ``"type"`` field naming its
class; field names follow the attribute names of the Python types.  Floats
are written with ``repr``, which round-trips every double exactly.
Non-finite floats are written as the strings ``"inf"``, ``"-inf"``,
``"nan"``.

Example graph document::

    {"type": "WeightedGraph", "vertex_count": 3,
     "vertex_measure": [1.0, 1.0, 1.0],
     "edges": [[0, 1, 1.0], [1, 2, 1.0]]}

``vertex_measure`` is optional (defaults to all ones).
"""

import json
import math

import numpy as np

from .builders import BuilderSpec
from .cech import Cover
from .exceptions import DocumentError, GraphHodgeError
from .forms import HodgeSplit
from .graph import WeightedGraph
from .navier_stokes import NsSolution
from .neumann import NeumannData


def _float(x):
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def _floats(arr):
    return [_float(x) for x in np.asarray(arr, dtype=float).reshape(-1)]


def _parse_float(x):
    if isinstance(x, str):
        try:
            return float(x)
        except ValueError:
            raise DocumentError(f"not a number: {x!r}") from None
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise DocumentError(f"not a number: {x!r}")
    return float(x)


def parse_floats(seq, name):
    if not isinstance(seq, list):
        raise DocumentError(f"{name} must be a list of numbers")
    return np.array([_parse_float(x) for x in seq], dtype=float)


def parse_ints(seq, name):
    if not isinstance(seq, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in seq):
        raise DocumentError(f"{name} must be a list of integers")
    return [int(x) for x in seq]


def _require(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise DocumentError(f"field {key!r} has the wrong type")
    return value


def graph_to_doc(g):
    return {
        "type": "WeightedGraph",
        "vertex_count": int(g.n_vertices),
        "vertex_measure": _floats(g.vertex_measure),
        "edges": [[int(t), int(h), _float(c)] for (t, h), c in zip(g.edges, g.conductance)],
    }


def graph_from_doc(doc):
    n = _require(doc, "vertex_count", int)
    edges = _require(doc, "edges", list)
    records = []
    for rec in edges:
        if not isinstance(rec, list) or len(rec) != 3:
            raise DocumentError("each edge record must be [tail, head, conductance]")
        t, h = parse_ints(rec[:2], "edge endpoints")
        records.append((t, h, _parse_float(rec[2])))
    measure = doc.get("vertex_measure")
    if measure is not None:
        measure = parse_floats(measure, "vertex_measure")
    return WeightedGraph.from_edge_list(n, records, measure)


def builder_to_doc(spec):
    return {
        "type": "BuilderSpec",
        "family": spec.family,
        "level_or_size": int(spec.level_or_size),
        "renormalization": None if spec.renormalization is None else _float(spec.renormalization),
        "tree_arity": int(spec.tree_arity),
        "metric_graph_edges": [[t, h, _float(r)] for t, h, r in spec.metric_graph_edges],
        "subdivision": int(spec.subdivision),
    }


def builder_from_doc(doc):
    family = _require(doc, "family", str)
    edges = []
    for rec in doc.get("metric_graph_edges", []) or []:
        if not isinstance(rec, list) or len(rec) != 3:
            raise DocumentError("each metric edge must be [tail, head, resistance]")
        t, h = parse_ints(rec[:2], "metric edge endpoints")
        edges.append((t, h, _parse_float(rec[2])))
    renorm = doc.get("renormalization")
    return BuilderSpec(
        family=family,
        level_or_size=int(doc.get("level_or_size", 0)),
        renormalization=None if renorm is None else _parse_float(renorm),
        tree_arity=int(doc.get("tree_arity", 2)),
        metric_graph_edges=tuple(edges),
        subdivision=int(doc.get("subdivision", 1)),
    )


def cover_to_doc(cover):
    return {"type": "Cover", "labels": list(cover.labels), "sets": [list(s) for s in cover.sets]}


def cover_from_doc(doc):
    sets = _require(doc, "sets", list)
    labels = doc.get("labels")
    return Cover(tuple(tuple(parse_ints(s, "cover set")) for s in sets), None if labels is None else tuple(labels))


def neumann_to_doc(data):
    return {"type": "NeumannData", "boundary": list(data.boundary), "fluxes": _floats(data.fluxes)}


def neumann_from_doc(doc):
    return NeumannData(
        tuple(parse_ints(_require(doc, "boundary", list), "boundary")),
        parse_floats(_require(doc, "fluxes", list), "fluxes"),
    )


def hodge_split_to_doc(split):
    return {
        "type": "HodgeSplit",
        "exact": _floats(split.exact),
        "harmonic": _floats(split.harmonic),
        "potential": _floats(split.potential),
    }


def hodge_split_from_doc(doc):
    return HodgeSplit(
        exact=parse_floats(_require(doc, "exact"), "exact"),
        harmonic=parse_floats(_require(doc, "harmonic"), "harmonic"),
        potential=parse_floats(_require(doc, "potential"), "potential"),
    )


def ns_solution_to_doc(sol):
    return {
        "type": "NsSolution",
        "velocity": _floats(sol.velocity),
        "pressure": _floats(sol.pressure),
        "viscosity": _float(sol.viscosity),
        "boundary": None if sol.boundary is None else neumann_to_doc(sol.boundary),
        "potential": None if sol.potential is None else _floats(sol.potential),
    }


def ns_solution_from_doc(doc):
    boundary = doc.get("boundary")
    potential = doc.get("potential")
    return NsSolution(
        velocity=parse_floats(_require(doc, "velocity"), "velocity"),
        pressure=parse_floats(_require(doc, "pressure"), "pressure"),
        viscosity=_parse_float(_require(doc, "viscosity")),
        boundary=None if boundary is None else neumann_from_doc(boundary),
        potential=None if potential is None else parse_floats(potential, "potential"),
    )


_ENCODERS = {
    WeightedGraph: graph_to_doc,
    BuilderSpec: builder_to_doc,
    Cover: cover_to_doc,
    NeumannData: neumann_to_doc,
    HodgeSplit: hodge_split_to_doc,
    NsSolution: ns_solution_to_doc,
}

_DECODERS = {
    "WeightedGraph": graph_from_doc,
    "BuilderSpec": builder_from_doc,
    "Cover": cover_from_doc,
    "NeumannData": neumann_from_doc,
    "HodgeSplit": hodge_split_from_doc,
    "NsSolution": ns_solution_from_doc,
}


def to_document(obj):
    """Encode a package value as a JSON-ready dict."""
    try:
        return _ENCODERS[type(obj)](obj)
    except KeyError:
        raise TypeError(f"no document encoding for {type(obj).__name__}") from None


def from_document(doc):
    """Decode a dict produced by :func:`to_document`."""
    kind = _require(doc, "type", str)
    if kind not in _DECODERS:
        raise DocumentError(f"unknown document type {kind!r}")
    try:
        return _DECODERS[kind](doc)
    except GraphHodgeError:
        raise
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"invalid {kind} document: {exc}") from exc


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
