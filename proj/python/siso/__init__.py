"""String and graph isomorphism toolkit for groups with restricted
composition factors.

The compiled core exposes permutations, stabilizer chains and the solver
entry points; this package adds small dict-based conveniences on top of the
JSON surfaces.
"""

import json as _json

from ._core import (  # noqa: F401
    Group,
    Perm,
    SisoError,
    __version__,
    brute_string_iso,
    graph_aut_order,
    graph_iso,
    hypergraph_iso,
    relational_structure_iso,
    string_iso,
    validate_sequence,
    reduce,
)


def string_iso_dict(instance, **kwargs):
    """Solve a string-isomorphism instance given as a dict; returns a dict."""
    return _json.loads(string_iso(_json.dumps(instance), **kwargs))


def graph_iso_dict(graph1, graph2, **kwargs):
    """Graph isomorphism for (n, edges) pairs or edge-list text."""
    return _json.loads(graph_iso(graph1, graph2, **kwargs))


def validate_sequence_dict(instance):
    return _json.loads(validate_sequence(_json.dumps(instance)))


def reduce_dict(instance, step="both"):
    return _json.loads(reduce(_json.dumps(instance), step))
