"""Solvable Lie algebras from graph cliques.

Thin wrapper over the C++ core: exact structural invariants (series, center,
nilradical, derivations, fingerprints) and left-invariant metric geometry
(Ricci, curvature operator, soliton search) for the Lie algebra attached to a
graph's vertices, edges and k-cliques.
"""

import json as _json

from liegraph._core import (
    __version__,
    algebra_dims,
    canonical_edge_list,
    canonical_labeling,
    center_dim,
    clique_count,
    generate,
    input_digest,
    jacobi_ok,
    nilradical_dim,
)
from liegraph import _core


def analyze(text, k=3, field="q"):
    """Full analysis report (graph + algebra sections) as a dict."""
    return _json.loads(_core.analyze(text, k, field))


def metric_report(text, diag="", trials=0, seed=0):
    """Metric-geometry report as a dict; identity metric by default."""
    return _json.loads(_core.metric_report(text, diag, trials, seed))


def soliton_search(text, iters=500, tol=1e-8, seed=0):
    """Diagonal soliton search with exact recheck, as a dict."""
    return _json.loads(_core.soliton_search(text, iters, tol, seed))


def compare(text_a, text_b, max_n=10):
    """Graph isomorphism decision plus algebra fingerprints, as a dict."""
    return _json.loads(_core.compare(text_a, text_b, max_n))


__all__ = [
    "__version__",
    "algebra_dims",
    "analyze",
    "canonical_edge_list",
    "canonical_labeling",
    "center_dim",
    "clique_count",
    "compare",
    "generate",
    "input_digest",
    "jacobi_ok",
    "metric_report",
    "nilradical_dim",
    "soliton_search",
]
