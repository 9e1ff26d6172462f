"""Python bindings for the polydeck C++ core."""

import json

from ._polydeck import (
    Hypergraph,
    InvalidParameter,
    NotConnected,
    SizeBoundExceeded,
    are_isomorphic,
    automorphism_count,
    compare,
    family,
    hypomorphism,
    oracle_radius,
)
from . import _polydeck

__all__ = [
    "Hypergraph",
    "InvalidParameter",
    "NotConnected",
    "SizeBoundExceeded",
    "are_isomorphic",
    "automorphism_count",
    "compare",
    "deck",
    "family",
    "hypomorphism",
    "oracle_radius",
    "spectrum",
    "verify",
]


def spectrum(h, tol=1e-12, max_iter=1_000_000, shift=1.0, seed=0):
    """Principal eigenpair report record, with the eigenvector under "vector"."""
    return json.loads(_polydeck.spectrum_json(h, tol, max_iter, shift, seed))


def deck(h):
    return json.loads(_polydeck.deck_json(h))


def verify(n, exact_only=False):
    """Claim records for one n; see the verdict file format."""
    return json.loads(_polydeck.verify_json(n, exact_only))
