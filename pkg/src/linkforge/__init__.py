"""Oriented link diagrams, their invariants, and tangle constructions."""

from __future__ import annotations

from .diagram import OrientedDiagram, parse_pd, serialize_pd
from .invariants import fingerprint, jones, signature, tristram_levine
from .tangle import from_text, pretzel, torus2, twist_knot

__all__ = [
    "__version__",
    "OrientedDiagram",
    "parse_pd",
    "serialize_pd",
    "fingerprint",
    "jones",
    "signature",
    "tristram_levine",
    "from_text",
    "pretzel",
    "torus2",
    "twist_knot",
]

__version__ = "0.1.0"
