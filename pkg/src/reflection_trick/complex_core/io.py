"""JSON form of complexes: ``{"vertices": [...], "facets": [[...], ...]}``."""
from __future__ import annotations

import json
from pathlib import Path

from ..errors import ComplexError
from .simplicial import SimplicialComplex, validate_complex


def format_label(label) -> str:
    """String form of a vertex label; nested tuples from subdivisions
    render as ``(a,b)``."""
    if isinstance(label, tuple):
        return "(" + ",".join(format_label(x) for x in label) + ")"
    return str(label)


def complex_from_json(data) -> SimplicialComplex:
    if not isinstance(data, dict) or "facets" not in data:
        raise ComplexError('complex JSON needs a "facets" list')
    facets = data["facets"]
    vertices = data.get("vertices")
    if vertices is None:
        vertices = []
        for f in facets:
            for v in f:
                if v not in vertices:
                    vertices.append(v)
    return validate_complex(vertices, facets)


def complex_to_json(K: SimplicialComplex) -> dict:
    return {
        "vertices": [format_label(v) for v in K.vertices],
        "facets": [[format_label(v) for v in K.label(f)] for f in K.facets],
    }


def load_complex(path) -> SimplicialComplex:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ComplexError(f"{path}: invalid JSON ({exc})") from None
    return complex_from_json(data)
