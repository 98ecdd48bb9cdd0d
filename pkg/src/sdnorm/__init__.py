"""Normal forms and equivalence checking for planar string diagrams."""
from .diagram import (
    Diagram,
    Vertex,
    admits_left,
    admits_right,
    apply_left,
    apply_right,
    connectivity,
    delta,
    deserialize,
    extract_graph,
    from_json,
    mirror,
    serialize,
    to_json,
    validate,
    wires_at,
)
from .normalize import (
    boundary_closure,
    is_normal,
    normalize_fast,
    normalize_naive,
    spiral,
    spiral_reduction,
)

__all__ = [
    "Diagram",
    "Vertex",
    "admits_left",
    "admits_right",
    "apply_left",
    "apply_right",
    "boundary_closure",
    "connectivity",
    "delta",
    "deserialize",
    "extract_graph",
    "from_json",
    "is_normal",
    "mirror",
    "normalize_fast",
    "normalize_naive",
    "serialize",
    "spiral",
    "spiral_reduction",
    "to_json",
    "validate",
    "wires_at",
]
