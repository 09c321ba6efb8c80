"""Exact computations with small matroids: connectivity, fans, tangles,
branch width, and removal of elements keeping 3-connectivity and a minor."""

from .connectivity import (
    CONTRACT,
    DELETE,
    Fan,
    Separation,
    connectivity,
    fan_end_removal,
    find_fans,
    is_3_connected,
    is_k_connected,
    k_separations,
)
from .core import (
    Matroid,
    MinorSpec,
    closure,
    coclosure,
    from_table,
    graphic,
    has_minor,
    linear,
    relax,
    uniform,
    wheel,
    whirl,
)
from .corpus import corpus
from .decomposition import branch_width_by_decomposition
from .errors import GroundSetTooLarge, LemmaViolation, MatroidError
from .removal import (
    RemovalContext,
    brute_force_oracle,
    find_removal_set,
    restoration_graph,
    restorable,
    splitter_check,
    verify_removal,
)
from .tangle import (
    Tangle,
    branch_width,
    enumerate_tangles,
    inherit_tangle,
    max_tangle,
    tangle_matroid,
    validate_tangle,
)

__version__ = "0.1.0"

__all__ = [
    "CONTRACT",
    "DELETE",
    "Fan",
    "GroundSetTooLarge",
    "LemmaViolation",
    "Matroid",
    "MatroidError",
    "MinorSpec",
    "RemovalContext",
    "Separation",
    "Tangle",
    "branch_width",
    "branch_width_by_decomposition",
    "brute_force_oracle",
    "closure",
    "coclosure",
    "connectivity",
    "corpus",
    "enumerate_tangles",
    "fan_end_removal",
    "find_fans",
    "find_removal_set",
    "from_table",
    "graphic",
    "has_minor",
    "inherit_tangle",
    "is_3_connected",
    "is_k_connected",
    "k_separations",
    "linear",
    "max_tangle",
    "relax",
    "restorable",
    "restoration_graph",
    "splitter_check",
    "tangle_matroid",
    "uniform",
    "validate_tangle",
    "verify_removal",
    "wheel",
    "whirl",
]

