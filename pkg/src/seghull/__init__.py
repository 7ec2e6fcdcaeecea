"""Data-parallel convex hulls on flat segmented arrays.

The package provides the segmented-scan engine (`segments`), the permute
and compact framework primitives (`primitives`), geometric predicates
(`geometry`), iterative 2D/3D Quickhull drivers (`quickhull`), brute-force
oracles (`oracle`), seeded benchmark distributions (`datagen`), and a CLI
(`seghull`).
"""

from .datagen import Distribution, generate, rng_next
from .errors import ContractViolation, DegenerateInputError, EmptyInputError
from .geometry import OrientedEdge, OrientedFace, PointSet, Tolerance
from .primitives import PermutationMap, compact, flag_permute, scatter
from .quickhull import HullResult, order_hull_2d, quickhull_2d, quickhull_3d
from .segments import (
    ScanSpec,
    head_index_broadcast,
    segment_ids,
    segmented_scan,
    validate_segments,
)

__version__ = "0.1.0"

__all__ = [
    "ContractViolation",
    "DegenerateInputError",
    "Distribution",
    "EmptyInputError",
    "HullResult",
    "OrientedEdge",
    "OrientedFace",
    "PermutationMap",
    "PointSet",
    "ScanSpec",
    "Tolerance",
    "compact",
    "flag_permute",
    "generate",
    "head_index_broadcast",
    "order_hull_2d",
    "quickhull_2d",
    "quickhull_3d",
    "rng_next",
    "scatter",
    "segment_ids",
    "segmented_scan",
    "validate_segments",
]
