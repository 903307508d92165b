"""Malcev-Neumann series, skew Laurent series and freeness checks."""

from ._mnseries import (
    ConvexJump,
    Error,
    Field,
    Group,
    GroupElement,
    Ring,
    Series,
    SkewLaurent,
    SkewPoly,
    Spec,
    evaluate,
    free_check,
    run_cli,
    weyl_ring,
)

__all__ = [
    "ConvexJump",
    "Error",
    "Field",
    "Group",
    "GroupElement",
    "Ring",
    "Series",
    "SkewLaurent",
    "SkewPoly",
    "Spec",
    "evaluate",
    "free_check",
    "run_cli",
    "weyl_ring",
]
