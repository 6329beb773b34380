"""Bit-parallel approximate string matching, windowed alignment and filtering."""

from ._core import (
    Alignment,
    AlignmentFailed,
    MatchResult,
    WindowUnalignable,
    align,
    edit_distance,
    global_distance,
    model,
    prealign_filter,
    search,
    search_chunked,
)

__all__ = [
    "Alignment",
    "AlignmentFailed",
    "MatchResult",
    "WindowUnalignable",
    "align",
    "edit_distance",
    "global_distance",
    "model",
    "prealign_filter",
    "search",
    "search_chunked",
]
