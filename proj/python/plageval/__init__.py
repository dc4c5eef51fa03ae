"""Python bindings for the plageval core library."""

from ._core import (
    PlagevalError,
    aba,
    contradicting_pairs,
    negate_average_ranks,
    paired_t_test,
    pearson,
    rank_descending,
    rkr_gst_tiles,
    sba,
    tokenize,
)

__all__ = [
    "PlagevalError",
    "aba",
    "contradicting_pairs",
    "negate_average_ranks",
    "paired_t_test",
    "pearson",
    "rank_descending",
    "rkr_gst_tiles",
    "sba",
    "tokenize",
]
