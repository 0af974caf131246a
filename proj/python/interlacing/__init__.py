"""Mixed characteristic polynomials, interlacing families, partitions and pavings."""

from ._core import (
    InterlacingError,
    barrier_trace,
    char_poly,
    expected_charpoly,
    is_real_rooted,
    max_root,
    mixed_charpoly,
    mixed_discriminant,
    partition,
    pave,
    paving_r_bound,
    roots,
    weaver,
    weaver_bound,
)

__all__ = [
    "InterlacingError",
    "barrier_trace",
    "char_poly",
    "expected_charpoly",
    "is_real_rooted",
    "max_root",
    "mixed_charpoly",
    "mixed_discriminant",
    "partition",
    "pave",
    "paving_r_bound",
    "roots",
    "weaver",
    "weaver_bound",
]
