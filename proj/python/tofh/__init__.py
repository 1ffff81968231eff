from ._tofh import (
    check_proof,
    circuits_equal,
    conjugation_witness,
    count_all,
    derive,
    format_word,
    matrix,
    normalize_h,
    parse_word,
    reindex,
    root_counts,
    sde,
    toffoli_count,
    verify_table,
)

__all__ = [
    "check_proof",
    "circuits_equal",
    "conjugation_witness",
    "count_all",
    "derive",
    "format_word",
    "matrix",
    "normalize_h",
    "parse_word",
    "reindex",
    "root_counts",
    "sde",
    "toffoli_count",
    "verify_table",
]
