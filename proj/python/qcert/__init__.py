"""Exact certifier for quadric-bundle residue conditions over F_p.

The heavy lifting lives in the C++ extension ``qcert._core``; this package
re-exports its functions.
"""

from ._core import (
    __version__,
    certify_json,
    certify_verdict,
    check_arrangement,
    exceptional_primes,
    factor_poly,
    find_nonsquare,
    is_square,
    search,
    square_class_in_extension,
)

__all__ = [
    "__version__",
    "certify_json",
    "certify_verdict",
    "check_arrangement",
    "exceptional_primes",
    "factor_poly",
    "find_nonsquare",
    "is_square",
    "search",
    "square_class_in_extension",
]
