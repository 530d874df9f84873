"""Class polynomials, supersingular polynomials, and certified congruences.

The heavy lifting lives in the compiled extension ``deuring._core``; this
package re-exports its public surface.  Exact integers cross the boundary as
Python ints and exact rationals as :class:`fractions.Fraction`.
"""

from ._core import (
    DomainError,
    LibraryError,
    __version__,
    certify,
    class_number,
    delta_p,
    deuring_cross_check,
    eisenstein_hp,
    embedding_numbers,
    hilbert_class_poly,
    hurwitz_class_number,
    is_fundamental,
    j_coefficients,
    kronecker,
    multiplicity_report,
    scan_surjectivity,
    supersingular_polynomials,
    survey_family,
    unit_count,
    up_reduction,
    verify_frobenius_expansion,
)

__all__ = [
    "DomainError",
    "LibraryError",
    "__version__",
    "certify",
    "class_number",
    "delta_p",
    "deuring_cross_check",
    "eisenstein_hp",
    "embedding_numbers",
    "hilbert_class_poly",
    "hurwitz_class_number",
    "is_fundamental",
    "j_coefficients",
    "kronecker",
    "multiplicity_report",
    "scan_surjectivity",
    "supersingular_polynomials",
    "survey_family",
    "unit_count",
    "up_reduction",
    "verify_frobenius_expansion",
]
