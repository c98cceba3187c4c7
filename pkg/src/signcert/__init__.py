"""Certificates for Descartes's rule of signs.

Multipliers G (positivity) and K (sign variations) for univariate
polynomials, with independent verification.  Coefficient lists are in
ascending order: ``"2,-3,1"`` is x^2 - 3x + 2.
"""

from .errors import (
    ClassificationError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    GenerationError,
    InputError,
    ModeError,
    NotPositiveError,
    PrecisionError,
    SignCertError,
)

__version__ = "0.1.0"

from .ball import Ball  # noqa: E402
from .polyarith import Polynomial, parse_polynomial, format_polynomial, sign_variations  # noqa: E402
from .rootkit import Root, RootSpec, find_roots, partition_roots  # noqa: E402
from .certbuilder import Certificate, certify_polynomial, certify_positive, certify_variations  # noqa: E402
from .verifier import CheckReport, DescartesAudit, descartes_audit, verify_certificate  # noqa: E402

__all__ = [
    "Ball",
    "Certificate",
    "CheckReport",
    "ClassificationError",
    "ConsistencyError",
    "ConvergenceError",
    "DescartesAudit",
    "DomainError",
    "GenerationError",
    "InputError",
    "ModeError",
    "NotPositiveError",
    "Polynomial",
    "PrecisionError",
    "Root",
    "RootSpec",
    "SignCertError",
    "certify_polynomial",
    "certify_positive",
    "certify_variations",
    "descartes_audit",
    "find_roots",
    "format_polynomial",
    "parse_polynomial",
    "partition_roots",
    "sign_variations",
    "verify_certificate",
]
