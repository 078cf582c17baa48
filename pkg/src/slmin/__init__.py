"""Minimality criteria for SL(n, F) and STP(n, F), with Fermat/Mersenne equivalence checks."""

__version__ = "0.1.0"

from .fields import (  # noqa: E402
    GAUSSIAN_RATIONALS,
    INFINITE,
    REAL_SUBFIELD,
    ExtendedNat,
    FieldDescriptor,
    completion_root_order,
    cyclotomic,
    format_field,
    is_dense_in_C,
    mu_order,
    padic_rationals,
    parse_field,
    root_of_unity_order,
)
from .minimality import (  # noqa: E402
    FamilyDescriptor,
    FamilyShape,
    MinimalityVerdict,
    fermat_theorem_check,
    mersenne_theorem_check,
    product_minimal,
    sl_minimal,
    sl_totally_minimal,
    stp_minimal,
)
from .scans import fermat_scan, mersenne_scan  # noqa: E402
