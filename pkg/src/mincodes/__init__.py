"""Minimal linear codes over the rings Z_n."""

from .code import (
    ColumnMultiset,
    Counterexample,
    LinearCode,
    MinimalityReport,
    code_from_columns,
    columns,
    encode,
    is_minimal_code,
    is_minimal_codeword,
    is_minimal_codeword_oracle,
)
from .constructions import construct, lambda0_prime_power, lambda0_two_primes, onedim_gcd, onedim_naive
from .errors import MinCodesError
from .linalg import Submodule, howell_form, kernel, perp, span
from .perp import perp_basis
from .ring import RingSpec, factorize

__version__ = "0.1.0"

__all__ = [
    "ColumnMultiset",
    "Counterexample",
    "LinearCode",
    "MinCodesError",
    "MinimalityReport",
    "RingSpec",
    "Submodule",
    "code_from_columns",
    "columns",
    "construct",
    "encode",
    "factorize",
    "howell_form",
    "is_minimal_code",
    "is_minimal_codeword",
    "is_minimal_codeword_oracle",
    "kernel",
    "lambda0_prime_power",
    "lambda0_two_primes",
    "onedim_gcd",
    "onedim_naive",
    "perp",
    "perp_basis",
    "span",
]
