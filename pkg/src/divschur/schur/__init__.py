"""Multilinear Schur multipliers: symbols, contraction, norm estimation."""
from ..symbol import SymbolGrid
from .contract import apply_schur, slot_adjoint
from .estimate import NormEstimate, estimate_norm, ratio
from .fourier import FOURIER_CONVENTION, L1Bound, fourier_l1_bound
from .symbols import (
    CutoffSpec,
    block_band_indicator,
    block_indicator,
    cutoff_product,
    cutoff_rho,
    one_minus_rho_over_t,
    phi_alpha_lambda,
    rho,
    rho_fn,
    split_symbol,
    toeplitz_symbol,
)

__all__ = [
    "SymbolGrid", "apply_schur", "slot_adjoint", "NormEstimate", "estimate_norm", "ratio",
    "FOURIER_CONVENTION", "L1Bound", "fourier_l1_bound", "CutoffSpec", "block_indicator",
    "block_band_indicator", "cutoff_product", "cutoff_rho", "one_minus_rho_over_t",
    "phi_alpha_lambda", "rho", "rho_fn", "split_symbol", "toeplitz_symbol",
]
