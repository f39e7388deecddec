"""Inverse spectral design of XX spin chains with perfect transfer and two-site revival."""

from .chain import EigenSystem, JacobiMatrix, SpectralData, eigendecompose, is_persymmetric, reflection, spectral_data
from .deform import deform_chain, hadamard_matrix, perturbed_poly_constants, perturbed_positions, q_matrix, v_matrix
from .designer import design, design_chain, verify_design, xi_eta
from .dynamics import (
    NoRevival,
    RevivalTarget,
    detect_fractional_revival,
    detect_pst,
    evolve,
    hadamard_factorization_check,
    krawtchouk_amplitude,
    propagator,
)
from .estimators import ChainPropagator, RevivalChainDesigner, SpectralChainReconstructor
from .exceptions import (
    ChainError,
    DegenerateRevival,
    DesignInconsistency,
    DisconnectedChain,
    InvalidChain,
    InvalidDelta,
    InvalidSpectrumOrder,
    InvalidSurgery,
    NonSimpleSpectrum,
    ReconstructionBreakdown,
    RequiresPersymmetry,
    SpectrumMismatch,
    ZeroBoundaryWeight,
)
from .inverse import fr_weights, gamma_from, pst_weights, reconstruct_jacobi
from .models import (
    BiLatticeSpec,
    bilattice,
    fit_bilattice,
    fr_chain_psi_half,
    krawtchouk_chain,
    para_krawtchouk_chain,
    para_krawtchouk_coefficients,
)
from .orthopoly import eval_chi, eval_monic, polynomial_table, weights_from_char
from .surgery import remove_level, remove_pair

__version__ = "0.1.0"

__all__ = [
    "bilattice",
    "BiLatticeSpec",
    "ChainError",
    "ChainPropagator",
    "deform_chain",
    "DegenerateRevival",
    "design",
    "design_chain",
    "DesignInconsistency",
    "detect_fractional_revival",
    "detect_pst",
    "DisconnectedChain",
    "eigendecompose",
    "EigenSystem",
    "eval_chi",
    "eval_monic",
    "evolve",
    "fit_bilattice",
    "fr_chain_psi_half",
    "fr_weights",
    "gamma_from",
    "hadamard_factorization_check",
    "hadamard_matrix",
    "InvalidChain",
    "InvalidDelta",
    "InvalidSpectrumOrder",
    "InvalidSurgery",
    "is_persymmetric",
    "JacobiMatrix",
    "krawtchouk_amplitude",
    "krawtchouk_chain",
    "NonSimpleSpectrum",
    "NoRevival",
    "para_krawtchouk_chain",
    "para_krawtchouk_coefficients",
    "perturbed_poly_constants",
    "perturbed_positions",
    "polynomial_table",
    "propagator",
    "pst_weights",
    "q_matrix",
    "reconstruct_jacobi",
    "ReconstructionBreakdown",
    "reflection",
    "remove_level",
    "remove_pair",
    "RequiresPersymmetry",
    "RevivalChainDesigner",
    "RevivalTarget",
    "spectral_data",
    "SpectralChainReconstructor",
    "SpectralData",
    "SpectrumMismatch",
    "v_matrix",
    "verify_design",
    "weights_from_char",
    "xi_eta",
    "ZeroBoundaryWeight",
]
