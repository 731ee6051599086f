"""Constrained H-infinity interpolation on finite subsets of the unit disc.

Weighted coefficient spaces, finite Blaschke products and the Malmquist basis
of the model space K_B, the linear interpolant Phi, Bernstein-type checks,
certified upper and lower bounds for interpolation constants, and a
minimal-norm oracle built on the compressed shift.
"""
from malmquist.blaschke import (MalmquistBasis, MalmquistRep, Sigma, blaschke_factor,
                                blaschke_product, compressed_shift, malmquist_basis,
                                project_kernel, random_sigma)
from malmquist.bounds import (BoundReport, K_constant, bound_report, fejer_quotient_lower,
                              lower_lp, lower_onepoint_hilbert, upper_hilbert, upper_p)
from malmquist.interpolator import interpolant_norm_ratio, phi, sup_norm, trace_match
from malmquist.kernels import BACKEND
from malmquist.oracle import (interp_constant_estimate, min_norm, pick_min_norm,
                              von_neumann_check)
from malmquist.spaces import (BERGMAN, HARDY, SpaceSpec, TaylorSeries, alpha_to_beta,
                              beta_to_alpha, binomial_norm, cauchy_pairing,
                              eval_functional_norm, reproducing_kernel, weighted_norm)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BERGMAN", "HARDY", "BoundReport", "K_constant", "MalmquistBasis", "MalmquistRep",
    "Sigma", "SpaceSpec", "TaylorSeries", "alpha_to_beta", "beta_to_alpha", "binomial_norm",
    "blaschke_factor", "blaschke_product", "bound_report", "cauchy_pairing", "compressed_shift",
    "eval_functional_norm", "fejer_quotient_lower", "interp_constant_estimate",
    "interpolant_norm_ratio", "lower_lp", "lower_onepoint_hilbert", "malmquist_basis", "min_norm",
    "phi", "pick_min_norm", "project_kernel", "random_sigma", "reproducing_kernel", "sup_norm",
    "trace_match", "upper_hilbert", "upper_p", "von_neumann_check", "weighted_norm",
]
