"""Zolotarev-type minimal trigonometric polynomials with prescribed leading
coefficients: Caratheodory-Fejer/Schur data, Blaschke-product asymptotics,
an exact Remez oracle, and sharp coefficient-functional bounds."""

__version__ = "0.1.0"

from .numerics import ComplexPoly, ConvergenceError, eig_hermitian, poly_roots, quad_periodic, solve_linear
from .cf_schur import CFFailure, CFRejection, CFSolution, CoefficientSequence, as_sequence, solve_cf
from .blaschke import AsymZolotarev, BlaschkeDatum, reciprocal, taylor_ratio
from .remez import FixedHead, MinimaxResult, TrigPoly, solve as solve_minimax
from .functionals import eta, landau_constant, landau_extremal
from .reports import fit_geometric

__all__ = [
    "ComplexPoly", "ConvergenceError", "eig_hermitian", "poly_roots", "quad_periodic", "solve_linear",
    "CFFailure", "CFRejection", "CFSolution", "CoefficientSequence", "as_sequence", "solve_cf",
    "AsymZolotarev", "BlaschkeDatum", "reciprocal", "taylor_ratio",
    "FixedHead", "MinimaxResult", "TrigPoly", "solve_minimax",
    "eta", "landau_constant", "landau_extremal", "fit_geometric",
]
