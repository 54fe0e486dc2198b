"""Computational toolkit for the spectral geometry of 4D Euclidean Dirac
operators under chiral bag boundary conditions with variable chiral angle.

Subpackages / modules
---------------------
clifford   : frozen 4D Euclidean gamma representation, boundary projectors,
             spinor traces, and a real Clifford coefficient engine.
voigt      : Gaussian-smeared Lorentzian profiles (U, V) and their
             derivative/ratio functions, fast Faddeeva path plus
             quadrature oracle.
halfspace  : exact unperturbed heat kernel on R^3 x R_+ at constant
             boundary angle, with closed-form spatial derivatives.
dyson      : first/second order perturbation corrections (boundary angle,
             gauge and axial field insertions) and structural
             pure-imaginarity checks.
coeffs     : anomaly coefficient functions, moment integrals, bulk and
             boundary anomaly quadratures, small-time coefficient fits.
wz         : symbolic boundary-invariant engine (dimension bookkeeping,
             chiral variation, tangential integration by parts,
             consistency constraints).
fiber      : 1D interval Dirac eigenproblem with bag conditions at both
             ends, truncated spectral sums, spectral-flow scans.
cli        : command-line orchestration with JSON config and CSV output.
"""

from .clifford import (
    GammaRep,
    BoundaryFrame,
    build_gamma_rep,
    boundary_projector,
    hermitian_projectors,
    spinor_trace,
)
from .errors import AccuracyError, DomainError, FitError, StructuralError, UsageError
from .quadrature import QuadratureSpec
from .halfspace import HalfSpacePoint, KernelConfig, KernelValue, eval_K0

__all__ = [
    "GammaRep",
    "BoundaryFrame",
    "build_gamma_rep",
    "boundary_projector",
    "hermitian_projectors",
    "spinor_trace",
    "AccuracyError",
    "DomainError",
    "FitError",
    "StructuralError",
    "UsageError",
    "QuadratureSpec",
    "HalfSpacePoint",
    "KernelConfig",
    "KernelValue",
    "eval_K0",
]

__version__ = "0.1.0"
