"""Anomaly coefficient functions and their numerical cross-checks.

Closed forms (eps is the per-boundary sign):

    f6(th) = coth(th) (th coth(th) - 1) / (16 pi^2)          [odd in th]
    G4(th, eps) = -eps cosh(th) / (16 pi^{3/2} (1 + cosh th)) [even in th]
    G0(eps) = eps / (8 pi^{3/2})

and the moment integrals of the rescaled diagonal profile C(u, 1):

    c_k(th) = 1/(k-2)! Int_0^inf u^{k-2} C(u, 1) du      (k >= 2),
    c_1(th) = C(0, 1),

with the identities c_4 = f6 and -c_3/sinh(th) = G4/eps.  All c_k vanish
at th = 0 (overall tanh factor of the profile).

The small-time expansion of the smeared gamma5 trace of the unperturbed
kernel is Tr(dphi g5 e^{-t D0^2}) ~ sum_n t^{(n-4)/2} a_n with
a_n = c_n(th) * Int d^3x_par (d_n)^{n-1} dphi(x_par, 0); ``smeared_trace``
evaluates the trace exactly (1D reduced) and ``extract_coefficients``
recovers the a_n by least squares on a log t-grid.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import AccuracyError, DomainError, FitError
from .fields import GaussianBump
from .halfspace import C_profile_scaled, KernelConfig
from .quadrature import QuadratureSpec, tensor_grid

__all__ = [
    "f6",
    "G4",
    "G0",
    "moment_ck",
    "CoefficientTable",
    "coefficient_table",
    "abj_bulk",
    "parity_boundary",
    "SmearedTrace",
    "smeared_trace",
    "smeared_trace_dt",
    "exact_moments",
    "extract_coefficients",
    "residual_slope",
]

_SMALL_THETA = 1e-7


def f6(theta):
    """coth(th)(th coth(th) - 1)/(16 pi^2); analytic limit th/(48 pi^2) at 0."""
    theta = np.asarray(theta, dtype=float)
    small = np.abs(theta) < _SMALL_THETA
    th = np.where(small, 1.0, theta)
    coth = np.cosh(th) / np.sinh(th)
    val = coth * (th * coth - 1.0) / (16 * np.pi ** 2)
    lim = theta / (48 * np.pi ** 2)
    out = np.where(small, lim, val)
    return float(out) if out.ndim == 0 else out


def G4(theta, epsilon=1):
    """-eps cosh(th) / (16 pi^{3/2} (1 + cosh th)); even in th."""
    theta = np.asarray(theta, dtype=float)
    out = -epsilon * np.cosh(theta) / (16 * np.pi ** 1.5 * (1 + np.cosh(theta)))
    return float(out) if out.ndim == 0 else out


def G0(epsilon=1):
    return epsilon / (8 * np.pi ** 1.5)


def _c_integrand(theta):
    cfg = KernelConfig(theta=theta)
    return lambda u: C_profile_scaled(np.asarray(u, float), cfg)


def moment_ck(theta, k, rel_tol=1e-12, u_max=12.0):
    """c_k(theta) by adaptive quadrature with a certified Gaussian tail bound.

    k >= 2; theta = 0 returns the analytic limit 0 exactly (the profile
    carries an overall tanh factor).  k = 1 returns C(0, 1).
    """
    if k < 1:
        raise DomainError("moment order k must be >= 1")
    if theta == 0.0:
        return 0.0
    cfg = KernelConfig(theta=theta)
    if k == 1:
        return float(C_profile_scaled(0.0, cfg))
    C = _c_integrand(theta)
    f = lambda u: u ** (k - 2) * C(u)
    val, err = quad(f, 0.0, u_max, limit=300, epsabs=0.0, epsrel=rel_tol)
    # |C(u,1)| <= tanh*cosh^3*(sqrt(pi)/2 + 1)/(4 pi^2) * e^{-u^2} for u >= 1,
    # and Int_U^inf u^m e^{-u^2} du <= U^{m-1} e^{-U^2} for U^2 > m.
    c = np.cosh(theta)
    bound = abs(np.tanh(theta)) * c ** 3 * (np.sqrt(np.pi) / 2 + 1) / (4 * np.pi ** 2)
    tail = bound * u_max ** (k - 3) * np.exp(-u_max ** 2)
    scale = max(abs(val), 1e-300)
    if tail / scale > rel_tol and tail > 1e-290:
        raise AccuracyError(
            f"tail bound {tail:.3e} exceeds tolerance for c_{k}({theta})",
            achieved=tail / scale, value=val / math.factorial(k - 2))
    return val / math.factorial(k - 2)


@dataclass(frozen=True)
class CoefficientTable:
    theta_grid: np.ndarray
    values: dict            # name -> array over theta_grid
    errors: dict            # name -> error estimate array

    def column_names(self):
        return list(self.values)

    def rows(self):
        names = self.column_names()
        for i, th in enumerate(self.theta_grid):
            yield [th] + [self.values[n][i] for n in names] + \
                  [self.errors[n][i] for n in names]


def coefficient_table(theta_grid, epsilon=1, rel_tol=1e-12) -> CoefficientTable:
    """c_2..c_4 by quadrature plus the closed forms f6, G4/eps, on a theta grid."""
    theta_grid = np.asarray(theta_grid, dtype=float)
    names = ["c2", "c3", "c4", "f6", "G4_over_eps"]
    vals = {n: np.empty(theta_grid.shape) for n in names}
    errs = {n: np.zeros(theta_grid.shape) for n in names}
    for i, th in enumerate(theta_grid):
        vals["c2"][i] = moment_ck(th, 2, rel_tol)
        vals["c3"][i] = moment_ck(th, 3, rel_tol)
        vals["c4"][i] = moment_ck(th, 4, rel_tol)
        vals["f6"][i] = f6(th)
        vals["G4_over_eps"][i] = G4(th, 1)
        for n in ("c2", "c3", "c4"):
            errs[n][i] = abs(vals[n][i]) * rel_tol
    return CoefficientTable(theta_grid=theta_grid, values=vals, errors=errs)


_EPS4 = np.zeros((4, 4, 4, 4))
for _p in itertools.permutations(range(4)):
    _sgn = 1
    _l = list(_p)
    for _i in range(4):
        for _j in range(_i + 1, 4):
            if _l[_i] > _l[_j]:
                _sgn = -_sgn
    _EPS4[_p] = _sgn


def abj_bulk(delta_phi, F, box, spec: QuadratureSpec = QuadratureSpec(),
             orientation=1):
    """Bulk chiral-anomaly integral (1/16 pi^2) Int dphi eps^{mnrs} F_mn F_rs.

    ``F`` maps points (...,4) to antisymmetric (...,4,4) field strengths;
    the integral never reads any boundary-angle configuration.  orientation
    flips the Levi-Civita sign for the reversal check.
    """
    pts, wts = tensor_grid(box, spec.nodes_bulk)
    Fv = np.asarray(F(pts), dtype=float)
    if Fv.shape[-2:] != (4, 4):
        raise DomainError("F sampler must return (...,4,4) tensors")
    if np.abs(Fv + np.swapaxes(Fv, -1, -2)).max() > 1e-12 * max(np.abs(Fv).max(), 1e-300):
        raise DomainError("field strength must be antisymmetric")
    dens = orientation * np.einsum("mnrs,...mn,...rs->...", _EPS4, Fv, Fv)
    phi = np.asarray(delta_phi(pts), dtype=float)
    return float(np.dot(wts, phi * dens) / (16 * np.pi ** 2))


def parity_boundary(A, epsilon, box, spec: QuadratureSpec = QuadratureSpec()):
    """Boundary parity-anomaly integral
        -(i/16 pi) eps_alpha Int d^3x eps^{nijk} A_i A_{k:j}
    over the boundary R^3; pure imaginary by construction.

    ``A`` must provide value(x)->(...,3) and jacobian(x)->(...,3,3) with
    jacobian[..., j, k] = d_j A_k.
    """
    if epsilon not in (+1, -1):
        raise DomainError("epsilon must be +-1")
    pts, wts = tensor_grid(box, spec.nodes_boundary)
    Av = np.asarray(A.value(pts), dtype=float)
    J = np.asarray(A.jacobian(pts), dtype=float)
    eps3 = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps3[i, j, k] = 1.0
        eps3[i, k, j] = -1.0
    dens = np.einsum("ijk,...i,...jk->...", eps3, Av, J)
    return complex(-1j * epsilon * np.dot(wts, dens) / (16 * np.pi))


# ---------------------------------------------------------------------------
# smeared gamma5 traces and small-t coefficient extraction
# ---------------------------------------------------------------------------

def _bump_boundary_moment(bump: GaussianBump, order: int):
    """Int d^3 x_par  (d/dx_n)^order bump(x_par, x_n)|_{x_n = 0}."""
    if bump.dim != 4:
        raise DomainError("smearing bump must be 4-dimensional")
    tang = bump.amplitude * np.prod(np.sqrt(2 * np.pi) * bump.width[:3])
    from .fields import gaussian_derivative_1d
    return float(tang * gaussian_derivative_1d(0.0, bump.center[3], bump.width[3], order))


def exact_moments(bump: GaussianBump, theta, orders, rel_tol=1e-12):
    """Oracle a_n = c_n(theta) * boundary moment of the smearing bump."""
    return {n: moment_ck(theta, n, rel_tol) * _bump_boundary_moment(bump, n - 1)
            for n in orders}


@dataclass(frozen=True)
class SmearedTrace:
    t_grid: np.ndarray
    values: np.ndarray
    smearing: str = ""

    def __post_init__(self):
        tg = np.asarray(self.t_grid, dtype=float)
        if np.any(np.diff(tg) >= 0):
            raise DomainError("t_grid must be strictly decreasing toward 0")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("trace values must be finite")


def smeared_trace(bump: GaussianBump, cfg: KernelConfig, t, rel_tol=1e-12,
                  u_max=12.0):
    """Tr(bump * gamma5 * e^{-t D0^2}) via the reduced 1D profile integral:

        T(t) = t^{-3/2} C(0,1) I0 + t^{-1} Int_0^inf J(u sqrt t) C(u,1) du,

    I0 and J(s) are boundary value / normal-derivative tangential integrals
    of the bump (closed form for Gaussians).
    """
    t = float(t)
    if t <= 0:
        raise DomainError("t must be positive")
    if cfg.theta == 0.0:
        # tr(gamma5 K0) carries the overall tanh factor
        return 0.0
    C = _c_integrand(cfg.theta)
    I0 = _bump_boundary_moment(bump, 0)
    from .fields import gaussian_derivative_1d
    tang = bump.amplitude * np.prod(np.sqrt(2 * np.pi) * bump.width[:3])
    J = lambda s: tang * gaussian_derivative_1d(s, bump.center[3], bump.width[3], 1)
    C0 = float(C_profile_scaled(0.0, KernelConfig(theta=cfg.theta)))
    f = lambda u: J(u * np.sqrt(t)) * C(u)
    val, _ = quad(f, 0.0, u_max, limit=300, epsabs=0.0, epsrel=rel_tol)
    out = t ** -1.5 * C0 * I0 + val / t
    if cfg.epsilon == -1:
        # gamma5 conjugation flips the sign of tr(gamma5 K0)
        out = -out
    return float(out)


def smeared_trace_dt(bump: GaussianBump, cfg: KernelConfig, t, rel_tol=1e-12,
                     u_max=12.0):
    """d/dt of ``smeared_trace``, analytic through the rescaled profile."""
    t = float(t)
    if cfg.theta == 0.0:
        return 0.0
    C = _c_integrand(cfg.theta)
    I0 = _bump_boundary_moment(bump, 0)
    from .fields import gaussian_derivative_1d
    tang = bump.amplitude * np.prod(np.sqrt(2 * np.pi) * bump.width[:3])
    J1 = lambda s: tang * gaussian_derivative_1d(s, bump.center[3], bump.width[3], 1)
    J2 = lambda s: tang * gaussian_derivative_1d(s, bump.center[3], bump.width[3], 2)
    C0 = float(C_profile_scaled(0.0, KernelConfig(theta=cfg.theta)))
    sq = np.sqrt(t)
    i1, _ = quad(lambda u: J1(u * sq) * C(u), 0.0, u_max, limit=300, epsabs=0.0, epsrel=rel_tol)
    i2, _ = quad(lambda u: u * J2(u * sq) * C(u), 0.0, u_max, limit=300, epsabs=0.0, epsrel=rel_tol)
    out = -1.5 * t ** -2.5 * C0 * I0 - i1 / t ** 2 + i2 / (2 * t ** 1.5)
    if cfg.epsilon == -1:
        out = -out
    return float(out)


def extract_coefficients(trace: SmearedTrace, orders, n_bootstrap=200,
                         cond_threshold=1e8, seed=0):
    """Least-squares fit of sum_n a_n t^{(n-4)/2} over the given orders.

    Returns dict n -> (a_n, sigma_n) with bootstrap error bars.  Raises
    FitError when the (column-normalized) design matrix is ill conditioned
    or the grid cannot resolve the requested orders.
    """
    orders = sorted(orders)
    if len(orders) > 4:
        raise FitError("fit at most 4 orders simultaneously")
    t = np.asarray(trace.t_grid, dtype=float)
    y = np.asarray(trace.values, dtype=float)
    if t.size < len(orders) + 2:
        raise FitError("not enough grid points for the requested orders")
    X = np.stack([t ** ((n - 4) / 2.0) for n in orders], axis=-1)
    norm = np.linalg.norm(X, axis=0)
    Xn = X / norm
    cond = np.linalg.cond(Xn)
    if cond > cond_threshold:
        raise FitError(f"design matrix condition number {cond:.2e} exceeds threshold")
    coef, *_ = np.linalg.lstsq(Xn, y, rcond=None)
    coef = coef / norm
    rng = np.random.default_rng(seed)
    boot = np.empty((n_bootstrap, len(orders)))
    for b in range(n_bootstrap):
        idx = rng.integers(0, t.size, t.size)
        cb, *_ = np.linalg.lstsq(Xn[idx], y[idx], rcond=None)
        boot[b] = cb / norm
    sig = boot.std(axis=0)
    return {n: (coef[i], sig[i]) for i, n in enumerate(orders)}


def residual_slope(trace: SmearedTrace, coefficients: dict):
    """Log-log slope of |T(t) - sum_n a_n t^{(n-4)/2}| against t.

    For exact coefficients through order n the residual is dominated by the
    next half-integer power, slope (n + 1 - 4)/2.
    """
    t = np.asarray(trace.t_grid, dtype=float)
    model = sum(a * t ** ((n - 4) / 2.0) for n, a in coefficients.items())
    resid = np.abs(trace.values - model)
    if np.any(resid == 0):
        raise FitError("residual vanished exactly; cannot fit a slope")
    slope, _ = np.polyfit(np.log(t), np.log(resid), 1)
    return float(slope)
