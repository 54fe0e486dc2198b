"""Exact unperturbed heat kernel on the half-space R^3 x R_+ with chiral bag
boundary conditions at constant angle (no gauge or axial background).

With xi = x_n - y_n, eta = x_n + y_n, sigma = |x_par - y_par|,
c = cosh(theta), tau = tanh(theta), the kernel for eps = +1 is

    K0 = Ksc * Id  -  dB/deta * P_plus  +  tau * (r_j W) * g5 g^n g^j P_plus

where Ksc is the Dirichlet image combination of free Gaussians, B_red is
the boundary profile divided by its overall tau factor,

    B_red = -(c^2 / (4 pi^2 t)) e^{-(eta^2+sigma^2)/4t}
            * [ -U(u*, tt) + tau^2 Q(u*, tt) ] / eta,
    u* = sigma tau / eta,   tt = t / (eta^2 c^2),

W = (1/sigma) dB_red/dsigma, r_j = (x - y)_j tangential, and the full
profile is B = tau * B_red (keeping tau exact makes theta = 0 regular).
The eps = -1 kernel is gamma5 K0 gamma5.

All spatial derivatives are closed-form: they reduce to the ratio block
(U, Q, Phi, Psi, Xi) of ``voigt`` plus the algebraic closures in
``voigt.derivative_pack``; nothing is differenced numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import clifford as cl
from .errors import DomainError
from .voigt import ratio_block

__all__ = [
    "HalfSpacePoint",
    "KernelConfig",
    "KernelValue",
    "scalar_kernel",
    "B_kernel",
    "B_reduced",
    "C_profile",
    "C_profile_scaled",
    "eval_K0",
    "eval_DK0",
    "k0_matrix",
    "dk0_matrix",
    "k0_and_dk0",
    "structure_matrices",
]

_FOURPI2 = 4 * np.pi ** 2


@dataclass(frozen=True)
class HalfSpacePoint:
    """Point of R^3 x R_+: tangential 3-vector and normal coordinate >= 0."""

    tangential: np.ndarray
    normal: float

    def __post_init__(self):
        tp = np.asarray(self.tangential, dtype=float)
        if tp.shape != (3,):
            raise ValueError("tangential part must be a 3-vector")
        object.__setattr__(self, "tangential", tp)
        if self.normal < 0:
            raise DomainError("normal coordinate must be >= 0")


@dataclass(frozen=True)
class KernelConfig:
    """Boundary data of the unperturbed problem: angle theta and sign eps."""

    theta: float = 0.0
    epsilon: int = 1

    def __post_init__(self):
        if not np.isfinite(self.theta):
            raise ValueError("theta must be finite")
        if self.epsilon not in (+1, -1):
            raise ValueError("epsilon must be +-1")


@dataclass(frozen=True)
class KernelValue:
    value: np.ndarray
    x: HalfSpacePoint
    y: HalfSpacePoint
    t: float


@lru_cache(maxsize=32)
def _matrices(theta: float):
    """Constant spinor structures at eps = +1: P_plus and M_j = g5 g^n g^j P_plus."""
    frame = cl.BoundaryFrame(normal_index=3, epsilon=1)
    Pp, _ = cl.hermitian_projectors(theta, frame)
    gn = cl.GAMMA[3]
    Mj = np.stack([cl.GAMMA5 @ gn @ cl.GAMMA[j] @ Pp for j in range(3)])
    return Pp, Mj


def structure_matrices(cfg: KernelConfig):
    """(P_plus, M_j) at eps=+1 for the configured theta."""
    return _matrices(float(cfg.theta))


def _check_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0) or not np.all(np.isfinite(t)):
        raise DomainError("proper time t must be positive and finite")
    return t


def _profile_coeffs(sig2, eta, t, theta, order):
    """B_red and its closed-form derivatives, vectorized.

    Returns a dict with keys (by requested order):
      0: B
      1: Bh  (= dB/deta),  Ws (= (1/sigma) dB/dsigma)
      2: Bhh (= d2B/deta2), Wh (= d(Ws)/deta), Wss (= (1/sigma) dWs/dsigma)

    eta must be positive everywhere.
    """
    base_shape = np.broadcast_shapes(np.shape(sig2), np.shape(eta), np.shape(t))
    sig2, eta, t = np.broadcast_arrays(*np.atleast_1d(sig2, eta, t))
    if np.any(eta <= 0):
        raise DomainError("eta = x_n + y_n must be positive (not both points on the boundary)")
    c = np.cosh(theta)
    tau = np.tanh(theta)
    c2 = c * c
    tau2 = tau * tau

    E2 = np.exp(-(eta * eta + sig2) / (4 * t))
    act = E2 > 0.0          # beyond ~ 40 sigma of the Gaussian everything is 0
    out_keys = {0: ("B",), 1: ("B", "Bh", "Ws"), 2: ("B", "Bh", "Ws", "Bhh", "Wh", "Wss")}[order]
    out = {k: np.zeros(E2.shape) for k in out_keys}
    if not act.any():
        return {k: v.reshape(base_shape) for k, v in out.items()}

    s2 = sig2[act]
    h = eta[act]
    tt_full = t[act] if t.shape == eta.shape else np.broadcast_to(t, eta.shape)[act]
    Ared = -(c2 / (_FOURPI2 * tt_full)) * E2[act]
    v = s2 * tau2 / (h * h)
    te = tt_full / (h * h * c2)
    u = np.sqrt(v)

    if order == 0:
        U, Q, _, _, _ = ratio_block(u, te)
        S = (-U + tau2 * Q) / h
        out["B"][act] = Ared * S
        return {k: val.reshape(base_shape) for k, val in out.items()}

    from .voigt import derivative_pack
    p = derivative_pack(u, te)
    U, Q, Phi, Psi, Xi = p["U"], p["Q"], p["Phi"], p["Psi"], p["Xi"]
    Ut, Qt = p["Ut"], p["Qt"]

    S = (-U + tau2 * Q) / h
    B = Ared * S
    G1 = v * Phi + 2 * te * Ut - tau2 * (v * Psi + 2 * te * Qt)
    Teta = -S / h + G1 / (h * h)
    Bh = -(h / (2 * tt_full)) * B + Ared * Teta
    g = (tau2 / h ** 3) * (tau2 * Psi - Phi)
    Ws = -B / (2 * tt_full) + Ared * g
    out["B"][act] = B
    out["Bh"][act] = Bh
    out["Ws"][act] = Ws
    if order == 1:
        return {k: val.reshape(base_shape) for k, val in out.items()}

    Phi_v, Phi_t, Psi_t = p["Phi_v"], p["Phi_t"], p["Psi_t"]
    Ut_v = (U + (v - 1) * Phi / 2 - 2 * Q - v * Psi) / (4 * te * te) - Phi / (4 * te)
    Qt_v = (Phi + Q + (v - 1) * Psi / 2) / (4 * te * te) - Psi / (4 * te)
    Ut_t = ((v - 1) * Ut - 2 * v * Qt) / (4 * te * te) \
        - ((v - 1) * U - 2 * v * Q + 1) / (2 * te ** 3) - Ut / (2 * te) + U / (2 * te * te)
    Qt_t = (2 * Ut + (v - 1) * Qt) / (4 * te * te) \
        - (2 * U + (v - 1) * Q - 1) / (2 * te ** 3) - Qt / (2 * te) + Q / (2 * te * te)

    G1_v = Phi + v * Phi_v + 2 * te * Ut_v - tau2 * (Psi + v * Xi + 2 * te * Qt_v)
    G1_t = v * Phi_t + 2 * Ut + 2 * te * Ut_t - tau2 * (v * Psi_t + 2 * Qt + 2 * te * Qt_t)
    dG1 = -(2 / h) * (v * G1_v + te * G1_t)
    dTeta = -Teta / h + S / (h * h) - 2 * G1 / h ** 3 + dG1 / (h * h)
    Ah = -(h / (2 * tt_full)) * Ared
    Bhh = -B / (2 * tt_full) - (h / (2 * tt_full)) * Bh + Ah * Teta + Ared * dTeta

    dPsi = -(2 / h) * (v * Xi + te * Psi_t)
    dPhi = -(2 / h) * (v * Phi_v + te * Phi_t)
    dg = tau2 * (-3 / h ** 4 * (tau2 * Psi - Phi) + (tau2 * dPsi - dPhi) / h ** 3)
    Wh = -Bh / (2 * tt_full) + Ah * g + Ared * dg
    Wss = -Ws / (2 * tt_full) - Ared * g / (2 * tt_full) \
        + Ared * (2 * tau2 * tau2 / h ** 5) * (tau2 * Xi - Phi_v)
    out["Bhh"][act] = Bhh
    out["Wh"][act] = Wh
    out["Wss"][act] = Wss
    return {k: val.reshape(base_shape) for k, val in out.items()}


def _split(x):
    if isinstance(x, HalfSpacePoint):
        return x.tangential, x.normal
    tp, n = x
    return np.asarray(tp, dtype=float), n


def scalar_kernel(x, y, t):
    """Dirichlet image combination (4 pi t)^{-2} (e^{-(xi^2+sig^2)/4t} - e^{-(eta^2+sig^2)/4t})."""
    t = _check_time(t)
    xp, xn = _split(x)
    yp, yn = _split(y)
    r = xp - yp
    sig2 = np.sum(r * r, axis=-1)
    xi = xn - yn
    eta = xn + yn
    E1 = np.exp(-(xi * xi + sig2) / (4 * t))
    E2 = np.exp(-(eta * eta + sig2) / (4 * t))
    out = (E1 - E2) / (4 * np.pi * t) ** 2
    return float(out) if np.ndim(out) == 0 else out


def B_reduced(sig2, eta, t, cfg: KernelConfig, order=0):
    """B/tau profile (and derivatives); regular at theta = 0."""
    t = _check_time(t)
    return _profile_coeffs(sig2, eta, t, float(cfg.theta), order)


def B_kernel(x, y, t, cfg: KernelConfig):
    """Boundary profile B(x, y, t); overall tau factor kept exact."""
    t = _check_time(t)
    xp, xn = _split(x)
    yp, yn = _split(y)
    r = xp - yp
    sig2 = np.sum(r * r, axis=-1)
    eta = xn + yn
    val = np.tanh(cfg.theta) * _profile_coeffs(sig2, eta, t, float(cfg.theta), 0)["B"]
    return float(val) if np.ndim(sig2) == 0 else val.reshape(np.shape(sig2))


def C_profile_scaled(u, cfg: KernelConfig, order=0):
    """C(u, 1) and, for order >= 1, u-derivatives; regular down to u = 0.

    Eliminating the 1/eta of the off-diagonal profile gives, with a = u c,
    X = erfcx(a):

        C(u,1) = tau c^3/(4 pi^2) e^{-u^2}
                 [ sqrt(pi)/2 X - tau^2 a (1 - sqrt(pi) a X) ]

    so C(0,1) = tau c^3 / (8 pi^{3/2}).  Returns C, (C, C'), or (C, C', C'')
    according to order.
    """
    u = np.asarray(u, dtype=float)
    theta = float(cfg.theta)
    c = np.cosh(theta)
    tau = np.tanh(theta)
    tau2 = tau * tau
    P = tau * c ** 3 / _FOURPI2
    a = u * c
    from scipy.special import erfcx
    X = erfcx(a)
    sq = np.sqrt(np.pi)
    E = np.exp(-u * u)
    g = (sq / 2) * X - tau2 * a * (1 - sq * a * X)
    C = P * E * g
    if order == 0:
        return C if C.ndim else float(C)
    Xp = 2 * a * X - 2 / sq
    ga = (sq / 2) * Xp + sq * tau2 * a * a * Xp + 2 * sq * tau2 * a * X - tau2
    Ep = -2 * u * E
    C1 = P * (Ep * g + E * c * ga)
    if order == 1:
        return (C, C1) if C.ndim else (float(C), float(C1))
    Xpp = (2 + 4 * a * a) * X - 4 * a / sq
    gaa = (sq / 2) * Xpp + sq * tau2 * (2 * a * Xp + a * a * Xpp) \
        + 2 * sq * tau2 * (X + a * Xp)
    Epp = (4 * u * u - 2) * E
    C2 = P * (Epp * g + 2 * Ep * c * ga + E * c * c * gaa)
    if C.ndim:
        return C, C1, C2
    return float(C), float(C1), float(C2)


def C_profile(xn, t, cfg: KernelConfig):
    """Diagonal profile C(x_n, t) = B(x, x, t) = t^{-3/2} C(x_n/sqrt t, 1)."""
    t = _check_time(t)
    xn = np.asarray(xn, dtype=float)
    val = np.asarray(C_profile_scaled(xn / np.sqrt(t), cfg)) * t ** -1.5
    return float(val) if xn.ndim == 0 else val.reshape(xn.shape)


def _kernel_pieces(rpar, xn, yn, t, theta, want_dk):
    """Vectorized coefficient assembly at eps = +1.

    rpar: (...,3); xn, yn, t broadcastable to (...,).  Returns (K, DK):
    K is (...,4,4); DK = (slashed D acting on the first argument) K, or None.
    """
    rpar = np.asarray(rpar, dtype=float)
    sig2 = np.sum(rpar * rpar, axis=-1)
    base_shape = np.broadcast_shapes(np.shape(xn), np.shape(yn), np.shape(t), np.shape(sig2))
    xn, yn, t, sig2 = np.broadcast_arrays(xn, yn, t, sig2)
    rpar = np.broadcast_to(rpar, base_shape + (3,)) if base_shape else rpar
    xi = xn - yn
    eta = xn + yn
    E1 = np.exp(-(xi * xi + sig2) / (4 * t))
    E2 = np.exp(-(eta * eta + sig2) / (4 * t))
    Cn = 1.0 / (4 * np.pi * t) ** 2
    Ksc = Cn * (E1 - E2)

    prof = _profile_coeffs(sig2, eta, t, theta, 2 if want_dk else 1)
    tau = np.tanh(theta)
    Pp, Mj = _matrices(theta)
    Id = np.eye(4)

    b_n = -prof["Bh"]
    wg = tau * prof["Ws"]
    K = (Ksc[..., None, None] * Id
         + b_n[..., None, None] * Pp
         + np.einsum("...j,jab->...ab", rpar * wg[..., None], Mj))
    if not want_dk:
        return K.reshape(base_shape + (4, 4)), None

    # first-argument gradient;  tangential k:  d_k = r_k * (1/sigma) d_sigma
    dK_t_iso = -Ksc / (2 * t)              # (1/sigma) d_sigma Ksc
    dbn_s = -prof["Wh"]                    # (1/sigma) d_sigma b_n
    dwg_s = tau * prof["Wss"]
    # normal derivative pieces
    dK_n = Cn * (-(xi / (2 * t)) * E1 + (eta / (2 * t)) * E2)
    dbn_n = -prof["Bhh"]
    dwg_n = tau * prof["Wh"]

    G = cl.GAMMA
    DK = np.zeros(K.shape, dtype=complex)
    # normal direction
    gradn = (dK_n[..., None, None] * Id
             + dbn_n[..., None, None] * Pp
             + np.einsum("...j,jab->...ab", rpar * dwg_n[..., None], Mj))
    DK += np.einsum("ab,...bc->...ac", G[3], gradn)
    # tangential directions
    for k in range(3):
        rk = rpar[..., k]
        gradk = (rk * dK_t_iso)[..., None, None] * Id \
            + (rk * dbn_s)[..., None, None] * Pp \
            + wg[..., None, None] * Mj[k] \
            + np.einsum("...j,jab->...ab", rpar * (rk * dwg_s)[..., None], Mj)
        DK += np.einsum("ab,...bc->...ac", G[k], gradk)
    return K.reshape(base_shape + (4, 4)), (1j * DK).reshape(base_shape + (4, 4))


def k0_matrix(rpar, xn, yn, t, cfg: KernelConfig):
    """K0(x, y; t) as (...,4,4); rpar = x_par - y_par."""
    K, _ = _kernel_pieces(rpar, xn, yn, _check_time(t), float(cfg.theta), False)
    if cfg.epsilon == -1:
        K = np.einsum("ab,...bc,cd->...ad", cl.GAMMA5, K, cl.GAMMA5)
    return K

def dk0_matrix(rpar, xn, yn, t, cfg: KernelConfig):
    """(slashed D_x) K0(x, y; t) as (...,4,4)."""
    _, DK = _kernel_pieces(rpar, xn, yn, _check_time(t), float(cfg.theta), True)
    if cfg.epsilon == -1:
        DK = -np.einsum("ab,...bc,cd->...ad", cl.GAMMA5, DK, cl.GAMMA5)
    return DK


def k0_and_dk0(rpar, xn, yn, t, cfg: KernelConfig):
    K, DK = _kernel_pieces(rpar, xn, yn, _check_time(t), float(cfg.theta), True)
    if cfg.epsilon == -1:
        K = np.einsum("ab,...bc,cd->...ad", cl.GAMMA5, K, cl.GAMMA5)
        DK = -np.einsum("ab,...bc,cd->...ad", cl.GAMMA5, DK, cl.GAMMA5)
    return K, DK


def eval_K0(x, y, t, cfg: KernelConfig) -> KernelValue:
    """Public kernel evaluation at HalfSpacePoints."""
    xp, xn = _split(x)
    yp, yn = _split(y)
    K = k0_matrix(xp - yp, xn, yn, t, cfg)
    if not isinstance(x, HalfSpacePoint):
        x = HalfSpacePoint(xp, xn)
    if not isinstance(y, HalfSpacePoint):
        y = HalfSpacePoint(yp, yn)
    return KernelValue(value=K, x=x, y=y, t=float(t))


def eval_DK0(x, y, t, cfg: KernelConfig) -> np.ndarray:
    xp, xn = _split(x)
    yp, yn = _split(y)
    return dk0_matrix(xp - yp, xn, yn, t, cfg)
