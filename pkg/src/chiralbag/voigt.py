"""Gaussian-smeared Lorentzian profiles and their derivative ratios.

The pair

    U(u, t) = (4 pi t)^{-1/2} Int dy  exp(-(u-y)^2/4t) / (1 + y^2)
    V(u, t) = (4 pi t)^{-1/2} Int dy  y exp(-(u-y)^2/4t) / (1 + y^2)

is evaluated through the Faddeeva function: with z = (u + i)/(2 sqrt t),

    U + i V = sqrt(pi/4t) * w(z),          w(z) = exp(-z^2) erfc(-i z),

and the derivatives close algebraically:

    dU/du = -(u U - V)/(2t),      dV/du = (1 - U - u V)/(2t),
    dU/dt = d2U/du2,              dV/dt = d2V/du2  (heat equation).

The half-space kernel needs, besides U, the even ratio functions

    Q   = V/u
    Phi = (dU/du)/u
    Psi = (dV/du - Q)/u^2
    Xi  = dPsi/d(u^2)

which are finite at u = 0 but suffer catastrophic cancellation when formed
by literal division.  ``ratio_block`` evaluates all five stably over the
whole (u, t) quarter-plane with three branches:

* Taylor branch (|u| below a t-dependent radius): series in u with
  coefficients m_k = Z_k / (i^k k!) obtained either by an FFT Cauchy
  integral over the circle |u| = 0.7 (t < 0.2; uniformly stable, error
  enters as eps*(u/0.7)^k) or by the forward recurrence
  m_{k+1} = (m_{k-1} - m_k)/(2t(k+1)) (t >= 0.2, where it is stable).
* rational branch (t < 0.01, u above the Taylor radius): asymptotic
  smeared-Lorentzian series Z = sum_k (-t)^k (2k)!/k! g^{2k+1},
  g = 1/(1 - i u), with first and second u-derivatives taken termwise.
* direct branch (elsewhere): scipy wofz plus the algebraic derivative
  identities; division by u is stable there.

A slow adaptive-quadrature oracle of the defining integrals is provided in
``voigt_U_quad``/``voigt_V_quad``; for t > LARGE_T_SWITCH it switches to the
wide-Gaussian asymptotic expansion (Maclaurin series of w), where direct
quadrature of the two-scale integrand loses accuracy.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad
from scipy.special import erfcx, wofz

from .errors import DomainError

__all__ = [
    "voigt_U",
    "voigt_V",
    "voigt_U_quad",
    "voigt_V_quad",
    "ratio_block",
    "LARGE_T_SWITCH",
]

# branch geometry (validated against mpmath to <= 1e-11 worst case)
_RHO = 0.7          # Cauchy circle radius
_NFFT = 128
_KMAX = 64
_U_SWITCH = 0.55    # Taylor radius at t <= _T_REC
_T_REC = 0.2        # FFT Cauchy below, forward recurrence above
_T_RATIONAL = 0.01  # rational branch ceiling
LARGE_T_SWITCH = 1e3

_K = np.arange(_KMAX + 1)
_CIRCLE = _RHO * np.exp(2j * np.pi * np.arange(_NFFT) / _NFFT)
_RHOK = _RHO ** _K
_IPOW = 1j ** _K
_SGN_E = np.where(_K % 2 == 0, (-1.0) ** (_K // 2), 0.0)
_SGN_O = np.where(_K % 2 == 1, (-1.0) ** ((_K - 1) // 2), 0.0)
_C_U = _SGN_E
_C_Q = _SGN_O
_C_PHI = _SGN_E * _K
_C_PSI = _SGN_O * np.maximum(_K - 1, 0)
_C_XI = _SGN_O * np.maximum(_K - 1, 0) * np.maximum(_K - 3, 0) / 2.0
_KRAT = 16


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0) or not np.all(np.isfinite(t)):
        raise DomainError("second argument t must be positive and finite")
    return t


def voigt_U(u, t):
    """Fast path for U via the scaled complementary error function."""
    t = _check_t(t)
    u = np.asarray(u, dtype=float)
    z = (u + 1j) / (2 * np.sqrt(t))
    out = np.sqrt(np.pi / (4 * t)) * wofz(z).real
    return out if out.ndim else float(out)


def voigt_V(u, t):
    """Fast path for V; odd in u, V(0, t) = 0 exactly."""
    t = _check_t(t)
    u = np.asarray(u, dtype=float)
    z = (u + 1j) / (2 * np.sqrt(t))
    out = np.sqrt(np.pi / (4 * t)) * wofz(z).imag
    out = np.where(u == 0.0, 0.0, out)
    return out if out.ndim else float(out)


def _quad_defining(u, t, odd, rel_tol):
    # integrand scales: Lorentzian width 1 around 0, Gaussian width 2 sqrt(t)
    # around u; pass both structures as breakpoints on a finite window
    # (tails beyond it are below 1e-300).
    s = 2.0 * np.sqrt(t)
    pts = sorted({-1.0, 0.0, 1.0, u - 3 * s, u, u + 3 * s})
    if odd:
        f = lambda y: y * np.exp(-((u - y) ** 2) / (4 * t)) / (y * y + 1)
    else:
        f = lambda y: np.exp(-((u - y) ** 2) / (4 * t)) / (y * y + 1)
    lo = min(pts) - 40 * np.sqrt(t) - 10
    hi = max(pts) + 40 * np.sqrt(t) + 10
    val, _ = quad(f, lo, hi, points=pts, limit=400, epsabs=0.0, epsrel=rel_tol)
    return val


def _maclaurin_Z(u, t, nterm=24):
    """Z = sqrt(pi/4t) w(z) via the Maclaurin series of w; valid for small |z|
    (wide-Gaussian asymptotics of the smeared Lorentzian)."""
    z = (u + 1j) / (2 * np.sqrt(t))
    from math import gamma as _g
    w = 0j
    izk = 1.0 + 0j
    for n in range(nterm):
        w += izk / _g(n / 2 + 1)
        izk *= 1j * z
    return np.sqrt(np.pi / (4 * t)) * w


def voigt_U_quad(u, t, rel_tol=1e-12):
    """Adaptive-quadrature oracle for U(u, t) (slow path)."""
    t = float(_check_t(t))
    u = float(u)
    if t > LARGE_T_SWITCH:
        return _maclaurin_Z(u, t).real
    return _quad_defining(u, t, odd=False, rel_tol=rel_tol) / np.sqrt(4 * np.pi * t)


def voigt_V_quad(u, t, rel_tol=1e-12):
    """Adaptive-quadrature oracle for V(u, t) (slow path)."""
    t = float(_check_t(t))
    u = float(u)
    if t > LARGE_T_SWITCH:
        return _maclaurin_Z(u, t).imag
    return _quad_defining(u, t, odd=True, rel_tol=rel_tol) / np.sqrt(4 * np.pi * t)


def _taylor_coeffs(t):
    """m_k(t) for k = 0.._KMAX, vectorized over t; shape (len(t), KMAX+1)."""
    out = np.empty((t.size, _KMAX + 1))
    lo = t < _T_REC
    if lo.any():
        tl = t[lo]
        z = (_CIRCLE[None, :] + 1j) / (2 * np.sqrt(tl)[:, None])
        Z = np.sqrt(np.pi / (4 * tl))[:, None] * wofz(z)
        c = np.fft.fft(Z, axis=1)[:, : _KMAX + 1] / _NFFT
        out[lo] = (c / _RHOK / _IPOW).real
    hi = ~lo
    if hi.any():
        th = t[hi]
        m = np.empty((th.size, _KMAX + 1))
        m[:, 0] = np.sqrt(np.pi / (4 * th)) * erfcx(1 / (2 * np.sqrt(th)))
        m[:, 1] = (1 - m[:, 0]) / (2 * th)
        for k in range(1, _KMAX):
            m[:, k + 1] = (m[:, k - 1] - m[:, k]) / (2 * th * (k + 1))
        out[hi] = m
    return out


def _block_taylor(u, t):
    m = _taylor_coeffs(t)
    up = np.empty((u.size, _KMAX + 1))
    up[:, 0] = 1.0
    for k in range(1, _KMAX + 1):
        up[:, k] = up[:, k - 1] * u

    def series(coefs, shift):
        mm = m * coefs
        acc = np.zeros(u.size)
        for k in range(shift, _KMAX + 1):
            acc += mm[:, k] * up[:, k - shift]
        return acc

    return (series(_C_U, 0), series(_C_Q, 1), series(_C_PHI, 2),
            series(_C_PSI, 3), series(_C_XI, 5))


def _rational_ZUV(u, t):
    """Asymptotic series Z, Z_u, Z_uu in powers of t; uniform in u."""
    g = 1.0 / (1.0 - 1j * u)
    g2 = g * g
    Z = np.zeros_like(g)
    Zu = np.zeros_like(g)
    Zuu = np.zeros_like(g)
    pw = g.copy()
    ak = np.ones_like(t)
    for k in range(_KRAT + 1):
        if k:
            ak = ak * (-t) * (2 * k) * (2 * k - 1) / k
        m = 2 * k + 1
        Z += ak * pw
        Zu += ak * m * 1j * pw * g
        Zuu += -ak * m * (m + 1) * pw * g2
        pw = pw * g2
    return Z, Zu, Zuu


def _ratios_from_derivs(u, V, Vu, Vuu, U, Uu):
    Q = V / u
    Phi = Uu / u
    v = u * u
    Psi = (Vu - Q) / v
    # Xi = dPsi/dv without 1/(2t) amplification:
    # Psi_u = (Vuu - Vu/u + V/u^2)/u^2 - 2 Psi/u ;  Xi = Psi_u/(2u)
    Psi_u = (Vuu - Vu / u + Q / u) / v - 2 * Psi / u
    Xi = Psi_u / (2 * u)
    return U, Q, Phi, Psi, Xi


def _block_rational(u, t):
    Z, Zu, Zuu = _rational_ZUV(u, t)
    return _ratios_from_derivs(u, Z.imag, Zu.imag, Zuu.imag, Z.real, Zu.real)


def _block_direct(u, t):
    z = (u + 1j) / (2 * np.sqrt(t))
    w = wofz(z)
    p = np.sqrt(np.pi / (4 * t))
    U = p * w.real
    V = p * w.imag
    Uu = -(u * U - V) / (2 * t)
    Vu = (1 - U - u * V) / (2 * t)
    # second derivative from w'' = -2(w + z w'); w' = -2 z w + 2i/sqrt(pi)
    wp = -2 * z * w + 2j / np.sqrt(np.pi)
    wpp = -2 * (w + z * wp)
    Zuu = p * wpp / (4 * t)
    return _ratios_from_derivs(u, V, Vu, Zuu.imag, U, Uu)


def ratio_block(u, t):
    """Evaluate (U, Q, Phi, Psi, Xi) at (|u|, t), vectorized.

    All five are even in u; the caller reinstates odd prefactors.  Shapes
    broadcast; returns five arrays of the broadcast shape.
    """
    u, t = np.broadcast_arrays(np.abs(np.asarray(u, float)), np.asarray(t, float))
    shape = u.shape
    u = u.ravel()
    t = t.ravel()
    res = [np.empty_like(u) for _ in range(5)]
    taylor = u <= _U_SWITCH * np.sqrt(np.maximum(1.0, t / _T_REC))
    rational = (~taylor) & (t < _T_RATIONAL)
    direct = ~(taylor | rational)
    for mask, fn in ((taylor, _block_taylor), (rational, _block_rational),
                     (direct, _block_direct)):
        if mask.any():
            vals = fn(u[mask], t[mask])
            for r, v in zip(res, vals):
                r[mask] = v
    return tuple(r.reshape(shape) for r in res)


def derivative_pack(u, t):
    """Return dict of the block plus the algebraic (u,t)-derivative closures
    used by the half-space kernel:

        U_t  = ((v-1)U - 2vQ + 1)/(4t^2) - U/(2t)
        Q_t  = (2U + (v-1)Q - 1)/(4t^2) - Q/(2t)
        Phi_v = -(Phi - Psi)/(4t)
        Phi_t = (U - Q)/(2t^2) - (U_t - Q_t)/(2t)
        Psi_t = -(Phi_v + 2 Psi + v Xi)/t      (v = u^2)

    plus dU/dv = Phi/2 and dQ/dv = Psi/2 implicitly via Phi, Psi.
    """
    U, Q, Phi, Psi, Xi = ratio_block(u, t)
    u = np.abs(np.asarray(u, float))
    t = np.asarray(t, float)
    v = u * u
    Ut = ((v - 1) * U - 2 * v * Q + 1) / (4 * t * t) - U / (2 * t)
    Qt = (2 * U + (v - 1) * Q - 1) / (4 * t * t) - Q / (2 * t)
    Phi_v = -(Phi - Psi) / (4 * t)
    Phi_t = (U - Q) / (2 * t * t) - (Ut - Qt) / (2 * t)
    Psi_t = -(Phi_v + 2 * Psi + v * Xi) / t
    return {
        "U": U, "Q": Q, "Phi": Phi, "Psi": Psi, "Xi": Xi,
        "Ut": Ut, "Qt": Qt, "Phi_v": Phi_v, "Phi_t": Phi_t, "Psi_t": Psi_t,
    }
