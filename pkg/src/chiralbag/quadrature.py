"""Quadrature settings and Gauss-Legendre helpers.

QuadratureSpec is the single source of truth for tolerances, cutoffs and
node counts of every numeric integral in the package; the shipped default
configuration file mirrors its fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

__all__ = ["QuadratureSpec", "gauss_legendre", "tensor_grid", "proper_time_nodes"]


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10          # adaptive 1D quadrature relative tolerance
    abs_tol: float = 1e-13
    quad_limit: int = 300           # max subdivisions for scipy.quad
    tail_sigmas: float = 8.5        # Gaussian support truncation, in widths
    margin_sqrt_t: float = 10.0     # kernel locality margin, in sqrt(t)
    nodes_time: int = 32            # proper-time GL nodes (w = t sin^2 a)
    nodes_boundary: int = 20        # GL nodes per tangential axis (3D boundary)
    nodes_bulk: int = 12            # GL nodes per axis for 4D bulk integrals
    nodes_normal: int = 24          # GL nodes along the normal direction
    qmc_log2_budget: int = 16       # quasi-Monte-Carlo sample budget (2^k)
    seed: int = 20260810
    jobs: int = 1

    def asdict(self):
        return asdict(self)


def gauss_legendre(n: int, a: float, b: float):
    """Nodes and weights of n-point Gauss-Legendre on (a, b)."""
    x, w = np.polynomial.legendre.leggauss(int(n))
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def tensor_grid(bounds, nodes):
    """Tensor-product GL grid over a box.

    bounds: sequence of (lo, hi) per axis; nodes: int or per-axis sequence.
    Returns (points (N, d), weights (N,)).
    """
    bounds = list(bounds)
    d = len(bounds)
    if np.isscalar(nodes):
        nodes = [int(nodes)] * d
    axes = [gauss_legendre(n, lo, hi) for (lo, hi), n in zip(bounds, nodes)]
    mesh = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    wts = axes[0][1]
    for a in axes[1:]:
        wts = np.multiply.outer(wts, a[1])
    return pts, wts.ravel()


def proper_time_nodes(t: float, n: int):
    """Nodes/weights for Int_0^t dw via w = t sin^2(alpha).

    The substitution absorbs the integrable endpoint steepness of heat
    kernel products near w -> 0 and w -> t.
    """
    alpha, wa = gauss_legendre(n, 0.0, np.pi / 2)
    w = t * np.sin(alpha) ** 2
    return w, t * np.sin(2 * alpha) * wa
