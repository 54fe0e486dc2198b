"""Smooth compactly-localized field configurations (Gaussian bumps).

Every perturbation in the test and verification suites is built from
Gaussian profiles with explicitly stored centers/widths/amplitudes, so all
results are reproducible from the run configuration.  Supports are treated
as the box center +- tail_sigmas * width; Gaussian tails beyond the
default box are below 1e-15 relative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["GaussianBump", "FieldConfig", "gaussian_derivative_1d"]


def _hermite_factor(k: int, xi):
    """d^k/dx^k e^{-x^2/2} = (-1)^k He_k(x) e^{-x^2/2} with probabilists' He_k."""
    He = [np.ones_like(xi), xi]
    for m in range(1, k):
        He.append(xi * He[m] - m * He[m - 1])
    return (-1.0) ** k * He[k]


def gaussian_derivative_1d(x, center, width, k=0):
    """k-th derivative of exp(-(x-center)^2 / (2 width^2))."""
    xi = (np.asarray(x, float) - center) / width
    return _hermite_factor(k, xi) * np.exp(-0.5 * xi * xi) / width ** k


@dataclass(frozen=True)
class GaussianBump:
    """amplitude * prod_i exp(-(x_i - center_i)^2 / (2 width_i^2))."""

    center: np.ndarray
    width: np.ndarray
    amplitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", np.atleast_1d(np.asarray(self.center, float)))
        object.__setattr__(self, "width", np.atleast_1d(np.asarray(self.width, float)))
        if self.center.shape != self.width.shape:
            raise ValueError("center and width must have matching shapes")
        if np.any(self.width <= 0):
            raise ValueError("widths must be positive")

    @property
    def dim(self):
        return self.center.size

    def __call__(self, x):
        x = np.asarray(x, float)
        xi = (x - self.center) / self.width
        return self.amplitude * np.exp(-0.5 * np.sum(xi * xi, axis=-1))

    def derivative(self, x, axis: int, order: int = 1):
        """Partial derivative of the bump along one axis."""
        x = np.asarray(x, float)
        xi = (x - self.center) / self.width
        other = np.exp(-0.5 * (np.sum(xi * xi, axis=-1) - xi[..., axis] ** 2))
        d = gaussian_derivative_1d(x[..., axis], self.center[axis], self.width[axis], order)
        return self.amplitude * other * d

    def gradient(self, x):
        x = np.asarray(x, float)
        xi = (x - self.center) / self.width
        return -self(x)[..., None] * xi / self.width

    def hessian(self, x):
        x = np.asarray(x, float)
        xi = (x - self.center) / self.width
        f = self(x)
        outer = np.einsum("...i,...j->...ij", xi / self.width, xi / self.width)
        diag = np.diag(1.0 / self.width ** 2)
        return f[..., None, None] * (outer - diag)

    def support_box(self, tail_sigmas: float = 8.5):
        lo = self.center - tail_sigmas * self.width
        hi = self.center + tail_sigmas * self.width
        return np.stack([lo, hi], axis=-1)

    def integral(self):
        """Closed-form integral over all of R^dim."""
        return self.amplitude * np.prod(np.sqrt(2 * np.pi) * self.width)


class TangentVectorField:
    """Boundary (R^3) vector field with per-component Gaussian bumps.

    components: sequence of three GaussianBump-or-None.  Provides value()
    and jacobian(x)[..., j, k] = d_j A_k for the boundary anomaly integral.
    """

    def __init__(self, components):
        components = list(components)
        if len(components) != 3:
            raise ValueError("need exactly 3 components")
        self.components = components

    def value(self, x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape[:-1] + (3,))
        for k, c in enumerate(self.components):
            if c is not None:
                out[..., k] = c(x)
        return out

    def jacobian(self, x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape[:-1] + (3, 3))
        for k, c in enumerate(self.components):
            if c is not None:
                out[..., :, k] = c.gradient(x)
        return out

    def support_box(self, tail_sigmas: float = 8.5):
        boxes = [c.support_box(tail_sigmas) for c in self.components if c is not None]
        lo = np.min([b[:, 0] for b in boxes], axis=0)
        hi = np.max([b[:, 1] for b in boxes], axis=0)
        return np.stack([lo, hi], axis=-1)


class GradientField3:
    """Pure-gauge boundary field A = grad(chi) for a scalar bump chi on R^3."""

    def __init__(self, chi: GaussianBump):
        if chi.dim != 3:
            raise ValueError("chi must be 3-dimensional")
        self.chi = chi

    def value(self, x):
        return self.chi.gradient(x)

    def jacobian(self, x):
        return self.chi.hessian(x)

    def support_box(self, tail_sigmas: float = 8.5):
        return self.chi.support_box(tail_sigmas)


def _zero4(x):
    x = np.asarray(x, float)
    return np.zeros(x.shape[:-1] + (4,))


@dataclass(frozen=True)
class FieldConfig:
    """Samplers of the perturbation fields on the half-space.

    A, b: R^4 -> R^4 (gauge potential / axial vector, vector valued);
    delta_theta: R^3 -> R (boundary angle perturbation);
    delta_phi: R^4 -> R (chiral parameter).
    box: (4, 2) array of per-axis (lo, hi) bounding the union of supports.
    """

    A: object = None
    b: object = None
    delta_theta: object = None
    delta_phi: object = None
    box: np.ndarray = field(default_factory=lambda: np.array([[-1.0, 1.0]] * 4))

    def A_at(self, x):
        return self.A(x) if self.A is not None else _zero4(x)

    def b_at(self, x):
        return self.b(x) if self.b is not None else _zero4(x)

    def delta_theta_at(self, xpar):
        if self.delta_theta is None:
            return np.zeros(np.asarray(xpar, float).shape[:-1])
        return self.delta_theta(xpar)

    def delta_phi_at(self, x):
        if self.delta_phi is None:
            return np.zeros(np.asarray(x, float).shape[:-1])
        return self.delta_phi(x)
