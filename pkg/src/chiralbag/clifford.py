"""Euclidean 4D Clifford algebra: frozen gamma representation, chiral bag
boundary projectors, spinor traces, and a real-coefficient Clifford engine.

Frozen conventions
------------------
* Metric delta^{mu nu}, all four gamma^mu Hermitian and unitary,
  gamma^mu gamma^nu + gamma^nu gamma^mu = 2 delta^{mu nu}.
* Chiral (Weyl-type) block representation:
      gamma^j = [[0, -i s_j], [i s_j, 0]]   (j = 1, 2, 3, Pauli s_j)
      gamma^4 = [[0,  I], [ I, 0]]
  which gives gamma5 = gamma^1 gamma^2 gamma^3 gamma^4 = diag(1, 1, -1, -1).
* Orientation eps^{1234} = +1, hence trace(gamma5 g1 g2 g3 g4) = +4.
* The model half-space is R^3 x R_+ with inward unit normal along +x^4;
  axes are 0-based in code, so the normal axis is index 3.
* Matrix exponentials of gamma5 are closed form:
  exp(gamma5 * th) = cosh(th) Id + sinh(th) gamma5.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GammaRep",
    "BoundaryFrame",
    "build_gamma_rep",
    "exp_gamma5",
    "boundary_projector",
    "hermitian_projectors",
    "spinor_trace",
    "real_basis_matrices",
    "clifford_coefficients",
    "CliffordElement",
]

_I2 = np.eye(2)
_S = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]
_Z2 = np.zeros((2, 2), dtype=complex)


def _blk(a, b, c, d):
    return np.block([[a, b], [c, d]])


def _frozen(m):
    m = np.ascontiguousarray(m)
    m.flags.writeable = False
    return m


@dataclass(frozen=True)
class GammaRep:
    """Frozen gamma representation: gamma[mu] (4x4, Hermitian), gamma5, id."""

    gamma: np.ndarray       # shape (4, 4, 4)
    gamma5: np.ndarray      # shape (4, 4)
    id: np.ndarray          # shape (4, 4)


@dataclass(frozen=True)
class BoundaryFrame:
    """Inward-normal data of one boundary component.

    normal_index is the 0-based coordinate axis of the inward normal
    (3 for the model half-space).  normal_sign = -1 selects the reversed
    inward normal (used at the far end of an interval fiber, where inward
    means -n).  epsilon is the per-component sign in the bag projector.
    """

    normal_index: int = 3
    epsilon: int = 1
    normal_sign: int = 1

    def __post_init__(self):
        if self.epsilon not in (+1, -1):
            raise ValueError(f"epsilon must be +-1, got {self.epsilon}")
        if self.normal_sign not in (+1, -1):
            raise ValueError(f"normal_sign must be +-1, got {self.normal_sign}")
        if self.normal_index not in (0, 1, 2, 3):
            raise ValueError(f"normal_index must be in 0..3, got {self.normal_index}")


def build_gamma_rep() -> GammaRep:
    """Return the frozen representation described in the module docstring."""
    gammas = [
        _blk(_Z2, -1j * _S[0], 1j * _S[0], _Z2),
        _blk(_Z2, -1j * _S[1], 1j * _S[1], _Z2),
        _blk(_Z2, -1j * _S[2], 1j * _S[2], _Z2),
        _blk(_Z2, _I2, _I2, _Z2),
    ]
    g5 = gammas[0] @ gammas[1] @ gammas[2] @ gammas[3]
    return GammaRep(
        gamma=_frozen(np.stack(gammas)),
        gamma5=_frozen(g5),
        id=_frozen(np.eye(4, dtype=complex)),
    )


REP = build_gamma_rep()
GAMMA = REP.gamma
GAMMA5 = REP.gamma5
ID4 = REP.id


def exp_gamma5(theta: float) -> np.ndarray:
    """exp(gamma5*theta) = cosh(theta) Id + sinh(theta) gamma5, exactly."""
    return np.cosh(theta) * ID4 + np.sinh(theta) * GAMMA5


def _gamma_n(frame: BoundaryFrame) -> np.ndarray:
    return frame.normal_sign * GAMMA[frame.normal_index]


def boundary_projector(theta: float, frame: BoundaryFrame = BoundaryFrame()) -> np.ndarray:
    """Bag projector Pi_-(theta) = (1 - i eps gamma5 e^{gamma5 theta} gamma^n)/2.

    A spinor obeys the bag condition when Pi_- psi = 0 on the boundary.  The
    companion projector is ``Id - boundary_projector(...)``.
    """
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    gn = _gamma_n(frame)
    return 0.5 * (ID4 - 1j * frame.epsilon * (GAMMA5 @ exp_gamma5(theta) @ gn))


def boundary_projector_plus(theta: float, frame: BoundaryFrame = BoundaryFrame()) -> np.ndarray:
    return ID4 - boundary_projector(theta, frame)


def hermitian_projectors(theta: float, frame: BoundaryFrame = BoundaryFrame()):
    """Hermitian idempotents (P_plus, P_minus) built from the bag projectors:

        P_plus  = Pi_plus Pi_plus^dag / cosh^2(theta)
        P_minus = Pi_minus^dag Pi_minus / cosh^2(theta)

    P_plus projects orthogonally onto the admissible boundary subspace
    (range of Pi_plus); tr(gamma5 P_plus) = 2 tanh(theta) for eps = +1.
    """
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    Pm = boundary_projector(theta, frame)
    Pp = ID4 - Pm
    c2 = np.cosh(theta) ** 2
    return Pp @ Pp.conj().T / c2, Pm.conj().T @ Pm / c2


def spinor_trace(factors) -> complex:
    """Trace of the ordered product of 4x4 spinor matrices."""
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    prod = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        prod = prod @ f
    return complex(np.trace(prod))


# ---------------------------------------------------------------------------
# Real Clifford coefficient engine.
#
# With the redefined generators gt^mu = i gamma^mu (gt^mu gt^nu + gt^nu gt^mu
# = -2 delta^{mu nu}) every spinor structure of the half-space problem has
# *real* coefficients over the 16 ordered products
#       G_I = prod_{mu in I} gt^mu,   I subset of {0,1,2,3} (ascending),
# and the structure constants G_I G_J = sgn * G_{I xor J} are integers.
# Assembling perturbation integrands in this coefficient space with real
# floating arithmetic realises, literally, the statement that no imaginary
# unit can enter the expansion; the matrix representation is kept only for
# cross-validation.
# ---------------------------------------------------------------------------

_NBASIS = 16


def _build_basis():
    gt = [1j * GAMMA[mu] for mu in range(4)]
    mats = []
    for idx in range(_NBASIS):
        m = np.eye(4, dtype=complex)
        for mu in range(4):
            if idx >> mu & 1:
                m = m @ gt[mu]
        mats.append(m)
    return np.stack(mats)


_BASIS = _frozen(_build_basis())


def _build_tables():
    idx_tab = np.zeros((_NBASIS, _NBASIS), dtype=np.int64)
    sgn_tab = np.zeros((_NBASIS, _NBASIS))
    for i in range(_NBASIS):
        for j in range(_NBASIS):
            prod = _BASIS[i] @ _BASIS[j]
            k = i ^ j
            coef = np.trace(_BASIS[k].conj().T @ prod) / 4.0
            s = coef.real
            assert abs(coef.imag) < 1e-12 and abs(abs(s) - 1.0) < 1e-12
            idx_tab[i, j] = k
            sgn_tab[i, j] = round(s)
    return idx_tab, sgn_tab


_MUL_IDX, _MUL_SGN = _build_tables()

# index of gamma5 = gt^0 gt^1 gt^2 gt^3 (= gamma^1..gamma^4 since i^4 = 1)
IDX_ID = 0
IDX_G5 = 0b1111


def real_basis_matrices() -> np.ndarray:
    """The 16 basis matrices G_I in the frozen representation, shape (16,4,4)."""
    return _BASIS


def clifford_coefficients(m: np.ndarray) -> np.ndarray:
    """Expand a (...,4,4) matrix over the G_I basis; returns (...,16) complex.

    The basis is Hilbert-Schmidt orthogonal with tr(G_I^dag G_I) = 4.
    """
    m = np.asarray(m, dtype=complex)
    return np.einsum("kba,...ab->...k", _BASIS.conj(), m) / 4.0


class CliffordElement:
    """Element of the Clifford algebra as a coefficient vector over G_I.

    Coefficients may carry leading broadcast dimensions (shape (..., 16)).
    Real-dtype coefficients stay real under products: the structure
    constants are integers.
    """

    __slots__ = ("coeff",)

    def __init__(self, coeff):
        coeff = np.asarray(coeff)
        if coeff.shape[-1] != _NBASIS:
            raise ValueError("coefficient vector must have trailing length 16")
        self.coeff = coeff

    @classmethod
    def zero(cls, shape=(), dtype=float):
        return cls(np.zeros(tuple(shape) + (_NBASIS,), dtype=dtype))

    @classmethod
    def scalar(cls, value):
        c = np.zeros(np.shape(value) + (_NBASIS,), dtype=np.result_type(value, float))
        c[..., IDX_ID] = value
        return cls(c)

    @classmethod
    def generator(cls, mu: int):
        """gt^mu = i gamma^mu."""
        c = np.zeros(_NBASIS)
        c[1 << mu] = 1.0
        return cls(c)

    @classmethod
    def gamma5(cls):
        c = np.zeros(_NBASIS)
        c[IDX_G5] = 1.0
        return cls(c)

    @classmethod
    def from_matrix(cls, m):
        return cls(clifford_coefficients(m))

    def __add__(self, other):
        return CliffordElement(self.coeff + other.coeff)

    def __sub__(self, other):
        return CliffordElement(self.coeff - other.coeff)

    def __neg__(self):
        return CliffordElement(-self.coeff)

    def scale(self, s):
        return CliffordElement(self.coeff * np.asarray(s)[..., None])

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        a, b = self.coeff, other.coeff
        out = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (_NBASIS,),
                       dtype=np.result_type(a, b))
        for i in range(_NBASIS):
            ai = a[..., i]
            for j in range(_NBASIS):
                s = _MUL_SGN[i, j]
                out[..., _MUL_IDX[i, j]] += s * ai * b[..., j]
        return CliffordElement(out)

    __rmul__ = scale

    def trace(self):
        """Spinor trace: 4 * coefficient of the identity."""
        return 4.0 * self.coeff[..., IDX_ID]

    def to_matrix(self):
        return np.einsum("...k,kab->...ab", self.coeff, _BASIS)

    def max_imag(self):
        return float(np.abs(np.imag(self.coeff)).max()) if np.iscomplexobj(self.coeff) else 0.0
