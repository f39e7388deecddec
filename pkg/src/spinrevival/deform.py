"""Isospectral deformation of mirror-symmetric chains.

Conjugating a mirror-symmetric chain by the involution ``V(theta)`` keeps
the spectrum, breaks mirror symmetry and turns perfect transfer into
two-site revival with zero relative phase. Only the central couplings and
fields change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import JacobiMatrix, _frozen, is_persymmetric
from .exceptions import DesignInconsistency, DisconnectedChain, RequiresPersymmetry
from .inverse import gamma_from

CONJUGATION_ATOL = 1e-11


@dataclass(frozen=True, eq=False)
class InvolutionMatrix:
    """A named orthogonal involution on ``size`` sites."""

    kind: str
    size: int
    angle: float | None
    matrix: np.ndarray

    def __post_init__(self):
        if self.kind not in {"R", "V", "Q", "H"}:
            raise ValueError(f"unknown involution kind {self.kind!r}")
        object.__setattr__(self, "matrix", _frozen(self.matrix))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def _paired(n: int, diag: float, anti: float, centre: float) -> np.ndarray:
    M = np.zeros((n + 1, n + 1))
    for l in range((n + 1) // 2):
        M[l, l] = diag
        M[l, n - l] = anti
        M[n - l, l] = anti
        M[n - l, n - l] = -diag
    if n % 2 == 0:
        M[n // 2, n // 2] = centre
    return M


def v_matrix(n: int, theta: float) -> InvolutionMatrix:
    """``V(theta)``: pairs sites ``l`` and ``N - l`` through a reflection block.

    ``V(0)`` is the mirror ``R``.
    """
    M = _paired(n, math.sin(theta), math.cos(theta), 1.0)
    return InvolutionMatrix("V", n + 1, float(theta), M)


def q_matrix(n: int, theta: float) -> InvolutionMatrix:
    """``Q = V R V``, which equals ``V`` at twice the angle."""
    M = v_matrix(n, 2 * theta).matrix
    return InvolutionMatrix("Q", n + 1, float(theta), M)


def hadamard_matrix(n: int) -> InvolutionMatrix:
    """Symmetric Hadamard-like involution mixing ``l`` and ``N - l`` equally."""
    M = _paired(n, 1 / math.sqrt(2), 1 / math.sqrt(2), 1.0)
    return InvolutionMatrix("H", n + 1, None, M)


def perturbed_positions(n: int) -> tuple[list[int], list[int]]:
    """Indices touched by the deformation.

    Returns ``(coupling_indices, field_indices)`` where coupling index ``k``
    refers to ``J_k`` (1-based, as in ``J_1..J_N``) and field index ``k`` to
    ``B_k``.
    """
    if n == 0:
        return [], []
    if n % 2:
        return [(n + 1) // 2], [(n - 1) // 2, (n + 1) // 2]
    return [n // 2, n // 2 + 1], []


def _closed_form(chain: JacobiMatrix, theta: float) -> tuple[np.ndarray, np.ndarray]:
    n = chain.n
    J = chain.couplings.copy()
    B = chain.fields.copy()
    if n == 0:
        return J, B
    if n % 2:
        m = (n + 1) // 2
        Jm = chain.couplings[m - 1]
        Bm = chain.fields[(n - 1) // 2]
        J[m - 1] = Jm * math.cos(2 * theta)
        B[(n - 1) // 2] = Bm + Jm * math.sin(2 * theta)
        B[(n + 1) // 2] = Bm - Jm * math.sin(2 * theta)
    else:
        m = n // 2
        Jm = chain.couplings[m - 1]
        J[m - 1] = Jm * (math.cos(theta) + math.sin(theta))
        J[m] = Jm * (math.cos(theta) - math.sin(theta))
    return J, B


def deform_chain(chain: JacobiMatrix, theta: float, allow_disconnected: bool = False) -> JacobiMatrix:
    """Return ``V(theta) J V(theta)`` for a mirror-symmetric chain.

    The dense conjugation and the closed-form central update are both
    computed and must agree; the closed form is returned.

    Parameters
    ----------
    chain : JacobiMatrix
        Must be persymmetric.
    theta : float
        Deformation angle, ``|theta| <= pi/4``.
    allow_disconnected : bool
        At ``|theta| = pi/4`` a central coupling vanishes. By default this
        raises :class:`DisconnectedChain`; with this flag a relaxed chain
        with one zero coupling is returned instead.
    """
    if abs(theta) > math.pi / 4 + 1e-15:
        raise ValueError(f"|theta| = {abs(theta)} exceeds pi/4")
    if not is_persymmetric(chain, 1e-10 * max(chain.scale, 1e-300)):
        raise RequiresPersymmetry("deformation needs a mirror-symmetric chain")
    V = v_matrix(chain.n, theta).matrix
    dense = V @ chain.to_dense() @ V
    J, B = _closed_form(chain, theta)
    expected = np.diag(B) + np.diag(J, 1) + np.diag(J, -1)
    err = np.abs(dense - expected).max()
    if err > CONJUGATION_ATOL * max(chain.scale, 1.0):
        raise DesignInconsistency(f"closed-form deformation disagrees with V J V by {err:.2e}")
    # clean rounding at the quarter turn, where cos(theta) - sin(theta) ~ 1e-17
    J[np.abs(J) < 1e-14 * max(chain.scale, 1e-300)] = 0.0
    if np.any(J <= 0):
        if not allow_disconnected:
            raise DisconnectedChain(f"theta={theta} makes a central coupling vanish")
        return JacobiMatrix(np.abs(J), B, allow_zero_coupling=True)
    return JacobiMatrix(J, B)


@dataclass(frozen=True, eq=False)
class PerturbedPolyParams:
    """Constants ``zeta_l`` in ``P~_{N-l} = P_{N-l} + zeta_l P_l``."""

    zeta: np.ndarray
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "zeta", _frozen(self.zeta))


def perturbed_poly_constants(chain: JacobiMatrix, theta: float) -> PerturbedPolyParams:
    """Constants linking the monic polynomials of ``V J V`` to those of ``J``.

    ``zeta_0 = J_1...J_N (gamma cos 2theta - 1)`` and
    ``zeta_l = zeta_0 / (J_{N+1-l}^2 ... J_N^2)`` for
    ``l = 0..floor((N-1)/2)``, with ``gamma`` the zero-phase revival
    asymmetry for ``theta``.
    """
    if not is_persymmetric(chain, 1e-10 * max(chain.scale, 1e-300)):
        raise RequiresPersymmetry("perturbed polynomials need a mirror-symmetric chain")
    g = gamma_from(theta, 0.0).gamma
    n = chain.n
    J = chain.couplings
    zeta0 = float(np.prod(J)) * (g * math.cos(2 * theta) - 1.0)
    count = (n - 1) // 2 + 1 if n >= 1 else 0
    zeta = np.empty(count)
    for l in range(count):
        zeta[l] = zeta0 / np.prod(J[n - l:] ** 2)
    return PerturbedPolyParams(zeta, g)


def deformed_chi_on_spectrum(chi: np.ndarray, theta: float) -> np.ndarray:
    """Orthonormal polynomials of ``V J V`` on the shared spectrum.

    ``chi`` is the ``(N+1, N+1)`` table ``chi_l(lambda_s)`` of the parent
    mirror-symmetric chain. Low degrees are unchanged; high degrees are
    rescaled by ``gamma`` or ``1/gamma`` depending on the parity of ``s``,
    and for even ``N`` the middle degree picks up ``1/(sin + cos)`` on even
    points.
    """
    n = chi.shape[0] - 1
    g = gamma_from(theta, 0.0).gamma
    out = np.array(chi, dtype=float, copy=True)
    even = np.arange(n + 1) % 2 == 0
    if n % 2:
        hi = slice((n + 1) // 2, n + 1)
        out[hi] *= np.where(even, 1 / g, g)
    else:
        mid = n // 2
        out[mid] = np.where(even, chi[mid] / (math.sin(theta) + math.cos(theta)), chi[mid])
        out[mid + 1:] *= np.where(even, g, 1 / g)
    return out
