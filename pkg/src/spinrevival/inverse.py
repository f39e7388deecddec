"""Inverse spectral problem: from spectrum and weights back to the chain.

Weights are prescribed by the transfer property we want (perfect transfer or
two-site revival); the chain then follows uniquely from the discrete
Stieltjes procedure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import JacobiMatrix, SpectralData
from .exceptions import DegenerateRevival, InvalidSpectrumOrder, ReconstructionBreakdown
from .orthopoly import char_derivative

POSITIVITY_FLOOR = 1e-13


@dataclass(frozen=True)
class GammaParam:
    """Asymmetry of the revival weights, tied to the revival angles.

    ``gamma - 1/gamma = -2 tan(2 theta) cos(psi)`` with ``gamma > 0``.
    """

    gamma: float
    theta: float
    psi: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        lhs = self.gamma - 1.0 / self.gamma
        rhs = -2.0 * math.tan(2 * self.theta) * math.cos(self.psi)
        if abs(lhs - rhs) > 1e-12 * max(1.0, abs(rhs)):
            raise ValueError(f"gamma={self.gamma} inconsistent with theta={self.theta}, psi={self.psi}")


def gamma_from(theta: float, psi: float) -> GammaParam:
    """Positive root of ``gamma - 1/gamma = -2 tan(2 theta) cos(psi)``."""
    if abs(theta) >= math.pi / 4:
        raise DegenerateRevival(f"|theta| = {abs(theta)} reaches pi/4; the far-end amplitude vanishes")
    t = math.tan(2 * theta) * math.cos(psi)
    # -t + sqrt(t^2 + 1) without cancellation for large positive t
    g = 1.0 / (t + math.hypot(t, 1.0)) if t > 0 else -t + math.hypot(t, 1.0)
    return GammaParam(g, theta, psi)


def _check_spectrum(spectrum) -> np.ndarray:
    x = np.asarray(spectrum, dtype=float).ravel()
    if x.size == 0:
        raise InvalidSpectrumOrder("empty spectrum")
    if np.any(np.diff(x) <= 0):
        raise InvalidSpectrumOrder("spectrum must be strictly increasing")
    return x


def pst_weights(spectrum) -> SpectralData:
    """Mirror-symmetric weights ``w_s ~ (-1)^(N+s) / P'_{N+1}(lambda_s)``."""
    x = _check_spectrum(spectrum)
    N = x.size - 1
    w = (-1.0) ** (N + np.arange(N + 1)) / char_derivative(x)
    if np.any(w <= 0):
        raise InvalidSpectrumOrder("unnormalized weight is not positive")
    return SpectralData.normalized(x, w)


def fr_weights(spectrum, gamma, n_parity: int | None = None) -> SpectralData:
    """Two-site revival weights.

    Even- and odd-indexed points get the mirror-symmetric weight multiplied by
    ``gamma`` or ``1/gamma``: for odd ``N`` the even points carry ``gamma``,
    for even ``N`` they carry ``1/gamma``.

    Parameters
    ----------
    spectrum : array_like
        Strictly increasing points.
    gamma : float or GammaParam
    n_parity : {0, 1}, optional
        Parity of ``N``; defaults to ``(len(spectrum) - 1) % 2``.
    """
    x = _check_spectrum(spectrum)
    g = gamma.gamma if isinstance(gamma, GammaParam) else float(gamma)
    if not g > 0:
        raise InvalidSpectrumOrder("gamma must be positive")
    N = x.size - 1
    parity = N % 2 if n_parity is None else int(n_parity) % 2
    base = (-1.0) ** (N + np.arange(N + 1)) / char_derivative(x)
    even = np.arange(N + 1) % 2 == 0
    factor = np.where(even, g, 1.0 / g) if parity == 1 else np.where(even, 1.0 / g, g)
    w = base * factor
    if np.any(w <= 0):
        raise InvalidSpectrumOrder("unnormalized weight is not positive")
    return SpectralData.normalized(x, w)


def reconstruct_jacobi(measure: SpectralData, positivity_floor: float = POSITIVITY_FLOOR) -> JacobiMatrix:
    """Rebuild the unique chain whose site-0 spectral measure is ``measure``.

    Discrete Stieltjes (Lanczos on ``diag(points)`` started from
    ``sqrt(weights)``) with two passes of full reorthogonalization per step.

    Raises
    ------
    ReconstructionBreakdown
        If a squared coupling drops to ``positivity_floor * scale**2`` or below.
    """
    x = measure.points
    n = x.size
    scale = max(np.abs(x).max(), x[-1] - x[0])
    Q = np.zeros((n, n))
    Q[:, 0] = np.sqrt(measure.weights)
    B = np.zeros(n)
    J = np.zeros(n - 1)
    for l in range(n):
        v = x * Q[:, l]
        B[l] = Q[:, l] @ v
        if l == n - 1:
            break
        v -= B[l] * Q[:, l]
        if l:
            v -= J[l - 1] * Q[:, l - 1]
        basis = Q[:, : l + 1]
        for _ in range(2):
            v -= basis @ (basis.T @ v)
        j2 = v @ v
        if j2 <= positivity_floor * scale**2:
            raise ReconstructionBreakdown(f"squared coupling J_{l + 1}^2 = {j2:.3e} below floor")
        J[l] = math.sqrt(j2)
        Q[:, l + 1] = v / J[l]
    return JacobiMatrix(J, B)
