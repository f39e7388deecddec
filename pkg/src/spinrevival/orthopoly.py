"""Orthogonal polynomials attached to a Jacobi matrix.

``chi_l`` are the orthonormal polynomials produced by the three-term
recurrence with ``chi_0 = 1``; ``P_l = J_1...J_l * chi_l`` are monic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .chain import JacobiMatrix, SpectralData, _frozen, eigendecompose
from .exceptions import SpectrumMismatch, InvalidSpectrumOrder

#: forward recurrence growth becomes a concern past this many sites
RECURRENCE_WARN_N = 64


@dataclass(frozen=True, eq=False)
class PolynomialTable:
    """Values of the orthonormal polynomials on a set of points.

    Attributes
    ----------
    chi : ndarray, shape (N + 1, n_points)
        ``chi[l, s] = chi_l(lambda_s)``.
    monic_norms : ndarray, shape (N + 1,)
        ``h_l`` with ``sqrt(h_l) = J_1 ... J_l``.
    char_deriv : ndarray, shape (n_points,)
        ``P'_{N+1}(lambda_s)``, product of gaps to the other points.
    points : ndarray
    """

    chi: np.ndarray
    monic_norms: np.ndarray
    char_deriv: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        for name in ("chi", "monic_norms", "char_deriv", "points"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def monic(self) -> np.ndarray:
        """``P_l(lambda_s)``, same layout as ``chi``."""
        return np.sqrt(self.monic_norms)[:, None] * self.chi


def eval_chi(chain: JacobiMatrix, lam) -> np.ndarray:
    """Evaluate ``chi_0..chi_N`` at ``lam`` (scalar or 1-d array).

    Returns an array of shape ``(N + 1,)`` for scalar input, otherwise
    ``(N + 1, len(lam))``.
    """
    lam_arr = np.asarray(lam, dtype=float)
    x = np.atleast_1d(lam_arr)
    N = chain.n
    if N > RECURRENCE_WARN_N:
        warnings.warn(f"forward recurrence with N={N} may overflow", RuntimeWarning, stacklevel=2)
    J, B = chain.couplings, chain.fields
    chi = np.empty((N + 1, x.size))
    chi[0] = 1.0
    prev = np.zeros_like(x)
    for l in range(N):
        nxt = ((x - B[l]) * chi[l] - (J[l - 1] * prev if l else 0.0)) / J[l]
        prev = chi[l]
        chi[l + 1] = nxt
    return chi[:, 0] if lam_arr.ndim == 0 else chi


def eval_monic(chain: JacobiMatrix, lam, degree: int | None = None) -> np.ndarray:
    """Monic polynomials ``P_0..P_degree`` at ``lam``; ``degree`` may be ``N + 1``.

    ``P_{N+1}`` is the characteristic polynomial. Rows index the degree.
    """
    lam_arr = np.asarray(lam, dtype=float)
    x = np.atleast_1d(lam_arr)
    N = chain.n
    degree = N + 1 if degree is None else degree
    J2 = chain.couplings**2
    B = chain.fields
    P = np.empty((degree + 1, x.size))
    P[0] = 1.0
    if degree >= 1:
        P[1] = x - B[0]
    for l in range(1, degree):
        P[l + 1] = (x - B[l]) * P[l] - J2[l - 1] * P[l - 1]
    return P[:, 0] if lam_arr.ndim == 0 else P


def char_derivative(points) -> np.ndarray:
    """``P'_{N+1}(lambda_s) = prod_{r != s} (lambda_s - lambda_r)``.

    Accumulated as sign and log-magnitude so large spreads do not overflow.
    """
    x = np.asarray(points, dtype=float)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    sign = np.prod(np.sign(diff), axis=1)
    logmag = np.log(np.abs(diff)).sum(axis=1)
    return sign * np.exp(logmag)


def log_sqrt_norms(chain: JacobiMatrix) -> np.ndarray:
    """``log(J_1 ... J_l)`` for ``l = 0..N``."""
    return np.concatenate([[0.0], np.cumsum(np.log(chain.couplings))])


def monic_norms(chain: JacobiMatrix) -> np.ndarray:
    if chain.n > 32:
        return np.exp(2.0 * log_sqrt_norms(chain))
    return np.concatenate([[1.0], np.cumprod(chain.couplings**2)])


def polynomial_table(chain: JacobiMatrix, points=None) -> PolynomialTable:
    """Tabulate ``chi_l`` on ``points`` (the chain's spectrum by default)."""
    if points is None:
        points = eigendecompose(chain).eigenvalues
    points = np.asarray(points, dtype=float)
    return PolynomialTable(
        chi=eval_chi(chain, points),
        monic_norms=monic_norms(chain),
        char_deriv=char_derivative(points),
        points=points,
    )


def weights_from_char(chain: JacobiMatrix, spectrum, rtol: float = 1e-9) -> SpectralData:
    """Spectral weights from ``w_s = h_N / (P_N(lambda_s) P'_{N+1}(lambda_s))``.

    The spectrum is checked against a direct eigendecomposition first.
    Accuracy degrades like ``eps / W[s, N]**2``: a mode that barely reaches
    the far end puts a zero of ``P_N`` next to ``lambda_s``.
    """
    x = np.asarray(spectrum, dtype=float).ravel()
    lam = eigendecompose(chain).eigenvalues
    scale = max(np.abs(lam).max(), lam[-1] - lam[0], 1e-300)
    if x.size != lam.size or np.abs(np.sort(x) - lam).max() > rtol * scale:
        raise SpectrumMismatch("supplied spectrum is not the eigenvalue set of the chain")
    if np.any(np.diff(x) <= 0):
        raise InvalidSpectrumOrder("spectrum must be strictly increasing")
    if chain.n == 0:
        return SpectralData(x, [1.0])
    chi_N = eval_chi(chain, x)[-1]
    # h_N / P_N = sqrt(h_N) / chi_N
    w = np.exp(log_sqrt_norms(chain)[-1]) / (chi_N * char_derivative(x))
    if np.any(w <= 0):
        raise InvalidSpectrumOrder("characteristic-polynomial weights are not positive")
    return SpectralData.normalized(x, w)


def orthonormality_defect(table: PolynomialTable, measure: SpectralData) -> float:
    """``max_{m,n} |sum_s w_s chi_m chi_n - delta_mn|``."""
    chi = table.chi
    if chi.shape[1] != measure.weights.size:
        raise ValueError("table and measure have different numbers of points")
    gram = (chi * measure.weights) @ chi.T
    return float(np.abs(gram - np.eye(chi.shape[0])).max())
