"""Chain and spectrum value types, and the tridiagonal eigendecomposition.

A chain with ``N + 1`` sites is stored through its couplings ``J_1..J_N``
(off-diagonal) and fields ``B_0..B_N`` (diagonal). In the one-excitation
sector the Hamiltonian is exactly this symmetric tridiagonal matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .exceptions import InvalidChain, NonSimpleSpectrum, ZeroBoundaryWeight, InvalidSpectrumOrder

#: relative gap below which two eigenvalues count as degenerate
GAP_TOL = 1e-9
#: absolute floor on |W_{s0}|; below it site 0 is decoupled from mode s
BOUNDARY_FLOOR = 1e-13
#: mirror asymmetry, in ulps of the chain scale, still treated as exact symmetry
MIRROR_ULPS = 8


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class JacobiMatrix:
    """One-excitation Hamiltonian of an XX chain.

    Parameters
    ----------
    couplings : array_like, shape (N,)
        Nearest-neighbour couplings ``J_1..J_N``, strictly positive.
    fields : array_like, shape (N + 1,)
        Local fields ``B_0..B_N``.
    allow_zero_coupling : bool
        Relaxed mode: permit exactly one vanishing coupling. Used only for
        the split chains produced by a quarter-turn deformation.
    """

    couplings: np.ndarray
    fields: np.ndarray
    allow_zero_coupling: bool = field(default=False)

    def __post_init__(self):
        J = _frozen(np.atleast_1d(np.asarray(self.couplings, dtype=float)).ravel())
        B = _frozen(np.atleast_1d(np.asarray(self.fields, dtype=float)).ravel())
        if B.size == 0:
            raise InvalidChain("a chain needs at least one site")
        if J.size != B.size - 1:
            raise InvalidChain(
                f"expected {B.size - 1} couplings for {B.size} sites, got {J.size}")
        if not (np.all(np.isfinite(J)) and np.all(np.isfinite(B))):
            raise InvalidChain("couplings and fields must be finite")
        if self.allow_zero_coupling:
            if np.any(J < 0) or np.count_nonzero(J == 0) > 1:
                raise InvalidChain("relaxed chain allows one zero coupling, no negative ones")
        elif np.any(J <= 0):
            raise InvalidChain("all couplings must be strictly positive")
        object.__setattr__(self, "couplings", J)
        object.__setattr__(self, "fields", B)

    @property
    def n(self) -> int:
        """Index of the last site, ``N``."""
        return self.fields.size - 1

    @property
    def n_sites(self) -> int:
        return self.fields.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.fields) + np.diag(self.couplings, 1) + np.diag(self.couplings, -1)

    @property
    def scale(self) -> float:
        """Max-abs entry, used to make tolerances relative."""
        return float(max(np.abs(self.fields).max(), np.abs(self.couplings).max(initial=0.0)))

    def to_dict(self) -> dict:
        return {"n": self.n, "couplings": self.couplings.tolist(), "fields": self.fields.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "JacobiMatrix":
        chain = cls(d["couplings"], d["fields"])
        if "n" in d and int(d["n"]) != chain.n:
            raise InvalidChain(f"declared n={d['n']} but arrays describe n={chain.n}")
        return chain

    @classmethod
    def from_dense(cls, M, atol: float = 1e-12) -> "JacobiMatrix":
        """Read a symmetric tridiagonal matrix, checking it really is one."""
        M = np.asarray(M, dtype=float)
        off = M - np.triu(np.tril(M, 1), -1)
        if off.size and np.abs(off).max() > atol * max(1.0, np.abs(M).max()):
            raise InvalidChain("matrix is not tridiagonal")
        if np.abs(M - M.T).max(initial=0.0) > atol * max(1.0, np.abs(M).max()):
            raise InvalidChain("matrix is not symmetric")
        return cls(np.diag(M, 1), np.diag(M))

    def allclose(self, other: "JacobiMatrix", rtol: float = 1e-8) -> bool:
        if self.n != other.n:
            return False
        tol = rtol * max(self.scale, other.scale, 1e-300)
        return (np.abs(self.couplings - other.couplings).max(initial=0.0) <= tol
                and np.abs(self.fields - other.fields).max() <= tol)

    def __repr__(self):
        return f"JacobiMatrix(n={self.n}, couplings={self.couplings!r}, fields={self.fields!r})"


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues and the transition matrix ``W``.

    Row ``s`` of ``transition`` is the eigenvector for ``eigenvalues[s]``
    expressed in the site basis, with the sign fixed by ``W[s, 0] >= 0``.
    """

    eigenvalues: np.ndarray
    transition: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _frozen(self.eigenvalues))
        object.__setattr__(self, "transition", _frozen(self.transition))

    @property
    def n(self) -> int:
        return self.eigenvalues.size - 1

    def reconstruct(self) -> np.ndarray:
        W = self.transition
        return W.T @ (self.eigenvalues[:, None] * W)


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Discrete probability measure: points ``lambda_s`` with weights ``w_s``."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        x = _frozen(np.atleast_1d(self.points).ravel())
        w = _frozen(np.atleast_1d(self.weights).ravel())
        if x.size == 0 or x.size != w.size:
            raise InvalidSpectrumOrder("points and weights must be non-empty and of equal length")
        if np.any(np.diff(x) <= 0):
            raise InvalidSpectrumOrder("spectral points must be strictly increasing")
        if np.any(w <= 0):
            raise InvalidSpectrumOrder("weights must be strictly positive")
        if abs(w.sum() - 1.0) > 1e-10:
            raise InvalidSpectrumOrder(f"weights sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "points", x)
        object.__setattr__(self, "weights", w)

    @classmethod
    def normalized(cls, points, weights) -> "SpectralData":
        w = np.asarray(weights, dtype=float)
        return cls(points, w / w.sum())

    @property
    def n(self) -> int:
        return self.points.size - 1

    def to_dict(self) -> dict:
        return {"points": self.points.tolist(), "weights": self.weights.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "SpectralData":
        return cls(d["points"], d["weights"])


def _eigh(d, e):
    if d.size == 1:
        return d.copy(), np.ones((1, 1))
    return eigh_tridiagonal(d, e)


def _mirror_eigh(chain: JacobiMatrix):
    """Diagonalize a mirror-symmetric chain through its even and odd blocks.

    Each eigenvector then has exact parity, so near-degenerate symmetric and
    antisymmetric partners cannot mix the way they do in a full solve.
    """
    n, J, B = chain.n, chain.couplings, chain.fields
    m = (n + 1) // 2
    r2 = np.sqrt(2.0)
    if n % 2:
        c = J[m - 1]
        lam_s, U_s = _eigh(np.r_[B[: m - 1], B[m - 1] + c], J[: m - 1])
        lam_a, U_a = _eigh(np.r_[B[: m - 1], B[m - 1] - c], J[: m - 1])
        V_s = np.vstack([U_s, U_s[::-1]]) / r2
        V_a = np.vstack([U_a, -U_a[::-1]]) / r2
    else:
        lam_s, U_s = _eigh(B[: m + 1], np.r_[J[: m - 1], r2 * J[m - 1]])
        lam_a, U_a = _eigh(B[:m], J[: m - 1])
        V_s = np.vstack([U_s[:m] / r2, U_s[m:], U_s[:m][::-1] / r2])
        V_a = np.vstack([U_a / r2, np.zeros((1, m)), -U_a[::-1] / r2])
    lam = np.r_[lam_s, lam_a]
    V = np.hstack([V_s, V_a])
    order = np.argsort(lam, kind="stable")
    return lam[order], V[:, order]


def eigendecompose(chain: JacobiMatrix, gap_tol: float = GAP_TOL) -> EigenSystem:
    """Diagonalize the chain.

    Mirror-symmetric chains (to a few ulps) are split into even and odd
    blocks first; this keeps ``W`` accurate when levels of opposite parity
    nearly coincide.

    Raises
    ------
    NonSimpleSpectrum
        If two eigenvalues are closer than ``gap_tol * (lambda_N - lambda_0)``.
    """
    if chain.n == 0:
        return EigenSystem(chain.fields.copy(), np.ones((1, 1)))
    if is_persymmetric(chain, MIRROR_ULPS * np.finfo(float).eps * max(chain.scale, 1e-300)):
        lam, V = _mirror_eigh(chain)
    else:
        lam, V = eigh_tridiagonal(chain.fields, chain.couplings)
    W = V.T.copy()
    sign = np.where(W[:, 0] < 0, -1.0, 1.0)
    W *= sign[:, None]
    spread = lam[-1] - lam[0]
    gaps = np.diff(lam)
    if spread <= 0 or gaps.min() < gap_tol * spread:
        raise NonSimpleSpectrum(f"minimum eigenvalue gap {gaps.min():.3e} for spread {spread:.3e}")
    return EigenSystem(lam, W)


def spectral_data(eig: EigenSystem, floor: float = BOUNDARY_FLOOR) -> SpectralData:
    """Weights ``w_s = W[s, 0]**2`` of the spectral measure seen from site 0."""
    first = eig.transition[:, 0]
    if np.any(np.abs(first) < floor):
        s = int(np.argmin(np.abs(first)))
        raise ZeroBoundaryWeight(f"mode {s} has |W[s,0]| = {abs(first[s]):.2e}; site 0 is decoupled")
    return SpectralData.normalized(eig.eigenvalues, first**2)


def is_persymmetric(chain: JacobiMatrix, tol: float = 1e-10) -> bool:
    """True if the chain is mirror symmetric: ``J_n = J_{N+1-n}``, ``B_n = B_{N-n}``."""
    dJ = np.abs(chain.couplings - chain.couplings[::-1]).max(initial=0.0)
    dB = np.abs(chain.fields - chain.fields[::-1]).max()
    return bool(max(dJ, dB) <= tol)


def reflection(n: int) -> np.ndarray:
    """The anti-diagonal reflection ``R`` on ``n + 1`` sites."""
    return np.eye(n + 1)[::-1].copy()
