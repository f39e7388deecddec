"""One-excitation time evolution and revival detection."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from .chain import EigenSystem, JacobiMatrix, _frozen, eigendecompose
from .deform import hadamard_matrix
from .models import wrap_phase

#: angular window used to snap a relative phase sitting at pi back to 0
PHASE_SNAP = 1e-9


@dataclass(frozen=True, eq=False)
class Propagator:
    """``U(t) = exp(-i t J)`` in the site basis."""

    time: float
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix, dtype=complex))

    def amplitude(self, k: int, l: int) -> complex:
        """``<k| U |l>``."""
        return complex(self.matrix[k, l])


@dataclass(frozen=True)
class RevivalTarget:
    """Two-site revival ``U(T)|0> = alpha |0> + beta |N>``.

    ``alpha = e^{i phi} sin 2theta`` and ``beta = e^{i(phi + psi)} cos 2theta``.
    """

    theta: float
    psi: float
    phi: float
    time_T: float
    residual: float = 0.0

    def __post_init__(self):
        if abs(self.theta) > math.pi / 4 + 1e-12:
            raise ValueError("theta must lie in [-pi/4, pi/4]")
        if not -1e-12 <= self.psi < math.pi:
            raise ValueError("psi must lie in [0, pi)")
        if self.time_T <= 0:
            raise ValueError("revival time must be positive")

    @property
    def alpha(self) -> complex:
        return cmath.exp(1j * self.phi) * math.sin(2 * self.theta)

    @property
    def beta(self) -> complex:
        return cmath.exp(1j * (self.phi + self.psi)) * math.cos(2 * self.theta)

    @property
    def is_pst(self) -> bool:
        return abs(self.theta) < 1e-12


@dataclass(frozen=True)
class NoRevival:
    """Detector verdict when the amplitude leaks outside the two end sites."""

    residual: float

    def __bool__(self):
        return False


@dataclass(frozen=True)
class PSTResult:
    """Perfect-transfer verdict with the diagnostics behind it."""

    pst: bool
    phase: float
    fidelity: float
    gaps_odd: bool
    chi_alternates: bool

    def __bool__(self):
        return self.pst


def _eig(chain_or_eig) -> EigenSystem:
    if isinstance(chain_or_eig, EigenSystem):
        return chain_or_eig
    return eigendecompose(chain_or_eig)


def propagator(chain: JacobiMatrix | EigenSystem, t: float) -> Propagator:
    """``W^T diag(exp(-i t lambda)) W``; accepts a precomputed eigensystem."""
    eig = _eig(chain)
    W = eig.transition
    U = W.T @ (np.exp(-1j * t * eig.eigenvalues)[:, None] * W)
    return Propagator(float(t), U)


def evolve(chain: JacobiMatrix | EigenSystem, times, start: int = 0) -> np.ndarray:
    """Amplitudes ``<k|U(t)|start>``, shape ``(len(times), N + 1)``."""
    eig = _eig(chain)
    W = eig.transition
    t = np.atleast_1d(np.asarray(times, dtype=float))
    phases = np.exp(-1j * np.outer(t, eig.eigenvalues))
    return (phases * W[:, start]) @ W


def krawtchouk_amplitude(n: int, T: float, t: float, k: int, l: int) -> complex:
    """Closed-form ``<k| exp(-i t J) |l>`` for the Krawtchouk chain of period ``T``.

    The hypergeometric factor terminates after ``min(k, l) + 1`` terms; it is
    evaluated multiplied through by ``(1 - z)^(k + l)`` so no singular
    argument is ever formed. ``z = exp(-i pi t / T)``; the factor
    ``z^(-N/2)`` accounts for the spectrum being centred at zero and
    ``(-1)^(k+l)`` for the couplings being positive.
    """
    if not (0 <= k <= n and 0 <= l <= n):
        raise IndexError(f"sites ({k}, {l}) outside 0..{n}")
    if t == 0:
        return complex(k == l)
    # mirror symmetry keeps the (1 + z) exponent nonnegative
    if k + l > n:
        k, l = n - k, n - l
    z = cmath.exp(-1j * math.pi * t / T)
    total = 0j
    coeff = 1.0
    for m in range(min(k, l) + 1):
        if m:
            coeff *= (-k + m - 1) * (-l + m - 1) / ((-n + m - 1) * m)
        total += coeff * (-4 * z) ** m * (1 - z) ** (k + l - 2 * m)
    pref = 0.5**n * math.sqrt(comb(n, k, exact=True) * comb(n, l, exact=True))
    sign = -1.0 if (k + l) % 2 else 1.0
    # z^(-N/2) on the branch continuous in t
    centre = cmath.exp(0.5j * math.pi * t * n / T)
    return sign * pref * total * (1 + z) ** (n - k - l) * centre


def detect_fractional_revival(chain: JacobiMatrix, T: float, tol: float = 1e-8,
                              amp_floor: float = 1e-10):
    """Check ``U(T)|0>`` for support on the two end sites only.

    Returns
    -------
    RevivalTarget or NoRevival
        ``theta`` in ``[-pi/4, pi/4]``, ``psi`` in ``[0, pi)``, ``phi`` in
        ``(-pi, pi]``. When one amplitude vanishes the relative phase is
        undefined and reported as 0; ``amp_floor`` decides when that is.
        Pass ``tol=math.inf`` to always get the best-fit angles.
    """
    n = chain.n
    col = evolve(chain, [T])[0]
    residual = float(np.abs(col[1:n]).max()) if n > 1 else 0.0
    if residual >= tol:
        return NoRevival(residual)
    a, b = (col[0], col[n]) if n else (col[0], 0j)
    ma, mb = abs(a), abs(b)
    if ma < amp_floor:
        return RevivalTarget(0.0, 0.0, wrap_phase(cmath.phase(b)), T, residual)
    if mb < amp_floor:
        return RevivalTarget(math.pi / 4, 0.0, wrap_phase(cmath.phase(a)), T, residual)
    d = cmath.phase(b) - cmath.phase(a)
    k = math.floor((d + PHASE_SNAP) / math.pi)
    psi = max(d - k * math.pi, 0.0)
    sign = -1.0 if k % 2 else 1.0
    phi = cmath.phase(a) + (math.pi if k % 2 else 0.0)
    theta = 0.5 * math.atan2(sign * ma, mb)
    return RevivalTarget(theta, psi, wrap_phase(phi), T, residual)


def detect_pst(chain: JacobiMatrix, T: float, tol: float = 1e-8) -> PSTResult:
    """Perfect transfer ``0 -> N`` at time ``T``.

    Spectral test: every gap times ``T/pi`` is an odd integer and
    ``chi_N(lambda_s) = (-1)^(N+s)``. The transfer fidelity
    ``|<N|U(T)|0>|`` is computed alongside as an independent check.
    """
    eig = eigendecompose(chain)
    n = chain.n
    U = propagator(eig, T).matrix
    fidelity = float(abs(U[n, 0]))
    phase = wrap_phase(cmath.phase(U[n, 0]))
    if n == 0:
        return PSTResult(True, phase, fidelity, True, True)
    r = np.diff(eig.eigenvalues) * T / math.pi
    odd = 2 * np.round((r - 1) / 2) + 1
    gaps_odd = bool(np.all(np.abs(r - odd) <= tol * np.maximum(1.0, np.abs(r))) and np.all(odd > 0))
    W = eig.transition
    chi_n = W[:, n] / W[:, 0]
    target = (-1.0) ** (n + np.arange(n + 1))
    chi_alt = bool(np.abs(chi_n - target).max() <= math.sqrt(tol))
    return PSTResult(gaps_odd and chi_alt, phase, fidelity, gaps_odd, chi_alt)


def hadamard_unitary(n: int, alpha: float) -> np.ndarray:
    """``H U(alpha) H`` with ``U`` diagonal: ``e^{i alpha}`` on the first half, ``e^{-i alpha}`` after."""
    H = hadamard_matrix(n).matrix
    d = np.where(np.arange(n + 1) <= n // 2, cmath.exp(1j * alpha), cmath.exp(-1j * alpha))
    return H @ (d[:, None] * H)


def hadamard_factorization_check(chain: JacobiMatrix, T: float, alpha: float | None = None) -> float:
    """Max-norm distance between ``U(T)`` and ``H U(alpha) H`` up to a global phase.

    For a mirror-symmetric revival chain ``alpha = pi/2 - 2 theta``; if not
    given, ``theta`` is read off the propagator's first column.
    """
    U = propagator(chain, T).matrix
    if alpha is None:
        found = detect_fractional_revival(chain, T, tol=1e-6)
        if not found:
            return float("inf")
        alpha = math.pi / 2 - 2 * found.theta
    M = hadamard_unitary(chain.n, alpha)
    overlap = np.vdot(M, U)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.abs(U - phase * M).max())
