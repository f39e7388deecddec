"""Closed-form chains: Krawtchouk, para-Krawtchouk and their affine images."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chain import JacobiMatrix
from .exceptions import InvalidDelta


def bilattice(n: int, delta: float) -> np.ndarray:
    """Points ``s + (delta - 1)(1 - (-1)^s)/2`` for ``s = 0..n``."""
    s = np.arange(n + 1)
    return s + 0.5 * (delta - 1.0) * (1 - (-1.0) ** s)


def bilattice_midpoint(n: int, delta: float) -> float:
    """Centre of the bi-lattice span; subtracting it makes the spectrum symmetric for odd ``n``."""
    pts = bilattice(n, delta)
    return 0.5 * (pts[0] + pts[-1])


def _check_delta(delta):
    if not 0.0 < delta < 2.0:
        raise InvalidDelta(f"delta={delta} must lie strictly inside (0, 2)")


@dataclass(frozen=True)
class BiLatticeSpec:
    """Bi-lattice spectrum ``(T lambda_s + phi)/pi = mu/pi + xbar_s``."""

    n_sites: int
    delta: float
    mu: float = 0.0
    xi: float = 0.0
    eta: float = 0.0
    time_scale: float = math.pi
    global_phase: float = 0.0

    def __post_init__(self):
        _check_delta(self.delta)
        if self.n_sites < 1 or self.time_scale <= 0:
            raise ValueError("need n_sites >= 1 and time_scale > 0")

    @property
    def n(self) -> int:
        return self.n_sites - 1

    def lattice(self) -> np.ndarray:
        return bilattice(self.n, self.delta)

    def points(self) -> np.ndarray:
        return (math.pi * self.lattice() + self.mu - self.global_phase) / self.time_scale


@dataclass(frozen=True)
class PstRationalCondition:
    """``delta = m1/m2`` with ``m1`` odd and coprime to ``m2``.

    A para-Krawtchouk chain with such a ``delta`` transfers perfectly at
    ``m2`` times its revival period.
    """

    m1: int
    m2: int

    def __post_init__(self):
        if self.m1 <= 0 or self.m2 <= 0 or self.m1 % 2 == 0 or math.gcd(self.m1, self.m2) != 1:
            raise ValueError(f"need coprime positive m1 (odd), m2; got {self.m1}, {self.m2}")

    @property
    def delta(self) -> float:
        return self.m1 / self.m2

    @property
    def pst_multiple(self) -> int:
        return self.m2

    @classmethod
    def from_delta(cls, delta: float, max_denominator: int = 1000, tol: float = 1e-12):
        """Return the condition if ``delta`` is such a rational, else ``None``."""
        frac = Fraction(delta).limit_denominator(max_denominator)
        if abs(float(frac) - delta) > tol or frac.numerator % 2 == 0:
            return None
        return cls(frac.numerator, frac.denominator)


def krawtchouk_chain(n: int, T: float = math.pi) -> JacobiMatrix:
    """Chain with perfect transfer at time ``T`` and linear spectrum."""
    if n < 0 or T <= 0:
        raise ValueError("need n >= 0 and T > 0")
    l = np.arange(1, n + 1)
    return JacobiMatrix(math.pi / T * np.sqrt(l * (n + 1 - l)) / 2, np.zeros(n + 1))


def para_krawtchouk_coefficients(n: int, delta: float) -> tuple[np.ndarray, np.ndarray]:
    """Recurrence coefficients ``(B, J)`` on the raw bi-lattice ``bilattice(n, delta)``."""
    _check_delta(delta)
    l = np.arange(1, n + 1, dtype=float)
    if n % 2:
        B = np.full(n + 1, (n - 1 + delta) / 2)
        J2 = l * (n + 1 - l) * ((n + 1 - 2 * l) ** 2 - delta**2) / ((n - 2 * l) * (n - 2 * l + 2)) / 4
    else:
        L = np.arange(n + 1, dtype=float)
        B = (n - 1 + delta) / 2 + (delta - 1) * (n + 1) / 4 * (1 / (2 * L - n - 1) - 1 / (2 * L + 1 - n))
        J2 = l * (n + 1 - l) * ((2 * l - n - 1) ** 2 - (delta - 1) ** 2) / (2 * l - n - 1) ** 2 / 4
    if np.any(J2 <= 0):
        raise InvalidDelta(f"delta={delta} gives a nonpositive squared coupling")
    return B, np.sqrt(J2)


def para_krawtchouk_chain(n: int, delta: float, a: float = 1.0, b: float = 0.0) -> JacobiMatrix:
    """Para-Krawtchouk chain on the lattice ``a * bilattice(n, delta) + b``.

    Couplings are scaled by ``|a|`` so they stay positive; a negative ``a``
    reflects the spectrum, which a sign gauge on the sites absorbs.
    """
    if a == 0:
        raise ValueError("affine scale a must be nonzero")
    B, J = para_krawtchouk_coefficients(n, delta)
    return JacobiMatrix(abs(a) * J, a * B + b)


def para_krawtchouk_spectrum(n: int, delta: float, a: float = 1.0, b: float = 0.0) -> np.ndarray:
    """Exact eigenvalues of :func:`para_krawtchouk_chain`, ascending."""
    return np.sort(a * bilattice(n, delta) + b)


def psi_half_delta(n: int, theta: float) -> float:
    """``delta = 1 + 4 theta/pi`` for odd ``n``, ``1 - 4 theta/pi`` for even ``n``."""
    return 1 + 4 * theta / math.pi if n % 2 else 1 - 4 * theta / math.pi


def fr_chain_psi_half(n: int, theta: float, T: float = math.pi) -> tuple[JacobiMatrix, float]:
    """Mirror-symmetric chain with revival ``sin 2theta |0> + i cos 2theta |N>`` at ``T``.

    Returns the chain and the global phase ``phi`` in ``(-pi, pi]``.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    delta = psi_half_delta(n, theta)
    _check_delta(delta)
    a = math.pi / T
    chain = para_krawtchouk_chain(n, delta, a, -a * (n - 1 + delta) / 2)
    phi = math.pi * (n + 1) / 2 if n % 2 else math.pi * (n - 1) / 2
    return chain, wrap_phase(phi)


def wrap_phase(phi: float) -> float:
    """Reduce an angle to ``(-pi, pi]``."""
    r = math.remainder(phi, 2 * math.pi)
    return math.pi if r == -math.pi else r


@dataclass(frozen=True)
class BiLatticeFit:
    """Least-squares fit of ``T lambda_s / pi = c + s + (delta - 1) [s odd]``."""

    offset: float
    delta: float
    residual: float


def fit_bilattice(spectrum, T: float) -> BiLatticeFit:
    """Fit the spectrum to a bi-lattice with unit period ``pi/T``.

    ``offset`` is ``(mu - phi)/pi``; ``residual`` is the max abs deviation in
    units of the lattice period.
    """
    y = T * np.asarray(spectrum, dtype=float) / math.pi - np.arange(len(spectrum))
    even, odd = y[0::2], y[1::2]
    c = even.mean()
    d = 1.0 + (odd.mean() - c if odd.size else 0.0)
    model = c + (d - 1.0) * (np.arange(y.size) % 2)
    return BiLatticeFit(float(c), float(d), float(np.abs(y - model).max()))
