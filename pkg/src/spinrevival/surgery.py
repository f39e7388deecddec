"""Spectral surgery: delete eigenvalues through the Christoffel transform.

Removing ``lambda_i`` multiplies the spectral measure by ``(x - lambda_i)``.
Extremal levels can go one at a time; interior levels must go in
neighbouring pairs so that the transformed weights stay positive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import JacobiMatrix, _frozen, eigendecompose
from .exceptions import InvalidSurgery
from .orthopoly import eval_chi


@dataclass(frozen=True, eq=False)
class SurgeryStep:
    """One level removal: the level and the ratios ``A_l = P_{l+1}/P_l`` there."""

    removed_level: float
    a_ratios: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a_ratios", _frozen(self.a_ratios))


def monic_ratios(fields, couplings_sq, lam: float) -> np.ndarray:
    """``A_l = P_{l+1}(lam) / P_l(lam)`` for ``l = 0..N``.

    Uses the ratio form of the monic recurrence,
    ``A_l = (lam - B_l) - J_l^2 / A_{l-1}``, which never overflows.
    """
    B = np.asarray(fields, dtype=float)
    J2 = np.asarray(couplings_sq, dtype=float)
    A = np.empty(B.size)
    A[0] = lam - B[0]
    for l in range(1, B.size):
        if A[l - 1] == 0:
            raise InvalidSurgery(f"P_{l}(lambda) vanishes; level coincides with an interior zero")
        A[l] = (lam - B[l]) - J2[l - 1] / A[l - 1]
    return A


def _christoffel(fields, couplings_sq, lam):
    """One Christoffel step on (B, J^2). Squared couplings may go negative."""
    A = monic_ratios(fields, couplings_sq, lam)
    B = np.asarray(fields, dtype=float)
    J2 = np.asarray(couplings_sq, dtype=float)
    n = B.size - 1  # new chain has sites 0..n-1
    # A_n = P_{N+1}(lam)/P_N(lam) is zero in exact arithmetic
    A[n] = 0.0
    new_B = B[1:] + A[1:] - A[:-1]
    # (J'_l)^2 = A_l / A_{l-1} * J_l^2 with J_l = J2[l - 1]
    new_J2 = A[1:n] / A[: n - 1] * J2[: n - 1] if n > 1 else np.empty(0)
    return new_B, new_J2, SurgeryStep(lam, A)


def _to_chain(B, J2, what) -> JacobiMatrix:
    if np.any(J2 <= 0):
        raise InvalidSurgery(f"{what} leaves a nonpositive squared coupling")
    return JacobiMatrix(np.sqrt(J2), B)


def remove_level(chain: JacobiMatrix, i: int, spectrum=None) -> JacobiMatrix:
    """Delete the lowest (``i = 0``) or highest (``i = N``) level.

    Interior single removals flip the sign of part of the measure and are
    refused; use :func:`remove_pair` instead.

    The update is conditioned like ``eps / W[i, N]**2``: a removed mode that
    barely reaches the far end leaves a small but nonzero last ratio, and
    dropping it perturbs the result accordingly.
    """
    if chain.n == 0:
        raise InvalidSurgery("cannot remove the only level of a single site")
    lam = eigendecompose(chain).eigenvalues if spectrum is None else np.asarray(spectrum)
    i = int(i) % (chain.n + 1) if i < 0 else int(i)
    if i not in (0, chain.n):
        raise InvalidSurgery(f"interior level {i} must be removed together with a neighbour")
    B, J2, _ = _christoffel(chain.fields, chain.couplings**2, float(lam[i]))
    return _to_chain(B, J2, f"removing level {i}")


def _quadratic_christoffel(chain: JacobiMatrix, u: float, v: float):
    """Multiply the measure by ``(x - u)(x - v)`` in one step.

    New monic polynomials are ``(P_{l+2} + a_l P_{l+1} + b_l P_l) / ((x-u)(x-v))``
    with ``a_l, b_l`` chosen so the numerator vanishes at ``u`` and ``v``.
    Then ``J''_l^2 = (b_l / b_{l-1}) J_l^2`` and
    ``B''_l = B_{l+2} + a_l - a_{l+1}``, the two-level analogue of the
    single-level update.
    """
    n = chain.n
    J, B = chain.couplings, chain.fields
    chi = eval_chi(chain, np.array([u, v]))
    a = np.zeros(n)
    b = np.zeros(n)
    # l = N - 1 gives a = b = 0 since P_{N+1} already vanishes at u and v
    for l in range(n - 1):
        M = np.array([[J[l] * chi[l + 1, 0], chi[l, 0]],
                      [J[l] * chi[l + 1, 1], chi[l, 1]]])
        rhs = -J[l] * J[l + 1] * chi[l + 2]
        try:
            a[l], b[l] = np.linalg.solve(M, rhs)
        except np.linalg.LinAlgError as exc:
            raise InvalidSurgery(f"kernel system singular at degree {l}") from exc
    new_B = B[2:] + a[: n - 1] - a[1:n]
    new_J2 = b[1 : n - 1] / b[: n - 2] * J[: n - 2] ** 2
    if np.any(b[: n - 1] <= 0):
        raise InvalidSurgery("pair removal leaves a nonpositive weight")
    return new_B, new_J2


def remove_pair(chain: JacobiMatrix, i: int, spectrum=None) -> JacobiMatrix:
    """Delete the neighbouring interior levels ``lambda_i`` and ``lambda_{i+1}``.

    Equivalent to removing the two levels one after the other, but done in a
    single step: the intermediate one-level chain is only quasi-definite and
    its monic polynomials can vanish, exactly or nearly, at the second level.
    Conditioning is as for :func:`remove_level`.
    """
    n = chain.n
    if not (0 < i and i + 1 < n):
        raise InvalidSurgery(f"pair ({i}, {i + 1}) is not interior for N={n}")
    lam = eigendecompose(chain).eigenvalues if spectrum is None else np.asarray(spectrum)
    B, J2 = _quadratic_christoffel(chain, float(lam[i]), float(lam[i + 1]))
    return _to_chain(B, J2, f"removing pair ({i}, {i + 1})")


def remove_pair_chained(chain: JacobiMatrix, i: int) -> JacobiMatrix:
    """Pair removal as two successive single-level steps.

    Kept as a cross-check; may raise :class:`InvalidSurgery` on symmetric
    spectra where :func:`remove_pair` succeeds.
    """
    n = chain.n
    if not (0 < i and i + 1 < n):
        raise InvalidSurgery(f"pair ({i}, {i + 1}) is not interior for N={n}")
    lam = eigendecompose(chain).eigenvalues
    B, J2, _ = _christoffel(chain.fields, chain.couplings**2, float(lam[i]))
    B, J2, _ = _christoffel(B, J2, float(lam[i + 1]))
    return _to_chain(B, J2, f"removing pair ({i}, {i + 1})")


def surgery_steps(chain: JacobiMatrix, levels) -> list[SurgeryStep]:
    """Record the ratio tables for removing ``levels`` (indices into the current spectrum) in turn."""
    lam = list(eigendecompose(chain).eigenvalues)
    B, J2 = chain.fields, chain.couplings**2
    steps = []
    for idx in sorted(levels, reverse=True):
        B, J2, step = _christoffel(B, J2, float(lam.pop(idx)))
        steps.append(step)
    return steps
