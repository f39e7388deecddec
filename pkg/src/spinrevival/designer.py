"""Generic two-site revival chains with arbitrary amplitude and relative phase.

Two steps: build the mirror-symmetric para-Krawtchouk chain for an auxiliary
angle ``sigma`` (this fixes the bi-lattice spectrum), then deform it
isospectrally by ``V(tau)``. Together the two angles reach every target
``(theta, psi)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .chain import JacobiMatrix, is_persymmetric
from .deform import deform_chain
from .dynamics import NoRevival, PSTResult, RevivalTarget, detect_fractional_revival, detect_pst, evolve
from .exceptions import DegenerateRevival, DesignInconsistency, InvalidDelta
from .inverse import gamma_from
from .models import BiLatticeFit, fit_bilattice, fr_chain_psi_half, psi_half_delta, wrap_phase

IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class DesignAngles:
    """Auxiliary angles of the two-step construction."""

    sigma: float
    tau: float
    xi: float
    eta: float
    gamma_tilde: float


@dataclass(frozen=True)
class DesignRecord:
    """Everything needed to reproduce a designed chain."""

    n: int
    theta: float
    psi: float
    T: float
    phi: float
    delta: float
    sigma: float
    tau: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Design:
    chain: JacobiMatrix
    record: DesignRecord
    angles: DesignAngles


def xi_eta(theta: float, psi: float) -> tuple[float, float]:
    """Phases of the even and odd sublattices, each in ``[0, 2 pi)``."""
    if not 0 <= psi < math.pi:
        raise ValueError(f"psi={psi} must lie in [0, pi)")
    g = gamma_from(theta, psi).gamma
    c2, s2 = math.cos(2 * theta), math.sin(2 * theta)
    xi = math.atan2(c2 * math.sin(psi) / g, s2 - c2 * math.cos(psi) / g)
    eta = math.atan2(-g * c2 * math.sin(psi), s2 + g * c2 * math.cos(psi))
    return xi % (2 * math.pi), eta % (2 * math.pi)


def design_angles(theta: float, psi: float) -> DesignAngles:
    """Solve for ``sigma`` and ``tau`` given the target ``(theta, psi)``.

    The sublattice separation ``xi - eta`` is taken in ``(0, 2 pi)``, which is
    the unique branch giving a bi-lattice offset inside ``(0, 2)``; ``tau`` is
    read from both its cosine and sine so it lands in ``(-pi/4, pi/4)``.
    """
    xi, eta = xi_eta(theta, psi)
    sep = (xi - eta) % (2 * math.pi)
    if sep == 0.0:
        raise DegenerateRevival("sublattices coincide")
    sigma = (math.pi - sep) / 4
    if abs(math.sin(2 * sigma) - math.sin(2 * theta) * math.sin(psi)) > IDENTITY_TOL:
        raise DesignInconsistency("sin 2sigma != sin 2theta sin psi")
    cosec = 1.0 / math.sin(sep / 2)
    tau = 0.5 * math.atan2(math.sin(2 * theta) * math.cos(psi) * cosec, math.cos(2 * theta) * cosec)
    return DesignAngles(sigma, tau, xi, eta, gamma_from(tau, 0.0).gamma)


def design(n: int, theta: float, psi: float, T: float = math.pi) -> Design:
    """Chain with ``exp(-iTJ)|0> = e^{i phi}(sin 2theta |0> + e^{i psi} cos 2theta |N>)``."""
    if n < 1:
        raise ValueError("a revival design needs at least two sites")
    if T <= 0:
        raise ValueError("T must be positive")
    angles = design_angles(theta, psi)
    delta = psi_half_delta(n, angles.sigma)
    if not 0 < delta < 2:
        raise InvalidDelta(f"design needs delta={delta} in (0, 2)")
    base, phi_bar = fr_chain_psi_half(n, angles.sigma, T)
    chain = deform_chain(base, angles.tau)
    phi = wrap_phase(phi_bar - psi + math.pi / 2)
    record = DesignRecord(n, float(theta), float(psi), float(T), phi, delta, angles.sigma, angles.tau)
    return Design(chain, record, angles)


def design_chain(n: int, theta: float, psi: float, T: float = math.pi) -> tuple[JacobiMatrix, float]:
    """Shortcut returning ``(chain, phi)``."""
    d = design(n, theta, psi, T)
    return d.chain, d.record.phi


@dataclass(frozen=True)
class VerificationReport:
    residual: float
    residual_up_to_phase: float
    recovered: RevivalTarget | NoRevival
    pst: PSTResult
    bilattice: BiLatticeFit
    persymmetric: bool

    def to_dict(self) -> dict:
        rec = self.recovered
        return {
            "residual": self.residual,
            "residual_up_to_phase": self.residual_up_to_phase,
            "revival": ({"theta": rec.theta, "psi": rec.psi, "phi": rec.phi, "leak": rec.residual}
                        if isinstance(rec, RevivalTarget) else None),
            "leak": rec.residual,
            "pst": bool(self.pst.pst),
            "pst_fidelity": self.pst.fidelity,
            "bilattice": asdict(self.bilattice),
            "persymmetric": self.persymmetric,
        }


def verify_design(chain: JacobiMatrix, target: RevivalTarget, tol: float = 1e-8) -> VerificationReport:
    """Measure how well ``chain`` realizes ``target``; never raises on a miss."""
    n = chain.n
    T = target.time_T
    col = evolve(chain, [T])[0]
    want = np.zeros(n + 1, dtype=complex)
    want[0] += target.alpha
    want[n] += target.beta
    residual = float(np.abs(col - want).max())
    overlap = np.vdot(want, col)
    ph = overlap / abs(overlap) if abs(overlap) else 1.0
    free = float(np.abs(col - ph * want).max())
    return VerificationReport(
        residual=residual,
        residual_up_to_phase=free,
        recovered=detect_fractional_revival(chain, T, tol=math.inf),
        pst=detect_pst(chain, T, tol),
        bilattice=fit_bilattice(np.linalg.eigvalsh(chain.to_dense()), T),
        persymmetric=is_persymmetric(chain, 1e-10 * chain.scale),
    )
