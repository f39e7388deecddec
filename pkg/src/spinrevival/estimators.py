"""scikit-learn style wrappers around the functional core.

The estimators hold hyperparameters in ``__init__`` and learned state in
trailing-underscore attributes, so ``get_params``/``set_params``/``clone``
work as usual. Data is spectra or time grids rather than feature matrices.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import _validation as v
from .chain import JacobiMatrix, SpectralData, eigendecompose
from .designer import RevivalTarget, design, verify_design
from .dynamics import evolve
from .inverse import fr_weights, gamma_from, pst_weights, reconstruct_jacobi


class SpectralChainReconstructor(BaseEstimator):
    """Recover a chain from its spectrum.

    Parameters
    ----------
    weights : {"pst", "fr", "given"}
        ``"pst"`` uses mirror-symmetric weights, ``"fr"`` the two-site
        revival weights for ``(theta, psi)``, ``"given"`` takes them from
        ``y`` in :meth:`fit`.
    theta, psi : float
        Revival angles, only read when ``weights="fr"``.
    positivity_floor : float
        Relative floor on squared couplings during reconstruction.
    """

    def __init__(self, weights="pst", theta=0.0, psi=0.0, positivity_floor=1e-13):
        self.weights = weights
        self.theta = theta
        self.psi = psi
        self.positivity_floor = positivity_floor

    def fit(self, X, y=None):
        """``X`` is the strictly increasing spectrum; ``y`` the weights if given."""
        x = v.check_spectrum(X)
        if self.weights == "pst":
            measure = pst_weights(x)
        elif self.weights == "fr":
            measure = fr_weights(x, gamma_from(self.theta, self.psi))
        elif self.weights == "given":
            if y is None:
                raise ValueError('weights="given" needs y')
            measure = SpectralData.normalized(x, np.asarray(y, dtype=float).ravel())
        else:
            raise ValueError(f"unknown weights rule {self.weights!r}")
        self.measure_ = measure
        self.chain_ = reconstruct_jacobi(measure, self.positivity_floor)
        self.couplings_ = np.array(self.chain_.couplings)
        self.fields_ = np.array(self.chain_.fields)
        self.n_sites_ = self.chain_.n_sites
        return self

    def predict(self, X=None):
        """Eigenvalues of the fitted chain; ``X`` is ignored."""
        check_is_fitted(self, "chain_")
        return eigendecompose(self.chain_).eigenvalues


class RevivalChainDesigner(BaseEstimator):
    """Design a chain with ``exp(-iTJ)|0> = e^{i phi}(sin 2theta |0> + e^{i psi} cos 2theta |N>)``.

    Parameters
    ----------
    n_sites : int
        Number of sites ``N + 1``, at least 2.
    theta : float
        In ``(-pi/4, pi/4)``.
    psi : float
        In ``[0, pi)``.
    revival_time : float
        ``T > 0``.
    """

    def __init__(self, n_sites=4, theta=math.pi / 8, psi=math.pi / 2, revival_time=math.pi):
        self.n_sites = n_sites
        self.theta = theta
        self.psi = psi
        self.revival_time = revival_time

    def fit(self, X=None, y=None):
        """Run the construction; ``X`` and ``y`` are ignored."""
        n_sites = v.check_n_sites(self.n_sites, 2)
        theta = v.check_angle(self.theta, "theta", -math.pi / 4, math.pi / 4, closed_hi=True)
        psi = v.check_angle(self.psi, "psi", 0.0, math.pi)
        T = v.check_positive(self.revival_time, "revival_time")
        d = design(n_sites - 1, theta, psi, T)
        self.chain_ = d.chain
        self.record_ = d.record
        self.angles_ = d.angles
        self.phase_ = d.record.phi
        return self

    def predict(self, X):
        """Amplitudes ``<k|U(t)|0>`` at times ``X``, shape ``(len(X), n_sites)``."""
        check_is_fitted(self, "chain_")
        return evolve(self.chain_, v.check_times(X))

    def score(self, X=None, y=None):
        """Negative max-norm residual of the revival condition at ``T``."""
        check_is_fitted(self, "chain_")
        target = RevivalTarget(self.theta, self.psi, self.phase_, self.revival_time)
        return -verify_design(self.chain_, target).residual


class ChainPropagator(TransformerMixin, BaseEstimator):
    """Map a time grid to one-excitation amplitudes of a fixed chain.

    Parameters
    ----------
    chain : JacobiMatrix or dict
        Chain to evolve (a dict in the JSON layout is accepted).
    start : int
        Initial site.
    output : {"amplitude", "probability"}
    """

    def __init__(self, chain=None, start=0, output="amplitude"):
        self.chain = chain
        self.start = start
        self.output = output

    def fit(self, X=None, y=None):
        """Diagonalize the chain once; ``X`` (a time grid) is ignored."""
        if self.chain is None:
            raise ValueError("no chain given")
        chain = self.chain if isinstance(self.chain, JacobiMatrix) else JacobiMatrix.from_dict(self.chain)
        if not 0 <= self.start <= chain.n:
            raise ValueError(f"start={self.start} outside 0..{chain.n}")
        if self.output not in ("amplitude", "probability"):
            raise ValueError(f"unknown output {self.output!r}")
        self.chain_ = chain
        self.eigensystem_ = eigendecompose(chain)
        return self

    def transform(self, X):
        """``X`` is a time grid; returns shape ``(len(X), n_sites)``."""
        check_is_fitted(self, "eigensystem_")
        amp = evolve(self.eigensystem_, v.check_times(X), self.start)
        return np.abs(amp) ** 2 if self.output == "probability" else amp
