"""Exception hierarchy.

Every domain error derives from :class:`ChainError`, itself a ``ValueError``,
so callers that only care about "bad input" can catch one type.
"""


class ChainError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidChain(ChainError):
    """Coupling or field arrays violate the Jacobi-matrix invariants."""


class NonSimpleSpectrum(ChainError):
    """Two eigenvalues are closer than the gap tolerance."""


class ZeroBoundaryWeight(ChainError):
    """An eigenvector has (numerically) no overlap with site 0."""


class SpectrumMismatch(ChainError):
    """A supplied spectrum is not the eigenvalue set of the chain."""


class InvalidSpectrumOrder(ChainError):
    """Spectral points are unordered or produce a nonpositive weight."""


class ReconstructionBreakdown(ChainError):
    """A squared coupling fell below the positivity floor during Stieltjes."""


class DegenerateRevival(ChainError):
    """Revival angle at |theta| = pi/4, where the end-to-end amplitude vanishes."""


class InvalidDelta(ChainError):
    """Bi-lattice offset outside the open interval (0, 2)."""


class RequiresPersymmetry(ChainError):
    """Operation needs a mirror-symmetric chain."""


class DisconnectedChain(ChainError):
    """A coupling would vanish, splitting the chain in two."""


class InvalidSurgery(ChainError):
    """Level removal would destroy positivity of the measure."""


class DesignInconsistency(ChainError):
    """Internal identity of the two-step design failed; indicates a bug."""
