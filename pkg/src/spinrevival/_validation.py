"""Small argument checks shared by the estimator and CLI layers."""

from __future__ import annotations

import math
import numbers

import numpy as np

from .exceptions import InvalidSpectrumOrder


def check_spectrum(spectrum, name: str = "spectrum") -> np.ndarray:
    """Return a finite, strictly increasing 1-d float array."""
    x = np.asarray(spectrum, dtype=float)
    if x.ndim == 2 and 1 in x.shape:
        x = x.ravel()
    if x.ndim != 1 or x.size == 0:
        raise InvalidSpectrumOrder(f"{name} must be a non-empty 1-d array")
    if not np.all(np.isfinite(x)):
        raise InvalidSpectrumOrder(f"{name} contains non-finite values")
    if np.any(np.diff(x) <= 0):
        raise InvalidSpectrumOrder(f"{name} must be strictly increasing")
    return x


def check_times(times) -> np.ndarray:
    """Finite 1-d array of times; a column vector is flattened."""
    t = np.asarray(times, dtype=float)
    if t.ndim == 2 and t.shape[1] == 1:
        t = t[:, 0]
    t = np.atleast_1d(t)
    if t.ndim != 1:
        raise ValueError("times must be 1-d or a single column")
    if not np.all(np.isfinite(t)):
        raise ValueError("times must be finite")
    return t


def check_angle(value, name: str, lo: float, hi: float, closed_hi: bool = False) -> float:
    """Finite real in ``[lo, hi)`` (or ``[lo, hi]``)."""
    if not isinstance(value, numbers.Real) or not math.isfinite(value):
        raise ValueError(f"{name} must be a finite real, got {value!r}")
    ok = lo <= value <= hi if closed_hi else lo <= value < hi
    if not ok:
        raise ValueError(f"{name}={value} outside [{lo}, {hi}{']' if closed_hi else ')'}")
    return float(value)


def check_positive(value, name: str) -> float:
    if not isinstance(value, numbers.Real) or not value > 0 or not math.isfinite(value):
        raise ValueError(f"{name} must be a positive finite real, got {value!r}")
    return float(value)


def check_n_sites(value, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < minimum:
        raise ValueError(f"n_sites must be an integer >= {minimum}, got {value!r}")
    return int(value)
