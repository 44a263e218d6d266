"""Argument and array checks shared by the modules and estimators."""
import numbers

import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import InputError


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise InputError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InputError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_fraction(value, name):
    """Validate a threshold in the half-open interval (0, 1]."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InputError(f"{name} must be a number, got {value!r}") from None
    if not 0.0 < value <= 1.0:
        raise InputError(f"{name} must lie in (0, 1], got {value}")
    return value


def check_square(X, name="matrix", dtype="numeric"):
    X = check_array(X, dtype=dtype, ensure_min_samples=1, ensure_min_features=1)
    if X.shape[0] != X.shape[1]:
        raise InputError(f"{name} must be square, got shape {X.shape}")
    return X


def check_counts_matrix(X, name="citation matrix"):
    X = check_square(X, name)
    if (X < 0).any():
        raise InputError(f"{name} has negative entries")
    if not np.all(np.mod(X, 1) == 0):
        raise InputError(f"{name} must hold integer counts")
    return X


def check_symmetric_matrix(C, atol=1e-9, name="correlation matrix"):
    C = check_square(C, name, dtype=np.float64)
    if not np.allclose(C, C.T, rtol=0.0, atol=atol):
        worst = float(np.max(np.abs(C - C.T)))
        raise InputError(f"{name} is not symmetric (max asymmetry {worst:.3g})")
    return C
