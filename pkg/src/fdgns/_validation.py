"""Input validation helpers shared by the public API.

scikit-learn's ``check_array`` rejects complex input, so these do the
equivalent job for the complex matrices used throughout the package.
"""
import numbers

import numpy as np

from .exceptions import StructuralError, ValidationError

DEFAULT_TOL = 1e-9


def frozen(arr):
    """Return a read-only complex copy of ``arr``."""
    out = np.array(arr, dtype=complex, copy=True)
    out.flags.writeable = False
    return out


def check_tol(tol, name="tol"):
    if not isinstance(tol, numbers.Real) or not np.isfinite(tol) or tol < 0:
        raise ValidationError(f"{name} must be a finite nonnegative real, got {tol!r}")
    return float(tol)


def check_complex_array(x, ndim=None, name="array"):
    try:
        arr = np.asarray(x, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise StructuralError(f"{name} is not numeric: {exc}") from None
    if ndim is not None and arr.ndim != ndim:
        raise StructuralError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def check_square(x, n=None, name="matrix"):
    arr = check_complex_array(x, ndim=2, name=name)
    if arr.shape[0] != arr.shape[1]:
        raise StructuralError(f"{name} must be square, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise StructuralError(f"{name} must be {n}x{n}, got shape {arr.shape}")
    return arr


def check_vector(x, n=None, name="vector"):
    arr = check_complex_array(x, ndim=1, name=name)
    if n is not None and arr.shape[0] != n:
        raise StructuralError(f"{name} must have length {n}, got {arr.shape[0]}")
    return arr


def check_same_algebra(*objs):
    """Raise unless all objects live in the same algebra."""
    first = objs[0].algebra
    for obj in objs[1:]:
        if obj.algebra != first:
            raise StructuralError(
                f"algebra mismatch: {first.block_dims} vs {obj.algebra.block_dims}"
            )
    return first


def max_abs(x):
    """Largest absolute entry, 0.0 for empty input."""
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def is_unitary_matrix(u, tol=DEFAULT_TOL):
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    eye = np.eye(u.shape[0])
    return max_abs(u.conj().T @ u - eye) <= tol and max_abs(u @ u.conj().T - eye) <= tol
