"""scikit-learn style front end for the GNS construction.

:class:`GNSRepresentation` is fitted on a state and then maps algebra
elements (rows of matrix-unit coordinates) to vectors of the GNS Hilbert
space, so it can sit in a :class:`sklearn.pipeline.Pipeline` or be cloned
and grid-searched like any other transformer.
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import DEFAULT_TOL, check_complex_array
from .algebra import Element
from .exceptions import StructuralError
from .gns import NULL_TOL, gns_construct
from .states import DensityMatrix, State, state_from_density_matrix


def check_state_input(X, tol=DEFAULT_TOL):
    """Accept a State, a DensityMatrix or a square array (read as a density matrix)."""
    if isinstance(X, State):
        return X
    if isinstance(X, DensityMatrix):
        return state_from_density_matrix(X)
    return state_from_density_matrix(DensityMatrix(X, tol=tol))


def check_element_rows(X, algebra):
    """Element coordinates as a complex ``(n_samples, algebra.dim)`` array."""
    if isinstance(X, Element):
        X = [X]
    if isinstance(X, (list, tuple)) and X and all(isinstance(x, Element) for x in X):
        for x in X:
            if x.algebra != algebra:
                raise StructuralError("element belongs to a different algebra")
        return np.array([x.coords for x in X])
    arr = check_complex_array(X, name="X")
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != algebra.dim:
        raise StructuralError(f"X must have shape (n_samples, {algebra.dim}), got {arr.shape}")
    return arr


class GNSRepresentation(TransformerMixin, BaseEstimator):
    """Quotient map ``a -> [a]`` into the GNS Hilbert space of a state.

    Parameters
    ----------
    null_tol : float
        Relative eigenvalue threshold below which Gram eigenvectors span the
        null space.
    state_tol : float
        Tolerance for validating the fitted state.

    Attributes
    ----------
    gns_ : GnsRep
        Full construction output.
    quotient_dim_, null_dim_ : int
    embed_ : ndarray of shape (dim, quotient_dim_)
        Representatives of an orthonormal basis of the quotient.
    pi_ : ndarray of shape (dim, quotient_dim_, quotient_dim_)
        GNS representation of the matrix units.
    omega_vec_ : ndarray of shape (quotient_dim_,)
        Cyclic vector ``[1]``.
    """

    def __init__(self, null_tol=NULL_TOL, state_tol=DEFAULT_TOL):
        self.null_tol = null_tol
        self.state_tol = state_tol

    def fit(self, X, y=None):
        state = check_state_input(X, self.state_tol)
        self.gns_ = gns_construct(state, tol=self.state_tol, null_tol=self.null_tol)
        self.state_ = state
        self.algebra_ = state.algebra
        self.n_features_in_ = state.algebra.dim
        self.quotient_dim_ = self.gns_.quotient_dim
        self.null_dim_ = self.gns_.null_dim
        self.embed_ = self.gns_.embed
        self.null_basis_ = self.gns_.null_basis
        self.pi_ = self.gns_.rep.pi
        self.omega_vec_ = self.gns_.rep.omega_vec
        return self

    def transform(self, X):
        check_is_fitted(self, "gns_")
        return self.gns_.quotient_coords(check_element_rows(X, self.algebra_))

    def inverse_transform(self, Z):
        """A representative element (as coordinates) of each class."""
        check_is_fitted(self, "gns_")
        Z = check_complex_array(Z, name="Z")
        if Z.ndim == 1:
            Z = Z[None, :]
        if Z.shape[1] != self.quotient_dim_:
            raise StructuralError(f"Z must have {self.quotient_dim_} columns, got {Z.shape[1]}")
        return self.gns_.representative(Z)

    def represent(self, a):
        """``pi_omega(a)`` as a matrix on the quotient coordinates."""
        check_is_fitted(self, "gns_")
        row = check_element_rows(a, self.algebra_)
        if row.shape[0] != 1:
            raise StructuralError("represent takes a single element")
        return np.tensordot(row[0], self.pi_, axes=1)

    def expectation(self, X):
        """``<Omega, pi(a) Omega>`` for each row; equals the fitted state."""
        check_is_fitted(self, "gns_")
        rows = check_element_rows(X, self.algebra_)
        v = self.omega_vec_
        return np.einsum("a,nab,b->n", v.conj(), np.tensordot(rows, self.pi_, axes=1), v)
