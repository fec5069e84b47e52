"""States on finite-dimensional C*-algebras.

A state is stored by its values ``omega(e_i)`` on the matrix-unit basis.
Positivity ``omega(a^* a) >= 0`` for all ``a`` is exactly positive
semidefiniteness of the Gram matrix ``G_ij = omega(e_i^* e_j)``.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._validation import (
    DEFAULT_TOL,
    check_square,
    check_tol,
    check_vector,
    frozen,
    max_abs,
)
from .algebra import Algebra, Element
from .certificates import Certificate
from .exceptions import StructuralError, UnsupportedStructureError, ValidationError


@dataclass(frozen=True, eq=False)
class State:
    """Linear functional on ``algebra`` given by its matrix-unit values.

    Construction only checks shapes. Use :func:`verify_state` to check that
    the functional really is a state.
    """

    algebra: Algebra
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = check_vector(self.coeffs, self.algebra.dim, name="coeffs")
        object.__setattr__(self, "coeffs", frozen(coeffs))

    def __call__(self, a):
        return evaluate(self, a)

    @cached_property
    def gram(self):
        return frozen(gram_matrix(self))

    @cached_property
    def gram_psd_certificate(self):
        """Smallest eigenvalue of the Hermitian part of the Gram matrix."""
        G = self.gram
        return float(np.linalg.eigvalsh((G + G.conj().T) / 2)[0])

    def distance(self, other):
        """Largest coefficient difference between two functionals on the same algebra."""
        if other.algebra != self.algebra:
            raise StructuralError("states live on different algebras")
        return max_abs(self.coeffs - other.coeffs)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Positive semidefinite trace-one matrix on C^n."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        rho = check_square(self.matrix, name="density matrix")
        tol = check_tol(self.tol)
        if max_abs(rho - rho.conj().T) > tol:
            raise ValidationError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1) > tol:
            raise ValidationError(f"density matrix has trace {np.trace(rho):.6g}, expected 1")
        if np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0] < -tol:
            raise ValidationError("density matrix is not positive semidefinite")
        object.__setattr__(self, "matrix", frozen(rho))

    @property
    def hilbert_dim(self):
        return self.matrix.shape[0]


def evaluate(omega, a):
    """``omega(a)`` by linear extension over matrix-unit coordinates."""
    if not isinstance(a, Element):
        raise StructuralError(f"expected an Element, got {type(a).__name__}")
    if a.algebra != omega.algebra:
        raise StructuralError("element and state live on different algebras")
    return complex(a.coords @ omega.coeffs)


def gram_matrix(omega):
    """``G_ij = omega(e_i^* e_j)``; block diagonal with blocks ``I (x) W``.

    ``W[q, s] = omega(e_qs)`` for the block, since
    ``e_pq^* e_rs = delta_pr e_qs``.
    """
    A = omega.algebra
    G = np.zeros((A.dim, A.dim), dtype=complex)
    for off, n in zip(A.offsets, A.block_dims):
        W = omega.coeffs[off:off + n * n].reshape(n, n)
        G[off:off + n * n, off:off + n * n] = np.kron(np.eye(n), W)
    return G


def verify_state(omega, tol=DEFAULT_TOL, seed=0, n_pairs=100):
    """Certify unitality, Hermiticity and positivity of the Gram matrix, and Cauchy-Schwarz.

    Cauchy-Schwarz ``|omega(b^* a)|^2 <= omega(b^* b) omega(a^* a)`` is
    spot-checked on ``n_pairs`` seeded random unit-coordinate pairs.
    Boundedness needs no check in finite dimension.
    """
    tol = check_tol(tol)
    if np.shape(omega.coeffs) != (omega.algebra.dim,):
        raise StructuralError("coefficient vector length does not match the algebra")
    G = gram_matrix(omega)
    herm = G - G.conj().T
    min_eig = float(np.linalg.eigvalsh((G + G.conj().T) / 2)[0])

    rng = np.random.default_rng(seed)
    shape = (n_pairs, omega.algebra.dim)
    X = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    Y = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    cross = np.einsum("ni,ij,nj->n", Y.conj(), G, X)
    yy = np.einsum("ni,ij,nj->n", Y.conj(), G, Y).real
    xx = np.einsum("ni,ij,nj->n", X.conj(), G, X).real
    cs = np.maximum(np.abs(cross) ** 2 - yy * xx, 0.0)

    return Certificate(
        tol,
        {
            "unitality": abs(evaluate(omega, omega.algebra.unit()) - 1),
            "hermitian": max_abs(herm),
            "positivity": max(0.0, -min_eig),
            "cauchy_schwarz": float(cs.max()) if cs.size else 0.0,
        },
    )


def check_valid_state(omega, tol=DEFAULT_TOL):
    """Raise :class:`ValidationError` unless ``omega`` passes :func:`verify_state`."""
    cert = verify_state(omega, tol)
    if not cert.passed:
        bad = {k: v for k, v in cert.violations.items() if v > cert.tol}
        raise ValidationError(f"not a state: violations {bad}")
    return omega


def pullback_state(omega, f):
    """``omega o f`` for a verified morphism ``f`` into ``omega.algebra``."""
    if f.target != omega.algebra:
        raise StructuralError("morphism target is not the state's algebra")
    if not f.verified:
        raise StructuralError("pullback requires a verified morphism")
    # (omega o f)(e'_i) = sum_k M[k, i] omega(e_k)
    return State(f.source, f.matrix.T @ omega.coeffs)


def state_from_density_matrix(rho):
    """``omega_rho(a) = tr(rho a)`` on B(C^n).

    ``omega(e_pq) = rho_qp``, so the coefficients are ``rho^T`` flattened.
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    n = rho.hilbert_dim
    return State(Algebra.full(n), rho.matrix.T.ravel())


def density_matrix_from_state(omega, tol=DEFAULT_TOL):
    if not omega.algebra.is_single_block:
        raise UnsupportedStructureError("density matrices are only supported for single-block algebras")
    n = omega.algebra.block_dims[0]
    return DensityMatrix(omega.coeffs.reshape(n, n).T, tol=tol)


def vector_state(vec):
    """``a -> <v, a v>`` on B(C^n) for a unit vector ``v``."""
    v = check_vector(vec, name="vector")
    if abs(np.linalg.norm(v) - 1) > DEFAULT_TOL:
        raise ValidationError("vector state needs a unit vector")
    return state_from_density_matrix(np.outer(v, v.conj()))


def block_mixture_state(algebra, densities, weights):
    """``a -> sum_k w_k tr(rho_k a_k)`` on a multi-block algebra."""
    weights = np.asarray(weights, dtype=float)
    if len(densities) != len(algebra.block_dims) or weights.shape != (len(algebra.block_dims),):
        raise StructuralError("need one density matrix and one weight per block")
    if np.any(weights < 0) or abs(weights.sum() - 1) > DEFAULT_TOL:
        raise ValidationError("block weights must be a probability vector")
    parts = []
    for rho, w, n in zip(densities, weights, algebra.block_dims):
        if not isinstance(rho, DensityMatrix):
            rho = DensityMatrix(rho)
        if rho.hilbert_dim != n:
            raise StructuralError(f"density of size {rho.hilbert_dim} for block of size {n}")
        parts.append(w * rho.matrix.T.ravel())
    return State(algebra, np.concatenate(parts))
