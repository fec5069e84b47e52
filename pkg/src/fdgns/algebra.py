"""Finite-dimensional C*-algebras as direct sums of full matrix blocks.

An :class:`Algebra` with ``block_dims = (n_1, ..., n_k)`` is
``M_{n_1}(C) + ... + M_{n_k}(C)``. Its linear basis is the set of matrix
units ``e^{(i)}_{pq}`` enumerated block-major, then row-major, so the
coordinate vector of an element is the concatenation of its row-major
flattened blocks.

*-homomorphisms are stored as dense matrices acting on these coordinates
and are never trusted: :func:`verify_morphism` checks the axioms.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property
import numbers

import numpy as np

from ._validation import (
    DEFAULT_TOL,
    check_same_algebra,
    check_square,
    check_tol,
    check_vector,
    frozen,
    is_unitary_matrix,
    max_abs,
)
from .certificates import Certificate
from .exceptions import StructuralError, UnsupportedStructureError, ValidationError

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Algebra:
    """Direct sum of full complex matrix algebras."""

    block_dims: tuple

    def __post_init__(self):
        dims = tuple(self.block_dims)
        if not dims:
            raise ValidationError("an algebra needs at least one block")
        for n in dims:
            if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
                raise ValidationError(f"block dimensions must be positive integers, got {n!r}")
        object.__setattr__(self, "block_dims", tuple(int(n) for n in dims))

    @classmethod
    def full(cls, n):
        """The full matrix algebra B(C^n)."""
        return cls((n,))

    def __repr__(self):
        return "Algebra(" + " + ".join(f"M{n}" for n in self.block_dims) + ")"

    @property
    def dim(self):
        return sum(n * n for n in self.block_dims)

    @property
    def is_single_block(self):
        return len(self.block_dims) == 1

    @cached_property
    def offsets(self):
        """Coordinate offset of each block."""
        return tuple(int(x) for x in np.cumsum((0,) + tuple(n * n for n in self.block_dims))[:-1])

    def basis_index(self, block, p, q):
        n = self.block_dims[block]
        if not (0 <= p < n and 0 <= q < n):
            raise StructuralError(f"matrix unit ({p}, {q}) outside block of size {n}")
        return self.offsets[block] + p * n + q

    def basis_label(self, i):
        """Inverse of :meth:`basis_index`: ``(block, p, q)``."""
        if not 0 <= i < self.dim:
            raise StructuralError(f"basis index {i} out of range for dim {self.dim}")
        for block, (off, n) in enumerate(zip(self.offsets, self.block_dims)):
            if i < off + n * n:
                p, q = divmod(i - off, n)
                return block, p, q
        raise AssertionError("unreachable")

    def basis_element(self, i):
        coords = np.zeros(self.dim, dtype=complex)
        coords[i] = 1.0
        return self.element(coords)

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def element(self, coords):
        """Build an element from its matrix-unit coordinates."""
        coords = check_vector(coords, self.dim, name="coords")
        blocks = [
            coords[off:off + n * n].reshape(n, n)
            for off, n in zip(self.offsets, self.block_dims)
        ]
        return Element(self, blocks)

    def from_blocks(self, blocks):
        return Element(self, blocks)

    def zero(self):
        return self.element(np.zeros(self.dim))

    def unit(self):
        return Element(self, [np.eye(n) for n in self.block_dims])

    @cached_property
    def unit_coords(self):
        return frozen(self.unit().coords)

    @cached_property
    def adjoint_permutation(self):
        """Index array ``perm`` with ``e_i^* = e_{perm[i]}``."""
        perm = np.empty(self.dim, dtype=int)
        for off, n in zip(self.offsets, self.block_dims):
            idx = np.arange(n * n).reshape(n, n)
            perm[off:off + n * n] = off + idx.T.ravel()
        perm.flags.writeable = False
        return perm

    @cached_property
    def product_table(self):
        """``table[i, j] = k`` when ``e_i e_j = e_k`` and ``-1`` when the product is zero."""
        table = np.full((self.dim, self.dim), -1, dtype=int)
        for off, n in zip(self.offsets, self.block_dims):
            for p in range(n):
                for q in range(n):
                    for s in range(n):
                        table[off + p * n + q, off + q * n + s] = off + p * n + s
        table.flags.writeable = False
        return table

    def left_multiplication(self, a):
        """Matrix of ``x -> a x`` on coordinates."""
        if a.algebra != self:
            raise StructuralError("element belongs to a different algebra")
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for off, n, blk in zip(self.offsets, self.block_dims, a.blocks):
            # row-major vec(a x) = (a kron I) vec(x)
            out[off:off + n * n, off:off + n * n] = np.kron(blk, np.eye(n))
        return out


@dataclass(frozen=True, eq=False)
class Element:
    """A member of an :class:`Algebra`, stored block by block."""

    algebra: Algebra
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if len(blocks) != len(self.algebra.block_dims):
            raise StructuralError(
                f"expected {len(self.algebra.block_dims)} blocks, got {len(blocks)}"
            )
        checked = []
        for i, (blk, n) in enumerate(zip(blocks, self.algebra.block_dims)):
            checked.append(frozen(check_square(blk, n, name=f"block {i}")))
        object.__setattr__(self, "blocks", tuple(checked))

    @cached_property
    def coords(self):
        return frozen(np.concatenate([b.ravel() for b in self.blocks]))

    def __repr__(self):
        return f"Element({self.algebra!r}, blocks={[b.tolist() for b in self.blocks]})"

    def _check(self, other):
        if not isinstance(other, Element):
            raise StructuralError(f"expected an Element, got {type(other).__name__}")
        check_same_algebra(self, other)

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.blocks])

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return Element(self.algebra, [other * a for a in self.blocks])
        return self @ other

    def __rmul__(self, other):
        if isinstance(other, numbers.Number):
            return Element(self.algebra, [other * a for a in self.blocks])
        return NotImplemented

    def __matmul__(self, other):
        self._check(other)
        return Element(self.algebra, [a @ b for a, b in zip(self.blocks, other.blocks)])

    def adjoint(self):
        return Element(self.algebra, [a.conj().T for a in self.blocks])

    def norm(self):
        """Operator (C*) norm: largest singular value over all blocks."""
        return max(float(np.linalg.norm(b, 2)) for b in self.blocks)

    def allclose(self, other, tol=DEFAULT_TOL):
        self._check(other)
        return max_abs(self.coords - other.coords) <= tol

    def is_self_adjoint(self, tol=DEFAULT_TOL):
        return self.allclose(self.adjoint(), tol)

    def is_isometry(self, tol=DEFAULT_TOL):
        return (self.adjoint() @ self).allclose(self.algebra.unit(), tol)

    def is_unitary(self, tol=DEFAULT_TOL):
        return self.is_isometry(tol) and (self @ self.adjoint()).allclose(self.algebra.unit(), tol)


# element arithmetic as plain functions

def add(a, b):
    return a + b


def scale(c, a):
    return c * a


def multiply(a, b):
    return a @ b


def adjoint(a):
    return a.adjoint()


def unit(algebra):
    return algebra.unit()


def operator_norm(a):
    return a.norm()


def tensor_product(A, B):
    """B(C^n) (x) B(C^m) identified with B(C^{nm}) via Kronecker products."""
    if not (A.is_single_block and B.is_single_block):
        raise UnsupportedStructureError("tensor products are only supported for single-block algebras")
    return Algebra.full(A.block_dims[0] * B.block_dims[0])


def kron(a, b):
    """Elementary tensor ``a (x) b`` with lexicographic (row-major) index order."""
    AB = tensor_product(a.algebra, b.algebra)
    return Element(AB, [np.kron(a.blocks[0], b.blocks[0])])


@dataclass(frozen=True, eq=False)
class StarMorphism:
    """Linear map between algebras given on matrix-unit coordinates.

    Column ``j`` of ``matrix`` holds the target coordinates of ``f(e_j)``.
    ``verified`` is only ever set by :meth:`certify`.
    """

    source: Algebra
    target: Algebra
    matrix: np.ndarray
    verified: bool = False
    certificate: Certificate = field(default=None, repr=False)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (self.target.dim, self.source.dim):
            raise StructuralError(
                f"morphism matrix must have shape {(self.target.dim, self.source.dim)}, got {mat.shape}"
            )
        object.__setattr__(self, "matrix", frozen(mat))

    @classmethod
    def from_function(cls, source, target, fn, tol=DEFAULT_TOL):
        """Tabulate ``fn`` (blocks of a source element -> blocks of a target element) and certify."""
        cols = []
        for e in source.basis():
            img = fn(e)
            if not isinstance(img, Element):
                img = Element(target, img)
            if img.algebra != target:
                raise StructuralError("function returned an element of the wrong algebra")
            cols.append(img.coords)
        return cls(source, target, np.column_stack(cols)).certify(tol)

    def __call__(self, a):
        if a.algebra != self.source:
            raise StructuralError("element is not in the morphism's source algebra")
        return self.target.element(self.matrix @ a.coords)

    def certify(self, tol=DEFAULT_TOL):
        """Return a copy whose ``verified`` flag reflects :func:`verify_morphism`."""
        cert = verify_morphism(self, tol)
        return replace(self, verified=cert.passed, certificate=cert)

    def image_blocks(self, block=0):
        """Stack of ``f(e_j)`` restricted to one target block, shape ``(source.dim, n, n)``."""
        n = self.target.block_dims[block]
        off = self.target.offsets[block]
        return self.matrix[off:off + n * n, :].T.reshape(self.source.dim, n, n)


def verify_morphism(f, tol=DEFAULT_TOL):
    """Check that ``f`` is a unital *-homomorphism on every matrix unit.

    Returns a :class:`Certificate` with violations for ``adjoint``,
    ``multiplicative`` and ``unital``.
    """
    tol = check_tol(tol)
    src, tgt = f.source, f.target
    if np.shape(f.matrix) != (tgt.dim, src.dim):
        raise StructuralError("morphism matrix shape does not match its algebras")
    M = np.asarray(f.matrix)

    adj_violation = 0.0
    prod_violation = 0.0
    table = src.product_table
    for block in range(len(tgt.block_dims)):
        imgs = f.image_blocks(block)
        # f(e_i^*) against f(e_i)^*
        imgs_of_adj = imgs[src.adjoint_permutation]
        adj_violation = max(adj_violation, max_abs(imgs_of_adj - imgs.conj().transpose(0, 2, 1)))

        products = np.einsum("iab,jbc->ijac", imgs, imgs)
        expected = np.zeros_like(products)
        nz = table >= 0
        expected[nz] = imgs[table[nz]]
        prod_violation = max(prod_violation, max_abs(products - expected))

    unit_violation = max_abs(M @ src.unit_coords - tgt.unit_coords)
    return Certificate(
        tol,
        {"adjoint": adj_violation, "multiplicative": prod_violation, "unital": unit_violation},
    )


def compose_morphisms(f, g):
    """``f o g`` (apply ``g`` first)."""
    if g.target != f.source:
        raise StructuralError(f"cannot compose: {g.target!r} is not {f.source!r}")
    return StarMorphism(g.source, f.target, f.matrix @ g.matrix, verified=f.verified and g.verified)


# constructor catalog

def identity(A):
    return StarMorphism(A, A, np.eye(A.dim)).certify()


def block_embed(n, m):
    """``a -> diag(a, ..., a)`` (``m`` copies) from B(C^n) into B(C^{nm})."""
    _check_positive(n, "n")
    _check_positive(m, "m")
    eye = np.eye(m)
    return StarMorphism.from_function(
        Algebra.full(n), Algebra.full(n * m), lambda a: [np.kron(eye, a.blocks[0])]
    )


def tensor_left_inclusion(n, m):
    """``a -> a (x) 1`` from B(C^n) into B(C^n) (x) B(C^m) = B(C^{nm})."""
    _check_positive(n, "n")
    _check_positive(m, "m")
    eye = np.eye(m)
    return StarMorphism.from_function(
        Algebra.full(n), Algebra.full(n * m), lambda a: [np.kron(a.blocks[0], eye)]
    )


def conjugate_by_unitary(u, tol=DEFAULT_TOL):
    """``a -> u a u^*`` on B(C^n)."""
    u = check_square(u, name="u")
    if not is_unitary_matrix(u, tol):
        raise ValidationError("conjugating matrix is not unitary")
    n = u.shape[0]
    uh = u.conj().T
    return StarMorphism.from_function(
        Algebra.full(n), Algebra.full(n), lambda a: [u @ a.blocks[0] @ uh]
    )


def direct_sum_embed(A):
    """``(a_1, ..., a_k) -> diag(a_1, ..., a_k)`` from ``A`` into B(C^{n_1+...+n_k})."""
    N = sum(A.block_dims)

    def fn(a):
        out = np.zeros((N, N), dtype=complex)
        pos = 0
        for blk in a.blocks:
            k = blk.shape[0]
            out[pos:pos + k, pos:pos + k] = blk
            pos += k
        return [out]

    return StarMorphism.from_function(A, Algebra.full(N), fn)


def _check_positive(n, name):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise ValidationError(f"{name} must be a positive integer, got {n!r}")


_CATALOG = {
    "identity": identity,
    "block_embed": block_embed,
    "tensor_left_inclusion": tensor_left_inclusion,
    "conjugate_by_unitary": conjugate_by_unitary,
    "direct_sum_embed": direct_sum_embed,
}


def morphism_catalog(kind, **params):
    """Build a catalog morphism by name, e.g. ``morphism_catalog("block_embed", n=2, m=2)``."""
    try:
        ctor = _CATALOG[kind]
    except KeyError:
        raise ValidationError(f"unknown morphism kind {kind!r}; known: {sorted(_CATALOG)}") from None
    return ctor(**params)


CATALOG_KINDS = tuple(_CATALOG)
