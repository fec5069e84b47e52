"""The GNS construction and the intertwiners built from it.

Hilbert spaces are represented by orthonormal coordinates. For a state
``omega`` the quotient ``A / N_omega`` gets the basis ``[q_i]`` with
``q_i = v_i / sqrt(lambda_i)`` for the positive eigenpairs of the Gram
matrix, so that ``<[x], [y]>_omega = x^H G y`` becomes the Euclidean inner
product. No completion is needed in finite dimension.

Several operations accept an existing :class:`GnsRep` instead of
recomputing one. Two states that agree only up to rounding may be given
different orthonormal bases when the Gram spectrum is degenerate, and
matrix identities between intertwiners only make sense in one fixed basis
per Hilbert space. A supplied ``GnsRep`` is checked against the state it
stands in for (``STATE_TOL``).
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._validation import DEFAULT_TOL, check_complex_array, check_tol, check_vector, frozen, max_abs
from .algebra import Algebra, StarMorphism, verify_morphism
from .certificates import Certificate
from .exceptions import PreconditionError, StructuralError
from .states import State, check_valid_state, pullback_state

NULL_TOL = 1e-9
STATE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PointedRep:
    """Representation ``pi`` of ``algebra`` on C^d with a marked unit vector.

    ``pi`` has shape ``(algebra.dim, d, d)`` and holds the images of the
    matrix units.
    """

    algebra: Algebra
    pi: np.ndarray
    omega_vec: np.ndarray

    def __post_init__(self):
        pi = check_complex_array(self.pi, ndim=3, name="pi")
        if pi.shape[0] != self.algebra.dim or pi.shape[1] != pi.shape[2]:
            raise StructuralError(
                f"pi must have shape ({self.algebra.dim}, d, d), got {pi.shape}"
            )
        vec = check_vector(self.omega_vec, pi.shape[1], name="omega_vec")
        object.__setattr__(self, "pi", frozen(pi))
        object.__setattr__(self, "omega_vec", frozen(vec))

    @classmethod
    def from_morphism(cls, f, omega_vec):
        """Pointed representation from a *-homomorphism into a single-block algebra."""
        if not f.target.is_single_block:
            raise StructuralError("a representation must land in a single-block algebra B(C^d)")
        return cls(f.source, f.image_blocks(0), omega_vec)

    @property
    def hilbert_dim(self):
        return self.pi.shape[1]

    def as_morphism(self):
        d = self.hilbert_dim
        return StarMorphism(self.algebra, Algebra.full(d), self.pi.reshape(self.algebra.dim, d * d).T)

    def __call__(self, a):
        """``pi(a)`` as a d x d matrix."""
        if a.algebra != self.algebra:
            raise StructuralError("element is not in the represented algebra")
        return np.tensordot(a.coords, self.pi, axes=1)

    def verify(self, tol=DEFAULT_TOL):
        """*-homomorphism laws of ``pi`` plus ``||Omega|| = 1``."""
        cert = verify_morphism(self.as_morphism(), tol)
        violations = dict(cert.violations)
        violations["unit_vector"] = abs(np.linalg.norm(self.omega_vec) - 1)
        return Certificate(cert.tol, violations)


@dataclass(frozen=True, eq=False)
class GnsRep:
    """Output of :func:`gns_construct`.

    ``embed`` (``dim x d``) holds representatives of an orthonormal basis
    of the quotient; ``null_basis`` spans the null space ``N_omega``.
    """

    state: State
    gram: np.ndarray
    eigenvalues: np.ndarray
    embed: np.ndarray
    null_basis: np.ndarray
    rep: PointedRep

    @property
    def quotient_dim(self):
        return self.embed.shape[1]

    @property
    def null_dim(self):
        return self.null_basis.shape[1]

    @property
    def algebra(self):
        return self.state.algebra

    @cached_property
    def coord_map(self):
        """``embed^H G``: element coordinates to quotient coordinates."""
        return frozen(self.embed.conj().T @ self.gram)

    def quotient_coords(self, x):
        """Coordinates of the class ``[x]`` for element coordinates ``x`` (rows or a vector)."""
        x = np.asarray(x, dtype=complex)
        return x @ self.coord_map.T if x.ndim == 2 else self.coord_map @ x

    def representative(self, z):
        """An element coordinate vector in the class with quotient coordinates ``z``."""
        z = np.asarray(z, dtype=complex)
        return z @ self.embed.T if z.ndim == 2 else self.embed @ z


@dataclass(frozen=True, eq=False)
class Intertwiner:
    """Linear map ``L`` between the spaces of two pointed representations of one algebra."""

    source: PointedRep
    target: PointedRep
    L: np.ndarray
    tol: float = DEFAULT_TOL
    certificate: Certificate = field(init=False, repr=False)

    def __post_init__(self):
        if self.source.algebra != self.target.algebra:
            raise StructuralError("intertwiner endpoints represent different algebras")
        L = check_complex_array(self.L, ndim=2, name="L")
        shape = (self.target.hilbert_dim, self.source.hilbert_dim)
        if L.shape != shape:
            raise StructuralError(f"L must have shape {shape}, got {L.shape}")
        tol = check_tol(self.tol)
        object.__setattr__(self, "L", frozen(L))
        object.__setattr__(self, "tol", tol)
        object.__setattr__(self, "certificate", _intertwiner_certificate(self.source, self.target, L, tol))

    @property
    def intertwines(self):
        return self.certificate.law_passed("intertwines")

    @property
    def is_isometry(self):
        return self.certificate.law_passed("isometry")

    @property
    def is_unitary(self):
        return self.certificate.law_passed("unitary")

    @property
    def preserves_point(self):
        return self.certificate.law_passed("preserves_point")

    @property
    def is_pointed_morphism(self):
        """Isometric, point-preserving intertwiner: a morphism of pointed representations."""
        return self.intertwines and self.is_isometry and self.preserves_point


def _intertwiner_certificate(source, target, L, tol):
    lhs = np.einsum("ab,kbc->kac", L, source.pi)
    rhs = np.einsum("kab,bc->kac", target.pi, L)
    gram = L.conj().T @ L
    cogram = L @ L.conj().T
    isometry = max_abs(gram - np.eye(gram.shape[0]))
    return Certificate(
        tol,
        {
            "intertwines": max_abs(lhs - rhs),
            "isometry": isometry,
            "unitary": max(isometry, max_abs(cogram - np.eye(cogram.shape[0]))),
            "preserves_point": max_abs(L @ source.omega_vec - target.omega_vec),
        },
    )


def gns_construct(omega, tol=DEFAULT_TOL, null_tol=NULL_TOL):
    """GNS triple ``(pi_omega, H_omega, [1])`` of a state.

    Eigenvalues at most ``null_tol * max(lambda_max, 1)`` span the null
    space. ``pi_omega(a)_ij = q_i^H G vec(a q_j)`` and
    ``Omega_i = q_i^H G vec(1)``.
    """
    check_valid_state(omega, tol)
    A = omega.algebra
    G = np.asarray(gram_matrix_hermitian(omega))
    lam, vecs = np.linalg.eigh(G)
    lam, vecs = lam[::-1], vecs[:, ::-1]
    cutoff = null_tol * max(float(lam[0]), 1.0)
    positive = lam > cutoff
    embed = vecs[:, positive] / np.sqrt(lam[positive])
    null_basis = vecs[:, ~positive]
    embed = embed * _phases(embed, G, A.unit_coords)

    P = embed.conj().T @ G
    pi = np.empty((A.dim, embed.shape[1], embed.shape[1]), dtype=complex)
    for k, e in enumerate(A.basis()):
        pi[k] = P @ A.left_multiplication(e) @ embed
    omega_vec = P @ A.unit_coords
    rep = PointedRep(A, pi, omega_vec)
    return GnsRep(omega, frozen(G), lam.copy(), frozen(embed), frozen(null_basis), rep)


def _phases(embed, G, unit):
    """Unit scalars making each ``Omega_i = q_i^H G 1`` real and nonnegative.

    Columns orthogonal to ``[1]`` get their largest entry real and positive
    instead, so the basis does not depend on eigensolver sign conventions.
    """
    # scaling q_i by c turns Omega_i into conj(c) Omega_i
    overlaps = embed.conj().T @ G @ unit
    out = np.ones(embed.shape[1], dtype=complex)
    for i, z in enumerate(overlaps):
        if abs(z) <= 1e-12:
            col = embed[:, i]
            z = np.conj(col[np.argmax(np.abs(col))])
        if abs(z) > 0:
            out[i] = z / abs(z)
    return out


def gram_matrix_hermitian(omega):
    """Gram matrix with rounding-level anti-Hermitian part removed."""
    G = omega.gram
    return (G + G.conj().T) / 2


def _matching_gns(gns, omega, what):
    if gns is None:
        return gns_construct(omega)
    if gns.algebra != omega.algebra:
        raise StructuralError(f"{what}: supplied GNS output is for a different algebra")
    dist = gns.state.distance(omega)
    if dist > STATE_TOL:
        raise PreconditionError(f"{what}: supplied GNS output is for a different state (distance {dist:.3g})")
    return gns


def pullback_pointed(f, rep):
    """``(pi o f, H, Omega)``; cyclicity is not preserved in general."""
    if not f.verified:
        raise StructuralError("pullback requires a verified morphism")
    if f.target != rep.algebra:
        raise StructuralError("morphism target is not the represented algebra")
    pi = np.einsum("ki,kab->iab", f.matrix, rep.pi)
    return PointedRep(f.source, pi, rep.omega_vec)


def gns_intertwiner(f, omega, source_gns=None, target_gns=None, tol=DEFAULT_TOL):
    """``L_f : [a'] -> [f(a')]`` from GNS(omega o f) to f^* GNS(omega).

    In quotient coordinates ``L_f = embed_omega^H G_omega M_f embed_{omega o f}``.
    """
    if not f.verified:
        raise StructuralError("L_f requires a verified morphism")
    if f.target != omega.algebra:
        raise StructuralError("morphism target is not the state's algebra")
    target_gns = _matching_gns(target_gns, omega, "target")
    source_gns = _matching_gns(source_gns, pullback_state(omega, f), "source")
    L = target_gns.coord_map @ f.matrix @ source_gns.embed
    return Intertwiner(source_gns.rep, pullback_pointed(f, target_gns.rep), L, tol=tol)


def rest(rep):
    """Vector state ``a -> <Omega, pi(a) Omega>``."""
    if isinstance(rep, GnsRep):
        rep = rep.rep
    om = rep.omega_vec
    return State(rep.algebra, np.einsum("a,kab,b->k", om.conj(), rep.pi, om))


def modification_m(rep, gns=None, tol=DEFAULT_TOL):
    """Segal comparison map ``[a] -> pi(a) Omega`` from GNS(rest(rep)) to ``rep``.

    ``rep`` may be a :class:`GnsRep`, in which case its own quotient basis
    is used for the source. Otherwise ``gns`` may supply the GNS output of
    ``rest(rep)``; it is computed when omitted.
    """
    if isinstance(rep, GnsRep):
        if gns is not None:
            raise ValueError("pass either a GnsRep or an explicit gns, not both")
        gns, rep = rep, rep.rep
    gns = _matching_gns(gns, rest(rep), "modification source")
    m = np.einsum("kab,b,kj->aj", rep.pi, rep.omega_vec, gns.embed)
    return Intertwiner(gns.rep, rep, m, tol=tol)


@dataclass(frozen=True)
class Cyclicity:
    cyclic: bool
    orbit_rank: int
    hilbert_dim: int

    def __bool__(self):
        return self.cyclic


def is_cyclic(rep, tol=DEFAULT_TOL):
    """Rank of ``[pi(e_1) Omega ... pi(e_dim) Omega]`` at threshold ``tol * sigma_max``."""
    if isinstance(rep, GnsRep):
        rep = rep.rep
    orbit = np.einsum("kab,b->ak", rep.pi, rep.omega_vec)
    s = np.linalg.svd(orbit, compute_uv=False)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return Cyclicity(rank == rep.hilbert_dim, rank, rep.hilbert_dim)


@dataclass(frozen=True)
class HomResult:
    count: int
    morphism: Intertwiner = None


def hom_count_pointed(source, target, tol=STATE_TOL):
    """Number of pointed-representation morphisms from a cyclic ``source`` to ``target``.

    There is exactly one when the two vector states agree (within ``tol``),
    namely ``m_target o m_source^{-1}``, and none otherwise.
    """
    src_gns = source if isinstance(source, GnsRep) else None
    src_rep = source.rep if src_gns is not None else source
    if src_rep.algebra != target.algebra:
        raise StructuralError("source and target represent different algebras")
    if not is_cyclic(src_rep):
        raise PreconditionError("source representation is not cyclic")
    omega = src_gns.state if src_gns is not None else rest(src_rep)
    if rest(target).distance(omega) > tol:
        return HomResult(0)
    if src_gns is None:
        src_gns = gns_construct(omega)
        m_src = modification_m(src_rep, gns=src_gns).L
    else:
        m_src = np.eye(src_gns.quotient_dim)
    m_tgt = modification_m(target, gns=src_gns).L
    # m_src is unitary because src_rep is cyclic
    return HomResult(1, Intertwiner(src_rep, target, m_tgt @ m_src.conj().T))


def isometry_equivalences(L, seed=0, n=100, tol=DEFAULT_TOL):
    """The three equivalent isometry conditions, each evaluated on its own.

    Returns booleans for ``L^H L = 1``, norm preservation on ``n`` seeded
    vectors and inner-product preservation on ``n`` seeded pairs.
    """
    L = np.asarray(L, dtype=complex)
    d = L.shape[1]
    rng = np.random.default_rng(seed)
    psi = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    phi = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    phi /= np.linalg.norm(phi, axis=1, keepdims=True)
    Lpsi, Lphi = psi @ L.T, phi @ L.T
    norms = np.abs(np.linalg.norm(Lpsi, axis=1) - np.linalg.norm(psi, axis=1))
    inner = np.abs(np.einsum("ni,ni->n", Lpsi.conj(), Lphi) - np.einsum("ni,ni->n", psi.conj(), phi))
    return {
        "adjoint": max_abs(L.conj().T @ L - np.eye(d)) <= tol,
        "norms": float(norms.max()) <= tol,
        "inner_products": float(inner.max()) <= tol,
    }
