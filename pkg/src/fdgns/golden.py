"""The two worked examples: a spin-up qubit and one half of an EPR pair.

Basis order for B(C^2) is ``(e_uu, e_ud, e_du, e_dd)`` with ``u`` = spin
up; C^2 (x) C^2 uses ``(|uu>, |ud>, |du>, |dd>)``.
"""
import numpy as np

from ._validation import max_abs
from .algebra import Algebra, identity, tensor_left_inclusion
from .gns import PointedRep, gns_construct, gns_intertwiner, is_cyclic, modification_m
from .states import density_matrix_from_state, pullback_state, vector_state

UP = np.array([1.0, 0.0])
DOWN = np.array([0.0, 1.0])
EPR_VECTOR = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)

DEFAULT_TOLS = {"structure": 1e-9, "values": 1e-10}


def _tols(tol):
    if tol is None:
        return DEFAULT_TOLS["structure"], DEFAULT_TOLS["values"]
    return float(tol), float(tol)


def span_distance(basis, expected):
    """Spectral-norm distance between the orthogonal projectors onto two column spans."""
    def projector(M):
        if M.shape[1] == 0:
            return np.zeros((M.shape[0], M.shape[0]))
        q, _ = np.linalg.qr(M)
        return q @ q.conj().T

    return float(np.linalg.norm(projector(basis) - projector(expected), 2))


def qubit_example(tol=None):
    """GNS of the spin-up state on B(C^2) and its comparison with ``(id, C^2, |up>)``."""
    struct_tol, value_tol = _tols(tol)
    A = Algebra.full(2)
    omega = vector_state(UP)
    g = gns_construct(omega)

    # N = span{e_ud, e_dd}
    expected_null = np.eye(4)[:, [1, 3]]
    null_dist = span_distance(g.null_basis, expected_null)

    # <[a], [b]> = conj(a_uu) b_uu + conj(a_du) b_du on representatives
    expected_ip = np.diag([1.0, 0.0, 1.0, 0.0])
    computed_ip = g.coord_map.conj().T @ g.coord_map
    ip_violation = max_abs(computed_ip - expected_ip)

    rep = PointedRep.from_morphism(identity(A), UP)
    m = modification_m(rep, gns=g)
    unitary_violation = m.certificate.violations["unitary"]

    report = {
        "example": "qubit",
        "null_dim": g.null_dim,
        "quotient_dim": g.quotient_dim,
        "null_space_distance": null_dist,
        "inner_product_violation": ip_violation,
        "m_unitary": unitary_violation <= struct_tol,
        "m_unitary_violation": unitary_violation,
        "m_intertwines": m.intertwines,
    }
    report["pass"] = (
        g.null_dim == 2
        and g.quotient_dim == 2
        and null_dist <= struct_tol
        and ip_violation <= value_tol
        and report["m_unitary"]
        and report["m_intertwines"]
    )
    return report


def epr_example(tol=None):
    """Restriction of the EPR vector state to the first qubit and the induced intertwiners."""
    struct_tol, value_tol = _tols(tol)
    A = Algebra.full(4)
    omega = vector_state(EPR_VECTOR)
    i1 = tensor_left_inclusion(2, 2)
    omega1 = pullback_state(omega, i1)
    rho1 = density_matrix_from_state(omega1).matrix
    rho_violation = max_abs(rho1 - np.eye(2) / 2)
    gram_violation = max_abs(omega1.gram - np.eye(4) / 2)

    g = gns_construct(omega)
    g1 = gns_construct(omega1)
    L = gns_intertwiner(i1, omega, source_gns=g1, target_gns=g)

    rep = PointedRep.from_morphism(identity(A), EPR_VECTOR)
    m = modification_m(rep, gns=g)
    composite = m.L @ L.L
    eye = np.eye(4)
    composite_unitary = max(
        max_abs(composite.conj().T @ composite - eye), max_abs(composite @ composite.conj().T - eye)
    )
    rank = int(np.linalg.matrix_rank(composite, tol=struct_tol))

    report = {
        "example": "epr",
        "rho1": np.real(rho1).tolist(),
        "rho1_violation": rho_violation,
        "rho1_imag_max": max_abs(np.imag(rho1)),
        "gram_violation": gram_violation,
        "null_dim": g1.null_dim,
        "quotient_dim": g1.quotient_dim,
        "L_isometric": L.certificate.violations["isometry"] <= struct_tol,
        "L_isometry_violation": L.certificate.violations["isometry"],
        "L_intertwines": L.intertwines,
        "m_unitary": m.is_unitary,
        "composite_unitary": composite_unitary <= struct_tol,
        "composite_unitary_violation": composite_unitary,
        "composite_surjective": rank == 4,
        "epr_rep_cyclic": is_cyclic(rep).cyclic,
    }
    report["pass"] = (
        rho_violation <= value_tol
        and gram_violation <= value_tol
        and g1.null_dim == 0
        and g1.quotient_dim == 4
        and report["L_isometric"]
        and report["L_intertwines"]
        and report["composite_unitary"]
        and report["composite_surjective"]
    )
    return report


EXAMPLES = {"qubit": qubit_example, "epr": epr_example}


def run_example(example_id, tol=None):
    try:
        fn = EXAMPLES[example_id]
    except KeyError:
        raise ValueError(f"unknown example {example_id!r}; choose from {sorted(EXAMPLES)}") from None
    return fn(tol)
