"""Acceptance criteria, each run at its stated tolerance and time budget.

Every test appends one PASS/FAIL line to the summary printed at the end of
the pytest run.
"""
import time
from contextlib import contextmanager

import numpy as np
import pytest

from fdgns import (
    Algebra,
    PointedRep,
    State,
    StarMorphism,
    block_embed,
    gns_construct,
    gns_intertwiner,
    hom_count_pointed,
    identity,
    is_cyclic,
    modification_m,
    pullback_pointed,
    pullback_state,
    state_from_density_matrix,
    tensor_left_inclusion,
    verify_morphism,
    verify_state,
)
from fdgns.golden import span_distance
from fdgns.laws import (
    DEFAULT_MENU,
    InstanceGenerator,
    check_definition_519,
    check_modification_coherence,
    check_oplax_composition,
    check_oplax_identity,
    check_universal_property,
    check_zigzag,
    universal_property_instance,
)

from conftest import ACCEPTANCE_LINES, random_element

SEED = 0


@contextmanager
def criterion(label, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < budget
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} {label} ({elapsed:.2f}s, budget {budget:g}s)")
    assert elapsed < budget, f"{label} took {elapsed:.2f}s"


def test_ac1_spin_up_example(qubit, omega_up, up_rep):
    with criterion("AC1 spin-up example", 1.0):
        g = gns_construct(omega_up)
        assert g.null_dim == 2 and g.quotient_dim == 2
        e_ud, e_dd = np.eye(4)[:, 1], np.eye(4)[:, 3]
        assert span_distance(g.null_basis, np.column_stack([e_ud, e_dd])) <= 1e-9
        rng = np.random.default_rng(SEED)
        for _ in range(20):
            a, b = random_element(rng, qubit).blocks[0], random_element(rng, qubit).blocks[0]
            za = g.quotient_coords(a.ravel())
            zb = g.quotient_coords(b.ravel())
            expected = np.conj(a[0, 0]) * b[0, 0] + np.conj(a[1, 0]) * b[1, 0]
            assert abs(np.vdot(za, zb) - expected) <= 1e-10
        L = modification_m(up_rep, gns=g).L
        assert np.abs(L.conj().T @ L - np.eye(2)).max() <= 1e-9
        assert np.abs(L @ L.conj().T - np.eye(2)).max() <= 1e-9


def test_ac2_epr_example(epr_state, epr_rep):
    with criterion("AC2 EPR restriction example", 1.0):
        i1 = tensor_left_inclusion(2, 2)
        omega1 = pullback_state(epr_state, i1)
        assert omega1.distance(state_from_density_matrix(np.eye(2) / 2)) <= 1e-10
        assert np.abs(omega1.gram - np.eye(4) / 2).max() <= 1e-10
        g = gns_construct(epr_state)
        g1 = gns_construct(omega1)
        assert g1.null_dim == 0 and g1.quotient_dim == 4
        L = gns_intertwiner(i1, epr_state, source_gns=g1, target_gns=g).L
        assert np.abs(L.conj().T @ L - np.eye(4)).max() <= 1e-9
        composite = modification_m(epr_rep, gns=g).L @ L
        assert np.abs(composite.conj().T @ composite - np.eye(4)).max() <= 1e-9
        assert np.abs(composite @ composite.conj().T - np.eye(4)).max() <= 1e-9
        # the same map is m of the restricted representation
        m1 = modification_m(pullback_pointed(i1, epr_rep), gns=g1).L
        assert np.abs(composite - m1).max() <= 1e-9


def test_ac3_zigzag_suite():
    gen = InstanceGenerator(seed=SEED)
    assert [A.block_dims for A in gen.algebra_menu] == [(1,), (2,), (3,), (2, 3)]
    assert gen.algebra_menu == DEFAULT_MENU
    with criterion("AC3 zig-zag suite, 200 states", 30.0):
        report = check_zigzag(gen, 200, {"zigzag.first": 1e-8, "zigzag.second": 1e-9})
        first, second = report.subreports
        assert first.instances_checked == second.instances_checked == 200
        assert first.tol == 1e-8 and second.tol == 1e-9
        assert report.passed, report.to_dict()


def test_ac4_oplax_suite():
    gen = InstanceGenerator(seed=SEED)
    assert gen.max_depth == 3
    with criterion("AC4 oplax suite, 100 triples", 60.0):
        # L_id is an exact identity up to rounding of one Gram product
        ident = check_oplax_identity(gen, 100, {"oplax_identity": 1e-12})
        comp = check_oplax_composition(gen, 100, {"oplax_composition": 1e-8})
        assert ident.passed, ident.to_dict()
        assert comp.passed, comp.to_dict()


def test_ac5_coherence_and_definition_conditions():
    gen = InstanceGenerator(seed=SEED)
    with criterion("AC5 coherence and conditions (a)-(g), 100 each", 60.0):
        coherence = check_modification_coherence(gen, 100)
        conditions = check_definition_519(gen, 100)
        assert coherence.instances_checked == 100 and coherence.passed, coherence.to_dict()
        assert len(conditions.subreports) == 7
        for sub in conditions.subreports:
            assert sub.instances_checked == 100 and sub.passed, sub.to_dict()


def test_ac6_universal_property_suite():
    gen = InstanceGenerator(seed=SEED)
    with criterion("AC6 universal property, 100 pairs", 60.0):
        report = check_universal_property(gen, 100, {"universal_property": 1e-8})
        assert report.passed, report.to_dict()
        # both branches of the iff are exercised
        counts = set()
        for i in range(100):
            omega, rep, _ = universal_property_instance(gen, gen.rng("universal_property", i))
            counts.add(hom_count_pointed(gns_construct(omega), rep).count)
        assert counts == {0, 1}


def test_ac7_negative_controls(qubit):
    with criterion("AC7 negative controls", 10.0):
        transpose = StarMorphism(qubit, qubit, np.eye(4)[:, [0, 2, 1, 3]])
        assert not verify_morphism(transpose).passed

        off_diagonal = State(qubit, [0, 1, 0, 0])
        assert not verify_state(off_diagonal).passed

        rep = PointedRep.from_morphism(identity(Algebra.full(4)), np.eye(4)[0])
        pulled = pullback_pointed(block_embed(2, 2), rep)
        orbit = np.array([p @ pulled.omega_vec for p in pulled.pi])
        oracle_rank = np.linalg.matrix_rank(orbit)
        result = is_cyclic(pulled)
        assert oracle_rank == 2 < pulled.hilbert_dim
        assert not result.cyclic and result.orbit_rank == oracle_rank


@pytest.fixture(scope="module", autouse=True)
def _reset_lines():
    ACCEPTANCE_LINES.clear()
    yield
