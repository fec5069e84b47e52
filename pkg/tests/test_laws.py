import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fdgns import (
    Algebra,
    PointedRep,
    block_embed,
    compose_morphisms,
    conjugate_by_unitary,
    gns_construct,
    gns_intertwiner,
    hom_count_pointed,
    identity,
    kron,
    modification_m,
    pullback_pointed,
    pullback_state,
    rest,
    state_from_density_matrix,
    tensor_left_inclusion,
    vector_state,
    verify_state,
)
from fdgns.laws import (
    MAX_WITNESSES,
    SWEEP_CHECKS,
    InstanceGenerator,
    LawReport,
    check_definition_519,
    check_oplax_composition,
    check_oplax_gns,
    check_universal_property,
    check_zigzag,
    compose_chain,
    definition_519_violations,
    modification_coherence_violation,
    oplax_composition_violation,
    oplax_identity_violation,
    resolve_tol,
    rest_after_gns_violation,
    rest_naturality_violation,
    run_all,
    states_functor_violation,
    universal_property_instance,
    universal_property_violation,
    zigzag_second_violation,
)

from conftest import DOWN, EPR, random_density

TOP_LEVEL_IDS = [
    "states_functor",
    "oplax_identity",
    "oplax_composition",
    "rest_naturality",
    "rest_after_gns",
    "modification_coherence",
    "zigzag",
    "definition_519",
    "universal_property",
]


@pytest.fixture(scope="module")
def sweep():
    return run_all(seed=3, instances=15)


class TestResolveTol:
    def test_defaults(self):
        assert resolve_tol("zigzag.second") == 1e-9
        assert resolve_tol("oplax_composition") == 1e-8

    def test_precedence(self):
        overrides = {"*": 1.0, "zigzag": 2.0, "zigzag.first": 3.0}
        assert resolve_tol("zigzag.first", overrides) == 3.0
        assert resolve_tol("zigzag.second", overrides) == 2.0
        assert resolve_tol("states_functor", overrides) == 1.0


class TestGenerator:
    def test_same_seed_same_instances(self):
        a, b = InstanceGenerator(seed=9), InstanceGenerator(seed=9)
        la, fa, _ = a.composable_pair(a.rng("x", 4))
        lb, fb, _ = b.composable_pair(b.rng("x", 4))
        assert la == lb
        np.testing.assert_array_equal(fa.matrix, fb.matrix)

    def test_streams_independent_of_order(self):
        gen = InstanceGenerator(seed=1)
        first = gen.state(gen.rng("k", 2), Algebra.full(3)).coeffs
        gen.state(gen.rng("k", 0), Algebra.full(3))
        again = gen.state(gen.rng("k", 2), Algebra.full(3)).coeffs
        np.testing.assert_array_equal(first, again)

    @given(st.integers(0, 2**32 - 1))
    def test_chains_are_verified_and_small(self, seed):
        gen = InstanceGenerator(seed=seed)
        labels, f, fp = gen.composable_pair(gen.rng("chain", 0))
        assert f.verified and fp.verified and f.source == fp.target
        assert max(f.target.block_dims) <= gen.max_block
        assert 2 <= len(labels) <= gen.max_depth

    @given(st.integers(0, 2**32 - 1))
    def test_states_are_valid(self, seed):
        gen = InstanceGenerator(seed=seed, pure_fraction=0.5)
        rng = gen.rng("state", 0)
        omega = gen.state(rng, gen.algebra(rng))
        assert verify_state(omega).passed

    @given(st.integers(0, 2**32 - 1))
    def test_pointed_reps_are_valid(self, seed):
        gen = InstanceGenerator(seed=seed)
        rng = gen.rng("rep", 0)
        A = gen.algebra(rng)
        _, rep = gen.pointed_rep(rng, A)
        assert rep.algebra == A and rep.verify(1e-9).passed

    def test_compose_chain_order(self):
        be, inc = block_embed(2, 2), tensor_left_inclusion(4, 2)
        np.testing.assert_array_equal(compose_chain([be, inc]).matrix, compose_morphisms(inc, be).matrix)


class TestFixtureLaws:
    def test_epr_inclusion_after_block_embed(self, epr_state, epr_rep):
        inc, be = tensor_left_inclusion(2, 2), block_embed(1, 2)
        omega8 = vector_state(np.kron(EPR, [1.0, 0.0]))
        inc8 = tensor_left_inclusion(4, 2)
        assert states_functor_violation(omega8, inc8, inc) <= 1e-12
        assert oplax_composition_violation(omega8, inc8, inc) <= 1e-9
        assert oplax_composition_violation(epr_state, inc, be) <= 1e-9
        assert oplax_identity_violation(epr_state) <= 1e-12
        assert rest_naturality_violation(inc, epr_rep) <= 1e-12
        assert modification_coherence_violation(inc, epr_rep) <= 1e-9

    def test_definition_519_on_epr(self, epr_state, epr_rep):
        v = definition_519_violations(epr_state, tensor_left_inclusion(2, 2), block_embed(1, 2), epr_rep)
        assert sorted(v) == [f"definition_519.{c}" for c in "abcdefg"]
        assert max(v.values()) <= 1e-9

    def test_universal_property_fixtures(self, omega_up, up_rep, qubit):
        assert universal_property_violation(omega_up, up_rep) <= 1e-9
        down = PointedRep.from_morphism(identity(qubit), DOWN)
        assert universal_property_violation(omega_up, down) == 0.0


class TestWorkedInstances:
    def test_states_functor_inclusion_after_block_embed(self, epr_state):
        assert states_functor_violation(epr_state, tensor_left_inclusion(2, 2), block_embed(1, 2)) <= 1e-12

    def test_oplax_inclusion_after_conjugation(self, epr_state):
        u = np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)
        assert oplax_composition_violation(epr_state, tensor_left_inclusion(2, 2), conjugate_by_unitary(u)) <= 1e-8

    def test_identity_pairs_exact(self, epr_state):
        ident = identity(epr_state.algebra)
        assert states_functor_violation(epr_state, ident, ident) == 0
        assert oplax_identity_violation(epr_state) <= 1e-14

    def test_rest_naturality_epr(self, epr_rep):
        i1 = tensor_left_inclusion(2, 2)
        half = state_from_density_matrix(np.eye(2) / 2)
        assert rest(pullback_pointed(i1, epr_rep)).distance(half) <= 1e-12
        assert pullback_state(rest(epr_rep), i1).distance(half) <= 1e-12

    def test_rest_after_gns_maximally_mixed(self):
        omega = state_from_density_matrix(np.eye(3) / 3)
        g = gns_construct(omega)
        direct = [g.rep.omega_vec.conj() @ p @ g.rep.omega_vec for p in g.rep.pi]
        np.testing.assert_allclose(direct, omega.coeffs, atol=1e-10)
        assert rest_after_gns_violation(omega) <= 1e-10

    def test_coherence_epr_both_sides(self, qubit, epr_rep, epr_state):
        i1 = tensor_left_inclusion(2, 2)
        g, g1 = gns_construct(epr_state), gns_construct(pullback_state(epr_state, i1))
        Lf = gns_intertwiner(i1, epr_state, source_gns=g1, target_gns=g)
        lhs = modification_m(epr_rep, gns=g).L @ Lf.L
        rhs = modification_m(pullback_pointed(i1, epr_rep), gns=g1).L
        # oracle: [a] -> pi(a (x) 1) Psi
        for a in qubit.basis():
            expected = kron(a, qubit.unit()).blocks[0] @ EPR
            z = g1.quotient_coords(a.coords)
            np.testing.assert_allclose(lhs @ z, expected, atol=1e-12)
            np.testing.assert_allclose(rhs @ z, expected, atol=1e-12)
        assert modification_coherence_violation(identity(epr_rep.algebra), epr_rep) <= 1e-12

    def test_zigzag_full_rank_qubit(self):
        rng = np.random.default_rng(8)
        omega = state_from_density_matrix(random_density(rng, 2))
        g = gns_construct(omega)
        # explicit Segal map: column j is pi(e_k) Omega summed against the representatives
        segal = np.column_stack([sum(g.embed[k, j] * (g.rep.pi[k] @ g.rep.omega_vec) for k in range(4)) for j in range(4)])
        np.testing.assert_allclose(segal, np.eye(4), atol=1e-9)
        assert zigzag_second_violation(omega) <= 1e-9

    def test_definition_519_on_spin_up(self, omega_up, up_rep):
        v = definition_519_violations(omega_up, identity(omega_up.algebra), identity(omega_up.algebra), up_rep)
        assert max(v.values()) <= 1e-9

    def test_universal_property_epr(self, epr_rep):
        omega = rest(epr_rep)
        g = gns_construct(omega)
        result = hom_count_pointed(g, epr_rep)
        assert result.count == 1 and g.quotient_dim == 4 == epr_rep.hilbert_dim
        np.testing.assert_allclose(result.morphism.L, modification_m(epr_rep, gns=g).L, atol=1e-12)
        assert universal_property_violation(omega, epr_rep) <= 1e-9


class TestReports:
    def test_top_level_ids(self, sweep):
        assert [r.law_id for r in sweep] == TOP_LEVEL_IDS
        assert len(SWEEP_CHECKS) == 9

    def test_all_pass(self, sweep):
        for r in sweep:
            assert r.passed, r.to_dict()

    def test_bundles(self, sweep):
        by_id = {r.law_id: r for r in sweep}
        assert [s.law_id for s in by_id["zigzag"].subreports] == ["zigzag.first", "zigzag.second"]
        assert len(by_id["definition_519"].subreports) == 7
        d = by_id["zigzag"].to_dict()
        assert d["tol"] is None and len(d["subreports"]) == 2

    def test_dict_is_json_safe(self, sweep):
        text = json.dumps([r.to_dict() for r in sweep], allow_nan=False)
        assert "witnesses" in text

    def test_deterministic(self, sweep):
        again = run_all(seed=3, instances=15)
        assert [r.to_dict() for r in again] == [r.to_dict() for r in sweep]

    def test_workers_do_not_change_results(self):
        gen = InstanceGenerator(seed=5)
        one = check_definition_519(gen, 8, workers=1)
        four = check_definition_519(gen, 8, workers=4)
        assert one.to_dict() == four.to_dict()

    def test_oplax_gns_bundle(self):
        report = check_oplax_gns(InstanceGenerator(seed=2), 5)
        assert [s.law_id for s in report.subreports] == ["oplax_identity", "oplax_composition"]
        assert report.passed

    def test_zero_instances_rejected(self):
        with pytest.raises(ValueError):
            check_zigzag(InstanceGenerator(seed=0), 0)


class TestWitnesses:
    def test_impossible_tolerance_yields_witnesses(self):
        report = check_oplax_composition(InstanceGenerator(seed=0), 30, {"oplax_composition": 1e-20})
        assert not report.passed
        assert 1 <= len(report.witnesses) <= MAX_WITNESSES
        w = report.witnesses[0]
        assert w["law_id"] == "oplax_composition" and w["seed"] == 0
        assert w["violation"] > 1e-20
        assert "chain" in w["instance_description"]
        # a witness is reproducible from its seed and index
        gen = InstanceGenerator(seed=0)
        labels, _, _ = gen.composable_pair(gen.rng("oplax_composition", w["instance"]))
        assert labels == w["instance_description"]["chain"]

    def test_bundle_witness_cap(self):
        report = check_definition_519(InstanceGenerator(seed=0), 10, {"*": 0.0})
        assert not report.passed
        assert len(report.witnesses) <= MAX_WITNESSES

    def test_report_pass_logic(self):
        ok = LawReport("x", 1, 1e-10, 1e-9, 0)
        bad = LawReport("y", 1, 1e-8, 1e-9, 0)
        assert ok and not bad
        assert not LawReport("b", 1, 1e-8, None, 0, subreports=(ok, bad)).passed


class TestUniversalPropertySweep:
    def test_covers_both_counts(self):
        gen = InstanceGenerator(seed=0)
        assert check_universal_property(gen, 40).passed
        counts = set()
        for i in range(40):
            omega, rep, _ = universal_property_instance(gen, gen.rng("universal_property", i))
            counts.add(hom_count_pointed(gns_construct(omega), rep).count)
        assert counts == {0, 1}
