"""Executable checks of the categorical laws satisfied by the GNS construction.

Every law is checked pointwise as a concrete matrix or coefficient
identity over seeded random instances. Instance ``i`` of law ``law_id``
draws all of its randomness from ``InstanceGenerator.rng(law_id, i)``, so a
witness (seed, law id, instance index) replays the failing instance.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import zlib

import numpy as np
from scipy.stats import unitary_group

from ._validation import max_abs
from .algebra import (
    Algebra,
    block_embed,
    compose_morphisms,
    conjugate_by_unitary,
    direct_sum_embed,
    identity,
    tensor_left_inclusion,
)
from .gns import (
    PointedRep,
    gns_construct,
    gns_intertwiner,
    hom_count_pointed,
    modification_m,
    pullback_pointed,
    rest,
)
from .states import block_mixture_state, pullback_state

DEFAULT_MENU = (
    Algebra((1,)),
    Algebra((2,)),
    Algebra((3,)),
    Algebra((2, 3)),
)
MORPHISM_KINDS = (
    "identity",
    "conjugate_by_unitary",
    "block_embed",
    "tensor_left_inclusion",
    "direct_sum_embed",
)
MAX_WITNESSES = 5

# composed-matrix identities get 1e-8, single-step identities 1e-9
TOLERANCES = {
    "states_functor": 1e-9,
    "oplax_identity": 1e-9,
    "oplax_composition": 1e-8,
    "rest_naturality": 1e-9,
    "rest_after_gns": 1e-8,
    "modification_coherence": 1e-8,
    "zigzag.first": 1e-8,
    "zigzag.second": 1e-9,
    "definition_519.a": 1e-8,
    "definition_519.b": 1e-8,
    "definition_519.c": 1e-9,
    "definition_519.d": 1e-8,
    "definition_519.e": 1e-8,
    "definition_519.f": 1e-8,
    "definition_519.g": 1e-9,
    "universal_property": 1e-8,
}


def resolve_tol(law_id, overrides=None):
    """Tolerance for ``law_id``: exact override, then its bundle's, then ``"*"``, then the default."""
    overrides = overrides or {}
    for key in (law_id, law_id.split(".")[0], "*"):
        if key in overrides:
            return float(overrides[key])
    return TOLERANCES[law_id]


@dataclass(frozen=True)
class LawReport:
    """Result of checking one law (or a bundle of sub-laws) over many instances."""

    law_id: str
    instances_checked: int
    max_violation: float
    tol: float
    seed: int
    witnesses: tuple = ()
    subreports: tuple = ()

    @property
    def passed(self):
        if self.subreports:
            return all(s.passed for s in self.subreports)
        return self.max_violation <= self.tol

    def __bool__(self):
        return self.passed

    def to_dict(self):
        out = {
            "law_id": self.law_id,
            "seed": self.seed,
            "instances": self.instances_checked,
            "max_violation": self.max_violation,
            "tol": self.tol,
            "pass": self.passed,
            "witnesses": list(self.witnesses),
        }
        if self.subreports:
            out["subreports"] = [s.to_dict() for s in self.subreports]
        return out


def _bundle(law_id, subreports):
    subreports = tuple(subreports)
    return LawReport(
        law_id=law_id,
        instances_checked=max(s.instances_checked for s in subreports),
        max_violation=max(s.max_violation for s in subreports),
        tol=None,
        seed=subreports[0].seed,
        witnesses=tuple(w for s in subreports for w in s.witnesses)[:MAX_WITNESSES],
        subreports=subreports,
    )


@dataclass(frozen=True)
class InstanceGenerator:
    """Deterministic source of random algebras, morphisms, states and pointed representations.

    States are ``rho = B^H B / tr(B^H B)`` per block with standard complex
    Gaussian ``B`` and Dirichlet block weights; a fraction of them are pure
    (vector) states so that null spaces are non-trivial.
    """

    seed: int = 0
    algebra_menu: tuple = DEFAULT_MENU
    morphism_menu: tuple = MORPHISM_KINDS
    max_depth: int = 3
    max_block: int = 6
    pure_fraction: float = 0.25

    def rng(self, law_id, index):
        key = zlib.crc32(law_id.encode())
        return np.random.default_rng(np.random.SeedSequence([self.seed, key, index]))

    def algebra(self, rng):
        return self.algebra_menu[rng.integers(len(self.algebra_menu))]

    def unitary(self, rng, n):
        if n == 1:
            return np.array([[np.exp(2j * np.pi * rng.random())]])
        return unitary_group.rvs(n, random_state=rng)

    def _density(self, rng, n, pure):
        if pure:
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            v /= np.linalg.norm(v)
            return np.outer(v, v.conj())
        B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        rho = B.conj().T @ B
        rho = (rho + rho.conj().T) / 2
        return rho / np.trace(rho).real

    def state(self, rng, algebra):
        pure = rng.random() < self.pure_fraction
        k = len(algebra.block_dims)
        if pure and k > 1 and rng.random() < 0.5:
            weights = np.zeros(k)
            weights[rng.integers(k)] = 1.0
        else:
            weights = rng.dirichlet(np.ones(k))
        densities = [self._density(rng, n, pure) for n in algebra.block_dims]
        return block_mixture_state(algebra, densities, weights)

    def _step(self, rng, source):
        """One random catalog morphism out of ``source``; returns (label, morphism)."""
        options = []
        if "identity" in self.morphism_menu:
            options.append("identity")
        if source.is_single_block:
            n = source.block_dims[0]
            if "conjugate_by_unitary" in self.morphism_menu:
                options.append("conjugate_by_unitary")
            if "block_embed" in self.morphism_menu and 2 * n <= self.max_block:
                options.append("block_embed")
            if "tensor_left_inclusion" in self.morphism_menu and 2 * n <= self.max_block:
                options.append("tensor_left_inclusion")
        elif "direct_sum_embed" in self.morphism_menu and sum(source.block_dims) <= self.max_block:
            options.append("direct_sum_embed")
        kind = options[rng.integers(len(options))]
        if kind == "identity":
            return f"identity{source.block_dims}", identity(source)
        if kind == "conjugate_by_unitary":
            n = source.block_dims[0]
            return f"conjugate_by_unitary({n})", conjugate_by_unitary(self.unitary(rng, n))
        if kind == "block_embed":
            n = source.block_dims[0]
            return f"block_embed({n},2)", block_embed(n, 2)
        if kind == "tensor_left_inclusion":
            n = source.block_dims[0]
            return f"tensor_left_inclusion({n},2)", tensor_left_inclusion(n, 2)
        return f"direct_sum_embed{source.block_dims}", direct_sum_embed(source)

    def chain(self, rng, source, length):
        """``length`` composable catalog morphisms starting at ``source``."""
        labels, maps = [], []
        for _ in range(length):
            label, f = self._step(rng, source)
            labels.append(label)
            maps.append(f)
            source = f.target
        return labels, maps

    def morphism(self, rng, source=None):
        """Random composite of 1..max_depth catalog morphisms; returns (labels, morphism)."""
        source = self.algebra(rng) if source is None else source
        depth = int(rng.integers(1, self.max_depth + 1))
        labels, maps = self.chain(rng, source, depth)
        return labels, compose_chain(maps)

    def composable_pair(self, rng):
        """``(labels, f, f_prime)`` with ``f o f_prime`` of total depth 2..max_depth."""
        source = self.algebra(rng)
        depth = int(rng.integers(2, self.max_depth + 1))
        labels, maps = self.chain(rng, source, depth)
        split = int(rng.integers(1, depth))
        return labels, compose_chain(maps[split:]), compose_chain(maps[:split])

    def pointed_rep(self, rng, algebra):
        """Random pointed representation; its vector is sometimes a basis vector (often not cyclic)."""
        depth = int(rng.integers(0, 3))
        labels, maps = self.chain(rng, algebra, depth)
        target = maps[-1].target if maps else algebra
        if not target.is_single_block:
            maps.append(direct_sum_embed(target))
            labels.append(f"direct_sum_embed{target.block_dims}")
        rep_map = compose_chain(maps) if maps else identity(algebra)
        d = rep_map.target.block_dims[0]
        if rng.random() < 0.3:
            vec = np.zeros(d, dtype=complex)
            vec[rng.integers(d)] = 1.0
        else:
            vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            vec /= np.linalg.norm(vec)
        return labels, PointedRep.from_morphism(rep_map, vec)


def compose_chain(maps):
    """Compose ``[g_1, ..., g_k]`` (applied in that order) into ``g_k o ... o g_1``."""
    out = maps[0]
    for g in maps[1:]:
        out = compose_morphisms(g, out)
    return out


def _run(law_ids, gen, n, instance_fn, tol_overrides=None, workers=1):
    """Evaluate ``instance_fn(gen, rng) -> (violations, description)`` on ``n`` instances.

    ``violations`` maps each id in ``law_ids`` to a nonnegative float.
    Results are merged in instance order whatever ``workers`` is.
    """
    if n < 1:
        raise ValueError("need at least one instance")
    rng_key = law_ids[0].split(".")[0]

    def one(i):
        return instance_fn(gen, gen.rng(rng_key, i))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(n)))
    else:
        results = [one(i) for i in range(n)]

    reports = []
    for law_id in law_ids:
        tol = resolve_tol(law_id, tol_overrides)
        worst = 0.0
        witnesses = []
        for i, (violations, description) in enumerate(results):
            v = float(violations[law_id])
            worst = max(worst, v)
            if not v <= tol and len(witnesses) < MAX_WITNESSES:
                witnesses.append(
                    {"law_id": law_id, "seed": gen.seed, "instance": i, "violation": v, "instance_description": description}
                )
        reports.append(LawReport(law_id, n, worst, tol, gen.seed, tuple(witnesses)))
    return reports


# per-instance computations, usable directly on fixtures

def states_functor_violation(omega, f, f_prime):
    """Identity and composition laws of pulling back states."""
    ident = pullback_state(omega, identity(omega.algebra)).distance(omega)
    one_step = pullback_state(omega, compose_morphisms(f, f_prime))
    two_step = pullback_state(pullback_state(omega, f), f_prime)
    return max(ident, one_step.distance(two_step))


def oplax_identity_violation(omega, gns=None):
    gns = gns_construct(omega) if gns is None else gns
    L = gns_intertwiner(identity(omega.algebra), omega, target_gns=gns)
    return max_abs(L.L - np.eye(gns.quotient_dim))


def _cert_violation(intertwiner, laws=("intertwines", "isometry", "preserves_point")):
    return max(intertwiner.certificate.violations[k] for k in laws)


def oplax_composition_violation(omega, f, f_prime):
    """``L_{f o f'} = L_f L_{f'}`` with every ``L`` an isometric, point-preserving intertwiner."""
    g0 = gns_construct(omega)
    omega_f = pullback_state(omega, f)
    g1 = gns_construct(omega_f)
    g2 = gns_construct(pullback_state(omega_f, f_prime))
    Lf = gns_intertwiner(f, omega, source_gns=g1, target_gns=g0)
    Lfp = gns_intertwiner(f_prime, omega_f, source_gns=g2, target_gns=g1)
    Lcomp = gns_intertwiner(compose_morphisms(f, f_prime), omega, source_gns=g2, target_gns=g0)
    return max(
        max_abs(Lcomp.L - Lf.L @ Lfp.L),
        _cert_violation(Lf),
        _cert_violation(Lfp),
        _cert_violation(Lcomp),
    )


def rest_naturality_violation(f, rep):
    return rest(pullback_pointed(f, rep)).distance(pullback_state(rest(rep), f))


def rest_after_gns_violation(omega, gns=None):
    gns = gns_construct(omega) if gns is None else gns
    return rest(gns.rep).distance(omega)


def zigzag_second_violation(omega, gns=None):
    gns = gns_construct(omega) if gns is None else gns
    return max_abs(modification_m(gns).L - np.eye(gns.quotient_dim))


def modification_coherence_violation(f, rep):
    """``f^*(m_A(R)) o L_f(rest R) = m_{A'}(f^* R)`` as matrices."""
    omega = rest(rep)
    g = gns_construct(omega)
    g_f = gns_construct(pullback_state(omega, f))
    Lf = gns_intertwiner(f, omega, source_gns=g_f, target_gns=g)
    lhs = modification_m(rep, gns=g).L @ Lf.L
    rhs = modification_m(pullback_pointed(f, rep), gns=g_f).L
    return max_abs(lhs - rhs)


def universal_property_violation(omega, rep, tol=TOLERANCES["universal_property"]):
    """Hom-set from GNS(omega) to ``rep`` has one element iff the states agree, and it is m(rep)."""
    g = gns_construct(omega)
    result = hom_count_pointed(g, rep, tol=tol)
    vec = rep.omega_vec
    direct = np.array([vec.conj() @ p @ vec for p in rep.pi])
    states_agree = max_abs(direct - omega.coeffs) <= tol
    if (result.count == 1) != states_agree:
        return 1.0
    if result.count == 0:
        return 0.0
    L = result.morphism
    minimal = 0.0 if g.quotient_dim <= rep.hilbert_dim else 1.0
    return max(_cert_violation(L), max_abs(L.L - modification_m(rep, gns=g).L), minimal)


# law checks over generated instances

def check_states_functor(gen, n, tol_overrides=None, workers=1):
    def inst(gen, rng):
        labels, f, fp = gen.composable_pair(rng)
        omega = gen.state(rng, f.target)
        return {"states_functor": states_functor_violation(omega, f, fp)}, {"chain": labels}

    return _run(("states_functor",), gen, n, inst, tol_overrides, workers)[0]


def check_oplax_identity(gen, n, tol_overrides=None, workers=1):
    def inst(gen, rng):
        A = gen.algebra(rng)
        omega = gen.state(rng, A)
        return {"oplax_identity": oplax_identity_violation(omega)}, {"algebra": list(A.block_dims)}

    return _run(("oplax_identity",), gen, n, inst, tol_overrides, workers)[0]


def check_oplax_composition(gen, n, tol_overrides=None, workers=1):
    def inst(gen, rng):
        labels, f, fp = gen.composable_pair(rng)
        omega = gen.state(rng, f.target)
        return {"oplax_composition": oplax_composition_violation(omega, f, fp)}, {"chain": labels}

    return _run(("oplax_composition",), gen, n, inst, tol_overrides, workers)[0]


def check_oplax_gns(gen, n, tol_overrides=None, workers=1):
    """Oplax-naturality of GNS: ``L_id = 1`` and ``L_{f o f'} = L_f L_{f'}``."""
    return _bundle(
        "oplax_gns",
        [
            check_oplax_identity(gen, n, tol_overrides, workers),
            check_oplax_composition(gen, n, tol_overrides, workers),
        ],
    )


def check_rest_naturality(gen, n, tol_overrides=None, workers=1):
    def inst(gen, rng):
        labels, f = gen.morphism(rng)
        rep_labels, rep = gen.pointed_rep(rng, f.target)
        return {"rest_naturality": rest_naturality_violation(f, rep)}, {"chain": labels, "rep": rep_labels}

    return _run(("rest_naturality",), gen, n, inst, tol_overrides, workers)[0]


def check_rest_after_gns(gen, n, tol_overrides=None, workers=1):
    def inst(gen, rng):
        A = gen.algebra(rng)
        omega = gen.state(rng, A)
        return {"rest_after_gns": rest_after_gns_violation(omega)}, {"algebra": list(A.block_dims)}

    return _run(("rest_after_gns",), gen, n, inst, tol_overrides, workers)[0]


def check_modification_coherence(gen, n, tol_overrides=None, workers=1):
    def inst(gen, rng):
        labels, f = gen.morphism(rng)
        rep_labels, rep = gen.pointed_rep(rng, f.target)
        return (
            {"modification_coherence": modification_coherence_violation(f, rep)},
            {"chain": labels, "rep": rep_labels},
        )

    return _run(("modification_coherence",), gen, n, inst, tol_overrides, workers)[0]


def check_zigzag(gen, n, tol_overrides=None, workers=1):
    """Both triangle identities, reduced to objects.

    The first holds because states form a discrete category; its computable
    content is ``rest o GNS = id``. The second is ``m(GNS(omega)) = 1``.
    """
    def inst(gen, rng):
        A = gen.algebra(rng)
        omega = gen.state(rng, A)
        g = gns_construct(omega)
        return (
            {
                "zigzag.first": rest_after_gns_violation(omega, g),
                "zigzag.second": zigzag_second_violation(omega, g),
            },
            {"algebra": list(A.block_dims)},
        )

    return _bundle("zigzag", _run(("zigzag.first", "zigzag.second"), gen, n, inst, tol_overrides, workers))


def definition_519_violations(omega, f, f_prime, rep):
    """Conditions (a)-(g) on one instance; ``rep`` is a pointed representation of ``f.target``."""
    g = gns_construct(omega)
    Lf = gns_intertwiner(f, omega, target_gns=g)
    return {
        "definition_519.a": _cert_violation(Lf),
        "definition_519.b": _cert_violation(modification_m(rep)),
        "definition_519.c": oplax_identity_violation(omega, g),
        "definition_519.d": oplax_composition_violation(omega, f, f_prime),
        "definition_519.e": modification_coherence_violation(f, rep),
        "definition_519.f": rest_after_gns_violation(omega, g),
        "definition_519.g": zigzag_second_violation(omega, g),
    }


DEFINITION_519_IDS = tuple(f"definition_519.{c}" for c in "abcdefg")


def check_definition_519(gen, n, tol_overrides=None, workers=1):
    def inst(gen, rng):
        labels, f, fp = gen.composable_pair(rng)
        omega = gen.state(rng, f.target)
        rep_labels, rep = gen.pointed_rep(rng, f.target)
        return definition_519_violations(omega, f, fp, rep), {"chain": labels, "rep": rep_labels}

    return _bundle("definition_519", _run(DEFINITION_519_IDS, gen, n, inst, tol_overrides, workers))


def universal_property_instance(gen, rng):
    """``(omega, rep, kind)``: a GNS rep, a rep with ``omega = rest(rep)``, or an unrelated pair."""
    A = gen.algebra(rng)
    u = rng.random()
    if u < 0.25:
        omega = gen.state(rng, A)
        return omega, gns_construct(omega).rep, "gns"
    _, rep = gen.pointed_rep(rng, A)
    if u < 0.65:
        return rest(rep), rep, "restricted"
    return gen.state(rng, A), rep, "independent"


def check_universal_property(gen, n, tol_overrides=None, workers=1):
    tol = resolve_tol("universal_property", tol_overrides)

    def inst(gen, rng):
        omega, rep, kind = universal_property_instance(gen, rng)
        A = omega.algebra
        return (
            {"universal_property": universal_property_violation(omega, rep, tol)},
            {"algebra": list(A.block_dims), "pair": kind},
        )

    return _run(("universal_property",), gen, n, inst, tol_overrides, workers)[0]


SWEEP_CHECKS = (
    check_states_functor,
    check_oplax_identity,
    check_oplax_composition,
    check_rest_naturality,
    check_rest_after_gns,
    check_modification_coherence,
    check_zigzag,
    check_definition_519,
    check_universal_property,
)


def run_all(seed=0, instances=100, tol_overrides=None, workers=1, gen=None):
    """Run every law check; returns the list of top-level reports in a fixed order."""
    gen = InstanceGenerator(seed=seed) if gen is None else gen
    return [check(gen, instances, tol_overrides, workers) for check in SWEEP_CHECKS]
