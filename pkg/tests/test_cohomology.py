"""Modules, cohomology spaces, lifts, the obstruction and classification."""

from fractions import Fraction

import pytest

from superext.catalog import abelian, gl11, heis3, sl2, susy_line
from superext.cochains import canonical_tuples, covariant_delta
from superext.gvs import GradedLinearMap, graded_commutator, unit_vec
from superext.superlie import (
    abelian_algebra,
    ad,
    center,
    derivations,
    is_homomorphism,
    out_quotient,
)
from superext.extensions import (
    ExtensionDatum,
    build_extension,
    check_datum,
    check_equivalence_witness,
    same_structure,
)
from superext.cohomology import (
    center_module,
    classify_extensions,
    cohomology_space,
    gmodule,
    lift_alpha_bar,
    module_delta,
    obstruction_class,
    push_center_cochain,
    rho_from_lift,
    trivial_module,
)

from oracles import classical_ce_delta, random_cochain, random_witness

F = Fraction


def zero_abar(h, g):
    out_alg, _ = out_quotient(h)
    return GradedLinearMap.zero(g.space, out_alg.space, 0)


# ---------- modules ----------

def test_gmodule_rejects_non_homomorphism():
    g = sl2()
    sp = abelian(1, 0, "m").space
    # H acts by 1, E and F by 1: not a homomorphism ([H,E] = 2E must act by 0)
    one = GradedLinearMap(sp, sp, 0, ((1,),))
    with pytest.raises(ValueError):
        gmodule(g, sp, (one, one, one))


def test_center_module_centerless_is_zero():
    mod, incl = center_module(sl2(), abelian(1, 0, "t"), zero_abar(sl2(), abelian(1, 0, "t")))
    assert mod.space.dim == 0


def test_center_module_abelian_kernel_is_whole_space():
    h, g = abelian(1, 1, "m"), abelian(1, 0, "t")
    out_alg, _ = out_quotient(h)
    # a nonzero action: t acts by the identity on the even part
    ds = derivations(h)
    abar = GradedLinearMap.zero(g.space, out_alg.space, 0)
    mod, incl = center_module(h, g, abar)
    assert mod.space.dim == 2
    assert sorted(mod.space.parities) == [0, 1]


def test_center_module_heis3_trivial_action():
    h, g = heis3(), abelian(1, 0, "t")
    mod, incl = center_module(h, g, zero_abar(h, g))
    assert mod.space.dim == 1
    assert all(op.is_zero() for op in mod.action)
    assert incl.column(0) == (0, 0, 1)


def test_center_module_nonzero_action():
    # h abelian: out = der = gl(h); let t act by the grading automorphism
    h, g = abelian_algebra(("m0", "m1"), (0, 1)), abelian(1, 0, "t")
    out_alg, _ = out_quotient(h)
    ds = derivations(h)
    # find the out coordinates of the diagonal derivation diag(1, 2)
    target = GradedLinearMap(h.space, h.space, 0, ((1, 0), (0, 2)))
    coords = ds.coordinates_of(target)
    assert coords is not None
    abar = GradedLinearMap(g.space, out_alg.space, 0,
                           tuple((c,) for c in coords[ds.inner_count:]))
    mod, incl = center_module(h, g, abar)
    assert mod.action[0].matrix == ((1, 0), (0, 2))


# ---------- cohomology spaces ----------

def test_h0_trivial_line_is_invariants():
    for g in (sl2(), heis3(), abelian(2, 0)):
        rep = cohomology_space(g, trivial_module(g), 0)
        assert rep.weight(0).dim == 1
        assert rep.weight(1).dim == 0


def test_h2_heisenberg_class():
    g = abelian(2, 0)
    rep = cohomology_space(g, trivial_module(g), 2)
    assert rep.weight(0).dim == 1
    assert rep.weight(1).dim == 0


def test_h_odd_line_all_degrees():
    g = abelian(0, 1)
    mod = trivial_module(g)
    for p in range(7):
        rep = cohomology_space(g, mod, p)
        assert rep.weight(p % 2).dim == 1
        assert rep.weight((p + 1) % 2).dim == 0


def test_sl2_whitehead():
    g = sl2()
    mod = trivial_module(g)
    assert cohomology_space(g, mod, 1).total_dim == 0
    assert cohomology_space(g, mod, 2).total_dim == 0
    assert cohomology_space(g, mod, 3).total_dim == 1


def test_classical_reduction_matches_ce_oracle(rng):
    # purely even algebras: our differential equals the classical one
    from superext.cochains import scalar_cochain
    for g in (sl2(), heis3()):
        for arity in (1, 2, 3):
            table = {}
            for tup in canonical_tuples(g.space, arity):
                table[tup] = F(rng.randint(-3, 3))
            psi = scalar_cochain(g.space, arity, 0, table)
            ours = module_delta(trivial_module(g), psi)
            oracle = classical_ce_delta(g, {t: c for t, c in table.items()}, arity)
            for tup in canonical_tuples(g.space, arity + 1):
                got = ours.value(tup)[0]
                assert got == oracle.get(tup, F(0))


def test_module_delta_squares_to_zero(rng):
    # random small modules: adjoint sl2, natural gl11, center modules
    cases = []
    g = sl2()
    cases.append((g, gmodule(g, g.space, tuple(ad(g, unit_vec(3, i)) for i in range(3)))))
    g2 = gl11()
    nat = abelian_algebra(("v0", "v1"), (0, 1)).space
    mats = {
        0: ((1, 0), (0, 0)),   # a = E11
        1: ((0, 0), (0, 1)),   # d = E22
        2: ((0, 1), (0, 0)),   # x = E12 (odd)
        3: ((0, 0), (1, 0)),   # y = E21 (odd)
    }
    ops = tuple(GradedLinearMap(nat, nat, g2.space.parities[i], mats[i]) for i in range(4))
    cases.append((g2, gmodule(g2, nat, ops)))
    h, g3 = heis3(), abelian(1, 0, "t")
    cases.append((g3, center_module(h, g3, zero_abar(h, g3))[0]))
    for g, mod in cases:
        for arity in range(0, 4):
            for w in (0, 1):
                phi = random_cochain(g.space, mod.space, arity, w, rng)
                assert module_delta(mod, module_delta(mod, phi)).is_zero()


def test_weight_splitting_respected():
    g = susy_line()
    mod = trivial_module(g)
    rep = cohomology_space(g, mod, 2)
    for w in (0, 1):
        for c in rep.weight(w).cocycle_basis:
            assert c.weight == w


def test_representatives_are_cocycles_independent_mod_boundaries():
    g = abelian(2, 1)
    mod = trivial_module(g)
    for n in (1, 2, 3):
        rep = cohomology_space(g, mod, n)
        for w in (0, 1):
            wr = rep.weight(w)
            assert len(wr.representatives) == wr.dim
            for c in wr.representatives:
                assert module_delta(mod, c).is_zero()


# ---------- lift and curvature from a lift ----------

def test_lift_zero():
    h, g = sl2(), abelian(1, 0, "t")
    alpha = lift_alpha_bar(h, g, zero_abar(h, g))
    assert all(op.is_zero() for op in alpha)


def test_lift_point_kernel_identity():
    # h = A(1|0): ad = 0, der = out = gl(1); the lift is the identification
    h, g = abelian(1, 0, "w"), abelian(1, 0, "t")
    out_alg, _ = out_quotient(h)
    abar = GradedLinearMap(g.space, out_alg.space, 0, ((F(3),),))
    alpha = lift_alpha_bar(h, g, abar)
    assert alpha[0].matrix == ((3,),)


def test_lift_projects_back(rng):
    # pi(alpha(X)) = abar(X) for the deterministic lift; abar sends both
    # generators of the abelian g to multiples of one outer element, so it
    # is a homomorphism into the (nonabelian) out(heis3)
    h, g = heis3(), abelian(2, 0, "u")
    out_alg, pi = out_quotient(h)
    ds = derivations(h)
    for _ in range(5):
        xi = [F(rng.randint(-2, 2)) for _ in range(out_alg.dim)]
        c0, c1 = F(rng.randint(-2, 2)), F(rng.randint(-2, 2))
        m = tuple((c0 * xi[r], c1 * xi[r]) for r in range(out_alg.dim))
        abar = GradedLinearMap(g.space, out_alg.space, 0, m)
        assert is_homomorphism(abar, g, out_alg)
        alpha = lift_alpha_bar(h, g, abar)
        for j in range(g.dim):
            coords = ds.coordinates_of(alpha[j])
            assert coords is not None
            assert pi.apply(coords) == abar.column(j)


def test_rho_from_lift_zero_for_homomorphism():
    h, g = sl2(), abelian(1, 0, "t")
    alpha = lift_alpha_bar(h, g, zero_abar(h, g))
    rho = rho_from_lift(h, g, alpha)
    assert rho.is_zero()


def test_rho_from_lift_canonical_center_drop():
    # the scaling derivation D (P -> P, Z -> Z) of heis3 satisfies
    # [D, ad_P] = ad_P, so the defect of (D, ad_P) on (u0, u1) is ad_P;
    # the canonical solution of ad_H = ad_P is H = P with no Z component
    # even though the solution is only unique up to the center
    from superext.superlie import is_derivation
    h = heis3()
    scaling = GradedLinearMap(h.space, h.space, 0, ((1, 0, 0), (0, 0, 0), (0, 0, 1)))
    assert is_derivation(h, scaling)
    ad_p = ad(h, unit_vec(3, 0))
    assert graded_commutator(scaling, ad_p) == ad_p
    g = abelian(2, 0, "u")
    rho = rho_from_lift(h, g, (scaling, ad_p))
    v = rho.value((0, 1))
    assert ad(h, v, degree=0) == ad_p
    assert v == (1, 0, 0)  # = P; the free center coordinate is dropped


def test_rho_from_lift_rejects_non_inner_defect():
    # two outer derivations of heis3 whose commutator is NOT inner
    h = heis3()
    ds = derivations(h)
    outer = ds.basis[ds.inner_count:]
    g = abelian(2, 0, "u")
    for d1 in outer:
        for d2 in outer:
            comm = graded_commutator(d1, d2)
            coords = ds.coordinates_of(comm)
            if coords is not None and any(c != 0 for c in coords[ds.inner_count:]):
                with pytest.raises(ValueError):
                    rho_from_lift(h, g, (d1, d2))
                return
    pytest.skip("no pair with non-inner commutator found")


# ---------- obstruction ----------

def test_obstruction_abelian_kernel_vanishes():
    h, g = abelian(1, 1, "m"), susy_line()
    obs = obstruction_class(h, g, zero_abar(h, g))
    assert obs.vanishes
    assert obs.rho.is_zero()
    assert obs.lam.is_zero()


def test_obstruction_centerless_vanishes():
    h = sl2()
    for g in (sl2(), susy_line(), abelian(1, 1)):
        obs = obstruction_class(h, g, zero_abar(h, g))
        assert obs.vanishes
        assert obs.lam.is_zero()
        assert obs.class_coords == ()


def test_obstruction_heis3_pipeline():
    h, g = heis3(), abelian(0, 1, "q")
    obs = obstruction_class(h, g, zero_abar(h, g))
    assert obs.vanishes
    # the repaired datum satisfies all extension conditions
    mu_h = push_center_cochain(obs.mu, obs.center_incl)
    d = ExtensionDatum(g, h, obs.alpha, obs.rho - mu_h)
    assert check_datum(d).ok


def test_obstruction_closedness_and_center_membership(rng):
    # lambda lies in Z(h) and is closed; checked on several kernels/actions
    cases = [(heis3(), abelian(2, 0, "u")), (gl11(), abelian(1, 1, "t")),
             (abelian(2, 1, "m"), susy_line())]
    for h, g in cases:
        obs = obstruction_class(h, g, zero_abar(h, g))
        assert module_delta(obs.module, obs.lam).is_zero()
        for tup, val in obs.lam.values:
            # membership was enforced during coercion; re-check through h
            v = obs.center_incl.apply(val)
            assert all(c == 0 for c in ad(h, v, degree=h.space.vector_parity(v)).flat())


def test_lift_invariance_of_obstruction_cochain(rng):
    # lambda(alpha, rho) = lambda(alpha', rho') for perturbed lifts,
    # with rho' = rho + delta_alpha b + [b,b]/2 (20 random perturbations)
    from superext.cochains import nr_bracket
    from superext.extensions import witness_cochain
    cases = [(heis3(), abelian(0, 1, "q")), (gl11(), abelian(1, 0, "t"))]
    for h, g in cases:
        obs = obstruction_class(h, g, zero_abar(h, g))
        lam_h = covariant_delta(g, obs.alpha, obs.rho)
        for _ in range(20):
            b = random_witness(g, h, rng)
            bc = witness_cochain(b)
            alpha2 = tuple(
                op + ad(h, b.column(i), degree=g.space.parities[i])
                for i, op in enumerate(obs.alpha)
            )
            rho2 = obs.rho + covariant_delta(g, obs.alpha, bc) \
                + nr_bracket(bc, bc, h).scale(F(1, 2))
            lam2_h = covariant_delta(g, alpha2, rho2)
            assert lam2_h == lam_h


def test_two_admissible_curvatures_differ_by_center(rng):
    # fixed lift, rho' = rho + (center-valued mu): lambda difference is the
    # module differential of mu
    h, g = heis3(), abelian(0, 1, "q")
    obs = obstruction_class(h, g, zero_abar(h, g))
    incl = obs.center_incl
    mod = obs.module
    for _ in range(10):
        mu = random_cochain(g.space, mod.space, 2, 0, rng)
        mu_h = push_center_cochain(mu, incl)
        rho2 = obs.rho + mu_h
        # rho2 still solves the commutator-defect equation
        d2 = ExtensionDatum(g, h, obs.alpha, rho2)
        assert check_datum(d2).commutator_defect_ok
        lam1 = covariant_delta(g, obs.alpha, obs.rho)
        lam2 = covariant_delta(g, obs.alpha, rho2)
        dmu = push_center_cochain(module_delta(mod, mu), incl)
        assert lam2 - lam1 == dmu


# ---------- classification ----------

def test_classify_centerless_single_class():
    h = sl2()
    for g in (abelian(2, 0), susy_line()):
        rep = classify_extensions(h, g, zero_abar(h, g))
        assert rep.centerless
        assert len(rep.data) == 1
        assert check_datum(rep.data[0]).ok


def test_classify_heisenberg_two_classes():
    g, h = abelian(2, 0, "u"), abelian(1, 0, "Z")
    rep = classify_extensions(h, g, zero_abar(h, g))
    assert rep.abelian_kernel
    assert rep.h2.weight(0).dim == 1
    assert len(rep.data) == 2
    built = [build_extension(d).e for d in rep.data]
    centers = sorted(len(center(e)) for e in built)
    assert centers == [1, 3]  # direct sum vs the Heisenberg algebra


def test_classify_susy_pair():
    from superext.superlie import abelian_algebra
    g = abelian_algebra(("Q",), (1,))
    h = abelian_algebra(("H",), (0,))
    rep = classify_extensions(h, g, zero_abar(h, g))
    assert rep.h2.weight(0).dim == 1
    assert len(rep.data) == 2
    nu = rep.representatives[0]
    nu_h = push_center_cochain(nu, rep.obstruction.center_incl)
    scaled = ExtensionDatum(g, h, rep.base.alpha, rep.base.rho + nu_h.scale(2))
    t = build_extension(scaled)
    assert same_structure(t.e, susy_line())


def test_classify_emitted_data_pairwise_inequivalent():
    # distinct H^2 representatives are not related by any central witness:
    # over these pairs equivalence via b in Z(h) is the linear condition
    # delta b = difference, which the solver refutes
    g, h = abelian(2, 0, "u"), abelian(1, 0, "Z")
    rep = classify_extensions(h, g, zero_abar(h, g))
    d0, d1 = rep.data
    from superext.extensions import solve_split_abelian
    diff = ExtensionDatum(g, h, d0.alpha, d1.rho - d0.rho)
    assert solve_split_abelian(diff) is None
    # and directly: every witness in a spanning probe set fails
    probes = []
    for k in range(h.dim):
        for j in range(g.dim):
            if h.space.parities[k] == g.space.parities[j]:
                m = [[F(0)] * g.dim for _ in range(h.dim)]
                m[k][j] = F(1)
                probes.append(GradedLinearMap(g.space, h.space, 0,
                                              tuple(tuple(r) for r in m)))
    for b in probes:
        assert not check_equivalence_witness(d0, d1, b)


def test_classify_obstructed_report_shape():
    # exercised through the report contract: fabricate a nonzero class by
    # calling the classification on data where it vanishes and checking the
    # vanishing branch, then unit-check the obstructed branch fields
    from superext.cohomology import ClassificationReport, ObstructionReport
    h, g = heis3(), abelian(0, 1, "q")
    obs = obstruction_class(h, g, zero_abar(h, g))
    fake = ObstructionReport(obs.alpha, obs.rho, obs.lam, obs.module,
                             obs.center_incl, (F(1),), False, None)
    rep = ClassificationReport(fake, None, None, (), (), False, False)
    assert not rep.obstruction.vanishes
    assert rep.data == ()


def test_classify_respects_nonzero_action():
    # h abelian with a nonzero action: classes are pairs (action, H^2 class)
    h, g = abelian_algebra(("w",), (0,)), sl2()
    out_alg, _ = out_quotient(h)
    abar = GradedLinearMap.zero(g.space, out_alg.space, 0)
    rep = classify_extensions(h, g, abar)
    # H^2(sl2; Q) = 0: only the direct sum
    assert len(rep.data) == 1
    assert check_datum(rep.data[0]).ok


def test_centerless_classification_matches_pullback():
    # one class, and its built algebra has the structure constants of the
    # normalized pullback
    from superext.extensions import normalized_structure, pullback_extension
    h = sl2()
    for g in (abelian(1, 0, "t"), abelian(0, 1, "q")):
        abar = zero_abar(h, g)
        rep = classify_extensions(h, g, abar)
        assert rep.centerless and len(rep.data) == 1
        built = build_extension(rep.data[0]).e
        pulled = normalized_structure(pullback_extension(h, g, abar))
        assert same_structure(built, pulled)


def test_cohomology_space_arity_cap():
    from superext.cochains import arity_cap
    g = abelian(0, 1)
    mod = trivial_module(g)
    with pytest.raises(ValueError):
        cohomology_space(g, mod, arity_cap() + 1)
    with pytest.raises(ValueError):
        cohomology_space(g, mod, -1)


def test_heisenberg_betti_numbers():
    # classical: dim H^p(heis3; Q) = 1, 2, 2, 1
    g = heis3()
    mod = trivial_module(g)
    dims = [cohomology_space(g, mod, p).total_dim for p in range(4)]
    assert dims == [1, 2, 2, 1]
    # H^1 is spanned by the duals of the generators P, Q
    reps = cohomology_space(g, mod, 1).weight(0).representatives
    spans = sorted(tup for c in reps for tup, _ in c.values)
    assert spans == [(0,), (1,)]


def test_classify_with_nonzero_outer_action():
    # h = one even line, out(h) = gl(1): a nonzero action gives the
    # non-trivial semidirect product [t, w] = c w as the single class
    h = abelian_algebra(("w",), (0,))
    g = abelian(1, 0, "t")
    out_alg, _ = out_quotient(h)
    abar = GradedLinearMap(g.space, out_alg.space, 0, ((F(3),),))
    obs = obstruction_class(h, g, abar)
    assert obs.vanishes
    assert obs.alpha[0].matrix == ((3,),)
    rep = classify_extensions(h, g, abar)
    # H^2(A(1|0); (h, abar)) = 0: one 2-tuple basis is empty for 1-dim even g
    assert len(rep.data) == 1
    t = build_extension(rep.data[0])
    assert t.e.bracket_vec(unit_vec(2, 1), unit_vec(2, 0)) == (3, 0)
    d = check_datum(rep.data[0])
    assert d.ok


def test_obstruction_with_nonzero_action_on_center():
    # h abelian (1|1): out = gl(1|1); act through the even diagonal part
    h = abelian_algebra(("m0", "m1"), (0, 1))
    g = abelian(1, 0, "t")
    out_alg, _ = out_quotient(h)
    from superext.superlie import derivations
    ds = derivations(h)
    diag = GradedLinearMap(h.space, h.space, 0, ((1, 0), (0, -1)))
    coords = ds.coordinates_of(diag)
    abar = GradedLinearMap(g.space, out_alg.space, 0,
                           tuple((c,) for c in coords[ds.inner_count:]))
    obs = obstruction_class(h, g, abar)
    assert obs.vanishes
    assert obs.module.action[0].matrix == ((1, 0), (0, -1))
    rep = classify_extensions(h, g, abar)
    for d in rep.data:
        assert check_datum(d).ok


def test_susy_line_graded_betti_numbers():
    # hand computation: L^{1,0} = span(H*), delta H* = -2 (Q,Q)* so no
    # weight-0 classes survive in degrees 1 and 2; Q* is a weight-1 cocycle
    # with nothing to bound it
    g = susy_line()
    mod = trivial_module(g)
    h0 = cohomology_space(g, mod, 0)
    assert (h0.weight(0).dim, h0.weight(1).dim) == (1, 0)
    h1 = cohomology_space(g, mod, 1)
    assert (h1.weight(0).dim, h1.weight(1).dim) == (0, 1)
    reps = h1.weight(1).representatives
    assert len(reps) == 1 and reps[0].value((1,)) == (1,)   # the dual of Q
    h2 = cohomology_space(g, mod, 2)
    assert (h2.weight(0).dim, h2.weight(1).dim) == (0, 0)
