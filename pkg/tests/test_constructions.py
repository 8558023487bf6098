import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from closure import closure_cases, lemma_instances, twist_pairs

from bhpc.axioms import (
    check_bihom_associative,
    check_bihom_poisson,
    check_commutative,
    check_jacobi,
    check_morphism,
)
from bhpc.catalog import (
    builtin,
    dual_numbers,
    field_presentation,
    group_algebra,
    k_times_k,
    mutate,
    names,
    unit_algebra,
)
from bhpc.constructions import (
    ExtensionSpec,
    OperatorWitness,
    averaging_induced,
    averaging_induced_diag,
    centroid_induced,
    check_averaging,
    check_centroid,
    check_lemma_bhca1,
    check_lemma_bhca2,
    check_rota_baxter,
    commutator_poisson,
    embed_grading,
    multiplier_deform,
    rota_baxter_induced,
    scalar_extension,
    tensor_assoc_poisson,
    tensor_hom_poisson,
    transfer_bijection,
    twist,
    twist_power,
    untwist,
)
from bhpc.errors import (
    FactorNotCommutative,
    GroupMismatch,
    InvalidMultiplier,
    InvalidOperator,
    MapsDoNotCommute,
    NonEmbeddableConstants,
    NotAssociative,
    NotHomMode,
    NotInjective,
    NotMorphism,
    NotPoisson,
    NotRegular,
    SingularMap,
)
from bhpc.glinalg import BilinearMap, EvenMap
from bhpc.grading import (
    FiniteAbelianGroup,
    Multiplier,
    bicharacter_of_multiplier,
    random_multiplier,
    builtin_bicharacter,
    sign_multiplier,
    trivial_multiplier,
)
from bhpc.scalars import GF, QQ

Z2 = FiniteAbelianGroup((2,))
Z2Z2 = FiniteAbelianGroup((2, 2))


def kz2(F=QQ):
    return group_algebra(Z2, F)


def twisted_kz2(F=QQ):
    A = kz2(F)
    return twist(A, EvenMap.diagonal(A.space, [1, -1]), EvenMap.identity(A.space))


def passes(P):
    rep = check_bihom_poisson(P)
    return rep.passed and not rep.witnesses


# -- commutator --------------------------------------------------------------------

def test_commutator_of_commutative_is_zero(field):
    assert commutator_poisson(dual_numbers(field)).bracket.is_zero()


def test_commutator_of_kz2(field):
    P = commutator_poisson(kz2(field))
    assert [(i, j, k, int(c)) for i, j, k, c in P.bracket.entries()] == [(1, 1, 0, 2)]
    assert passes(P)


def test_commutator_of_twisted_kz2(field):
    A = twisted_kz2(field)
    P = commutator_poisson(A)
    # alpha^-1 beta = alpha' here, so the bracket uses the twisted images
    assert passes(P)
    assert not P.bracket.is_zero()


def test_commutator_preconditions():
    A = kz2()
    zero = EvenMap.scalar(A.space, 0)
    with pytest.raises(NotRegular):
        commutator_poisson(A.replace(alpha=zero, beta=zero))
    with pytest.raises(NotAssociative):
        commutator_poisson(A.replace(alpha=EvenMap.diagonal(A.space, [1, 2])))


# -- twisting ------------------------------------------------------------------------

def test_identity_twist_is_fixed_point(field):
    for name in names():
        P = builtin(name, field).bundle
        ident = EvenMap.identity(P.space)
        assert twist(P, ident, ident) == P
        assert twist_power(P, 0) == P


def test_twist_power_one_squares_maps():
    P = builtin("kz2_twisted").bundle
    Q = twist_power(P, 1)
    assert Q.alpha == P.alpha.power(2) and Q.beta == P.beta.power(2)
    assert passes(Q)


def test_twist_power_round_trip():
    P = commutator_poisson(kz2())
    a = EvenMap.diagonal(P.space, [1, -1])
    B = twist(P, a, a)
    U = untwist(B, a, a)
    assert U == P
    back = twist_power(B, -1)
    assert back.alpha.is_identity() and back.beta.is_identity()


def test_poisson_twisted_by_morphisms_gets_those_maps():
    P = commutator_poisson(builtin("kz2xz2_commutator").bundle)
    a = EvenMap.diagonal(P.space, [1, -1, 1, -1])
    b = EvenMap.diagonal(P.space, [1, 1, -1, -1])
    T = twist(P, a, b)
    assert T.alpha == a and T.beta == b and passes(T)


def test_twist_rejects_non_morphism_and_noncommuting():
    P = kz2()
    with pytest.raises(NotMorphism):
        twist(P, EvenMap.diagonal(P.space, [1, 2]), EvenMap.identity(P.space))
    K = k_times_k(QQ)
    diag = EvenMap(K.space, [[1, 0], [1, 0]])  # (a, b) -> (a, a)
    swap = EvenMap(K.space, [[0, 1], [1, 0]])
    assert check_morphism(diag, K, K).passed and check_morphism(swap, K, K).passed
    with pytest.raises(MapsDoNotCommute):
        twist(K, diag, swap)


def test_negative_power_needs_regular():
    D = dual_numbers(QQ)
    T = twist(D, EvenMap.scalar(D.space, 0), EvenMap.identity(D.space))
    with pytest.raises(NotRegular):
        twist_power(T, -1)


# -- transfer ----------------------------------------------------------------------

def test_transfer_identity_fixed_point(field):
    P = builtin("kz2_twisted", field).bundle
    assert transfer_bijection(P, EvenMap.identity(P.space)) == P


def test_transfer_dual_numbers_scaling():
    D = dual_numbers(QQ)
    f = EvenMap.diagonal(D.space, [1, 2])
    T = transfer_bijection(D, f)
    assert passes(T) and check_morphism(f, T, D).passed
    t = T.space.basis_vector(1)
    assert list(T.mu(t, t)) == [0, 0]


def test_transfer_permutation_relabels():
    P = builtin("kxk").bundle
    swap = EvenMap(P.space, [[0, 1], [1, 0]])
    T = transfer_bijection(P, swap)
    assert passes(T)
    assert T.mu.tensor[0, 0, 0] == P.mu.tensor[1, 1, 1]


def test_transfer_rejects_singular():
    P = kz2()
    with pytest.raises(SingularMap):
        transfer_bijection(P, EvenMap(P.space, [[1, 0], [0, 0]]))


# -- tensor products and lemmas -------------------------------------------------------

def test_tensor_with_unit_reproduces_factor(field):
    P = commutator_poisson(kz2(field))
    out = tensor_assoc_poisson(embed_grading(unit_algebra(field), P.eps), P)
    assert np.array_equal(out.mu.tensor, P.mu.tensor)
    assert np.array_equal(out.bracket.tensor, P.bracket.tensor)


def test_tensor_dual_numbers_with_commutator(field):
    P = commutator_poisson(kz2(field))
    out = tensor_assoc_poisson(embed_grading(dual_numbers(field), P.eps), P)
    assert out.dim == 4 and passes(out)
    # factor-A major ordering: (i, j) -> 2 i + j
    assert [d for d in out.space.degrees] == [(0,), (1,), (0,), (1,)]


def test_tensor_requires_commutative_factor():
    P = commutator_poisson(kz2())
    with pytest.raises(FactorNotCommutative):
        tensor_assoc_poisson(kz2(), P)


def test_tensor_requires_shared_group():
    with pytest.raises(GroupMismatch):
        tensor_assoc_poisson(builtin("kxk").bundle, commutator_poisson(kz2()))


def test_lemma_instances_are_commutative_bihom_associative():
    inst = lemma_instances()
    assert len(inst) >= 20
    for A in inst:
        assert check_bihom_associative(A).passed and check_commutative(A).passed


@pytest.mark.parametrize("idx", range(len(lemma_instances())))
def test_lemmas_hold(idx):
    A = lemma_instances()[idx]
    r1, r2 = check_lemma_bhca1(A), check_lemma_bhca2(A)
    assert r1.passed and len(r1.parts) == 3 and r2.passed


def test_lemmas_fail_when_commutativity_mutated():
    D = dual_numbers(QQ)
    m = EvenMap.diagonal(D.space, [1, 2])
    A = twist(D, m, m)
    T = A.mu.tensor.copy()
    T[0, 1, 1] += 1  # 1 * t no longer equals t * 1
    bad = A.replace(mu=BilinearMap(A.space, T))
    assert not check_commutative(bad).passed
    assert not check_lemma_bhca2(bad).passed and check_lemma_bhca2(bad).witnesses


def test_tensor_hom_zero_brackets():
    D = embed_grading(dual_numbers(QQ), kz2().eps)
    out, jac = tensor_hom_poisson(D, kz2())
    assert jac.passed and passes(out)
    ref = tensor_assoc_poisson(D, kz2())
    assert out == ref


def test_tensor_hom_unit_factors():
    U = unit_algebra(QQ)
    out, jac = tensor_hom_poisson(U, U)
    assert jac.passed and out.dim == 1


def test_tensor_hom_commutator_with_dual_numbers_reports():
    P1 = commutator_poisson(kz2())
    P2 = embed_grading(dual_numbers(QQ), P1.eps)
    out, jac = tensor_hom_poisson(P1, P2, force=True)
    assert jac.law == "bihom_jacobi"
    assert jac.passed == (not jac.witnesses)


def test_tensor_hom_surfaces_witnesses_on_invalid_bracket():
    P = commutator_poisson(kz2())
    bad = P.replace(bracket=BilinearMap.from_entries(P.space, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, -1)]))
    U = embed_grading(unit_algebra(QQ), P.eps)
    out, jac = tensor_hom_poisson(U, bad, force=True)
    assert not jac.passed and jac.witnesses
    assert check_jacobi(out).passed == jac.passed


def test_tensor_hom_needs_hom_mode():
    with pytest.raises(NotHomMode):
        tensor_hom_poisson(builtin("kz2_twisted").bundle, kz2())


# -- scalar extension --------------------------------------------------------------------

def test_trivial_extension_is_copy(field):
    P = commutator_poisson(kz2(field))
    out = scalar_extension(P, ExtensionSpec("prime_power_as_tensor", algebra=unit_algebra(field)))
    assert np.array_equal(out.mu.tensor, P.mu.tensor) and out.space.degrees == P.space.degrees


def test_quadratic_extension_of_commutator():
    F = GF(7)
    P = commutator_poisson(kz2(F))
    out = scalar_extension(P, ExtensionSpec("prime_power_as_tensor", algebra=field_presentation(F, 3)))
    assert out.dim == 4 and passes(out)


def test_embed_into_f5():
    P = builtin("kz2xz2_commutator").bundle
    out = scalar_extension(P, ExtensionSpec("field_embed", field=GF(5)))
    assert out.field == GF(5) and passes(out)


def test_embed_rejects_denominators():
    P = builtin("lie_only_zero_mu").bundle  # has 1/2 entries
    with pytest.raises(NonEmbeddableConstants):
        scalar_extension(P, ExtensionSpec("field_embed", field=GF(3)))


def test_extension_rejects_noncommutative_presentation():
    with pytest.raises(FactorNotCommutative):
        scalar_extension(commutator_poisson(kz2()),
                         ExtensionSpec("prime_power_as_tensor", algebra=embed_like_kz2()))


def embed_like_kz2():
    # a 2-dim trivially graded algebra that is not commutative: e0 e1 = e1, e1 e0 = 0
    A = dual_numbers(QQ)
    return A.replace(mu=BilinearMap.from_entries(A.space, [(0, 0, 0, 1), (0, 1, 1, 1)]))


# -- Rota-Baxter -------------------------------------------------------------------------

@pytest.mark.parametrize("lam", [0, 1, -2, 5])
def test_rota_baxter_trivial_operators(lam, field):
    P = commutator_poisson(kz2(field))
    S = P.space
    assert check_rota_baxter(P, EvenMap.scalar(S, 0), lam).passed
    R = EvenMap.scalar(S, -lam)
    assert check_rota_baxter(P, R, lam).passed
    out = rota_baxter_induced(P, OperatorWitness("rota_baxter", R, weight=lam))
    assert out.mu == P.mu.scaled(field.coerce(-lam)) and out.bracket == P.bracket.scaled(field.coerce(-lam))
    assert passes(out) and check_morphism(R, out, P).passed


def test_rota_baxter_zero_gives_zero_products():
    P = commutator_poisson(kz2())
    out = rota_baxter_induced(P, OperatorWitness("rota_baxter", EvenMap.scalar(P.space, 0)))
    assert out.mu.is_zero() and out.bracket.is_zero() and passes(out)


def test_nilpotent_rota_baxter_on_dual_numbers(field):
    entry = builtin("dual_numbers", field)
    w = entry.operators["rota_baxter_nilpotent"]
    P = entry.bundle
    assert check_rota_baxter(P, w.map, 0).passed
    out = rota_baxter_induced(P, w)
    one = P.space.basis_vector(0)
    assert list(out.mu(one, one)) == [0, 2]
    assert passes(out) and check_morphism(w.map, out, P).passed


def test_rota_baxter_rejects_invalid():
    P = dual_numbers(QQ)
    with pytest.raises(InvalidOperator):
        rota_baxter_induced(P, OperatorWitness("rota_baxter", EvenMap.identity(P.space), weight=0))


# -- averaging ----------------------------------------------------------------------------

def test_averaging_examples():
    D = builtin("dual_numbers").bundle
    S = D.space
    assert check_averaging(D, EvenMap.identity(S)).passed
    assert check_averaging(D, builtin("dual_numbers").operators["averaging_mult_t"].map).passed
    bad = check_averaging(D, EvenMap(S, [[0, 1], [1, 0]]))  # theta(1) = t, theta(t) = 1
    assert not bad.passed and bad.witnesses


def test_averaging_diag_examples():
    D = dual_numbers(QQ)
    assert averaging_induced_diag(D, OperatorWitness("averaging", EvenMap.identity(D.space))) == D
    out = averaging_induced_diag(D, builtin("dual_numbers").operators["averaging_mult_t"])
    assert out.mu.is_zero() and passes(out)
    K = k_times_k(QQ)
    w = builtin("kxk").operators["averaging_projection"]
    out = averaging_induced_diag(K, w)
    assert [(i, j, k, int(c)) for i, j, k, c in out.mu.entries()] == [(0, 0, 0, 1)] and passes(out)


def test_averaging_induced_scalar():
    P = commutator_poisson(kz2())
    w = OperatorWitness("averaging", EvenMap.scalar(P.space, 3))
    out = averaging_induced(P, w)
    assert out.mu == P.mu.scaled(QQ.coerce(3)) and passes(out)
    assert check_morphism(w.map, out, P).passed


def test_averaging_induced_needs_injective():
    K = k_times_k(QQ)
    with pytest.raises(NotInjective):
        averaging_induced(K, builtin("kxk").operators["averaging_projection"])


def test_sign_map_is_not_averaging_on_commutator():
    P = commutator_poisson(kz2())
    theta = EvenMap.diagonal(P.space, [1, -1])
    assert not check_averaging(P, theta).passed
    with pytest.raises(InvalidOperator):
        averaging_induced(P, OperatorWitness("averaging", theta))


# -- centroid -----------------------------------------------------------------------------

def test_centroid_examples():
    K = builtin("kxk").bundle
    assert check_centroid(K, EvenMap.identity(K.space)).passed
    assert check_centroid(K, builtin("kxk").operators["centroid_projection"].map).passed
    D = builtin("dual_numbers").bundle
    t_mult = builtin("dual_numbers").operators["averaging_mult_t"].map
    assert not check_centroid(D, t_mult).passed


def test_scalar_centroid_only_for_idempotent_scalars():
    K = k_times_k(QQ)
    assert check_centroid(K, EvenMap.scalar(K.space, 0)).passed
    assert not check_centroid(K, EvenMap.scalar(K.space, 2)).passed


def test_centroid_induced_examples():
    P = builtin("kz2_twisted").bundle
    assert centroid_induced(P, OperatorWitness("centroid", EvenMap.identity(P.space))) == P
    K = k_times_k(QQ)
    w = builtin("kxk").operators["centroid_projection"]
    out = centroid_induced(K, w)
    assert passes(out)
    assert out.alpha == K.alpha and out.beta == K.beta


def test_centroid_induced_maps():
    P = builtin("kz2_twisted").bundle
    w = OperatorWitness("centroid", P.alpha, k=1)
    out = centroid_induced(P, w)
    assert out.alpha == P.alpha.power(2) and out.beta == P.alpha @ P.beta
    assert passes(out)


# -- multipliers -------------------------------------------------------------------------

def test_multiplier_trivial_fixed_point(field):
    P = builtin("kz2xz2_commutator", field).bundle
    out = multiplier_deform(P, trivial_multiplier(Z2Z2, field))
    assert out == P and out.eps is P.eps


def test_paper_multiplier_deformation(field):
    P = builtin("kz2xz2_commutator", field).bundle
    sigma = sign_multiplier(Z2Z2, field, [(0, 1)])
    out = multiplier_deform(P, sigma)
    assert out.eps == P.eps * bicharacter_of_multiplier(sigma)
    assert passes(out)
    assert out.space.degrees == P.space.degrees


def test_symmetric_multiplier_keeps_bicharacter():
    P = builtin("kz2xz2_commutator").bundle
    table = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, 1, 1], [1, -1, 1, -1]]
    sigma = Multiplier(Z2Z2, QQ, [[1] * 4 for _ in range(4)])
    sym = Multiplier(Z2Z2, QQ, table)
    assert multiplier_deform(P, sigma).eps == P.eps
    out = multiplier_deform(P, sym)
    assert out.eps == P.eps and passes(out)


def test_invalid_multiplier_rejected():
    P = builtin("kz2_commutator").bundle
    with pytest.raises(InvalidMultiplier):
        multiplier_deform(P, Multiplier(Z2, QQ, [[1, 2], [1, 1]], validate=False))
    with pytest.raises(GroupMismatch):
        multiplier_deform(P, trivial_multiplier(Z2Z2, QQ))


# -- closure over the catalog ----------------------------------------------------------

def _known(entry, kind):
    return {k: v for k, v in entry.operators.items() if v.kind == kind}


@pytest.mark.parametrize("name", names())
def test_closure_over_catalog(name, field):
    entry = builtin(name, field)
    cases = closure_cases(entry.bundle, 0, rota_baxter=_known(entry, "rota_baxter"),
                          averaging=_known(entry, "averaging"), centroid=_known(entry, "centroid"))
    failed = [c.label for c in cases if not passes(c.bundle)]
    assert not failed
    for c in cases:
        if c.morphism is not None:
            assert check_morphism(c.morphism, c.bundle, entry.bundle).passed, c.label


@settings(max_examples=20)
@given(seed=st.integers(0, 2**16), name=st.sampled_from(names()))
def test_random_twists_stay_poisson(seed, name):
    P = builtin(name, GF(7)).bundle
    for a, b in twist_pairs(P, np.random.default_rng(seed)):
        assert passes(twist(P, a, b))


@settings(max_examples=20)
@given(seed=st.integers(0, 2**16))
def test_multiplier_deform_preserves_components(seed):
    P = builtin("kz2xz2_commutator", GF(7)).bundle
    sigma = random_multiplier(Z2Z2, GF(7), np.random.default_rng(seed))
    out = multiplier_deform(P, sigma)
    assert out.space.degrees == P.space.degrees and passes(out)


def test_mutated_instance_rejected_by_constructors():
    P = builtin("kz2_commutator").bundle
    bad = next(B for B in (mutate(P, s) for s in range(50)) if not check_bihom_poisson(B).passed)
    ident = EvenMap.identity(P.space)
    with pytest.raises(NotPoisson):
        twist(bad, ident, ident)
    with pytest.raises(NotPoisson):
        twist_power(bad, 0)


def test_embedded_bicharacter_matches_builtin():
    eps = builtin_bicharacter("sign_dot", Z2, QQ)
    A = embed_grading(dual_numbers(QQ), eps)
    assert A.eps == eps and A.space.degrees == ((0,), (0,))
