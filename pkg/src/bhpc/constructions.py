"""Constructors that turn BiHom-Poisson color algebras into new ones.

Each constructor checks its hypotheses eagerly and raises a
:class:`~bhpc.errors.HypothesisError` subclass naming the failed hypothesis.
``force=True`` skips the hypothesis checks and builds the bundle anyway, for
probing how sharp a hypothesis is.  Outputs are not re-checked here; run
:func:`~bhpc.axioms.check_bihom_poisson` on them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .axioms import (
    ColorAlgebraBundle,
    _compare,
    _cross,
    check_bihom_associative,
    check_bihom_poisson,
    check_commutative,
    check_jacobi,
    check_morphism,
    check_regular,
)
from .errors import (
    FactorNotCommutative,
    FieldMismatch,
    GroupMismatch,
    InvalidMultiplier,
    InvalidOperator,
    NonEmbeddableConstants,
    NotAssociative,
    NotHomMode,
    NotInjective,
    NotMorphism,
    NotPoisson,
    NotReducibleInField,
    NotRegular,
    MapsDoNotCommute,
    SingularMap,
    ValidationError,
)
from .glinalg import (
    BilinearMap,
    EvenMap,
    GradedSpace,
    apply_to_table,
    check_even_map,
    left_apply,
    pair_table,
)
from .grading import Bicharacter, Multiplier, bicharacter_of_multiplier, check_multiplier
from .reports import CheckReport
from .scalars import FieldSpec


@dataclass(frozen=True)
class OperatorWitness:
    kind: str  # rota_baxter | averaging | centroid
    map: EvenMap
    weight: object = None
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if self.kind not in ("rota_baxter", "averaging", "centroid"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind == "rota_baxter" and self.weight is None:
            object.__setattr__(self, "weight", self.map.field.zero)


@dataclass(frozen=True)
class ExtensionSpec:
    """How to extend scalars: tensor with a commutative algebra presenting the
    larger field (``prime_power_as_tensor``) or re-read constants in another
    field (``field_embed``)."""

    kind: str
    algebra: ColorAlgebraBundle | None = None
    field: FieldSpec | None = None

    def __post_init__(self):
        if self.kind == "prime_power_as_tensor" and self.algebra is None:
            raise ValueError("tensor extension needs the algebra presenting the field")
        if self.kind == "field_embed" and self.field is None:
            raise ValueError("field embedding needs a target field")
        if self.kind not in ("prime_power_as_tensor", "field_embed"):
            raise ValueError(f"unknown extension kind {self.kind!r}")


def _require_poisson(P: ColorAlgebraBundle, what: str = "input"):
    rep = check_bihom_poisson(P)
    if not rep.passed:
        raise NotPoisson(f"{what} fails {', '.join(rep.failed_laws)}", rep)


def _bundle(P, *, space=None, mu_t=None, br_t=None, alpha=None, beta=None, eps=None):
    space = space or P.space
    return ColorAlgebraBundle(
        space=space,
        eps=eps or P.eps,
        mu=BilinearMap(space, mu_t, validate=False),
        bracket=BilinearMap(space, br_t, validate=False),
        alpha=alpha,
        beta=beta,
    )


def _rebase(M: EvenMap, space: GradedSpace) -> EvenMap:
    return EvenMap(space, M.matrix, validate=False)


# -- commutator -----------------------------------------------------------

def commutator_poisson(A: ColorAlgebraBundle, *, force: bool = False) -> ColorAlgebraBundle:
    """[x, y] = xy - eps(x, y) (a^-1 b)(y) (a b^-1)(x) on a regular BiHom-associative algebra."""
    if not force:
        rep = check_bihom_associative(A)
        if not rep.passed:
            raise NotAssociative("commutator needs a BiHom-associative color algebra", rep)
        if not check_regular(A):
            raise NotRegular("commutator bracket needs alpha, beta automorphisms")
    ainv, binv = A.alpha.inverse(), A.beta.inverse()
    left = ainv @ A.beta
    right = A.alpha @ binv
    T1 = pair_table(A.mu)
    T2 = pair_table(A.mu, left, right)  # T2[j, i] = (a^-1 b)(b_j) . (a b^-1)(b_i)
    br = A.field.reduce(T1 - A.E[:, :, None] * T2.transpose(1, 0, 2))
    return _bundle(A, mu_t=A.mu.tensor, br_t=br, alpha=A.alpha, beta=A.beta)


# -- twisting -------------------------------------------------------------

def twist(P: ColorAlgebraBundle, alpha_p: EvenMap, beta_p: EvenMap, *, force: bool = False) -> ColorAlgebraBundle:
    """x * y = mu(a' x, b' y), {x, y} = [a' x, b' y], maps (alpha alpha', beta beta')."""
    if not force:
        _require_poisson(P)
        for name, f in (("alpha'", alpha_p), ("beta'", beta_p)):
            rep = check_morphism(f, P, P)
            if not rep.passed:
                raise NotMorphism(f"{name} is not a morphism ({', '.join(rep.failed_laws)})", rep)
        maps = [P.alpha, alpha_p, P.beta, beta_p]
        for i in range(4):
            for j in range(i + 1, 4):
                if not maps[i].commutes_with(maps[j]):
                    raise MapsDoNotCommute("alpha, alpha', beta, beta' must pairwise commute")
    mu_t = pair_table(P.mu, alpha_p, beta_p)
    br_t = pair_table(P.bracket, alpha_p, beta_p)
    return _bundle(P, mu_t=mu_t, br_t=br_t, alpha=P.alpha @ alpha_p, beta=P.beta @ beta_p)


def twist_power(P: ColorAlgebraBundle, n: int, *, force: bool = False) -> ColorAlgebraBundle:
    """Twist by (alpha^n, beta^n); n = -1 untwists a regular algebra."""
    if n < 0 and not force and not check_regular(P):
        raise NotRegular("negative twist powers need a regular algebra")
    if n == 0:
        if not force:
            _require_poisson(P)
        ident = EvenMap.identity(P.space)
        return twist(P, ident, ident, force=True)
    return twist(P, P.alpha.power(n), P.beta.power(n), force=force)


def untwist(P: ColorAlgebraBundle, alpha_p: EvenMap, beta_p: EvenMap) -> ColorAlgebraBundle:
    """Compose both products with (alpha'^-1 x beta'^-1) and divide the maps out."""
    ai, bi = alpha_p.inverse(), beta_p.inverse()
    mu_t = pair_table(P.mu, ai, bi)
    br_t = pair_table(P.bracket, ai, bi)
    return _bundle(P, mu_t=mu_t, br_t=br_t, alpha=P.alpha @ ai, beta=P.beta @ bi)


# -- transfer along a bijection ------------------------------------------------

def transfer_bijection(target: ColorAlgebraBundle, f, *, source_space: GradedSpace | None = None,
                       force: bool = False) -> ColorAlgebraBundle:
    """Pull the structure of ``target`` back along an even bijection f: source -> target."""
    source_space = source_space or target.space
    M = f.matrix if isinstance(f, EvenMap) else target.field.array(f)
    ev = check_even_map(source_space, M, target.space)
    if not ev.passed:
        raise ValidationError("f_even", ev.witness, ev.detail)
    fm = EvenMap(target.space, M, validate=False)
    if not fm.is_bijective():
        raise SingularMap("transfer needs a bijective map")
    if not force:
        _require_poisson(target, "target structure")
    finv = fm.inverse()
    mu_t = apply_to_table(finv, pair_table(target.mu, fm, fm))
    br_t = apply_to_table(finv, pair_table(target.bracket, fm, fm))
    alpha = _rebase(finv @ target.alpha @ fm, source_space)
    beta = _rebase(finv @ target.beta @ fm, source_space)
    return _bundle(target, space=source_space, mu_t=mu_t, br_t=br_t, alpha=alpha, beta=beta)


# -- tensor products ---------------------------------------------------------

def _tensor_space(A: ColorAlgebraBundle, P: ColorAlgebraBundle) -> GradedSpace:
    G = P.group
    degs = [G.add(a, x) for a in A.space.degrees for x in P.space.degrees]
    return GradedSpace(P.field, G, tuple(degs))


def _tensor_structure(F: FieldSpec, CA, CP, cross):
    """C[(i,j),(k,l),(m,n)] = cross[j, k] CA[i,k,m] CP[j,l,n]."""
    nA, nP = CA.shape[0], CP.shape[0]
    outer = F.reduce(np.multiply.outer(CA, CP))  # axes (i, k, m, j, l, n)
    outer = outer * cross.T.reshape(1, nA, 1, nP, 1, 1)
    outer = outer.transpose(0, 3, 1, 4, 2, 5)
    N = nA * nP
    return F.reduce(outer.reshape(N, N, N))


def _kron(F: FieldSpec, MA: EvenMap, MP: EvenMap, space: GradedSpace) -> EvenMap:
    return EvenMap(space, F.reduce(np.kron(MA.matrix, MP.matrix)), validate=False)


def _cross_eps(A: ColorAlgebraBundle, P: ColorAlgebraBundle):
    """cross[j, k] = eps(deg x_j, deg a_k)."""
    return P.eps.table[P.space.degree_ids[:, None], A.space.degree_ids[None, :]]


def _require_shared(A: ColorAlgebraBundle, P: ColorAlgebraBundle):
    if A.field != P.field:
        raise FieldMismatch(f"factors over {A.field} and {P.field}")
    if A.group != P.group or A.eps != P.eps:
        raise GroupMismatch("factors must share grading group and bicharacter")


def check_lemma_bhca1(A: ColorAlgebraBundle) -> CheckReport:
    """Three rearrangement identities of commutative BiHom-associative algebras:

    b2(a)(b(b)a(c)) = b2(a)(b(b)b(c))
    b2(b)(b(c)a(a)) = eps(b+c, a) b2(a)(b(b)b(c))
    b2(c)(b(a)a(b)) = eps(c, a+b) b2(a)(b(b)b(c))
    """
    F, E, mu = A.field, A.E, A.mu
    t0 = time.perf_counter()
    b2 = A.beta.power(2)
    W1 = left_apply(mu, b2, pair_table(mu, A.beta, A.alpha))
    W2 = left_apply(mu, b2, pair_table(mu, A.beta, A.beta))
    parts = [_compare("bhca1_1", W1, W2, t0)]
    t0 = time.perf_counter()
    rhs2 = F.reduce(_cross(E, "j", "i") * F.reduce(_cross(E, "k", "i") * W2))
    parts.append(_compare("bhca1_2", W1.transpose(2, 0, 1, 3), rhs2, t0))
    t0 = time.perf_counter()
    rhs3 = F.reduce(_cross(E, "k", "i") * F.reduce(_cross(E, "k", "j") * W2))
    parts.append(_compare("bhca1_3", W1.transpose(1, 2, 0, 3), rhs3, t0))
    return CheckReport.combine("lemma_bhca1", parts)


def check_lemma_bhca2(A: ColorAlgebraBundle) -> CheckReport:
    """ab(a)(bc) = eps(a, b) b(b)(a(a)c)."""
    F, mu = A.field, A.mu
    t0 = time.perf_counter()
    lhs = left_apply(mu, A.alpha @ A.beta, pair_table(mu))
    V = left_apply(mu, A.beta, pair_table(mu, A.alpha))  # V[b, a, c] = b(b)(a(a) c)
    rhs = F.reduce(_cross(A.E, "i", "j") * V.transpose(1, 0, 2, 3))
    return _compare("lemma_bhca2", lhs, rhs, t0)


def tensor_assoc_poisson(A: ColorAlgebraBundle, P: ColorAlgebraBundle, *, force: bool = False) -> ColorAlgebraBundle:
    """A (x) P for A commutative BiHom-associative and P BiHom-Poisson.

    (a x, b y) -> eps(x, b) ab (x) xy on both products; maps are tensor products.
    Basis pair (i, j) has index i * dim(P) + j.
    """
    _require_shared(A, P)
    if not force:
        rep = check_bihom_associative(A)
        if not rep.passed:
            raise NotAssociative("tensor factor A must be BiHom-associative", rep)
        rep = check_commutative(A)
        if not rep.passed:
            raise FactorNotCommutative("tensor factor A must be eps-commutative", rep)
        for lemma in (check_lemma_bhca1, check_lemma_bhca2):
            rep = lemma(A)
            if not rep.passed:
                raise FactorNotCommutative(f"{rep.law} fails on factor A", rep)
        _require_poisson(P, "factor P")
    F = P.field
    space = _tensor_space(A, P)
    cross = _cross_eps(A, P)
    mu_t = _tensor_structure(F, A.mu.tensor, P.mu.tensor, cross)
    br_t = _tensor_structure(F, A.mu.tensor, P.bracket.tensor, cross)
    return _bundle(P, space=space, mu_t=mu_t, br_t=br_t,
                   alpha=_kron(F, A.alpha, P.alpha, space), beta=_kron(F, A.beta, P.beta, space))


def tensor_hom_poisson(P1: ColorAlgebraBundle, P2: ColorAlgebraBundle, *, force: bool = False):
    """Candidate Hom-Poisson structure on P1 (x) P2 and its Hom-Jacobi report.

    [a x, b y] = eps(x, b)(a *1 b (x) [x, y]2 + [a, b]1 (x) x *2 y).  The
    Jacobi identity is a hypothesis here, so it is reported rather than
    asserted.  When it holds the remaining laws are asserted.
    """
    _require_shared(P1, P2)
    for name, P in (("P1", P1), ("P2", P2)):
        if P.alpha != P.beta:
            raise NotHomMode(f"{name} must have beta = alpha")
    if not force:
        _require_poisson(P1, "P1")
        _require_poisson(P2, "P2")
    F = P1.field
    space = _tensor_space(P1, P2)
    cross = _cross_eps(P1, P2)
    mu_t = _tensor_structure(F, P1.mu.tensor, P2.mu.tensor, cross)
    br_t = F.reduce(
        _tensor_structure(F, P1.mu.tensor, P2.bracket.tensor, cross)
        + _tensor_structure(F, P1.bracket.tensor, P2.mu.tensor, cross)
    )
    alpha = _kron(F, P1.alpha, P2.alpha, space)
    out = _bundle(P1, space=space, mu_t=mu_t, br_t=br_t, alpha=alpha, beta=alpha)
    jacobi = check_jacobi(out)
    if jacobi.passed and not force:
        suite = check_bihom_poisson(out)
        if not suite.passed:
            raise NotPoisson(f"Jacobi holds but {', '.join(suite.failed_laws)} fail", suite)
    return out, jacobi


# -- field extension -----------------------------------------------------------

def embed_grading(A: ColorAlgebraBundle, eps: Bicharacter) -> ColorAlgebraBundle:
    """Place a trivially graded algebra in the group of ``eps`` (every degree = identity)."""
    if any(d != A.group.identity for d in A.space.degrees):
        raise GroupMismatch("algebra is not trivially graded")
    if A.field != eps.field:
        raise FieldMismatch(f"algebra over {A.field}, bicharacter over {eps.field}")
    G = eps.group
    space = GradedSpace(A.field, G, (G.identity,) * A.dim)
    return ColorAlgebraBundle(
        space=space, eps=eps,
        mu=BilinearMap(space, A.mu.tensor, validate=False),
        bracket=BilinearMap(space, A.bracket.tensor, validate=False),
        alpha=_rebase(A.alpha, space), beta=_rebase(A.beta, space),
    )


def _embed_array(arr, source: FieldSpec, target: FieldSpec):
    out = target.zeros(arr.shape)
    try:
        for idx, x in np.ndenumerate(arr):
            out[idx] = target.coerce(x)
    except NotReducibleInField as exc:
        raise NonEmbeddableConstants(str(exc)) from None
    return out


def embed_field(P: ColorAlgebraBundle, target: FieldSpec) -> ColorAlgebraBundle:
    """Re-read every constant of P in ``target`` (Q -> F_p, or identity)."""
    src = P.field
    if src == target:
        return P
    if src.is_prime:
        raise FieldMismatch(f"{src} does not embed into {target}")
    eps_t = _embed_array(P.eps.table, src, target)
    if np.any(eps_t == 0):
        raise NonEmbeddableConstants("a bicharacter value vanishes in the target field")
    space = GradedSpace(target, P.group, P.space.degrees)
    eps = Bicharacter(P.group, target, eps_t)
    return ColorAlgebraBundle(
        space=space, eps=eps,
        mu=BilinearMap(space, _embed_array(P.mu.tensor, src, target), validate=False),
        bracket=BilinearMap(space, _embed_array(P.bracket.tensor, src, target), validate=False),
        alpha=EvenMap(space, _embed_array(P.alpha.matrix, src, target), validate=False),
        beta=EvenMap(space, _embed_array(P.beta.matrix, src, target), validate=False),
    )


def scalar_extension(P: ColorAlgebraBundle, ext: ExtensionSpec, *, force: bool = False) -> ColorAlgebraBundle:
    if not force:
        _require_poisson(P)
    if ext.kind == "field_embed":
        return embed_field(P, ext.field)
    K = ext.algebra
    if not force:
        ident = EvenMap.identity(K.space)
        if K.alpha != ident or K.beta != ident:
            raise InvalidOperator("field presentation must have alpha = beta = id")
        for rep in (check_bihom_associative(K), check_commutative(K)):
            if not rep.passed:
                raise FactorNotCommutative("field presentation must be commutative associative", rep)
    return tensor_assoc_poisson(embed_grading(K, P.eps), P, force=force)


# -- Rota-Baxter ---------------------------------------------------------------

def _maps_commute_report(X: EvenMap, Y: EvenMap, law: str) -> CheckReport:
    t0 = time.perf_counter()
    F = X.field
    return _compare(law, F.matmul(X.matrix, Y.matrix).T, F.matmul(Y.matrix, X.matrix).T, t0)


def _commutation_parts(P: ColorAlgebraBundle, M: EvenMap, name: str) -> list[CheckReport]:
    return [_maps_commute_report(P.alpha, M, f"{name}_alpha_commute"),
            _maps_commute_report(P.beta, M, f"{name}_beta_commute")]


def check_rota_baxter(P: ColorAlgebraBundle, R: EvenMap, weight) -> CheckReport:
    """R(x)R(y) = R(R(x)y + xR(y) + w xy) for both products, R commuting with alpha, beta."""
    F = P.field
    lam = F.coerce(weight)
    parts = _commutation_parts(P, R, "R")
    for name in ("mu", "bracket"):
        t0 = time.perf_counter()
        B = getattr(P, name)
        lhs = pair_table(B, R, R)
        inner = F.reduce(pair_table(B, R) + pair_table(B, None, R) + lam * pair_table(B))
        parts.append(_compare(f"rota_baxter_{name}", lhs, apply_to_table(R, inner), t0))
    return CheckReport.combine("rota_baxter", parts)


def _witness_map(w, kind):
    if isinstance(w, OperatorWitness):
        if w.kind != kind:
            raise InvalidOperator(f"expected a {kind} witness, got {w.kind}")
        return w
    raise TypeError("expected an OperatorWitness")


def rota_baxter_induced(P: ColorAlgebraBundle, w: OperatorWitness, *, force: bool = False) -> ColorAlgebraBundle:
    """x * y = R(x)y + xR(y) + w xy and the same for the bracket."""
    w = _witness_map(w, "rota_baxter")
    R, F = w.map, P.field
    lam = F.coerce(w.weight)
    if not force:
        rep = check_rota_baxter(P, R, lam)
        if not rep.passed:
            raise InvalidOperator(f"not a Rota-Baxter operator ({', '.join(rep.failed_laws)})", rep)
        _require_poisson(P)

    def induced(B):
        return F.reduce(pair_table(B, R) + pair_table(B, None, R) + lam * pair_table(B))

    return _bundle(P, mu_t=induced(P.mu), br_t=induced(P.bracket), alpha=P.alpha, beta=P.beta)


# -- averaging operators and centroid ----------------------------------------------

def _ab_power(P: ColorAlgebraBundle, k: int, l: int) -> EvenMap:
    return P.alpha.power(k) @ P.beta.power(l)


def check_averaging(P: ColorAlgebraBundle, theta: EvenMap, k: int = 0, l: int = 0) -> CheckReport:
    """theta(theta(x) M(y)) = theta(x)theta(y) = theta(M(x) theta(y)), M = alpha^k beta^l,
    for both products, theta commuting with alpha and beta."""
    M = _ab_power(P, k, l)
    parts = _commutation_parts(P, theta, "theta")
    for name in ("mu", "bracket"):
        B = getattr(P, name)
        mid = pair_table(B, theta, theta)
        t0 = time.perf_counter()
        parts.append(_compare(f"averaging_{name}_left", apply_to_table(theta, pair_table(B, theta, M)), mid, t0))
        t0 = time.perf_counter()
        parts.append(_compare(f"averaging_{name}_right", mid, apply_to_table(theta, pair_table(B, M, theta)), t0))
    return CheckReport.combine("averaging", parts)


def _require_averaging(P, theta, k, l):
    rep = check_averaging(P, theta, k, l)
    if not rep.passed:
        raise InvalidOperator(f"not an averaging operator ({', '.join(rep.failed_laws)})", rep)


def averaging_induced_diag(P: ColorAlgebraBundle, w: OperatorWitness, *, force: bool = False) -> ColorAlgebraBundle:
    """x * y = theta(x)theta(y), {x, y} = [theta x, theta y] for a (alpha^0, beta^0)-averaging theta."""
    w = _witness_map(w, "averaging")
    if (w.k, w.l) != (0, 0):
        raise InvalidOperator("the diagonal construction needs k = l = 0")
    theta = w.map
    if not force:
        _require_averaging(P, theta, 0, 0)
        _require_poisson(P)
    return _bundle(P, mu_t=pair_table(P.mu, theta, theta), br_t=pair_table(P.bracket, theta, theta),
                   alpha=P.alpha, beta=P.beta)


def averaging_induced(P: ColorAlgebraBundle, w: OperatorWitness, *, force: bool = False) -> ColorAlgebraBundle:
    """x * y = theta(x) M(y), {x, y} = [theta x, M y] for an injective averaging theta."""
    w = _witness_map(w, "averaging")
    theta = w.map
    if not force:
        _require_averaging(P, theta, w.k, w.l)
        if not theta.is_bijective():
            raise NotInjective("averaging construction needs an injective operator")
        _require_poisson(P)
    M = _ab_power(P, w.k, w.l)
    return _bundle(P, mu_t=pair_table(P.mu, theta, M), br_t=pair_table(P.bracket, theta, M),
                   alpha=P.alpha, beta=P.beta)


def check_centroid(P: ColorAlgebraBundle, theta: EvenMap, k: int = 0, l: int = 0) -> CheckReport:
    """theta(x) M(y) = theta(x)theta(y) = M(x) theta(y) for both products, M = alpha^k beta^l."""
    M = _ab_power(P, k, l)
    parts = _commutation_parts(P, theta, "theta")
    for name in ("mu", "bracket"):
        B = getattr(P, name)
        mid = pair_table(B, theta, theta)
        t0 = time.perf_counter()
        parts.append(_compare(f"centroid_{name}_left", pair_table(B, theta, M), mid, t0))
        t0 = time.perf_counter()
        parts.append(_compare(f"centroid_{name}_right", mid, pair_table(B, M, theta), t0))
    return CheckReport.combine("centroid", parts)


def centroid_induced(P: ColorAlgebraBundle, w: OperatorWitness, *, force: bool = False) -> ColorAlgebraBundle:
    """x * y = M(x) theta(y), {x, y} = [M x, theta y], maps (alpha^(k+1) beta^l, alpha^k beta^(l+1))."""
    w = _witness_map(w, "centroid")
    theta, k, l = w.map, w.k, w.l
    if not force:
        if k < 0 or l < 0:
            raise InvalidOperator("centroid construction needs k, l >= 0")
        rep = check_centroid(P, theta, k, l)
        if not rep.passed:
            raise InvalidOperator(f"not a centroid element ({', '.join(rep.failed_laws)})", rep)
        _require_poisson(P)
    M = _ab_power(P, k, l)
    return _bundle(P, mu_t=pair_table(P.mu, M, theta), br_t=pair_table(P.bracket, M, theta),
                   alpha=_ab_power(P, k + 1, l), beta=_ab_power(P, k, l + 1))


# -- multipliers -----------------------------------------------------------------

def multiplier_deform(P: ColorAlgebraBundle, sigma: Multiplier, *, force: bool = False) -> ColorAlgebraBundle:
    """Scale both products by sigma(deg x, deg y); the bicharacter becomes eps * delta."""
    if sigma.group != P.group:
        raise GroupMismatch("multiplier lives on a different group")
    if sigma.field != P.field:
        raise FieldMismatch("multiplier lives over a different field")
    if not check_multiplier(sigma.group, sigma.field, sigma.table).passed:
        raise InvalidMultiplier("sigma fails the multiplier law")
    if not force:
        _require_poisson(P)
    F = P.field
    delta = bicharacter_of_multiplier(sigma)
    eps = P.eps * delta
    if eps == P.eps:
        eps = P.eps
    ids = P.space.degree_ids
    S = sigma.table[ids[:, None], ids[None, :]][:, :, None]
    return _bundle(P, mu_t=F.reduce(S * P.mu.tensor), br_t=F.reduce(S * P.bracket.tensor),
                   alpha=P.alpha, beta=P.beta, eps=eps)
