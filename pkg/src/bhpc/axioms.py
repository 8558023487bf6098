"""The algebra bundle and exhaustive identity checkers.

Every identity is multilinear and the color factors depend only on degrees,
so checking it on basis tuples decides it for all homogeneous elements.  Each
check evaluates both sides as a dense table over basis tuples and reports the
first differing tuples in lexicographic order.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .glinalg import (
    BilinearMap,
    EvenMap,
    GradedSpace,
    apply_to_table,
    check_even_map,
    left_apply,
    pair_table,
    right_apply,
)
from .grading import Bicharacter
from .reports import WITNESS_CAP, CheckReport, Witness
from .scalars import QQ

LEIBNIZ_MODES = ("proof", "definition")
ASSOC_FORMS = ("standard", "literal")


@dataclass(frozen=True, eq=False)
class ColorAlgebraBundle:
    space: GradedSpace
    eps: Bicharacter
    mu: BilinearMap
    bracket: BilinearMap
    alpha: EvenMap
    beta: EvenMap

    def __post_init__(self):
        sp = self.space
        if self.eps.group != sp.group or self.eps.field != sp.field:
            raise ValidationError("shared field and group", None, "bicharacter does not match the space")
        for name in ("mu", "bracket", "alpha", "beta"):
            if getattr(self, name).space != sp:
                raise ValidationError("shared space", None, f"{name} lives on a different space")
        if not self.alpha.commutes_with(self.beta):
            raise ValidationError("alpha_beta_commute", None, "alpha and beta do not commute")

    @classmethod
    def build(cls, space, eps, mu=None, bracket=None, alpha=None, beta=None) -> ColorAlgebraBundle:
        return cls(
            space=space,
            eps=eps,
            mu=mu if mu is not None else BilinearMap.zero(space),
            bracket=bracket if bracket is not None else BilinearMap.zero(space),
            alpha=alpha if alpha is not None else EvenMap.identity(space),
            beta=beta if beta is not None else EvenMap.identity(space),
        )

    @property
    def field(self):
        return self.space.field

    @property
    def group(self):
        return self.space.group

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def E(self) -> np.ndarray:
        return self.space.eps_matrix(self.eps)

    def replace(self, **changes) -> ColorAlgebraBundle:
        fields = dict(space=self.space, eps=self.eps, mu=self.mu, bracket=self.bracket,
                      alpha=self.alpha, beta=self.beta)
        fields.update(changes)
        return ColorAlgebraBundle(**fields)

    def __eq__(self, other):
        return (
            isinstance(other, ColorAlgebraBundle)
            and self.space == other.space
            and self.eps == other.eps
            and self.mu == other.mu
            and self.bracket == other.bracket
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    __hash__ = None


# -- comparison helpers ---------------------------------------------------

def _compare(law: str, lhs, rhs, t0: float, note: str = "", scale: int | None = None) -> CheckReport:
    """Report every index (leading axes) where lhs and rhs differ along the last axis.

    ``scale`` marks lhs and rhs as integer tables over Q standing for
    ``table / scale``; witnesses are converted back to Fractions.
    """
    if scale is None and lhs.dtype == object:
        (li, ri), _ = QQ.integral(lhs, rhs)
        bad = np.any(li != ri, axis=-1)
    else:
        bad = np.any(lhs != rhs, axis=-1)
    idx = np.argwhere(bad)

    def values(v):
        row = v.tolist()
        return tuple(Fraction(x, scale) for x in row) if scale is not None else tuple(row)

    witnesses = [
        Witness(law, tuple(int(i) for i in ix), values(lhs[tuple(ix)]), values(rhs[tuple(ix)]))
        for ix in idx[:WITNESS_CAP]
    ]
    return CheckReport(law, not len(idx), witnesses, time.perf_counter() - t0, note=note)



def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BHPC_THREADS", "1")))
    except ValueError:
        return 1


def _run(tasks) -> list[CheckReport]:
    """Evaluate zero-argument check callables, merging in task order."""
    n = min(_threads(), len(tasks))
    if n <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _cross(E, a: str, b: str):
    """Broadcast E over a triple-index table: a, b name the axes among 'ijk'."""
    shape = [1, 1, 1, 1]
    axes = "ijk"
    ia, ib = axes.index(a), axes.index(b)
    out = E
    if ia > ib:
        out = E.T
        ia, ib = ib, ia
    shape[ia] = E.shape[0]
    shape[ib] = E.shape[0]
    return out.reshape(shape)


# -- leaf laws ------------------------------------------------------------

def check_maps_commute(A: ColorAlgebraBundle, law: str = "alpha_beta_commute") -> CheckReport:
    t0 = time.perf_counter()
    F = A.field
    ab = F.matmul(A.alpha.matrix, A.beta.matrix)
    ba = F.matmul(A.beta.matrix, A.alpha.matrix)
    return _compare(law, ab.T, ba.T, t0)


def check_associativity_identity(A: ColorAlgebraBundle, form: str = "standard") -> CheckReport:
    """alpha(x)(yz) = (xy)beta(z); the ``literal`` form uses alpha(z) on the right."""
    t0 = time.perf_counter()
    right_map = A.beta if form == "standard" else A.alpha
    T = pair_table(A.mu)
    lhs = left_apply(A.mu, A.alpha, T)
    rhs = right_apply(A.mu, T, right_map)
    return _compare("bihom_associativity", lhs, rhs, t0, note="" if form == "standard" else "literal form")


def check_multiplicative(A: ColorAlgebraBundle, which: str, product: str) -> CheckReport:
    """phi(B(x, y)) = B(phi x, phi y) for phi in {alpha, beta}, B in {mu, bracket}."""
    t0 = time.perf_counter()
    phi = getattr(A, which)
    B = A.mu if product == "mu" else A.bracket
    lhs = apply_to_table(phi, pair_table(B))
    rhs = pair_table(B, phi, phi)
    return _compare(f"{which}_mult_{product}", lhs, rhs, t0)


def check_skew_symmetry(A: ColorAlgebraBundle) -> CheckReport:
    """[beta x, alpha y] = -eps(x, y)[beta y, alpha x]."""
    t0 = time.perf_counter()
    F = A.field
    T = pair_table(A.bracket, A.beta, A.alpha)
    rhs = F.reduce(-A.E[:, :, None] * T.transpose(1, 0, 2))
    return _compare("bihom_skew_symmetry", T, rhs, t0)


def check_jacobi(A: ColorAlgebraBundle) -> CheckReport:
    """Cyclic sum of eps(z, x)[beta^2 x, [beta y, alpha z]] vanishes."""
    t0 = time.perf_counter()
    F = A.field
    E = A.E
    inner = pair_table(A.bracket, A.beta, A.alpha)
    W = left_apply(A.bracket, A.beta.power(2), inner)  # W[i, j, k] = [b2 b_i, [b b_j, a b_k]]
    (W,), sw = F.integral(W)
    (E,), se = F.integral(E)
    # W.transpose(2, 0, 1)[i, j, k] = W[j, k, i]; W.transpose(1, 2, 0)[i, j, k] = W[k, i, j]
    total = (
        _cross(E, "k", "i") * W
        + _cross(E, "i", "j") * W.transpose(2, 0, 1, 3)
        + _cross(E, "j", "k") * W.transpose(1, 2, 0, 3)
    )
    total = F.reduce(total)
    zero = np.zeros(total.shape, dtype=total.dtype)
    return _compare("bihom_jacobi", total, zero, t0, scale=None if F.is_prime else sw * se)


def check_leibniz_identity(A: ColorAlgebraBundle, mode: str = "proof") -> CheckReport:
    """Compatibility of bracket and product.

    proof:      {ab x, yz} = {b x, y} b(z) + eps(x, y) b(y) {a x, z}
    definition: {a x, yz}  = {x, y} a(z)   + eps(x, y) a(y) {x, z}
    """
    if mode not in LEIBNIZ_MODES:
        raise ValueError(f"unknown Leibniz mode {mode!r}")
    t0 = time.perf_counter()
    F = A.field
    mu, br = A.mu, A.bracket
    if mode == "proof":
        lhs = left_apply(br, A.alpha @ A.beta, pair_table(mu))
        t1 = right_apply(mu, pair_table(br, A.beta), A.beta)
        V = left_apply(mu, A.beta, pair_table(br, A.alpha))  # V[j, i, k] = b(b_j) {a b_i, b_k}
    else:
        lhs = left_apply(br, A.alpha, pair_table(mu))
        t1 = right_apply(mu, pair_table(br), A.alpha)
        V = left_apply(mu, A.alpha, pair_table(br))  # V[j, i, k] = a(b_j) {b_i, b_k}
    (lhs, t1, V), s = F.integral(lhs, t1, V)
    (E,), se = F.integral(A.E)
    if se != 1:
        lhs, t1 = lhs * se, t1 * se
    rhs = F.reduce(t1 + _cross(E, "i", "j") * V.transpose(1, 0, 2, 3))
    return _compare("bihom_leibniz", lhs, rhs, t0, note=f"{mode} form", scale=None if F.is_prime else s * se)


# -- aggregate checks -------------------------------------------------------

def check_bihom_associative(A: ColorAlgebraBundle, *, form: str = "standard") -> CheckReport:
    parts = _run([lambda: check_maps_commute(A), lambda: check_associativity_identity(A, form)])
    return CheckReport.combine("bihom_associative", parts)


def check_commutative(A: ColorAlgebraBundle) -> CheckReport:
    """mu(x, y) = eps(x, y) mu(y, x)."""
    t0 = time.perf_counter()
    F = A.field
    T = pair_table(A.mu)
    rhs = F.reduce(A.E[:, :, None] * T.transpose(1, 0, 2))
    return _compare("commutativity", T, rhs, t0)


def check_bihom_lie(A: ColorAlgebraBundle) -> CheckReport:
    tasks = [
        lambda: check_maps_commute(A),
        lambda: check_multiplicative(A, "alpha", "bracket"),
        lambda: check_multiplicative(A, "beta", "bracket"),
        lambda: check_skew_symmetry(A),
        lambda: check_jacobi(A),
    ]
    return CheckReport.combine("bihom_lie", _run(tasks))


def check_bihom_leibniz(A: ColorAlgebraBundle, mode: str = "proof") -> CheckReport:
    return check_leibniz_identity(A, mode)


def check_bihom_poisson(A: ColorAlgebraBundle, *, leibniz_mode: str = "proof", mult_mu: bool = True,
                        assoc_form: str = "standard") -> CheckReport:
    """Every defining law, itemized; multiplicativity over mu is on unless ``mult_mu=False``."""
    tasks = [
        lambda: check_maps_commute(A),
        lambda: check_associativity_identity(A, assoc_form),
    ]
    if mult_mu:
        tasks += [
            lambda: check_multiplicative(A, "alpha", "mu"),
            lambda: check_multiplicative(A, "beta", "mu"),
        ]
    tasks += [
        lambda: check_multiplicative(A, "alpha", "bracket"),
        lambda: check_multiplicative(A, "beta", "bracket"),
        lambda: check_skew_symmetry(A),
        lambda: check_jacobi(A),
        lambda: check_leibniz_identity(A, leibniz_mode),
    ]
    return CheckReport.combine("bihom_poisson", _run(tasks))


def check_regular(A: ColorAlgebraBundle) -> bool:
    if not (A.alpha.is_bijective() and A.beta.is_bijective()):
        return False
    return all(
        check_multiplicative(A, which, product).passed
        for which in ("alpha", "beta")
        for product in ("mu", "bracket")
    )


def _as_matrix(f, source: ColorAlgebraBundle):
    if isinstance(f, EvenMap):
        return f.matrix
    return source.field.array(f)


def check_morphism(f, source: ColorAlgebraBundle, target: ColorAlgebraBundle) -> CheckReport:
    """f commutes with the structure maps and carries both products of source to target."""
    if source.field != target.field or source.group != target.group or source.dim != target.dim:
        raise DimensionMismatch("morphism check needs equal field, group and dimension")
    F = source.field
    M = _as_matrix(f, source)
    t0 = time.perf_counter()
    parts = []
    ev = check_even_map(source.space, M, target.space)
    parts.append(CheckReport("f_even", ev.passed,
                             [] if ev.passed else [Witness("f_even", ev.witness or (), (), ())],
                             time.perf_counter() - t0))
    fm = EvenMap(source.space, M, validate=False)
    for name in ("alpha", "beta"):
        t0 = time.perf_counter()
        lhs = F.matmul(M, getattr(source, name).matrix)
        rhs = F.matmul(getattr(target, name).matrix, M)
        parts.append(_compare(f"f_{name}_intertwine", lhs.T, rhs.T, t0))
    for name in ("mu", "bracket"):
        t0 = time.perf_counter()
        lhs = apply_to_table(fm, pair_table(getattr(source, name)))
        rhs = pair_table(getattr(target, name), fm, fm)
        parts.append(_compare(f"f_mult_{name}", lhs, rhs, t0))
    return CheckReport.combine("morphism", parts)
