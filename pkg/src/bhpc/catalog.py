"""Built-in example bundles and a seeded generator of valid instances.

Every entry is produced by running the constructors on a small primitive
algebra (group algebra, dual numbers, K x K, sl2) and is checked against the
full law suite when it is built.  The generator chains the same constructors
with random twists, so its output never relies on unchecked constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace as dc_replace

import numpy as np

from .axioms import ColorAlgebraBundle, check_bihom_poisson
from .constructions import (
    OperatorWitness,
    commutator_poisson,
    embed_grading,
    multiplier_deform,
    tensor_assoc_poisson,
    twist,
)
from .errors import GenerationExhausted, NoMutableEntry, NotPoisson, UnknownEntry
from .glinalg import BilinearMap, EvenMap, GradedSpace, apply_to_table, pair_table
from .grading import (
    Bicharacter,
    FiniteAbelianGroup,
    builtin_bicharacter,
    random_bicharacter,
    random_multiplier,
    _roots_of_unity,
)
from .scalars import QQ, FieldSpec

MORPHISM_DRAWS = 1000
MAX_DIM = 12


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    bundle: ColorAlgebraBundle
    provenance: tuple[str, ...] = ()
    # operators known to satisfy their defining identities on this bundle
    operators: dict = dc_field(default_factory=dict, compare=False)


# -- primitives ---------------------------------------------------------------

TRIVIAL_GROUP = FiniteAbelianGroup(())


def group_algebra(G: FiniteAbelianGroup, F: FieldSpec, eps: Bicharacter | str = "sign_dot") -> ColorAlgebraBundle:
    """K[G] with basis e_g in lexicographic order, e_g e_h = e_{g+h}, deg e_g = g."""
    if isinstance(eps, str):
        eps = builtin_bicharacter(eps, G, F)
    space = GradedSpace(F, G, G.elements)
    entries = [(i, j, G.index(G.add(g, h)), 1)
               for i, g in enumerate(G.elements) for j, h in enumerate(G.elements)]
    return ColorAlgebraBundle.build(space, eps, mu=BilinearMap.from_entries(space, entries))


def _trivially_graded(F: FieldSpec, dim: int, entries) -> ColorAlgebraBundle:
    G = TRIVIAL_GROUP
    space = GradedSpace(F, G, (G.identity,) * dim)
    eps = builtin_bicharacter("trivial", G, F)
    return ColorAlgebraBundle.build(space, eps, mu=BilinearMap.from_entries(space, entries))


def dual_numbers(F: FieldSpec = QQ) -> ColorAlgebraBundle:
    """K[t]/(t^2) on the basis (1, t)."""
    return _trivially_graded(F, 2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])


def k_times_k(F: FieldSpec = QQ) -> ColorAlgebraBundle:
    """K x K on the idempotent basis (1, 0), (0, 1)."""
    return _trivially_graded(F, 2, [(0, 0, 0, 1), (1, 1, 1, 1)])


def unit_algebra(F: FieldSpec = QQ) -> ColorAlgebraBundle:
    return _trivially_graded(F, 1, [(0, 0, 0, 1)])


def field_presentation(F: FieldSpec, c) -> ColorAlgebraBundle:
    """K[u]/(u^2 - c) on the basis (1, u)."""
    return _trivially_graded(F, 2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, c)])


def sl2(F: FieldSpec = QQ) -> ColorAlgebraBundle:
    """sl2 on (h, e, f) with zero product."""
    G = TRIVIAL_GROUP
    space = GradedSpace(F, G, (G.identity,) * 3)
    eps = builtin_bicharacter("trivial", G, F)
    br = BilinearMap.from_entries(space, [
        (0, 1, 1, 2), (1, 0, 1, -2),
        (0, 2, 2, -2), (2, 0, 2, 2),
        (1, 2, 0, 1), (2, 1, 0, -1),
    ])
    return ColorAlgebraBundle.build(space, eps, bracket=br)


# -- builtins -------------------------------------------------------------------

def _z2():
    return FiniteAbelianGroup((2,))


def _kz2_commutator(F):
    A = group_algebra(_z2(), F)
    return commutator_poisson(A), ("group_algebra(Z2, sign_dot)", "commutator_poisson")


def _kz2_twisted(F):
    A = group_algebra(_z2(), F)
    ap = EvenMap.diagonal(A.space, [1, -1])
    tw = twist(A, ap, EvenMap.identity(A.space))
    return commutator_poisson(tw), ("group_algebra(Z2, sign_dot)", "twist(diag(1,-1), id)", "commutator_poisson")


def _dual(F):
    return dual_numbers(F), ("dual_numbers",)


def _kz2xz2_commutator(F):
    A = group_algebra(FiniteAbelianGroup((2, 2)), F)
    return commutator_poisson(A), ("group_algebra(Z2xZ2, sign_dot)", "commutator_poisson")


def _kxk(F):
    return k_times_k(F), ("k_times_k",)


def _assoc_only(F):
    A = dual_numbers(F)
    tw = twist(A, EvenMap.diagonal(A.space, [1, 2]), EvenMap.diagonal(A.space, [1, 3]))
    return tw, ("dual_numbers", "twist(diag(1,2), diag(1,3))")


def _lie_only(F):
    L = sl2(F)
    a = EvenMap.diagonal(L.space, [1, 2, F.inv(F.coerce(2))])
    b = EvenMap.diagonal(L.space, [1, 3, F.inv(F.coerce(3))])
    return twist(L, a, b), ("sl2", "twist(diag(1,2,1/2), diag(1,3,1/3))")


def _unit(F):
    return unit_algebra(F), ("unit_algebra",)


_BUILDERS = {
    "kz2_commutator": _kz2_commutator,
    "kz2_twisted": _kz2_twisted,
    "dual_numbers": _dual,
    "kz2xz2_commutator": _kz2xz2_commutator,
    "kxk": _kxk,
    "assoc_only_zero_bracket": _assoc_only,
    "lie_only_zero_mu": _lie_only,
    "k_trivial": _unit,
}


def _known_operators(name: str, P: ColorAlgebraBundle) -> dict:
    S = P.space
    if name == "dual_numbers":
        t_mult = EvenMap(S, [[0, 0], [1, 0]])
        return {
            "rota_baxter_nilpotent": OperatorWitness("rota_baxter", t_mult, weight=0),
            "averaging_mult_t": OperatorWitness("averaging", t_mult),
        }
    if name == "kxk":
        proj = EvenMap(S, [[1, 0], [0, 0]])
        return {
            "averaging_projection": OperatorWitness("averaging", proj),
            "centroid_projection": OperatorWitness("centroid", proj),
        }
    return {}


def names() -> list[str]:
    return list(_BUILDERS)


def builtin(name: str, field: FieldSpec = QQ) -> CatalogEntry:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise UnknownEntry(f"no catalog entry named {name!r}") from None
    bundle, provenance = build(field)
    rep = check_bihom_poisson(bundle)
    if not rep.passed:
        raise NotPoisson(f"catalog entry {name} fails {', '.join(rep.failed_laws)}", rep)
    return CatalogEntry(name, bundle, provenance, _known_operators(name, bundle))


def builtins(field: FieldSpec = QQ) -> list[CatalogEntry]:
    return [builtin(n, field) for n in _BUILDERS]


# -- generation -----------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    orders: tuple[int, ...] = (2,)
    field: FieldSpec = dc_field(default_factory=lambda: FieldSpec.prime(7))
    min_dim: int = 1
    max_dim: int = 8
    twist_depth: int = 1
    base: str = "group_algebra"  # group_algebra | dual_numbers | dual_group | auto
    eps: str = "auto"  # auto | trivial | sign_dot | random
    steps: tuple[str, ...] = ("twist", "commutator", "multiplier")
    entry_range: int = 2

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.min_dim < 1 or self.max_dim < self.min_dim or self.max_dim > MAX_DIM:
            raise ValueError(f"dimension bounds must satisfy 1 <= min <= max <= {MAX_DIM}")
        if self.twist_depth < 0 or self.entry_range < 1:
            raise ValueError("bounds must be positive")
        if self.base not in ("group_algebra", "dual_numbers", "dual_group", "auto"):
            raise ValueError(f"unknown base {self.base!r}")
        if self.eps not in ("auto", "trivial", "sign_dot", "random"):
            raise ValueError(f"unknown bicharacter choice {self.eps!r}")
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))


def _base_bundle(cfg: GeneratorConfig, rng) -> tuple[ColorAlgebraBundle, str]:
    G = FiniteAbelianGroup(cfg.orders)
    F = cfg.field
    choice = cfg.eps
    if choice == "auto":
        choice = "sign_dot" if all(n == 2 for n in cfg.orders) else "random"
    if choice == "random":
        eps = random_bicharacter(G, F, rng)
    else:
        eps = builtin_bicharacter(choice, G, F)
    base = cfg.base
    if base == "auto":
        options = [b for b, d in (("group_algebra", G.order), ("dual_numbers", 2), ("dual_group", 2 * G.order))
                   if cfg.min_dim <= d <= cfg.max_dim]
        if not options:
            raise GenerationExhausted("no base algebra fits the dimension bounds")
        base = options[int(rng.integers(len(options)))]
    if base == "group_algebra":
        A = group_algebra(G, F, eps)
    elif base == "dual_numbers":
        A = embed_grading(dual_numbers(F), eps)
    else:
        A = tensor_assoc_poisson(embed_grading(dual_numbers(F), eps), group_algebra(G, F, eps))
    if not cfg.min_dim <= A.dim <= cfg.max_dim:
        raise GenerationExhausted(f"base {base} has dimension {A.dim}, outside the bounds")
    name = "random" if cfg.eps == "random" or (cfg.eps == "auto" and choice == "random") else choice
    return A, f"{base}({G}, {name})"


def _random_block_map(A: ColorAlgebraBundle, rng, r: int) -> EvenMap:
    """Degree-block diagonal matrix: nonzero diagonal, off-diagonal block entries zero half the time."""
    F = A.field
    n = A.dim
    same = A.space.same_degree
    values = [v for v in range(-r, r + 1) if v]
    M = F.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                M[i, j] = F.coerce(values[int(rng.integers(len(values)))])
            elif same[i, j] and rng.random() < 0.5:
                M[i, j] = F.coerce(int(rng.integers(-r, r + 1)))
    return EvenMap(A.space, M, validate=False)


def _random_character_map(A: ColorAlgebraBundle, rng) -> EvenMap:
    """b_i -> chi(deg b_i) b_i for a random character chi of the grading group."""
    F, G = A.field, A.group
    z = []
    for n in G.orders:
        roots = _roots_of_unity(F, n)
        z.append(roots[int(rng.integers(len(roots)))])
    diag = []
    for g in A.space.degrees:
        v = F.one
        for za, ga in zip(z, g):
            v = F.mul(v, F.pow(za, ga))
        diag.append(v)
    return EvenMap.diagonal(A.space, diag)


def _proposal(A: ColorAlgebraBundle, rng, r: int) -> EvenMap:
    # Character scalings are even morphisms of every graded algebra; mixing
    # them in keeps the acceptance rate usable on larger bases.
    kind = int(rng.integers(3))
    if kind == 0:
        return _random_block_map(A, rng, r)
    if kind == 1:
        return _random_character_map(A, rng)
    return _random_character_map(A, rng) @ _random_block_map(A, rng, r)


def random_commuting_morphisms(A: ColorAlgebraBundle, rng, *, entry_range: int = 2,
                               bound: int = MORPHISM_DRAWS) -> tuple[EvenMap, EvenMap]:
    """Rejection-sample bijective morphisms a', b' of A commuting with alpha, beta and each other."""
    found: list[EvenMap] = []
    tables = {name: pair_table(getattr(A, name)) for name in ("mu", "bracket")}
    for _ in range(bound):
        M = _proposal(A, rng, entry_range)
        if M.is_identity() and rng.random() < 0.95:
            continue
        if not M.is_bijective():
            continue
        if not (M.commutes_with(A.alpha) and M.commutes_with(A.beta)):
            continue
        if found and not M.commutes_with(found[0]):
            continue
        if not all(np.array_equal(apply_to_table(M, T), pair_table(getattr(A, name), M, M))
                   for name, T in tables.items()):
            continue
        found.append(M)
        if len(found) == 2:
            return found[0], found[1]
    raise GenerationExhausted(f"no commuting morphism pair after {bound} draws")


def generate_pipeline(cfg: GeneratorConfig) -> CatalogEntry:
    rng = np.random.default_rng(cfg.seed)
    A, base_name = _base_bundle(cfg, rng)
    steps = [base_name]
    if "twist" in cfg.steps:
        for _ in range(cfg.twist_depth):
            ap, bp = random_commuting_morphisms(A, rng, entry_range=cfg.entry_range)
            A = twist(A, ap, bp)
            steps.append(f"twist({_diag_or_matrix(ap)}, {_diag_or_matrix(bp)})")
    if "commutator" in cfg.steps:
        A = commutator_poisson(A)
        steps.append("commutator_poisson")
    if "multiplier" in cfg.steps and rng.integers(2):
        sigma = random_multiplier(A.group, A.field, rng)
        A = multiplier_deform(A, sigma)
        steps.append("multiplier_deform(random)")
    rep = check_bihom_poisson(A)
    if not rep.passed:
        raise NotPoisson(f"pipeline output fails {', '.join(rep.failed_laws)}", rep)
    return CatalogEntry(f"generated_{cfg.seed}", A, tuple(steps))


def _diag_or_matrix(M: EvenMap) -> str:
    F = M.field
    m = M.matrix
    if np.all(m == np.diag(np.diag(m))):
        return "diag(" + ",".join(F.render(x) for x in np.diag(m)) + ")"
    return "[" + ";".join(",".join(F.render(x) for x in row) for row in m) + "]"


# -- mutation ---------------------------------------------------------------------

def mutable_slots(A: ColorAlgebraBundle) -> list[tuple[str, int, int, int]]:
    ok = A.space.product_degree_ok
    return [(name, int(i), int(j), int(k)) for name in ("mu", "bracket") for i, j, k in np.argwhere(ok)]


def mutate(entry: CatalogEntry | ColorAlgebraBundle, seed: int) -> ColorAlgebraBundle:
    """Perturb one evenness-preserving structure constant by a nonzero delta."""
    A = entry.bundle if isinstance(entry, CatalogEntry) else entry
    slots = mutable_slots(A)
    if not slots:
        raise NoMutableEntry("no structure constant slot is compatible with the grading")
    rng = np.random.default_rng(seed)
    name, i, j, k = slots[int(rng.integers(len(slots)))]
    F = A.field
    delta = F.zero
    while F.is_zero(delta):
        delta = F.coerce(int(rng.choice([-2, -1, 1, 2])))
    T = getattr(A, name).tensor.copy()
    T[i, j, k] = F.add(T[i, j, k], delta)
    return A.replace(**{name: BilinearMap(A.space, T, validate=False)})


def with_name(entry: CatalogEntry, name: str) -> CatalogEntry:
    return dc_replace(entry, name=name)
