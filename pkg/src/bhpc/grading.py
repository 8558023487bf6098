"""Finite abelian grading groups, bicharacters and multipliers.

Groups are direct products of cyclic groups; elements are integer tuples.
Bicharacter and multiplier tables are indexed by the lexicographic order of
the group elements, which is also the row/column order of file tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod

import numpy as np

from .errors import DimensionMismatch, InvalidMultiplier, UnsupportedGroupForBuiltin, ZeroEntry
from .reports import MultiplierReport, ValidationReport
from .scalars import FieldSpec

GroupElement = tuple


@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 2 for n in orders):
            raise ValueError(f"cyclic factor orders must be >= 2, got {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def identity(self) -> GroupElement:
        return (0,) * len(self.orders)

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _index(self) -> dict[GroupElement, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, g) -> int:
        return self._index[self.element(g)]

    def element(self, g) -> GroupElement:
        g = tuple(int(c) for c in g)
        if len(g) != len(self.orders):
            raise DimensionMismatch(f"element {g} does not match group orders {self.orders}")
        return tuple(c % n for c, n in zip(g, self.orders))

    def is_element(self, g) -> bool:
        g = tuple(g)
        return len(g) == len(self.orders) and all(0 <= c < n for c, n in zip(g, self.orders))

    def add(self, a, b) -> GroupElement:
        return group_add(self, a, b)

    def neg(self, a) -> GroupElement:
        return tuple((-c) % n for c, n in zip(a, self.orders))

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of ``elements[i] + elements[j]``."""
        n = self.order
        out = np.empty((n, n), dtype=np.intp)
        for i, g in enumerate(self.elements):
            for j, h in enumerate(self.elements):
                out[i, j] = self._index[self.add(g, h)]
        return out

    def __str__(self):
        if not self.orders:
            return "trivial"
        return " x ".join(f"Z{n}" for n in self.orders)


def group_add(G: FiniteAbelianGroup, a, b) -> GroupElement:
    if len(a) != len(G.orders) or len(b) != len(G.orders):
        raise DimensionMismatch(f"elements {a}, {b} do not match group orders {G.orders}")
    return tuple((x + y) % n for x, y, n in zip(a, b, G.orders))


def _check_table_shape(G: FiniteAbelianGroup, table):
    n = G.order
    if table.shape != (n, n):
        raise DimensionMismatch(f"table must be {n}x{n} for group {G}, got {table.shape}")
    zeros = np.argwhere(table == 0)
    if len(zeros):
        i, j = zeros[0]
        raise ZeroEntry(f"table entry at ({G.elements[i]}, {G.elements[j]}) is zero")


def check_bicharacter(G: FiniteAbelianGroup, field: FieldSpec, table) -> ValidationReport:
    """Exhaustive check of the three bicharacter laws; reports the first violation."""
    table = field.array(table)
    _check_table_shape(G, table)
    els, add, mul = G.elements, G.add_table, field.mul
    n = G.order
    for i in range(n):
        for j in range(n):
            if mul(table[i, j], table[j, i]) != field.one:
                return ValidationReport(False, "(i) skew-symmetry", (els[i], els[j]),
                                        "eps(g,h) eps(h,g) != 1")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[i, add[j, k]] != mul(table[i, j], table[i, k]):
                    return ValidationReport(False, "(ii) additivity in the second slot",
                                            (els[i], els[j], els[k]))
                if table[add[i, j], k] != mul(table[i, k], table[j, k]):
                    return ValidationReport(False, "(iii) additivity in the first slot",
                                            (els[i], els[j], els[k]))
    return ValidationReport(True)


def check_multiplier(G: FiniteAbelianGroup, field: FieldSpec, table) -> MultiplierReport:
    """Check the multiplier law over all triples, plus the symmetry flags."""
    table = field.array(table)
    _check_table_shape(G, table)
    els, add, mul = G.elements, G.add_table, field.mul
    n = G.order
    symmetric = bool(np.all(table == table.T))

    def cyc(i, j, k):
        return mul(table[i, j], table[k, add[i, j]])

    cyclic = all(
        cyc(i, j, k) == cyc(j, k, i) == cyc(k, i, j)
        for i in range(n) for j in range(n) for k in range(n)
    )
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = mul(table[i, add[j, k]], table[j, k])
                rhs = mul(table[i, j], table[add[i, j], k])
                if lhs != rhs:
                    return MultiplierReport(False, "multiplier law", (els[i], els[j], els[k]),
                                            symmetric=symmetric, cyclic_invariant=cyclic)
    return MultiplierReport(True, symmetric=symmetric, cyclic_invariant=cyclic)


class _GroupTable:
    """Validated |G| x |G| table of nonzero scalars."""

    kind = "table"

    def __init__(self, group: FiniteAbelianGroup, field: FieldSpec, table):
        self.group = group
        self.field = field
        self.table = field.array(table)
        self.table.setflags(write=False)

    def __call__(self, g, h):
        return self.table[self.group.index(g), self.group.index(h)]

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.group == other.group
            and self.field == other.field
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((type(self).__name__, self.group, self.field, tuple(self.table.ravel().tolist())))

    def __repr__(self):
        return f"{type(self).__name__}({self.group}, {self.field})"


class Bicharacter(_GroupTable):
    def __init__(self, group, field, table, *, validate: bool = True):
        super().__init__(group, field, table)
        if validate:
            rep = check_bicharacter(group, field, self.table)
            if not rep.passed:
                from .errors import ValidationError
                raise ValidationError(f"bicharacter {rep.law}", rep.witness, rep.detail)

    def __mul__(self, other: Bicharacter) -> Bicharacter:
        if self.group != other.group or self.field != other.field:
            raise DimensionMismatch("bicharacters live on different groups or fields")
        return Bicharacter(self.group, self.field, self.field.reduce(self.table * other.table))

    @property
    def builtin_name(self) -> str | None:
        """Name of the builtin bicharacter this table equals, if any."""
        for name in ("trivial", "sign_dot"):
            try:
                if np.array_equal(builtin_bicharacter(name, self.group, self.field).table, self.table):
                    return name
            except UnsupportedGroupForBuiltin:
                pass
        return None


class Multiplier(_GroupTable):
    def __init__(self, group, field, table, *, validate: bool = True):
        super().__init__(group, field, table)
        if validate:
            rep = check_multiplier(group, field, self.table)
            if not rep.passed:
                raise InvalidMultiplier(f"multiplier law fails at {rep.witness}")

    @cached_property
    def report(self) -> MultiplierReport:
        return check_multiplier(self.group, self.field, self.table)

    @property
    def symmetric(self) -> bool:
        return self.report.symmetric


def builtin_bicharacter(name: str, G: FiniteAbelianGroup, field: FieldSpec) -> Bicharacter:
    n = G.order
    if name == "trivial":
        table = [[field.one] * n for _ in range(n)]
    elif name == "sign_dot":
        if any(o != 2 for o in G.orders):
            raise UnsupportedGroupForBuiltin(f"sign_dot needs every cyclic factor of order 2, got {G}")
        table = [
            [field.coerce((-1) ** sum(a * b for a, b in zip(g, h))) for h in G.elements]
            for g in G.elements
        ]
    else:
        raise UnsupportedGroupForBuiltin(f"unknown builtin bicharacter {name!r}")
    return Bicharacter(G, field, table, validate=False)


def trivial_multiplier(G: FiniteAbelianGroup, field: FieldSpec) -> Multiplier:
    return Multiplier(G, field, [[field.one] * G.order for _ in range(G.order)], validate=False)


def sign_multiplier(G: FiniteAbelianGroup, field: FieldSpec, pairs) -> Multiplier:
    """sigma(g, h) = (-1)^(sum of g[a] * h[b] over (a, b) in pairs); needs order-2 factors."""
    for a, b in pairs:
        if G.orders[a] != 2 or G.orders[b] != 2:
            raise UnsupportedGroupForBuiltin("sign multipliers need order-2 factors")
    table = [
        [field.coerce((-1) ** sum(g[a] * h[b] for a, b in pairs)) for h in G.elements]
        for g in G.elements
    ]
    return Multiplier(G, field, table)


def bicharacter_of_multiplier(sigma: Multiplier) -> Bicharacter:
    """delta(g, h) = sigma(g, h) / sigma(h, g)."""
    rep = check_multiplier(sigma.group, sigma.field, sigma.table)
    if not rep.passed:
        raise InvalidMultiplier(f"multiplier law fails at {rep.witness}")
    F = sigma.field
    n = sigma.group.order
    table = [[F.div(sigma.table[i, j], sigma.table[j, i]) for j in range(n)] for i in range(n)]
    # the associated table is a bicharacter for every multiplier; validate anyway
    return Bicharacter(sigma.group, F, table)


# -- random tables ------------------------------------------------------

def _roots_of_unity(field: FieldSpec, n: int) -> list:
    """Elements x of the field with x**n == 1."""
    if field.is_prime:
        return [x for x in range(1, field.p) if pow(x, n, field.p) == 1]
    return [field.coerce(1), field.coerce(-1)] if n % 2 == 0 else [field.coerce(1)]


def random_bimultiplicative(G: FiniteAbelianGroup, field: FieldSpec, rng, *, antisymmetric=False):
    """Table b(g, h) = prod over factor pairs (a, c) of z_ac^(g_a h_c), z_ac a root of unity.

    Each z_ac must satisfy z^gcd(n_a, n_c) = 1.  With ``antisymmetric`` the
    exponents are chosen so that b is a bicharacter (b(g,h) b(h,g) = 1).
    """
    from math import gcd

    r = G.rank
    z = {}
    for a in range(r):
        for c in range(r):
            d = gcd(G.orders[a], G.orders[c])
            roots = _roots_of_unity(field, d)
            z[a, c] = roots[int(rng.integers(len(roots)))]
    if antisymmetric:
        for a in range(r):
            d = G.orders[a]
            roots = [x for x in _roots_of_unity(field, d) if field.mul(x, x) == field.one]
            z[a, a] = roots[int(rng.integers(len(roots)))]
            for c in range(a + 1, r):
                z[c, a] = field.inv(z[a, c])
    table = []
    for g in G.elements:
        row = []
        for h in G.elements:
            v = field.one
            for (a, c), za in z.items():
                v = field.mul(v, field.pow(za, g[a] * h[c]))
            row.append(v)
        table.append(row)
    return table


def random_bicharacter(G: FiniteAbelianGroup, field: FieldSpec, rng) -> Bicharacter:
    return Bicharacter(G, field, random_bimultiplicative(G, field, rng, antisymmetric=True))


def random_multiplier(G: FiniteAbelianGroup, field: FieldSpec, rng, *, symmetric: bool = False,
                      value_range: int = 3) -> Multiplier:
    """Random multiplier: a coboundary phi(g)phi(h)/phi(g+h), times a random
    bimultiplicative table unless ``symmetric`` is requested."""
    F = field
    phi = []
    for g in G.elements:
        if g == G.identity:
            phi.append(F.one)
            continue
        while True:
            v = F.coerce(int(rng.integers(-value_range, value_range + 1)))
            if v != 0:
                break
        phi.append(v)
    add = G.add_table
    n = G.order
    bim = None if symmetric else random_bimultiplicative(G, F, rng)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = F.div(F.mul(phi[i], phi[j]), phi[add[i, j]])
            if bim is not None:
                v = F.mul(v, bim[i][j])
            row.append(v)
        table.append(row)
    return Multiplier(G, F, table)
