"""Graded vector spaces, even linear maps and even bilinear maps.

Linear maps are dense matrices whose column ``j`` is the image of basis
vector ``j``.  Bilinear maps are dense structure tensors ``C[i, j, k]``
(coefficient of ``b_k`` in ``B(b_i, b_j)``); iteration and serialization go
through the sparse list of nonzero entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import DimensionMismatch, SingularMap, ValidationError
from .grading import FiniteAbelianGroup
from .reports import ValidationReport
from .scalars import FieldSpec


@dataclass(frozen=True, eq=False)
class GradedSpace:
    field: FieldSpec
    group: FiniteAbelianGroup
    degrees: tuple

    def __post_init__(self):
        degs = tuple(self.group.element(g) for g in self.degrees)
        if not degs:
            raise ValueError("graded space needs at least one basis vector")
        object.__setattr__(self, "degrees", degs)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @cached_property
    def degree_ids(self) -> np.ndarray:
        return np.array([self.group.index(g) for g in self.degrees], dtype=np.intp)

    def component(self, g) -> list[int]:
        """Basis indices spanning the homogeneous component of degree g."""
        g = self.group.element(g)
        return [i for i, d in enumerate(self.degrees) if d == g]

    @cached_property
    def same_degree(self) -> np.ndarray:
        ids = self.degree_ids
        return ids[:, None] == ids[None, :]

    @cached_property
    def product_degree_ok(self) -> np.ndarray:
        """mask[i, j, k]: deg k == deg i + deg j."""
        ids = self.degree_ids
        add = self.group.add_table
        return add[ids[:, None], ids[None, :]][:, :, None] == ids[None, None, :]

    def eps_matrix(self, eps) -> np.ndarray:
        """E[i, j] = eps(deg b_i, deg b_j)."""
        ids = self.degree_ids
        return eps.table[ids[:, None], ids[None, :]]

    def basis_vector(self, i: int):
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def vector(self, coords):
        v = self.field.array(coords)
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"vector of length {v.shape} in a space of dim {self.dim}")
        return v

    def is_homogeneous(self, x) -> bool:
        support = np.nonzero(np.asarray(x) != 0)[0]
        return len({int(self.degree_ids[i]) for i in support}) <= 1

    def __eq__(self, other):
        return (
            isinstance(other, GradedSpace)
            and self.field == other.field
            and self.group == other.group
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.field, self.group, self.degrees))


def check_even_map(space: GradedSpace, matrix, target: GradedSpace | None = None) -> ValidationReport:
    """Nonzero entry [i][j] requires deg(target i) == deg(source j)."""
    target = target or space
    m = np.asarray(matrix)
    if m.shape != (target.dim, space.dim):
        return ValidationReport(False, "shape", None, f"expected {(target.dim, space.dim)}, got {m.shape}")
    mask = target.degree_ids[:, None] == space.degree_ids[None, :]
    bad = np.argwhere((m != 0) & ~mask)
    if len(bad):
        i, j = map(int, bad[0])
        return ValidationReport(False, "evenness", (i, j),
                                f"b_{j} has degree {space.degrees[j]} but its image has a "
                                f"component along b_{i} of degree {target.degrees[i]}")
    return ValidationReport(True)


def check_even_bilinear(space: GradedSpace, tensor) -> ValidationReport:
    t = np.asarray(tensor)
    n = space.dim
    if t.shape != (n, n, n):
        return ValidationReport(False, "shape", None, f"expected {(n, n, n)}, got {t.shape}")
    bad = np.argwhere((t != 0) & ~space.product_degree_ok)
    if len(bad):
        i, j, k = map(int, bad[0])
        return ValidationReport(False, "evenness", (i, j, k),
                                f"deg b_{i} + deg b_{j} != deg b_{k}")
    return ValidationReport(True)


# -- exact matrix algebra ---------------------------------------------

def _row_reduce(field: FieldSpec, M):
    """Reduced row echelon form and pivot columns (lists, exact)."""
    rows = [list(r) for r in M.tolist()]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, v) for v in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def matrix_rank(field: FieldSpec, M) -> int:
    return len(_row_reduce(field, np.asarray(M))[1])


def matrix_inverse(field: FieldSpec, M):
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = np.concatenate([M, field.eye(n)], axis=1)
    rows, pivots = _row_reduce(field, aug)
    if pivots[:n] != list(range(n)):
        raise SingularMap("matrix is not invertible")
    out = field.zeros((n, n))
    for i in range(n):
        out[i, :] = rows[i][n:]
    return out


# -- maps ---------------------------------------------------------------

class EvenMap:
    """Degree-preserving endomorphism of a graded space."""

    def __init__(self, space: GradedSpace, matrix, *, validate: bool = True):
        self.space = space
        m = space.field.array(matrix) if not _is_canonical(space.field, matrix) else np.array(matrix)
        if validate:
            rep = check_even_map(space, m)
            if not rep.passed:
                raise ValidationError(rep.law, rep.witness, f"even map: {rep.detail}")
        m.setflags(write=False)
        self.matrix = m

    @classmethod
    def identity(cls, space: GradedSpace) -> EvenMap:
        return cls(space, space.field.eye(space.dim), validate=False)

    @classmethod
    def scalar(cls, space: GradedSpace, c) -> EvenMap:
        F = space.field
        return cls(space, F.scale(F.coerce(c), F.eye(space.dim)), validate=False)

    @classmethod
    def diagonal(cls, space: GradedSpace, entries) -> EvenMap:
        F = space.field
        m = F.zeros((space.dim, space.dim))
        for i, c in enumerate(entries):
            m[i, i] = F.coerce(c)
        return cls(space, m, validate=False)

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    def apply(self, x):
        return map_apply(self, x)

    def __call__(self, x):
        return map_apply(self, x)

    def compose(self, other: EvenMap) -> EvenMap:
        return map_compose(self, other)

    def __matmul__(self, other: EvenMap) -> EvenMap:
        return map_compose(self, other)

    def power(self, n: int) -> EvenMap:
        return map_power(self, n)

    def inverse(self) -> EvenMap:
        return map_inverse(self)

    def is_bijective(self) -> bool:
        return map_is_bijective(self)

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, self.field.eye(self.space.dim))

    def commutes_with(self, other: EvenMap) -> bool:
        return maps_commute(self, other)

    def scaled(self, c) -> EvenMap:
        return EvenMap(self.space, self.field.scale(self.field.coerce(c), self.matrix), validate=False)

    def __add__(self, other: EvenMap) -> EvenMap:
        return EvenMap(self.space, self.field.reduce(self.matrix + other.matrix), validate=False)

    def __eq__(self, other):
        return (
            isinstance(other, EvenMap)
            and self.space == other.space
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.space, tuple(self.matrix.ravel().tolist())))

    def __repr__(self):
        return f"EvenMap({self.matrix.tolist()})"


def _is_canonical(field: FieldSpec, m) -> bool:
    if not isinstance(m, np.ndarray):
        return False
    if field.is_prime:
        return m.dtype == np.int64 and bool(np.all((m >= 0) & (m < field.p)))
    return m.dtype == object


def map_apply(M: EvenMap, x):
    x = np.asarray(x)
    if x.shape != (M.space.dim,):
        raise DimensionMismatch(f"vector of shape {x.shape} for a map on dim {M.space.dim}")
    return M.field.matmul(M.matrix, x)


def map_compose(M: EvenMap, N: EvenMap) -> EvenMap:
    """M after N."""
    if M.space != N.space:
        raise DimensionMismatch("composing maps on different spaces")
    return EvenMap(M.space, M.field.matmul(M.matrix, N.matrix), validate=False)


def map_power(M: EvenMap, n: int) -> EvenMap:
    if n < 0:
        return map_power(map_inverse(M), -n)
    result = EvenMap.identity(M.space)
    base = M
    while n:
        if n & 1:
            result = map_compose(result, base)
        base = map_compose(base, base)
        n >>= 1
    return result


def map_is_bijective(M: EvenMap) -> bool:
    return matrix_rank(M.field, M.matrix) == M.space.dim


def map_inverse(M: EvenMap) -> EvenMap:
    # inverse of an even map is even (it preserves each component)
    return EvenMap(M.space, matrix_inverse(M.field, M.matrix), validate=False)


def maps_commute(M: EvenMap, N: EvenMap) -> bool:
    F = M.field
    return np.array_equal(F.matmul(M.matrix, N.matrix), F.matmul(N.matrix, M.matrix))


class BilinearMap:
    """Even bilinear map given by its structure tensor."""

    def __init__(self, space: GradedSpace, tensor, *, validate: bool = True):
        self.space = space
        t = space.field.array(tensor) if not _is_canonical(space.field, tensor) else np.array(tensor)
        if validate:
            rep = check_even_bilinear(space, t)
            if not rep.passed:
                raise ValidationError(rep.law, rep.witness, f"bilinear map: {rep.detail}")
        t.setflags(write=False)
        self.tensor = t

    @classmethod
    def zero(cls, space: GradedSpace) -> BilinearMap:
        n = space.dim
        return cls(space, space.field.zeros((n, n, n)), validate=False)

    @classmethod
    def from_entries(cls, space: GradedSpace, entries, *, validate: bool = True) -> BilinearMap:
        """Build from (i, j, k, c) quadruples; repeated slots accumulate."""
        F = space.field
        n = space.dim
        t = F.zeros((n, n, n))
        for i, j, k, c in entries:
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise DimensionMismatch(f"structure constant index ({i}, {j}, {k}) out of range")
            t[i, j, k] = F.add(t[i, j, k], F.coerce(c))
        return cls(space, t, validate=validate)

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    def entries(self):
        """Nonzero constants as (i, j, k, c), lexicographic."""
        return [(int(i), int(j), int(k), self.tensor[i, j, k])
                for i, j, k in np.argwhere(self.tensor != 0)]

    def is_zero(self) -> bool:
        return not np.any(self.tensor != 0)

    def apply(self, x, y):
        return bilinear_apply(self, x, y)

    def __call__(self, x, y):
        return bilinear_apply(self, x, y)

    def table(self, left: EvenMap | None = None, right: EvenMap | None = None):
        """T[i, j] = B(left b_i, right b_j)."""
        return pair_table(self, left, right)

    def scaled(self, c) -> BilinearMap:
        return BilinearMap(self.space, self.field.scale(self.field.coerce(c), self.tensor), validate=False)

    def __add__(self, other: BilinearMap) -> BilinearMap:
        return BilinearMap(self.space, self.field.reduce(self.tensor + other.tensor), validate=False)

    def __eq__(self, other):
        return (
            isinstance(other, BilinearMap)
            and self.space == other.space
            and np.array_equal(self.tensor, other.tensor)
        )

    def __hash__(self):
        return hash((self.space, tuple(self.tensor.ravel().tolist())))

    def __repr__(self):
        return f"BilinearMap({len(self.entries())} nonzero constants, dim {self.space.dim})"


def bilinear_apply(B: BilinearMap, x, y):
    n = B.space.dim
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != (n,) or y.shape != (n,):
        raise DimensionMismatch(f"vectors {x.shape}, {y.shape} for a bilinear map on dim {n}")
    return kernels.bilinear_outer(B.field, B.tensor, x[None, :], y[None, :])[0, 0]


def products(B: BilinearMap, X, Y):
    """Products of all row pairs: U[r, s] = B(X[r], Y[s])."""
    return kernels.bilinear_outer(B.field, B.tensor, np.asarray(X), np.asarray(Y))


def pair_table(B: BilinearMap, left: EvenMap | None = None, right: EvenMap | None = None):
    """T[i, j, :] = B(left(b_i), right(b_j)); None means the identity."""
    F = B.field
    n = B.space.dim
    X = left.matrix.T if left is not None else F.eye(n)
    Y = right.matrix.T if right is not None else F.eye(n)
    return products(B, X, Y)


def left_apply(B: BilinearMap, left: EvenMap | None, T):
    """U[i, j, k, :] = B(left(b_i), T[j, k, :])."""
    F = B.field
    n = B.space.dim
    X = left.matrix.T if left is not None else F.eye(n)
    return products(B, X, T.reshape(-1, n)).reshape(n, *T.shape)


def right_apply(B: BilinearMap, T, right: EvenMap | None):
    """U[i, j, k, :] = B(T[i, j, :], right(b_k))."""
    F = B.field
    n = B.space.dim
    Y = right.matrix.T if right is not None else F.eye(n)
    return products(B, T.reshape(-1, n), Y).reshape(*T.shape[:-1], n, n)


def apply_to_table(M: EvenMap, T):
    """Apply a map to every vector stored along the last axis of T."""
    n = T.shape[-1]
    flat = M.field.matmul(T.reshape(-1, n), M.matrix.T)
    return flat.reshape(T.shape[:-1] + (M.matrix.shape[0],))
