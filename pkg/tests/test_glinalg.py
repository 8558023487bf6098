import numpy as np
import pytest
from hypothesis import given, strategies as st

from bhpc.catalog import dual_numbers, group_algebra
from bhpc.errors import SingularMap, ValidationError
from bhpc.glinalg import (
    BilinearMap,
    EvenMap,
    GradedSpace,
    bilinear_apply,
    check_even_bilinear,
    check_even_map,
    map_apply,
    map_compose,
    map_inverse,
    map_is_bijective,
    map_power,
    maps_commute,
    matrix_rank,
)
from bhpc.grading import FiniteAbelianGroup
from bhpc.scalars import GF, QQ

Z2 = FiniteAbelianGroup((2,))


def kz2(F=QQ):
    return group_algebra(Z2, F)


def test_bilinear_apply_examples(field):
    A = kz2(field)
    S = A.space
    e0, e1 = S.basis_vector(0), S.basis_vector(1)
    assert list(bilinear_apply(A.mu, e1, e1)) == list(e0)
    zero = S.vector([0, 0])
    assert list(bilinear_apply(A.mu, zero, e1)) == [0, 0]
    D = dual_numbers(field)
    t = D.space.basis_vector(1)
    assert list(bilinear_apply(D.mu, t, t)) == [0, 0]


def test_map_examples(field):
    A = kz2(field)
    S = A.space
    x = S.vector([3, 5])
    assert list(map_apply(EvenMap.identity(S), x)) == list(x)
    alpha = EvenMap.diagonal(S, [1, -1])
    assert map_power(alpha, 2).is_identity()
    assert map_is_bijective(alpha) and map_inverse(alpha) == alpha
    assert maps_commute(alpha, EvenMap.identity(S))
    singular = EvenMap(S, [[1, 0], [0, 0]])
    with pytest.raises(SingularMap):
        map_power(singular, -1)


def test_diagonal_maps_on_dual_numbers_commute():
    D = dual_numbers(QQ)
    assert maps_commute(EvenMap.diagonal(D.space, [1, 2]), EvenMap.diagonal(D.space, [1, 5]))


def test_evenness_checks():
    A = kz2()
    S = A.space
    assert check_even_map(S, QQ.eye(2)).passed
    rep = check_even_map(S, [[0, 1], [0, 0]])
    assert not rep.passed and rep.witness == (0, 1)
    with pytest.raises(ValidationError):
        EvenMap(S, [[0, 1], [0, 0]])
    assert check_even_bilinear(S, A.mu.tensor).passed
    with pytest.raises(ValidationError) as info:
        BilinearMap.from_entries(S, [(1, 1, 1, 1)])
    assert info.value.law == "evenness" and info.value.witness == (1, 1, 1)


def test_entries_accumulate_and_sort():
    S = kz2().space
    B = BilinearMap.from_entries(S, [(1, 1, 0, 2), (0, 0, 0, 1), (1, 1, 0, -2), (0, 1, 1, 3)])
    assert [(i, j, k, int(c)) for i, j, k, c in B.entries()] == [(0, 0, 0, 1), (0, 1, 1, 3)]


# random even maps on a mixed-degree space

SPACE_DEGREES = [(0,), (1,), (0,), (1,), (1,)]


def even_maps(F, space):
    n = space.dim
    same = space.same_degree

    @st.composite
    def build(draw):
        vals = draw(st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n))
        M = F.zeros((n, n))
        for idx, v in enumerate(vals):
            i, j = divmod(idx, n)
            if same[i, j]:
                M[i, j] = F.coerce(v)
        return EvenMap(space, M)

    return build()


@pytest.mark.parametrize("F", [QQ, GF(7)], ids=str)
@given(data=st.data())
def test_composition_matches_application(F, data):
    S = GradedSpace(F, Z2, tuple(SPACE_DEGREES))
    M, N = data.draw(even_maps(F, S)), data.draw(even_maps(F, S))
    x = S.vector(data.draw(st.lists(st.integers(-5, 5), min_size=S.dim, max_size=S.dim)))
    assert list(map_apply(map_compose(M, N), x)) == list(map_apply(M, map_apply(N, x)))
    assert check_even_map(S, map_compose(M, N).matrix).passed


def test_composition_on_200_seeded_triples():
    F = QQ
    S = GradedSpace(F, Z2, tuple(SPACE_DEGREES))
    rng = np.random.default_rng(200)
    same = S.same_degree
    for _ in range(200):
        mats = []
        for _ in range(2):
            raw = rng.integers(-3, 4, size=(S.dim, S.dim))
            mats.append(EvenMap(S, np.where(same, raw, 0).tolist()))
        x = S.vector(rng.integers(-5, 6, size=S.dim).tolist())
        M, N = mats
        assert list(map_apply(map_compose(M, N), x)) == list(map_apply(M, map_apply(N, x)))


@pytest.mark.parametrize("F", [QQ, GF(7)], ids=str)
@given(data=st.data())
def test_even_maps_preserve_homogeneity(F, data):
    S = GradedSpace(F, Z2, tuple(SPACE_DEGREES))
    M = data.draw(even_maps(F, S))
    for i in range(S.dim):
        y = map_apply(M, S.basis_vector(i))
        support = [j for j in range(S.dim) if y[j] != 0]
        assert all(S.degrees[j] == S.degrees[i] for j in support)


@pytest.mark.parametrize("F", [QQ, GF(7)], ids=str)
@given(data=st.data())
def test_inverse_is_exact(F, data):
    S = GradedSpace(F, Z2, tuple(SPACE_DEGREES))
    M = data.draw(even_maps(F, S))
    if matrix_rank(F, M.matrix) < S.dim:
        assert not M.is_bijective()
        with pytest.raises(SingularMap):
            map_inverse(M)
    else:
        inv = map_inverse(M)
        assert (inv @ M).is_identity() and (M @ inv).is_identity()
        assert check_even_map(S, inv.matrix).passed


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_power_laws(m, n):
    S = GradedSpace(QQ, Z2, tuple(SPACE_DEGREES))
    M = EvenMap.diagonal(S, [1, 2, -1, 3, 1])
    assert map_power(M, m) @ map_power(M, n) == map_power(M, m + n)
