from __future__ import annotations

import pytest

from mrdcodes.constructions import (
    diagonalize,
    dual_basis,
    field_level,
    gabidulin_code,
    lagrangian_mrd_code,
    level_of_field,
    orthonormal_basis_twisted_trace,
    orthonormalize,
    self_dual_mrd_code,
    self_dual_normal_basis,
    trace_form_gram,
    two_adic_split,
)
from mrdcodes.errors import (
    AlternatingObstruction,
    BadDimension,
    CoordinatesDependent,
    EvenCharacteristic,
    InputError,
    Nonexistence,
    NotADivisor,
    PreconditionViolated,
)
from mrdcodes.gf import conjugate_sum, find_sqrt_minus_one, frobenius, tower_for
from mrdcodes.linalg import Matrix
from mrdcodes.rankcodes import (
    GabidulinCode,
    LBasis,
    is_mrd,
    is_self_dual,
    pairing_matrix,
    power_basis,
    rank_distance,
    rank_weight,
)


@pytest.fixture(scope="module")
def f9():
    tower = tower_for(3, 2)
    return tower, tower.top, find_sqrt_minus_one(tower)


def gram_identity(tower, alpha: LBasis, lam) -> bool:
    return trace_form_gram(tower, alpha.values, lam.value) == Matrix.identity(tower.base, tower.m)


# Gabidulin codes ---------------------------------------------------------

def test_gabidulin_examples(f9):
    tower, L, i = f9
    C = gabidulin_code(tower, [L.one, i], 1)
    assert C == GabidulinCode.from_rows(tower, [[L.one, i]], 2)
    assert is_mrd(C)
    with pytest.raises(CoordinatesDependent):
        gabidulin_code(tower, [1, 2], 1)
    full = gabidulin_code(tower, [L.one, i], 2)
    assert full.k == 2 and rank_distance(full) == 1
    with pytest.raises(BadDimension):
        gabidulin_code(tower, [L.one, i], 0)
    with pytest.raises(BadDimension):
        gabidulin_code(tower, [L.one, i], 3)


@pytest.mark.parametrize("q,m,n", [(2, 4, 3), (2, 4, 4), (3, 3, 3), (4, 3, 2), (2, 5, 4)])
def test_moore_codes_are_mrd(q, m, n):
    tower = tower_for(q, m)
    L = tower.top
    c0 = [L.element(L.from_coeffs([0] * j + [1] + [0] * (m - 1 - j))) for j in range(n)]
    for k in range(1, n + 1):
        C = gabidulin_code(tower, c0, k)
        assert rank_weight(c0) == n
        assert is_mrd(C)


# self-dual normal bases ---------------------------------------------------

def test_self_dual_normal_basis_d1():
    assert [x.value for x in self_dual_normal_basis(tower_for(3, 2), 1)] == [1]


@pytest.mark.parametrize("q,m,d", [(3, 3, 3), (3, 6, 3), (2, 3, 3), (2, 2, 2), (2, 6, 3), (2, 6, 6),
                                   (4, 3, 3), (7, 3, 3), (5, 5, 5)])
def test_self_dual_normal_basis_conditions(q, m, d):
    tower = tower_for(q, m)
    L = tower.top
    v = self_dual_normal_basis(tower, d)
    a = v[0]
    for j in range(d):
        assert v[j] == frobenius(a, j)
        t = conjugate_sum(L, (a * frobenius(a, j)).value, d)
        assert t == (1 if j == 0 else 0)


def test_self_dual_normal_basis_is_first_in_order():
    tower = tower_for(3, 3)
    L = tower.top
    a = self_dual_normal_basis(tower, 3)[0]
    for b in range(1, a.value):
        conds = [conjugate_sum(L, L.mul(b, L.pow(b, 3**j)), 3) for j in range(3)]
        assert conds != [1, 0, 0]


def test_self_dual_normal_basis_preconditions():
    with pytest.raises(PreconditionViolated):
        self_dual_normal_basis(tower_for(3, 2), 2)
    with pytest.raises(PreconditionViolated):
        self_dual_normal_basis(tower_for(2, 4), 4)
    with pytest.raises(NotADivisor):
        self_dual_normal_basis(tower_for(3, 4), 3)


# dual and orthonormal bases -------------------------------------------------

def test_dual_basis_examples(f9):
    tower, L, i = f9
    alpha = LBasis(tower, [L.one, i])
    assert dual_basis(alpha, L.one).alpha == (L(2), i)
    ortho = LBasis(tower, [i, 1 - i])
    assert dual_basis(ortho, 1 + i) == ortho
    with pytest.raises(InputError):
        dual_basis(alpha, L.zero)


@pytest.mark.parametrize("q,m", [(3, 2), (2, 2), (3, 1), (5, 2), (7, 2), (3, 3), (2, 3), (4, 2),
                                 (2, 4), (5, 4), (3, 4), (2, 6), (3, 6), (9, 2), (8, 3)])
def test_orthonormal_basis_has_identity_gram(q, m):
    tower = tower_for(q, m)
    lam, alpha = orthonormal_basis_twisted_trace(tower)
    assert gram_identity(tower, alpha, lam)
    assert dual_basis(alpha, lam) == alpha
    if q % 2 == 0:
        assert lam == tower.top.one


def test_orthonormal_f9_uses_norm_two(f9):
    tower, L, i = f9
    lam, alpha = orthonormal_basis_twisted_trace(tower)
    assert lam == 1 + i
    assert gram_identity(tower, LBasis(tower, [i, 1 - i]), lam)


def test_orthonormal_f4_example():
    tower = tower_for(2, 2)
    L = tower.top
    a = L([0, 1])
    assert gram_identity(tower, LBasis(tower, [a, a * a]), L.one)


def test_orthonormalize_char2_avoids_alternating_trap():
    F = tower_for(2, 1).base
    G = Matrix.identity(F, 3)
    P = orthonormalize(G)
    assert P @ G @ P.T == G
    with pytest.raises(AlternatingObstruction):
        orthonormalize(Matrix(F, [[0, 1], [1, 0]], 2))


def test_orthonormalize_odd():
    F = tower_for(5, 1).base
    G = Matrix(F, [[2, 0], [0, 2]], 2)  # two non-squares pair up
    P = orthonormalize(G)
    assert P @ G @ P.T == Matrix.identity(F, 2)
    G = Matrix(F, [[0, 1], [1, 0]], 2)
    P0, diag = diagonalize(G)
    assert all(d != 0 for d in diag)
    with pytest.raises(InputError):
        orthonormalize(Matrix(F, [[2, 0], [0, 1]], 2))  # determinant not a square
    with pytest.raises(EvenCharacteristic):
        diagonalize(Matrix.identity(tower_for(2, 1).base, 2))


# levels ---------------------------------------------------------------------

def test_level_examples():
    assert level_of_field(tower_for(5, 1).base, 0)
    assert not level_of_field(tower_for(3, 1).base, 0)
    assert level_of_field(tower_for(3, 1).base, 1)
    assert level_of_field(tower_for(9, 1).base, 0)
    assert field_level(tower_for(7, 2).top) == 1
    with pytest.raises(EvenCharacteristic):
        level_of_field(tower_for(2, 2), 0)


def test_two_adic_split():
    assert two_adic_split(2) == (0, 1)
    assert two_adic_split(6) == (0, 3)
    assert two_adic_split(8) == (2, 1)


# MRD constructions ---------------------------------------------------------

def test_self_dual_mrd_q3_n2(f9):
    tower, L, i = f9
    C = self_dual_mrd_code(3, 2)
    assert C.tower == tower
    assert C == GabidulinCode.from_rows(tower, [[L.one, i]], 2)
    assert is_self_dual(C) and is_mrd(C)


@pytest.mark.parametrize("q,n", [(7, 2), (11, 2), (3, 6), (7, 6)])
def test_self_dual_mrd_postconditions(q, n):
    C = self_dual_mrd_code(q, n)
    assert C.k == n // 2
    assert pairing_matrix(C).is_zero() and is_self_dual(C)
    s, _ = two_adic_split(n)
    assert level_of_field(C.tower.top, s)
    assert level_of_field(C.tower.top, 0) and not level_of_field(C.tower.base, 0)


@pytest.mark.parametrize("q,n", [(5, 2), (13, 2), (9, 2), (3, 4), (7, 4), (2, 2), (4, 6), (3, 3),
                                 (3, 8)])
def test_self_dual_mrd_refusals(q, n):
    with pytest.raises(Nonexistence):
        self_dual_mrd_code(q, n)


def test_self_dual_mrd_bad_q():
    with pytest.raises(InputError):
        self_dual_mrd_code(6, 2)


def test_lagrangian_q2_n2():
    C = lagrangian_mrd_code(2, 2)
    L = C.tower.top
    alpha = L([0, 1])
    assert alpha * alpha + alpha + 1 == 0
    assert C == GabidulinCode.from_rows(C.tower, [[L.one, alpha]], 2)
    assert is_self_dual(C, "hyperbolic") and is_mrd(C)


@pytest.mark.parametrize("q,n", [(4, 2), (8, 2), (2, 6), (4, 6)])
def test_lagrangian_postconditions(q, n):
    C = lagrangian_mrd_code(q, n)
    assert is_self_dual(C, "hyperbolic")
    assert not is_self_dual(C, "identity")


def test_lagrangian_refusals():
    with pytest.raises(PreconditionViolated) as exc:
        lagrangian_mrd_code(2, 4)
    assert not isinstance(exc.value, Nonexistence)
    with pytest.raises(Nonexistence):
        lagrangian_mrd_code(3, 2)


def test_orthonormal_expansion_preserves_self_duality():
    from mrdcodes.rankcodes import delsarte_is_self_dual, to_delsarte

    for q, n in [(3, 2), (7, 2), (3, 6)]:
        C = self_dual_mrd_code(q, n)
        lam, alpha = orthonormal_basis_twisted_trace(C.tower)
        assert delsarte_is_self_dual(to_delsarte(C, alpha))
    # the power basis (1, i) is not orthonormal and breaks self-duality
    C = self_dual_mrd_code(3, 2)
    assert not delsarte_is_self_dual(to_delsarte(C, power_basis(C.tower)))
