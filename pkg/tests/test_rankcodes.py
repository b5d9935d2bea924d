from __future__ import annotations

import itertools
import random

import pytest

from mrdcodes.errors import BudgetExceeded, DimensionMismatch, InputError, NotABasis
from mrdcodes.gf import find_artin_schreier, find_sqrt_minus_one, tower_for
from mrdcodes.linalg import Matrix
from mrdcodes.rankcodes import (
    BilinearFormSpec,
    DelsarteCode,
    GabidulinCode,
    LBasis,
    codewords,
    combine,
    delsarte_dual,
    delsarte_is_mrd,
    delsarte_is_self_dual,
    delsarte_rank_distance,
    delsarte_singleton_rhs,
    dual_code,
    expansion_matrix,
    is_mrd,
    is_self_dual,
    power_basis,
    projective_count,
    rank_distance,
    rank_weight,
    to_delsarte,
)
from mrdcodes.verify import random_code


@pytest.fixture(scope="module")
def f9():
    tower = tower_for(3, 2)
    return tower, tower.top, find_sqrt_minus_one(tower)


def brute_distance(C: GabidulinCode) -> int:
    return min(rank_weight(c) for c in codewords(C) if any(x != 0 for x in c))


def brute_dual(C: GabidulinCode, B: Matrix) -> set:
    """Oracle: every x in L^n with g B x^t = 0 for each generator g."""
    L = C.tower.top
    out = set()
    for x in itertools.product(range(L.size), repeat=C.n):
        ok = True
        for g in C.G.rows:
            acc = 0
            for i in range(C.n):
                for j in range(C.n):
                    if B.rows[i][j]:
                        acc = L.add(acc, L.mul(g[i], L.mul(B.rows[i][j], x[j])))
            if acc:
                ok = False
                break
        if ok:
            out.add(x)
    return out


def span(C: GabidulinCode) -> set:
    return {tuple(x.value for x in c) for c in codewords(C)}


def test_expansion_examples(f9):
    tower, L, i = f9
    alpha = LBasis(tower, [L.one, i])
    F = tower.base
    assert expansion_matrix([L.one, i], alpha) == Matrix.identity(F, 2)
    assert expansion_matrix([i, -1], alpha) == Matrix(F, [[0, 2], [1, 0]], 2)
    beta = LBasis(tower, [i, 1 - i])
    assert expansion_matrix([L.one, i], beta) == Matrix(F, [[1, 1], [1, 0]], 2)


def test_basis_validation(f9):
    tower, L, i = f9
    with pytest.raises(NotABasis):
        LBasis(tower, [L.one, L(2)])
    with pytest.raises(NotABasis):
        LBasis(tower, [L.one])


@pytest.mark.parametrize("q,m", [(3, 2), (2, 3), (4, 2), (2, 4)])
def test_expansion_roundtrip(q, m):
    tower = tower_for(q, m)
    L = tower.top
    rng = random.Random(q * m)
    alpha = power_basis(tower)
    for _ in range(40):
        c = [L.element(rng.randrange(L.size)) for _ in range(m)]
        M = expansion_matrix(c, alpha)
        assert combine(alpha, M) == c
        assert M.rank() == rank_weight(c)


@pytest.mark.parametrize("q,m,n,k", [(3, 2, 2, 1), (2, 3, 3, 1), (2, 3, 3, 2), (4, 2, 2, 1),
                                     (2, 2, 2, 2), (3, 3, 2, 1), (2, 4, 2, 1), (5, 2, 2, 1)])
def test_rank_distance_matches_brute_force(q, m, n, k):
    tower = tower_for(q, m)
    rng = random.Random(q + 10 * m + 100 * n + 1000 * k)
    for _ in range(6):
        C = random_code(tower, n, k, rng)
        assert rank_distance(C) == brute_distance(C)


def test_budget():
    tower = tower_for(3, 6)
    C = GabidulinCode.full(tower, 3)
    assert projective_count(tower, 3) == 3**12 + 3**6 + 1
    with pytest.raises(BudgetExceeded) as exc:
        rank_distance(C, budget=1000)
    assert exc.value.required == projective_count(tower, 3)


def test_zero_and_full_codes(f9):
    tower, L, i = f9
    Z = GabidulinCode.zero(tower, 2)
    assert dual_code(Z) == GabidulinCode.full(tower, 2)
    assert dual_code(GabidulinCode.full(tower, 2)) == Z
    assert rank_distance(GabidulinCode.full(tower, 2)) == 1
    assert not is_mrd(Z)
    with pytest.raises(InputError):
        rank_distance(Z)


@pytest.mark.parametrize("q,m,n,k", [(3, 2, 2, 1), (2, 2, 2, 1), (2, 3, 3, 1), (2, 3, 3, 2)])
def test_dual_matches_brute_force(q, m, n, k):
    tower = tower_for(q, m)
    rng = random.Random(7 * q + m + n + k)
    for tag in ("identity", "custom"):
        C = random_code(tower, n, k, rng)
        if tag == "identity":
            form = BilinearFormSpec.identity(tower.base, n)
        else:
            while True:
                A = [[0] * n for _ in range(n)]
                for a in range(n):
                    for b in range(a, n):
                        A[a][b] = A[b][a] = rng.randrange(tower.q)
                B = Matrix(tower.base, A, n)
                if B.rank() == n:
                    break
            form = BilinearFormSpec.custom(B)
        D = dual_code(C, form)
        assert D.k == n - k
        assert span(D) == brute_dual(C, form.B)


def test_self_duality_examples(f9):
    tower, L, i = f9
    C = GabidulinCode.from_rows(tower, [[L.one, i]], 2)
    assert is_self_dual(C) and is_mrd(C) and rank_distance(C) == 2
    assert dual_code(GabidulinCode.from_rows(tower, [[1, 2]], 2)) == GabidulinCode.from_rows(
        tower, [[1, 1]], 2)
    e1 = GabidulinCode.from_rows(tower, [[1, 0]], 2)
    assert is_self_dual(e1, "hyperbolic") and not is_self_dual(e1, "identity")


def test_lagrangian_line_char2():
    tower = tower_for(2, 2)
    L = tower.top
    alpha, _ = find_artin_schreier(tower)
    C = GabidulinCode.from_rows(tower, [[L.one, alpha]], 2)
    assert is_self_dual(C, "hyperbolic")
    assert not is_self_dual(C, "identity")
    assert rank_distance(C) == 2


def test_form_validation():
    F = tower_for(3, 2).base
    with pytest.raises(InputError):
        BilinearFormSpec.custom(Matrix(F, [[1, 1], [0, 1]], 2))
    with pytest.raises(InputError):
        BilinearFormSpec.custom(Matrix(F, [[1, 1], [1, 1]], 2))
    with pytest.raises(InputError):
        BilinearFormSpec(Matrix.identity(F, 2), "hyperbolic")
    C = GabidulinCode.full(tower_for(3, 2), 2)
    with pytest.raises(DimensionMismatch):
        dual_code(C, BilinearFormSpec.identity(F, 3))


def test_generator_validation():
    tower = tower_for(3, 2)
    with pytest.raises(InputError):
        GabidulinCode.from_rows(tower, [[1, 2], [2, 1]], 2)
    with pytest.raises(DimensionMismatch):
        GabidulinCode.from_rows(tower, [[1, 0, 0]], 3)


def test_delsarte_distance_brute_force():
    F = tower_for(3, 1).base
    rng = random.Random(5)
    for _ in range(10):
        mats = []
        while len(mats) < 3:
            M = Matrix(F, [[rng.randrange(3) for _ in range(2)] for _ in range(3)], 2)
            trial = mats + [M]
            try:
                DelsarteCode(F, 3, 2, trial)
            except InputError:
                continue
            mats = trial
        D = DelsarteCode(F, 3, 2, mats)
        oracle = 10
        for coeffs in itertools.product(range(3), repeat=3):
            if any(coeffs):
                M = Matrix.zeros(F, 3, 2)
                for c, B in zip(coeffs, mats):
                    M = M + B.scale(c)
                oracle = min(oracle, M.rank())
        assert delsarte_rank_distance(D) == oracle


def test_delsarte_over_extension_base():
    tower = tower_for(4, 2)
    C = GabidulinCode.from_rows(tower, [[1, tower.top.element(5)]], 2)
    D = to_delsarte(C, power_basis(tower))
    assert D.dim == 2
    assert delsarte_rank_distance(D) == rank_distance(C)


def test_delsarte_dual_and_singleton(f9):
    tower, L, i = f9
    C = GabidulinCode.from_rows(tower, [[L.one, i]], 2)
    D = to_delsarte(C, LBasis(tower, [i, 1 - i]))
    assert delsarte_is_self_dual(D)
    assert delsarte_dual(delsarte_dual(D)) == D
    assert delsarte_singleton_rhs(D) == 2
    assert delsarte_is_mrd(D)
    D1 = to_delsarte(C, LBasis(tower, [L.one, i]))
    assert not delsarte_is_self_dual(D1)
    assert delsarte_is_mrd(D1)
