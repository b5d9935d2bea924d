"""Acceptance criteria, each at its exact tolerance and time limit.

Arithmetic is exact, so every comparison is equality.  A summary line per
criterion is printed at the end of the pytest run (see conftest.py).
"""

from __future__ import annotations

import random
import time

import pytest

from mrdcodes.constructions import (
    dual_basis,
    lagrangian_mrd_code,
    level_of_field,
    orthonormal_basis_twisted_trace,
    self_dual_mrd_code,
    trace_form_gram,
)
from mrdcodes.errors import Nonexistence, PreconditionViolated
from mrdcodes.gf import find_artin_schreier, find_sqrt_minus_one, tower_for
from mrdcodes.linalg import Matrix
from mrdcodes.rankcodes import (
    BilinearFormSpec,
    DelsarteCode,
    GabidulinCode,
    LBasis,
    _rank_distance_stats,
    combine,
    delsarte_dual,
    delsarte_is_self_dual,
    dual_code,
    expansion_matrix,
    is_self_dual,
    pairing_matrix,
    rank_distance,
    rank_weight,
    to_delsarte,
)
from mrdcodes.verify import (
    check_char2_selfdual,
    check_level_obstruction,
    check_m4x2_fixture,
    enumerate_self_dual_lines,
    random_basis,
    random_code,
    transfer_holds,
    _random_invertible,
    _random_symmetric_invertible,
)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def delsarte(F, mats) -> DelsarteCode:
    return DelsarteCode(F, 2, 2, [Matrix(F, [[x % 3 for x in r] for r in M], 2) for M in mats])


@pytest.fixture(scope="module")
def f9():
    tower = tower_for(3, 2)
    i = find_sqrt_minus_one(tower)
    return tower, tower.top, i


@pytest.mark.criterion(1, "F_3(i) expansion example")
def test_criterion_1_f3i_expansions(f9):
    tower, L, i = f9
    with Timer() as t:
        C = GabidulinCode.from_rows(tower, [[L.one, i]], 2)
        F = tower.base
        D1 = to_delsarte(C, LBasis(tower, [L.one, i]))
        D2 = to_delsarte(C, LBasis(tower, [i, 1 - i]))
        assert D1 == delsarte(F, [[[1, 0], [0, 1]], [[0, -1], [1, 0]]])
        assert not delsarte_is_self_dual(D1, "identity")
        assert D2 == delsarte(F, [[[1, 1], [1, 0]], [[1, -1], [0, -1]]])
        assert delsarte_is_self_dual(D2, "identity")
    assert t.elapsed < 1.0


@pytest.mark.criterion(2, "orthonormal witness for the twisted trace")
def test_criterion_2_orthonormal_witness(f9):
    tower, L, i = f9
    with Timer() as t:
        identity = Matrix.identity(tower.base, 2)
        lam = 1 + i
        gram = trace_form_gram(tower, [i.value, (1 - i).value], lam.value)
        assert gram == identity
        lam2, alpha = orthonormal_basis_twisted_trace(tower)
        assert trace_form_gram(tower, alpha.values, lam2.value) == identity
    assert t.elapsed < 1.0


@pytest.mark.criterion(3, "self-dual MRD code at q=3, n=m=2")
def test_criterion_3_self_dual_mrd_small():
    with Timer() as t:
        C = self_dual_mrd_code(3, 2)
        assert pairing_matrix(C, "identity").is_zero()
        assert dual_code(C, "identity").canonical() == C.canonical()
        assert is_self_dual(C, "identity")
        assert rank_distance(C) == 2
    assert t.elapsed < 1.0


@pytest.mark.criterion(4, "self-dual MRD code at q=3, n=m=6 by full enumeration")
def test_criterion_4_self_dual_mrd_q3_n6():
    with Timer() as t:
        C = self_dual_mrd_code(3, 6)
        assert C.k == 3
        assert pairing_matrix(C, "identity").is_zero()
        assert dual_code(C, "identity").canonical() == C.canonical()
        d1, visited = _rank_distance_stats(C, budget=10**6)
        assert visited == 532_171
        assert d1 == 4 == C.n - C.k + 1
    assert t.elapsed <= 60.0


@pytest.mark.criterion(5, "no self-dual MRD codes for q = 1 mod 4 or n = 0 mod 4")
def test_criterion_5_finite_nonexistence():
    with Timer() as t:
        for q in (5, 13):
            lines = enumerate_self_dual_lines(q, 2, "identity")
            assert lines, "self-dual lines exist since -1 is a square"
            assert all(ln.distance == 1 for ln in lines)
            assert not any(ln.distance == 2 for ln in lines)
        for q in (3, 7):
            with pytest.raises(Nonexistence):
                self_dual_mrd_code(q, 4)
            for m in (2, 4):
                rep = check_level_obstruction(q, m, samples=10_000, seed=q * 10 + m)
                assert rep.instances == 10_000
                assert rep.passed, rep.counterexamples
            assert level_of_field(tower_for(q, 1).base, 1)
            assert not level_of_field(tower_for(q, 1).base, 0)
    assert t.elapsed <= 30.0


@pytest.mark.criterion(6, "no Lagrangian MRD lines in odd characteristic")
def test_criterion_6_lagrangian_odd():
    with Timer() as t:
        for q in (3, 5, 7):
            for m in (2, 4):
                lines = enumerate_self_dual_lines(q, m, "hyperbolic")
                assert lines
                assert all(ln.distance <= 1 for ln in lines)
    assert t.elapsed <= 10.0


@pytest.mark.criterion(7, "characteristic 2: self-dual lines and the Lagrangian construction")
def test_criterion_7_char2():
    with Timer() as t:
        for m in (2, 4):
            rep = check_char2_selfdual(2, m, 2)
            assert rep.passed
            assert rep.instances >= 1
            assert all(d["d1"] == 1 for d in rep.details)
        C = lagrangian_mrd_code(2, 2)
        alpha, c = find_artin_schreier(C.tower)
        L = C.tower.top
        assert L.add(L.mul(alpha.value, alpha.value), alpha.value) == 1
        assert C == GabidulinCode.from_rows(C.tower, [[L.one, alpha]], 2)
        assert is_self_dual(C, "hyperbolic")
        assert rank_distance(C) == 2
        with pytest.raises(PreconditionViolated) as exc:
            lagrangian_mrd_code(2, 4)
        assert not isinstance(exc.value, Nonexistence)
    assert t.elapsed < 5.0


@pytest.mark.criterion(8, "the M_{4x2}(F_5) fixture is self-dual MRD; perturbation fails")
def test_criterion_8_m4x2_fixture():
    with Timer() as t:
        negative = check_m4x2_fixture(perturb=True)
        assert not negative.passed
        rep = check_m4x2_fixture()
        assert rep.instances == 624
        detail = rep.details[0]
        assert detail["dim"] == 4
        assert detail["selfDual"], "fixture is not self-dual for tr(M N^t)"
        assert detail["d1"] == 2, f"fixture has a codeword of rank {detail['d1']}"
    assert t.elapsed < 1.0


@pytest.mark.criterion(9, "property suites, 500 cases each")
def test_criterion_9_property_suites():
    rng = random.Random(2024)
    # F_9/F_3 and F_4/F_2 first: the transfer block uses exactly these two
    towers = [tower_for(3, 2), tower_for(2, 2), tower_for(2, 3), tower_for(3, 3), tower_for(4, 2)]
    cases = 500
    failures: dict[str, int] = {}

    def fail(name):
        failures[name] = failures.get(name, 0) + 1

    with Timer() as t:
        # expansion uniqueness: c = alpha * M_alpha(c), and M -> alpha * M -> M
        for _ in range(cases):
            tower = rng.choice(towers)
            L = tower.top
            n = rng.randint(1, tower.m)
            alpha = random_basis(tower, rng)
            c = [L.element(rng.randrange(L.size)) for _ in range(n)]
            M = expansion_matrix(c, alpha)
            N = Matrix(tower.base, [[rng.randrange(tower.q) for _ in range(n)]
                                    for _ in range(tower.m)], n)
            if combine(alpha, M) != c or expansion_matrix(combine(alpha, N), alpha) != N:
                fail("expansion")
        # rank weight does not depend on the basis
        for _ in range(cases):
            tower = rng.choice(towers)
            L = tower.top
            n = rng.randint(1, tower.m)
            c = [L.element(rng.randrange(L.size)) for _ in range(n)]
            w = rank_weight(c)
            a, b = random_basis(tower, rng), random_basis(tower, rng)
            if not expansion_matrix(c, a).rank() == expansion_matrix(c, b).rank() == w:
                fail("basis-independence")
        # weight is invariant under GL_n(F)
        for _ in range(cases):
            tower = rng.choice(towers)
            L = tower.top
            n = rng.randint(1, tower.m)
            c = [L.element(rng.randrange(L.size)) for _ in range(n)]
            A = _random_invertible(tower.base, n, rng)
            cA = (Matrix.from_elements([c], L, n) @ Matrix(L, A.rows, n)).row(0)
            if rank_weight(cA) != rank_weight(c):
                fail("GL_n invariance")
        # Singleton bound
        for _ in range(cases):
            tower = rng.choice(towers[:3])
            n = rng.randint(1, tower.m)
            k = rng.randint(1, n)
            C = random_code(tower, n, k, rng)
            if rank_distance(C) > n - k + 1:
                fail("singleton")
        # dual of the dual
        for _ in range(cases):
            tower = rng.choice(towers)
            n = rng.randint(1, tower.m)
            k = rng.randint(0, n)
            C = random_code(tower, n, k, rng)
            form = BilinearFormSpec.custom(_random_symmetric_invertible(tower.base, n, rng))
            if dual_code(dual_code(C, form), form) != C:
                fail("dual-of-dual")
        # transfer law over F_9/F_3 and F_4/F_2
        for idx in range(cases):
            tower = towers[idx % 2]
            L = tower.top
            n = rng.randint(1, 2)
            k = rng.randint(0, n)
            C = random_code(tower, n, k, rng)
            form = BilinearFormSpec.custom(_random_symmetric_invertible(tower.base, n, rng))
            lam = L.element(rng.randrange(1, L.size))
            alpha = random_basis(tower, rng)
            if not transfer_holds(C, form, alpha, lam):
                fail("transfer")
            # Delsarte duals also commute with dual bases
            if to_delsarte(C, alpha) != delsarte_dual(
                    to_delsarte(dual_code(C, form), dual_basis(alpha, lam)), form):
                fail("transfer (reverse)")
    assert failures == {}
    assert t.elapsed <= 60.0
