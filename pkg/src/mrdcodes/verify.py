"""Verification suites for the existence and nonexistence results.

Nonexistence statements are checked exhaustively where the search space is
small (one-dimensional codes in L^2); beyond that, suites confirm that the
constructors refuse exactly the excluded parameters and that every
constructed code satisfies its postconditions.  Reports are deterministic:
scans follow enumeration order and random trials use fixed seeds.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .constructions import (
    dual_basis,
    gabidulin_code,
    lagrangian_mrd_code,
    level_of_field,
    orthonormal_basis_twisted_trace,
    self_dual_mrd_code,
    self_dual_normal_basis,
    two_adic_split,
)
from .errors import (
    BudgetExceeded,
    InputError,
    MRDError,
    Nonexistence,
    PreconditionViolated,
    UnknownSuite,
)
from .gf import FieldTower, build_tower, find_sqrt_minus_one, prime_power, tower_for
from .linalg import Matrix
from .rankcodes import (
    DEFAULT_BUDGET,
    BilinearFormSpec,
    DelsarteCode,
    GabidulinCode,
    LBasis,
    _form_for,
    delsarte_dual,
    delsarte_is_self_dual,
    delsarte_rank_distance,
    dual_code,
    is_mrd,
    is_self_dual,
    projective_count,
    rank_distance,
    rank_weight,
    to_delsarte,
)

SUITES = ("singleton", "transfer", "finite-thm", "lagrangian-thm", "char2", "constructions")


@dataclass
class TheoremReport:
    theorem: str
    grid: list = field(default_factory=list)
    instances: int = 0
    counterexamples: list = field(default_factory=list)
    details: list = field(default_factory=list)
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "TheoremReport") -> None:
        self.grid.extend(other.grid)
        self.instances += other.instances
        self.counterexamples.extend(other.counterexamples)
        self.details.extend(other.details)

    def to_json(self, with_time: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "grid": self.grid,
            "instances": self.instances,
            "counterexamples": self.counterexamples,
            "details": self.details,
            "passed": self.passed,
        }
        if with_time:
            out["wall_time"] = self.wall_time
        return out


def _timed(fn: Callable[..., TheoremReport]) -> Callable[..., TheoremReport]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.wall_time = time.perf_counter() - t0
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _json_vec(vec) -> list:
    return [x.to_json() for x in vec]


# ---------------------------------------------------------------------------
# One-dimensional codes in L^2
# ---------------------------------------------------------------------------

class Line(NamedTuple):
    code: GabidulinCode
    distance: int


def enumerate_self_dual_lines(q: int, m: int, form: BilinearFormSpec | str = "identity",
                              budget: int = DEFAULT_BUDGET) -> list[Line]:
    """All lines <(a, b)> of L^2 equal to their own orthogonal, with d_1.

    Lines are visited as <(1, b)> for b in enumeration order, then <(0, 1)>.
    """
    tower = tower_for(q, m)
    L = tower.top
    if L.size + 1 > budget:
        raise BudgetExceeded(L.size + 1, budget)
    B = _form_for(form, tower.base, 2).B.rows
    out = []
    reps = [(1, b) for b in range(L.size)] + [(0, 1)]
    for a, b in reps:
        x = (a, b)
        val = 0
        for i in range(2):
            for j in range(2):
                if B[i][j]:
                    val = L.add(val, L.mul(B[i][j], L.mul(x[i], x[j])))
        if val == 0:
            C = GabidulinCode.from_rows(tower, [[L.element(a), L.element(b)]], 2)
            out.append(Line(C, rank_weight([L.element(a), L.element(b)])))
    return out


def _line_json(line: Line) -> dict:
    return {"line": _json_vec(line.code.generators()[0]), "d1": line.distance}


@_timed
def check_level_obstruction(q: int, m: int, samples: int = 10_000, seed: int = 0) -> TheoremReport:
    """Seeded random lines <(1, b)> of L^2 against the level obstruction.

    A dot-isotropic line has b^2 = -1, so -1 must be a square in L; if it is
    moreover MRD, -1 must not be a square in F_q.
    """
    tower = tower_for(q, m)
    L = tower.top
    rep = TheoremReport("level-obstruction", grid=[{"q": q, "m": m, "samples": samples}])
    rng = random.Random(seed)
    minus_one = L.neg(1)
    square_in_L = level_of_field(tower.top, 0)
    square_in_F = level_of_field(tower.base, 0)
    for _ in range(samples):
        b = rng.randrange(L.size)
        rep.instances += 1
        if L.mul(b, b) != minus_one:
            continue
        d1 = rank_weight([L.one, L.element(b)])
        rep.details.append({"line": [L.one.to_json(), L.to_json(b)], "d1": d1})
        if not square_in_L or (d1 == 2 and square_in_F):
            rep.counterexamples.append({"line": [L.one.to_json(), L.to_json(b)], "d1": d1})
    return rep


# ---------------------------------------------------------------------------
# Characteristic 2
# ---------------------------------------------------------------------------

def _random_self_dual_code(tower: FieldTower, n: int, rng: random.Random, tries: int = 2000):
    """Totally isotropic code of dimension n/2 for the dot product, by rejection sampling."""
    L = tower.top
    rows: list[list[int]] = []
    for _ in range(tries):
        if len(rows) == n // 2:
            return GabidulinCode(tower, Matrix(L, rows, n))
        perp = Matrix(L, rows, n).kernel() if rows else Matrix.identity(L, n)
        coeffs = [rng.randrange(L.size) for _ in range(perp.nrows)]
        x = [0] * n
        for c, r in zip(coeffs, perp.rows):
            x = [L.add(a, L.mul(c, b)) for a, b in zip(x, r)]
        dot = 0
        for a in x:
            dot = L.add(dot, L.mul(a, a))
        if dot == 0 and Matrix(L, rows + [x], n).rank() == len(rows) + 1:
            rows.append(x)
    return None


@_timed
def check_char2_selfdual(q: int, m: int, n: int = 2, samples: int = 20,
                         budget: int = DEFAULT_BUDGET) -> TheoremReport:
    """Self-dual codes in characteristic 2 have (1,...,1) in the dual, so d_1(C^perp) <= 1.

    n = 2: every self-dual line is enumerated.  Larger n: seeded random
    self-dual codes are spot-checked.
    """
    p, _ = prime_power(q)
    if p != 2 or n % 2:
        raise InputError("needs q even and n even")
    rep = TheoremReport("char2-selfdual", grid=[{"q": q, "m": m, "n": n}])
    tower = tower_for(q, m)
    L = tower.top
    if n == 2:
        codes = [line.code for line in enumerate_self_dual_lines(q, m, "identity", budget)]
    else:
        rng = random.Random(f"char2-{q}-{m}-{n}")
        codes = [c for c in (_random_self_dual_code(tower, n, rng) for _ in range(samples)) if c]
    for C in codes:
        rep.instances += 1
        ok_self_dual = is_self_dual(C, "identity")
        ones_in_dual = all(
            sum((r[j] for j in range(n)), L.zero) == 0 for r in C.generators()
        )
        d1 = None
        if C.k == 1:
            d1 = rank_weight(C.generators()[0])
            rep.details.append({"line": _json_vec(C.generators()[0]), "d1": d1})
        if not ok_self_dual or not ones_in_dual or (d1 is not None and d1 > 1):
            rep.counterexamples.append({"generators": C.G.to_json(), "selfDual": ok_self_dual,
                                        "onesInDual": ones_in_dual, "d1": d1})
    return rep


# ---------------------------------------------------------------------------
# Gabidulin / Delsarte transfer
# ---------------------------------------------------------------------------

def _random_invertible(K, n: int, rng: random.Random) -> Matrix:
    while True:
        M = Matrix(K, [[rng.randrange(K.size) for _ in range(n)] for _ in range(n)], n)
        if M.rank() == n:
            return M


def _random_symmetric_invertible(K, n: int, rng: random.Random) -> Matrix:
    while True:
        A = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                A[i][j] = A[j][i] = rng.randrange(K.size)
        M = Matrix(K, A, n)
        if M.rank() == n:
            return M


def random_code(tower: FieldTower, n: int, k: int, rng: random.Random) -> GabidulinCode:
    L = tower.top
    while True:
        rows = [[rng.randrange(L.size) for _ in range(n)] for _ in range(k)]
        G = Matrix(L, rows, n)
        if G.rank() == k:
            return GabidulinCode(tower, G)


def random_basis(tower: FieldTower, rng: random.Random) -> LBasis:
    P = _random_invertible(tower.base, tower.m, rng)
    L = tower.top
    return LBasis(tower, [L.element(L.from_coeffs(list(r))) for r in P.rows])


def transfer_holds(C: GabidulinCode, form: BilinearFormSpec, alpha: LBasis, lam) -> bool:
    """M_{alpha'}(C^perp) == M_alpha(C)^perp with alpha' dual to alpha for Tr(lam . .)."""
    alpha_d = dual_basis(alpha, lam)
    lhs = to_delsarte(dual_code(C, form), alpha_d)
    rhs = delsarte_dual(to_delsarte(C, alpha), form)
    return lhs == rhs


@_timed
def check_transfer(tower: FieldTower, trials: int = 50, seed: int = 0,
                   max_n: int | None = None) -> TheoremReport:
    """Random (C, B, lambda, alpha) transfer checks, plus the orthonormal-basis
    equivalence of the two self-dualities over every line of L^2."""
    rng = random.Random(seed)
    L = tower.top
    max_n = min(tower.m, max_n or tower.m)
    rep = TheoremReport("duality-transfer", grid=[{"p": tower.p, "e": tower.e, "m": tower.m,
                                                   "trials": trials}])
    for t in range(trials):
        n = rng.randint(1, max_n)
        k = rng.randint(0, n)
        C = random_code(tower, n, k, rng)
        form = BilinearFormSpec.custom(_random_symmetric_invertible(tower.base, n, rng))
        lam = L.element(rng.randrange(1, L.size))
        alpha = random_basis(tower, rng)
        rep.instances += 1
        if not transfer_holds(C, form, alpha, lam):
            rep.counterexamples.append({"trial": t, "generators": C.G.to_json(),
                                        "B": form.B.to_json(), "lambda": lam.to_json()})
    if tower.m >= 2:
        lam, alpha = orthonormal_basis_twisted_trace(tower)
        for form in ("identity", "hyperbolic"):
            for b in range(L.size + 1):
                row = [L.one, L.element(b)] if b < L.size else [L.zero, L.one]
                C = GabidulinCode.from_rows(tower, [row], 2)
                rep.instances += 1
                g = is_self_dual(C, form)
                d = delsarte_is_self_dual(to_delsarte(C, alpha), form)
                if g != d:
                    rep.counterexamples.append({"line": _json_vec(row), "form": form,
                                                "gabidulin": g, "delsarte": d})
    return rep


# ---------------------------------------------------------------------------
# Fixture from the literature: a self-dual MRD code in M_{4 x 2}(F_5)
# ---------------------------------------------------------------------------

M4X2_FIXTURE = (
    ((-1, -1), (0, 2), (0, 1), (-2, 2)),
    ((-1, 0), (0, 0), (0, 1), (-1, 1)),
    ((2, 0), (1, 0), (2, 2), (-1, -1)),
    ((-2, 0), (-2, -1), (1, 1), (-2, 0)),
)


def m4x2_fixture(perturb: bool = False) -> DelsarteCode:
    """The four-matrix code over F_5; ``perturb`` flips the sign of one entry."""
    F = build_tower(5, 1, 1).base
    mats = [[list(r) for r in M] for M in M4X2_FIXTURE]
    if perturb:
        mats[0][0][0] = -mats[0][0][0]
    return DelsarteCode(F, 4, 2, [Matrix(F, [[x % 5 for x in r] for r in M], 2) for M in mats])


@_timed
def check_m4x2_fixture(perturb: bool = False) -> TheoremReport:
    rep = TheoremReport("m4x2-fixture", grid=[{"q": 5, "m": 4, "n": 2, "perturbed": perturb}])
    D = m4x2_fixture(perturb)
    rep.instances = 5**D.dim - 1
    self_dual = delsarte_is_self_dual(D, "identity")
    d1 = delsarte_rank_distance(D)
    rep.details.append({"dim": D.dim, "selfDual": self_dual, "d1": d1})
    if D.dim != D.m * D.n // 2:
        rep.counterexamples.append({"reason": "dimension", "dim": D.dim})
    if not self_dual:
        rep.counterexamples.append({"reason": "not self-dual"})
    if d1 != 2:
        rep.counterexamples.append({"reason": "rank distance", "d1": d1})
    return rep


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def _prime_powers(lo: int, hi: int) -> list[int]:
    out = []
    for q in range(lo, hi + 1):
        try:
            prime_power(q)
        except InputError:
            continue
        out.append(q)
    return out


def _suite_singleton(q_max: int, n_max: int, budget: int) -> TheoremReport:
    rep = TheoremReport("singleton")
    rng = random.Random("singleton")
    for q, m in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2), (7, 2)]:
        if q > q_max:
            continue
        tower = tower_for(q, m)
        rep.grid.append({"q": q, "m": m})
        for n in range(1, min(m, n_max) + 1):
            for k in range(1, n + 1):
                if projective_count(tower, k) > budget:
                    continue
                for _ in range(3):
                    C = random_code(tower, n, k, rng)
                    d = rank_distance(C, budget)
                    rep.instances += 1
                    if d > n - k + 1:
                        rep.counterexamples.append({"q": q, "m": m, "generators": C.G.to_json(),
                                                    "d1": d})
                # Moore-matrix codes meet the bound
                L = tower.top
                while True:
                    c0 = [L.element(rng.randrange(L.size)) for _ in range(n)]
                    if rank_weight(c0) == n:
                        break
                G = gabidulin_code(tower, c0, k)
                rep.instances += 1
                if not is_mrd(G, budget):
                    rep.counterexamples.append({"q": q, "m": m, "c0": _json_vec(c0), "k": k,
                                                "reason": "Moore code not MRD"})
    return rep


def _suite_transfer(q_max: int, n_max: int, budget: int) -> TheoremReport:
    rep = TheoremReport("transfer")
    for q, m in [(3, 2), (2, 2), (2, 3), (5, 2), (4, 2), (3, 3)]:
        if q > q_max or m > n_max:
            continue
        rep.merge(check_transfer(tower_for(q, m), trials=40, seed=q * 100 + m, max_n=3))
    # worked example over F_3(i): the basis (1, i) breaks self-duality, (i, 1 - i) keeps it
    if q_max >= 3:
        tower = tower_for(3, 2)
        L = tower.top
        i = find_sqrt_minus_one(tower)
        C = GabidulinCode.from_rows(tower, [[L.one, i]], 2)
        plain = delsarte_is_self_dual(to_delsarte(C, LBasis(tower, [L.one, i])))
        ortho = delsarte_is_self_dual(to_delsarte(C, LBasis(tower, [i, 1 - i])))
        rep.instances += 2
        rep.details.append({"example": "F_9", "basis(1,i)": plain, "basis(i,1-i)": ortho})
        if plain or not ortho:
            rep.counterexamples.append({"example": "F_9", "basis(1,i)": plain,
                                        "basis(i,1-i)": ortho})
    return rep


def _suite_finite(q_max: int, n_max: int, budget: int) -> TheoremReport:
    rep = TheoremReport("finite-fields")
    for q in _prime_powers(2, q_max):
        # n = m = 2: exhaustive over self-dual lines
        lines = enumerate_self_dual_lines(q, 2, "identity", budget)
        has_mrd = any(ln.distance == 2 for ln in lines)
        expected = q % 4 == 3
        rep.grid.append({"q": q, "m": 2, "n": 2})
        rep.instances += len(lines)
        rep.details.append({"q": q, "m": 2, "n": 2, "selfDualLines": len(lines), "mrdFound": has_mrd})
        if has_mrd != expected:
            rep.counterexamples.append({"q": q, "n": 2, "mrdFound": has_mrd, "expected": expected})
        # constructor behaviour for larger even n
        for n in range(2, n_max + 1, 2):
            rep.grid.append({"q": q, "m": n, "n": n})
            expected = q % 4 == 3 and n % 4 == 2
            try:
                C = self_dual_mrd_code(q, n)
            except Nonexistence:
                rep.instances += 1
                if expected:
                    rep.counterexamples.append({"q": q, "n": n, "reason": "refused"})
                continue
            rep.instances += 1
            if not expected:
                rep.counterexamples.append({"q": q, "n": n, "reason": "constructed"})
                continue
            rep.counterexamples.extend(_self_dual_postconditions(C, q, n, budget, rep.details))
    return rep


def _self_dual_postconditions(C: GabidulinCode, q: int, n: int, budget: int, details: list) -> list:
    bad = []
    tower = C.tower
    if not is_self_dual(C, "identity"):
        bad.append({"q": q, "n": n, "reason": "not self-dual"})
    s, _ = two_adic_split(n)
    if not level_of_field(tower.top, s):
        bad.append({"q": q, "n": n, "reason": "level obstruction"})
    # -1 is a square in L but not in F
    if level_of_field(tower.base, 0) or not level_of_field(tower.top, 0):
        bad.append({"q": q, "n": n, "reason": "square root of -1"})
    if projective_count(tower, C.k) <= budget:
        d = rank_distance(C, budget)
        details.append({"q": q, "n": n, "selfDual": True, "d1": d})
        if d != n - C.k + 1:
            bad.append({"q": q, "n": n, "reason": "not MRD", "d1": d})
    else:
        details.append({"q": q, "n": n, "selfDual": True, "d1": None,
                        "note": "rank distance not enumerated (over budget)"})
    return bad


def _suite_lagrangian(q_max: int, n_max: int, budget: int) -> TheoremReport:
    rep = TheoremReport("lagrangian-odd")
    for q in _prime_powers(3, q_max):
        if q % 2 == 0:
            continue
        for m in (2, 4):
            if q**m + 1 > budget:
                continue
            lines = enumerate_self_dual_lines(q, m, "hyperbolic", budget)
            rep.grid.append({"q": q, "m": m, "n": 2})
            rep.instances += len(lines)
            worst = max(ln.distance for ln in lines)
            rep.details.append({"q": q, "m": m, "lagrangianLines": len(lines), "maxD1": worst})
            for ln in lines:
                if ln.distance > 1:
                    rep.counterexamples.append({"q": q, "m": m, **_line_json(ln)})
        try:
            lagrangian_mrd_code(q, 2)
        except Nonexistence:
            rep.instances += 1
        else:
            rep.counterexamples.append({"q": q, "reason": "constructor did not refuse"})
    return rep


def _suite_char2(q_max: int, n_max: int, budget: int) -> TheoremReport:
    rep = TheoremReport("char2")
    for q in (2, 4, 8):
        if q > q_max:
            continue
        for m in (2, 4):
            if q**m + 1 > budget:
                continue
            sub = check_char2_selfdual(q, m, 2, budget=budget)
            rep.merge(sub)
        if 4 <= n_max:
            rep.merge(check_char2_selfdual(q, 4, 4, budget=budget))
        for n in range(2, n_max + 1, 2):
            rep.grid.append({"q": q, "m": n, "n": n, "construction": "lagrangian"})
            rep.instances += 1
            if n % 4 == 0:
                try:
                    lagrangian_mrd_code(q, n, budget)
                except Nonexistence:
                    rep.counterexamples.append({"q": q, "n": n, "reason": "wrong refusal kind"})
                except PreconditionViolated:
                    pass
                else:
                    rep.counterexamples.append({"q": q, "n": n, "reason": "not refused"})
                continue
            C = lagrangian_mrd_code(q, n, budget)
            lag = is_self_dual(C, "hyperbolic")
            ident = is_self_dual(C, "identity")
            info = {"q": q, "n": n, "lagrangian": lag, "identitySelfDual": ident}
            if projective_count(C.tower, C.k) <= budget:
                info["d1"] = rank_distance(C, budget)
                if info["d1"] != n - C.k + 1:
                    rep.counterexamples.append({**info, "reason": "not MRD"})
            else:
                info["d1"] = None
            rep.details.append(info)
            if not lag or ident:
                rep.counterexamples.append({**info, "reason": "duality"})
    return rep


def _suite_constructions(q_max: int, n_max: int, budget: int) -> TheoremReport:
    rep = TheoremReport("constructions")
    for q in _prime_powers(2, q_max):
        for n in range(2, n_max + 1, 4):
            rep.grid.append({"q": q, "n": n})
            try:
                if q % 2:
                    C = self_dual_mrd_code(q, n)
                else:
                    C = lagrangian_mrd_code(q, n, budget)
            except Nonexistence:
                rep.instances += 1
                if q % 4 == 3:
                    rep.counterexamples.append({"q": q, "n": n, "reason": "refused"})
                continue
            rep.instances += 1
            if q % 2:
                rep.counterexamples.extend(_self_dual_postconditions(C, q, n, budget, rep.details))
            else:
                info = {"q": q, "n": n, "lagrangian": is_self_dual(C, "hyperbolic")}
                if projective_count(C.tower, C.k) <= budget:
                    info["d1"] = rank_distance(C, budget)
                else:
                    info["d1"] = None
                rep.details.append(info)
                if not info["lagrangian"] or info["d1"] not in (None, n - C.k + 1):
                    rep.counterexamples.append({**info, "reason": "postcondition"})
    # bases: self-dual normal bases and orthonormal bases for twisted traces
    for q, m in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (5, 2), (5, 3), (7, 2), (2, 6), (3, 6)]:
        if q > q_max or m > n_max:
            continue
        tower = tower_for(q, m)
        rep.instances += 1
        try:
            lam, alpha = orthonormal_basis_twisted_trace(tower)
            if dual_basis(alpha, lam) != alpha:
                rep.counterexamples.append({"q": q, "m": m, "reason": "orthonormal basis not self-dual"})
        except MRDError as exc:
            rep.counterexamples.append({"q": q, "m": m, "reason": str(exc)})
        for d in range(1, m + 1):
            if m % d or (q % 2 and d % 2 == 0) or (q % 2 == 0 and d % 4 == 0):
                continue
            rep.instances += 1
            try:
                self_dual_normal_basis(tower, d)
            except MRDError as exc:
                rep.counterexamples.append({"q": q, "m": m, "d": d, "reason": str(exc)})
    return rep


_SUITES = {
    "singleton": _suite_singleton,
    "transfer": _suite_transfer,
    "finite-thm": _suite_finite,
    "lagrangian-thm": _suite_lagrangian,
    "char2": _suite_char2,
    "constructions": _suite_constructions,
}


def run_suite(name: str, q_max: int = 7, n_max: int = 6,
              budget: int = DEFAULT_BUDGET) -> TheoremReport:
    if name not in _SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if q_max < 2 or n_max < 1:
        raise InputError("q-max must be >= 2 and n-max >= 1")
    t0 = time.perf_counter()
    rep = _SUITES[name](q_max, n_max, budget)
    rep.theorem = name
    rep.wall_time = time.perf_counter() - t0
    return rep
