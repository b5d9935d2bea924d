"""Constructive procedures: Gabidulin codes, self-dual normal bases,
orthonormal bases for twisted trace forms, and the self-dual / Lagrangian
MRD codes of length n = m = 2d with d odd.

The Frobenius x -> x^q plays the role of the cyclic generator everywhere;
the identities it must satisfy (i^q = -i, alpha^q = alpha + 1) are checked
at run time.  Every search is a deterministic scan in enumeration order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import (
    AlternatingObstruction,
    BadDimension,
    ConsistencyError,
    CoordinatesDependent,
    DimensionMismatch,
    EvenCharacteristic,
    InputError,
    Nonexistence,
    NotADivisor,
    NotFound,
    PreconditionViolated,
)
from .gf import (
    FieldElement,
    FieldTower,
    FiniteField,
    _as_field,
    _frob_value,
    build_tower,
    conjugate_sum,
    find_artin_schreier,
    find_norm_preimage,
    find_sqrt_minus_one,
    frobenius,
    prime_power,
    subfield_elements,
)
from .linalg import Matrix
from .rankcodes import (
    DEFAULT_BUDGET,
    GabidulinCode,
    LBasis,
    _values,
    is_mrd,
    is_self_dual,
    pairing_matrix,
    power_basis,
    projective_count,
    rank_weight,
)


# ---------------------------------------------------------------------------
# Gabidulin codes
# ---------------------------------------------------------------------------

def gabidulin_code(tower: FieldTower, c0: Sequence, k: int) -> GabidulinCode:
    """The code spanned by c0, c0^q, ..., c0^(q^(k-1)) (coordinate-wise)."""
    L = tower.top
    vals = _values(c0, L)
    n = len(vals)
    if n > tower.m:
        raise DimensionMismatch(f"block length {n} exceeds extension degree {tower.m}")
    if not 1 <= k <= n:
        raise BadDimension(f"dimension must lie in 1..{n}, got {k}")
    if rank_weight([L.element(v) for v in vals]) != n:
        raise CoordinatesDependent("coordinates of c0 are F-linearly dependent")
    rows = [[_frob_value(L, v, j) for v in vals] for j in range(k)]
    G = Matrix(L, rows, n)
    if G.rank() != k:
        raise ConsistencyError("Moore matrix lost rank")
    return GabidulinCode(tower, G)


# ---------------------------------------------------------------------------
# Bases of L and of its subfields
# ---------------------------------------------------------------------------

def _check_sdnb_precondition(p: int, d: int) -> None:
    if p == 2:
        if d % 4 == 0:
            raise PreconditionViolated("characteristic 2 needs d odd or d ≡ 2 (mod 4)")
    elif d % 2 == 0:
        raise PreconditionViolated("odd characteristic needs d odd")


def self_dual_normal_basis(tower: FieldTower, d: int) -> list[FieldElement]:
    """(a, a^q, ..., a^(q^(d-1))) orthonormal for the trace of F_{q^d}/F_q.

    ``a`` is the first element of the subfield F_{q^d} of L (in L's
    enumeration order) with Tr(a * a^(q^j)) = [j == 0] for all j < d.
    """
    if d < 1 or tower.m % d:
        raise NotADivisor(f"{d} does not divide {tower.m}")
    _check_sdnb_precondition(tower.p, d)
    L = tower.top
    q = tower.q
    for a in subfield_elements(tower, d):
        if a.value == 0:
            continue
        conj = [a.value]
        for _ in range(d - 1):
            conj.append(L.pow(conj[-1], q))
        for j in range(d):
            t = conjugate_sum(L, L.mul(a.value, conj[j]), d)
            if t != (1 if j == 0 else 0):
                break
        else:
            v = [L.element(c) for c in conj]
            _verify_sdnb(tower, v, d)
            return v
    raise NotFound("no self-dual normal basis found")


def _verify_sdnb(tower: FieldTower, v: list[FieldElement], d: int) -> None:
    L = tower.top
    for i in range(d):
        for j in range(d):
            t = conjugate_sum(L, L.mul(v[i].value, v[j].value), d)
            if t != (1 if i == j else 0):
                raise ConsistencyError("self-dual normal basis check failed")


def trace_form_gram(tower: FieldTower, values: Sequence[int], lam: int = 1) -> Matrix:
    """Gram matrix of (x, y) -> Tr_{L/F}(lam x y) on the given elements."""
    L = tower.top
    rows = []
    for a in values:
        row = []
        for b in values:
            t = conjugate_sum(L, L.mul(lam, L.mul(a, b)), tower.m)
            if t >= tower.q:
                raise ConsistencyError("trace outside the base field")
            row.append(t)
        rows.append(row)
    return Matrix(tower.base, rows, len(values))


def dual_basis(alpha: LBasis, lam) -> LBasis:
    """alpha' with Tr(lam alpha_i alpha'_j) = [i == j]."""
    tower = alpha.tower
    L = tower.top
    lv = _values([lam], L)[0]
    if lv == 0:
        raise InputError("lambda must be nonzero")
    Ginv = trace_form_gram(tower, alpha.values, lv).inverse()
    out = []
    for j in range(tower.m):
        acc = 0
        for i, a in enumerate(alpha.values):
            acc = L.add(acc, L.mul(a, Ginv.rows[i][j]))
        out.append(acc)
    dual = LBasis(tower, [L.element(v) for v in out])
    pairing = Matrix(tower.base, [[conjugate_sum(L, L.mul(lv, L.mul(a, b)), tower.m)
                                   for b in dual.values] for a in alpha.values], tower.m)
    if pairing != Matrix.identity(tower.base, tower.m):
        raise ConsistencyError("dual basis check failed")
    return dual


def _bform(F: FiniteField, G: Matrix, x: Sequence[int], y: Sequence[int]) -> int:
    acc = 0
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                if yj:
                    acc = F.add(acc, F.mul(xi, F.mul(G.rows[i][j], yj)))
    return acc


def _vadd(F: FiniteField, x, y):
    return [F.add(a, b) for a, b in zip(x, y)]


def _vscale(F: FiniteField, c: int, x):
    return [F.mul(c, a) for a in x]


def diagonalize(G: Matrix) -> tuple[Matrix, list[int]]:
    """P with P G P^t diagonal (odd characteristic); returns (P, diagonal)."""
    F = G.field
    if F.p == 2:
        raise EvenCharacteristic("symmetric diagonalization needs odd characteristic")
    n = G.nrows
    A = [list(r) for r in G.rows]
    P = [list(r) for r in Matrix.identity(F, n).rows]

    def add_multiple(dst, src, f):
        # row/column operation E: row_dst += f row_src, col_dst += f col_src
        A[dst] = [F.add(a, F.mul(f, b)) for a, b in zip(A[dst], A[src])]
        for r in A:
            r[dst] = F.add(r[dst], F.mul(f, r[src]))
        P[dst] = [F.add(a, F.mul(f, b)) for a, b in zip(P[dst], P[src])]

    for i in range(n):
        if A[i][i] == 0:
            k = next((k for k in range(i + 1, n) if A[k][k]), None)
            if k is not None:
                A[i], A[k] = A[k], A[i]
                for r in A:
                    r[i], r[k] = r[k], r[i]
                P[i], P[k] = P[k], P[i]
            else:
                k = next((k for k in range(i + 1, n) if A[i][k]), None)
                if k is None:
                    raise InputError("form is degenerate")
                add_multiple(i, k, 1)
        inv = F.inv(A[i][i])
        for k in range(i + 1, n):
            if A[k][i]:
                add_multiple(k, i, F.neg(F.mul(A[k][i], inv)))
    return Matrix(F, P, n), [A[i][i] for i in range(n)]


def _orthonormalize_odd(G: Matrix) -> Matrix:
    F = G.field
    P, diag = diagonalize(G)
    rows = [list(r) for r in P.rows]
    out = []
    nonsq = []
    for r, dv in zip(rows, diag):
        if F.is_square(dv):
            out.append(_vscale(F, F.inv(F.sqrt(dv)), r))
        else:
            nonsq.append((r, dv))
    if len(nonsq) % 2:
        raise InputError("determinant is not a square: no orthonormal basis")
    for (ri, di), (rj, dj) in zip(nonsq[::2], nonsq[1::2]):
        # d_i x^2 + d_j y^2 = 1 has a solution: binary forms over F_q are universal
        x, y = next((x, y) for x in range(F.size) for y in range(F.size)
                    if F.add(F.mul(di, F.mul(x, x)), F.mul(dj, F.mul(y, y))) == 1)
        u = _vadd(F, _vscale(F, x, ri), _vscale(F, y, rj))
        w = _vadd(F, _vscale(F, F.neg(F.mul(dj, y)), ri), _vscale(F, F.mul(di, x), rj))
        s = F.sqrt(F.mul(di, dj))
        out.append(u)
        out.append(_vscale(F, F.inv(s), w))
    return Matrix(F, out, G.ncols)


def _span(F: FiniteField, basis: list[list[int]]):
    """Nonzero vectors of span(basis), coefficient vectors in enumeration order."""
    k = len(basis)
    for idx in range(1, F.size**k):
        v = [0] * len(basis[0])
        for b in basis:
            idx, c = divmod(idx, F.size)
            if c:
                v = _vadd(F, v, _vscale(F, c, b))
        yield v


def _orthonormalize_char2(G: Matrix) -> Matrix:
    F = G.field
    W = [list(r) for r in Matrix.identity(F, G.nrows).rows]
    out = []
    while W:
        chosen = None
        for v in _span(F, W):
            bvv = _bform(F, G, v, v)
            if bvv == 0:
                continue
            if len(W) == 1:
                chosen, rest = v, []
                break
            inv = F.inv(bvv)
            proj = [_vadd(F, w, _vscale(F, F.mul(_bform(F, G, w, v), inv), v)) for w in W]
            rest = [list(r) for r in Matrix(F, proj, G.ncols).row_space().rows]
            # the complement must stay non-alternating or the next step is stuck
            if any(_bform(F, G, r, r) for r in rest):
                chosen = v
                break
        if chosen is None:
            raise AlternatingObstruction("form is alternating on the remaining subspace")
        out.append(_vscale(F, F.inv(F.sqrt(_bform(F, G, chosen, chosen))), chosen))
        W = rest
    return Matrix(F, out, G.ncols)


def orthonormalize(G: Matrix) -> Matrix:
    """P with P G P^t = I for a symmetric G admitting an orthonormal basis."""
    if not G.is_symmetric():
        raise InputError("Gram matrix must be symmetric")
    P = _orthonormalize_char2(G) if G.field.p == 2 else _orthonormalize_odd(G)
    if P @ G @ P.T != Matrix.identity(G.field, G.nrows):
        raise ConsistencyError("orthonormalization check failed")
    return P


def orthonormal_basis_twisted_trace(tower: FieldTower) -> tuple[FieldElement, LBasis]:
    """(lambda, alpha) with Tr_{L/F}(lambda alpha_i alpha_j) = [i == j].

    Odd characteristic: lambda is the first element whose norm is the
    determinant of the trace form on the power basis.  Characteristic 2:
    lambda = 1.
    """
    L = tower.top
    pb = power_basis(tower)
    if tower.p == 2:
        lam = L.one
    else:
        delta = trace_form_gram(tower, pb.values).det()
        lam = find_norm_preimage(tower, delta)
    G = trace_form_gram(tower, pb.values, lam.value)
    P = orthonormalize(G)
    # rows of P are power-basis coordinates, i.e. polynomial coefficients
    alpha = LBasis(tower, [L.element(L.from_coeffs(list(r))) for r in P.rows])
    if trace_form_gram(tower, alpha.values, lam.value) != Matrix.identity(tower.base, tower.m):
        raise ConsistencyError("twisted trace Gram is not the identity")
    return lam, alpha


# ---------------------------------------------------------------------------
# Level of a field
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def field_level(K: FiniteField) -> int:
    """Least number of squares summing to -1 (1 or 2 for odd finite fields)."""
    if K.p == 2:
        raise EvenCharacteristic("level is only computed in odd characteristic")
    minus_one = K.neg(1)
    if K.is_square(minus_one):
        return 1
    # scan x until -1 - x^2 is a square
    if any(K.is_square(K.sub(minus_one, K.mul(x, x))) for x in range(K.size)):
        return 2
    raise ConsistencyError("-1 is not a sum of two squares")


def level_of_field(K, s: int) -> bool:
    """Whether -1 is a sum of 2^s squares in K."""
    if s < 0:
        raise InputError("s must be >= 0")
    return 2**s >= field_level(_as_field(K))


def two_adic_split(n: int) -> tuple[int, int]:
    """(s, r) with n = 2^(s+1) r, r odd, for even n."""
    if n < 2 or n % 2:
        raise InputError("n must be even and positive")
    s, r = 0, n // 2
    while r % 2 == 0:
        r //= 2
        s += 1
    return s, r


# ---------------------------------------------------------------------------
# Self-dual and Lagrangian MRD codes
# ---------------------------------------------------------------------------

def _dot(L, x, y) -> int:
    acc = 0
    for a, b in zip(x, y):
        acc = L.add(acc, L.mul(a, b))
    return acc


def self_dual_mrd_check(q: int, n: int) -> None:
    """Raise Nonexistence when no self-dual MRD code of length n = m exists over F_q."""
    p, _ = prime_power(q)
    if n < 2 or n % 2:
        raise Nonexistence("self-dual codes need an even block length")
    if p == 2:
        raise Nonexistence("q even: the dual of a self-dual code always contains (1, ..., 1), "
                           "so no self-dual MRD code exists")
    if q % 4 == 1:
        raise Nonexistence("q ≡ 1 (mod 4): -1 is a square in F_q, so no self-dual MRD code exists")
    if n % 4 == 0:
        raise Nonexistence("n ≡ 0 (mod 4) with q odd: -1 is a sum of two squares in F_q, "
                           "so no self-dual MRD code exists")


def self_dual_mrd_code(q: int, n: int) -> GabidulinCode:
    """Self-dual MRD code in L^n, L = F_{q^n}, for q = 3 mod 4 and n = 2 mod 4.

    c0 = (v, i v) with v a self-dual normal basis of F_{q^(n/2)} and
    i^2 = -1; the code is spanned by the first n/2 Frobenius images of c0.
    """
    self_dual_mrd_check(q, n)
    p, e = prime_power(q)
    tower = build_tower(p, e, n)
    L = tower.top
    d = n // 2
    i = find_sqrt_minus_one(tower)
    if frobenius(i) != -i:
        raise ConsistencyError("i^q != -i")
    v = self_dual_normal_basis(tower, d)
    c0 = v + [i * x for x in v]
    C = gabidulin_code(tower, c0, d)
    vv = [x.value for x in v]
    # sigma^k(c0) . sigma^l(c0) = (1 - (-1)^(l-k)) sigma^k(v . tau^(l-k)(v))
    for k in range(d):
        for l in range(k, d):
            lhs = _dot(L, C.G.rows[k], C.G.rows[l])
            inner = _dot(L, vv, [_frob_value(L, x, l - k) for x in vv])
            factor = 0 if (l - k) % 2 == 0 else 2
            rhs = L.mul(L.from_int(factor), _frob_value(L, inner, k))
            if lhs != rhs:
                raise ConsistencyError("pairing identity failed")
    if not pairing_matrix(C, "identity").is_zero() or not is_self_dual(C, "identity"):
        raise ConsistencyError("constructed code is not self-dual")
    return C


def lagrangian_mrd_code(q: int, n: int, budget: int = DEFAULT_BUDGET) -> GabidulinCode:
    """Lagrangian (hyperbolic self-dual) MRD code in L^n, q even, n = 2 mod 4.

    c0 = (v, alpha v) with v a self-dual normal basis of F_{q^(n/2)} and
    alpha^2 + alpha in F_q.  MRD is confirmed by enumeration when the
    projective codeword count is within ``budget``.
    """
    p, e = prime_power(q)
    if p != 2:
        raise Nonexistence("odd characteristic: Lagrangian codes are never MRD")
    if n < 2 or n % 4 != 2:
        raise PreconditionViolated("the construction over finite fields needs n ≡ 2 (mod 4)")
    tower = build_tower(p, e, n)
    L = tower.top
    d = n // 2
    alpha, _ = find_artin_schreier(tower)
    v = self_dual_normal_basis(tower, d)
    c0 = v + [alpha * x for x in v]
    C = gabidulin_code(tower, c0, d)
    vv = [x.value for x in v]
    H = [[0] * n for _ in range(n)]
    for j in range(d):
        H[j][j + d] = H[j + d][j] = 1
    for k in range(d):
        for l in range(k, d):
            x, y = C.G.rows[k], C.G.rows[l]
            lhs = 0
            for j in range(d):
                lhs = L.add(lhs, L.add(L.mul(x[j], y[j + d]), L.mul(x[j + d], y[j])))
            inner = _dot(L, vv, [_frob_value(L, t, l - k) for t in vv])
            rhs = L.mul(L.from_int(l - k), _frob_value(L, inner, k))
            if lhs != rhs:
                raise ConsistencyError("hyperbolic pairing identity failed")
    if not is_self_dual(C, "hyperbolic"):
        raise ConsistencyError("constructed code is not Lagrangian")
    if projective_count(tower, C.k) <= budget and not is_mrd(C, budget):
        raise ConsistencyError("constructed code is not MRD")
    return C
