"""Gabidulin codes in L^n, Delsarte codes in M_{m x n}(F), and the maps between them.

A Gabidulin code is an L-subspace of L^n given by a generator matrix over
the top level of a tower; a Delsarte code is an F-subspace of m x n
matrices over the base level, always carried with an explicit basis.
Subspaces compare equal when their generators have the same RREF.

Exhaustive minimum-rank scans run on numpy: every element is expanded into
its absolute F_p digits, multiplication by a fixed element is an F_p-linear
map on digits, and a whole batch of codewords is one integer matrix
product.  Weights over F_q with q = p^e are recovered from F_p ranks: the
F_p-span of {gamma_s * c_j} (gamma_s an F_p-basis of F_q) is the F_q-span of
the c_j, so its F_p-dimension is e times the rank weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InputError,
    LevelMismatch,
    NotABasis,
)
from .gf import FieldElement, FieldTower, FiniteField
from .linalg import Matrix, batch_rank_mod_p

DEFAULT_BUDGET = 2_000_000
_CHUNK = 1 << 15


def _values(vec, field: FiniteField) -> list[int]:
    out = []
    for x in vec:
        if isinstance(x, FieldElement):
            if x.field != field:
                raise LevelMismatch(f"expected elements of {field!r}, got {x.field!r}")
            out.append(x.value)
        else:
            out.append(field(x).value)
    return out


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

class GabidulinCode:
    """An L-linear code C <= L^n with a full-row-rank generator matrix."""

    def __init__(self, tower: FieldTower, generator: Matrix):
        if generator.field != tower.top:
            raise LevelMismatch("generator matrix must be over the top field")
        n = generator.ncols
        if n > tower.m:
            raise DimensionMismatch(f"block length {n} exceeds extension degree {tower.m}")
        if generator.rank() != generator.nrows:
            raise InputError("generator rows are not L-linearly independent")
        self.tower = tower
        self.G = generator

    @classmethod
    def from_rows(cls, tower: FieldTower, rows: Iterable[Sequence], n: int | None = None) -> "GabidulinCode":
        rows = [_values(r, tower.top) for r in rows]
        if n is None:
            if not rows:
                raise DimensionMismatch("block length needed for the zero code")
            n = len(rows[0])
        return cls(tower, Matrix(tower.top, rows, n))

    @classmethod
    def zero(cls, tower: FieldTower, n: int) -> "GabidulinCode":
        return cls(tower, Matrix(tower.top, [], n))

    @classmethod
    def full(cls, tower: FieldTower, n: int) -> "GabidulinCode":
        return cls(tower, Matrix.identity(tower.top, n))

    @property
    def n(self) -> int:
        return self.G.ncols

    @property
    def k(self) -> int:
        return self.G.nrows

    def generators(self) -> list[list[FieldElement]]:
        return [self.G.row(i) for i in range(self.k)]

    def canonical(self) -> Matrix:
        return self.G.row_space()

    def __eq__(self, other):
        return (isinstance(other, GabidulinCode) and self.tower == other.tower
                and self.n == other.n and self.canonical() == other.canonical())

    def __hash__(self):
        return hash((self.tower, self.canonical()))

    def __repr__(self):
        return f"GabidulinCode(n={self.n}, k={self.k}, over GF({self.tower.q}^{self.tower.m}))"


class DelsarteCode:
    """An F-linear code in M_{m x n}(F) given by linearly independent matrices."""

    def __init__(self, field: FiniteField, m: int, n: int, basis: Sequence[Matrix]):
        basis = list(basis)
        for M in basis:
            if M.field != field:
                raise LevelMismatch("basis matrices must be over the code's field")
            if M.shape != (m, n):
                raise DimensionMismatch(f"basis matrix of shape {M.shape}, expected {(m, n)}")
        self.field = field
        self.m = m
        self.n = n
        self.basis = basis
        if self.flat().rank() != len(basis):
            raise InputError("basis matrices are not F-linearly independent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def flat(self) -> Matrix:
        """Generator matrix of the code viewed inside F^{mn} (row-major)."""
        return Matrix(self.field, [[v for r in M.rows for v in r] for M in self.basis],
                      self.m * self.n)

    def canonical(self) -> Matrix:
        return self.flat().row_space()

    def __eq__(self, other):
        return (isinstance(other, DelsarteCode) and self.field == other.field
                and (self.m, self.n) == (other.m, other.n)
                and self.canonical() == other.canonical())

    def __hash__(self):
        return hash((self.field, self.m, self.n, self.canonical()))

    def __repr__(self):
        return f"DelsarteCode({self.m}x{self.n}, dim={self.dim}, over {self.field!r})"


def _unflatten(field: FiniteField, m: int, n: int, vec: Sequence[int]) -> Matrix:
    return Matrix(field, [vec[i * n:(i + 1) * n] for i in range(m)], n)


@dataclass(frozen=True)
class BilinearFormSpec:
    """Invertible symmetric B over F naming phi_B on L^n and psi_B on M_{m x n}(F)."""

    B: Matrix
    tag: str = "custom"

    def __post_init__(self):
        B = self.B
        if not B.is_symmetric():
            raise InputError("form matrix must be square and symmetric")
        if B.det() == 0:
            raise InputError("form matrix must be invertible")
        if self.tag == "hyperbolic":
            if B.nrows % 2 or B != hyperbolic_matrix(B.field, B.nrows):
                raise InputError("hyperbolic tag requires B = H_n with n even")
        elif self.tag == "identity":
            if B != Matrix.identity(B.field, B.nrows):
                raise InputError("identity tag requires B = I_n")
        elif self.tag != "custom":
            raise InputError(f"unknown form tag {self.tag!r}")

    @property
    def n(self) -> int:
        return self.B.nrows

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "BilinearFormSpec":
        return cls(Matrix.identity(field, n), "identity")

    @classmethod
    def hyperbolic(cls, field: FiniteField, n: int) -> "BilinearFormSpec":
        if n % 2:
            raise InputError("the hyperbolic form needs even n")
        return cls(hyperbolic_matrix(field, n), "hyperbolic")

    @classmethod
    def custom(cls, B: Matrix) -> "BilinearFormSpec":
        return cls(B, "custom")


def hyperbolic_matrix(field: FiniteField, n: int) -> Matrix:
    d = n // 2
    return Matrix(field, [[1 if abs(i - j) == d else 0 for j in range(n)] for i in range(n)], n)


def _form_for(form: BilinearFormSpec | str, field: FiniteField, n: int) -> BilinearFormSpec:
    if isinstance(form, str):
        if form == "identity":
            return BilinearFormSpec.identity(field, n)
        if form == "hyperbolic":
            return BilinearFormSpec.hyperbolic(field, n)
        raise InputError(f"unknown form {form!r}")
    if form.B.field != field:
        raise LevelMismatch("form matrix must be over the base field")
    if form.n != n:
        raise DimensionMismatch(f"form of size {form.n} used with block length {n}")
    return form


class LBasis:
    """An F-basis alpha = (alpha_1, ..., alpha_m) of L."""

    def __init__(self, tower: FieldTower, alpha: Sequence):
        L = tower.top
        vals = _values(alpha, L)
        if len(vals) != tower.m:
            raise NotABasis(f"need {tower.m} elements, got {len(vals)}")
        # column i holds the power-basis coordinates of alpha_i
        A = Matrix(tower.base, [[L.coeffs(a)[r] for a in vals] for r in range(tower.m)], tower.m)
        if A.rank() != tower.m:
            raise NotABasis("elements are F-linearly dependent")
        self.tower = tower
        self.values = tuple(vals)
        self._coord_inverse = A.inverse()

    @property
    def alpha(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.tower.top, v) for v in self.values)

    def coordinates(self, x: FieldElement | int) -> list[int]:
        """The F-coordinates of one element of L in this basis."""
        v = x.value if isinstance(x, FieldElement) else x
        col = Matrix(self.tower.base, [[c] for c in self.tower.top.coeffs(v)], 1)
        return [r[0] for r in (self._coord_inverse @ col).rows]

    def __eq__(self, other):
        return isinstance(other, LBasis) and self.tower == other.tower and self.values == other.values

    def __hash__(self):
        return hash((self.tower, self.values))

    def __repr__(self):
        return f"LBasis({[a.to_json() for a in self.alpha]})"


def power_basis(tower: FieldTower) -> LBasis:
    L = tower.top
    return LBasis(tower, [L.element(L.from_coeffs([0] * i + [1] + [0] * (tower.m - 1 - i)))
                          for i in range(tower.m)])


# ---------------------------------------------------------------------------
# Expansion and weights
# ---------------------------------------------------------------------------

def expansion_matrix(c: Sequence, alpha: LBasis) -> Matrix:
    """M_alpha(c): the unique m x n matrix over F with c = alpha * M."""
    return _expand_values(_values(c, alpha.tower.top), alpha)


def _expand_values(vals: Sequence[int], alpha: LBasis) -> Matrix:
    tower = alpha.tower
    cols = [alpha.coordinates(v) for v in vals]
    return Matrix(tower.base, [[col[i] for col in cols] for i in range(tower.m)], len(vals))


def combine(alpha: LBasis, M: Matrix) -> list[FieldElement]:
    """alpha * M, the inverse of :func:`expansion_matrix`."""
    L = alpha.tower.top
    out = []
    for j in range(M.ncols):
        acc = 0
        for a, i in zip(alpha.values, range(M.nrows)):
            acc = L.add(acc, L.mul(a, M.rows[i][j]))
        out.append(FieldElement(L, acc))
    return out


def rank_weight(c: Sequence, tower: FieldTower | None = None) -> int:
    """dim_F of the F-span of the coordinates of c."""
    c = list(c)
    if tower is None:
        if not c:
            return 0
        L = c[0].field
        F = L.subfield
    else:
        L, F = tower.top, tower.base
    vals = _values(c, L)
    if not vals:
        return 0
    return Matrix(F, [L.coeffs(v) for v in vals], L.degree).rank()


def _digit_basis_map(K: FiniteField, g: int) -> np.ndarray:
    """Matrix of x -> g*x on absolute F_p digits (row t = digits of g * p^t)."""
    return np.array([K.digits(K.mul(K.p**t, g)) for t in range(K.abs_degree)], dtype=np.int64)


def _index_digits(idx: np.ndarray, p: int, width: int) -> np.ndarray:
    out = np.empty((idx.shape[0], width), dtype=np.int64)
    x = idx.copy()
    for t in range(width):
        out[:, t] = x % p
        x //= p
    return out


def _scan_min_rank(offset: np.ndarray, W: np.ndarray, count: int, p: int,
                   shape: tuple[int, int], e: int, floor: int, best: int,
                   start: int = 0) -> tuple[int, int]:
    """Min over idx in [start, count) of rank_p(offset + digits(idx) @ W) / e.

    Returns ``(best, visited)``; stops early once ``floor`` is reached.
    """
    width = W.shape[0]
    visited = 0
    for lo in range(start, count, _CHUNK):
        idx = np.arange(lo, min(count, lo + _CHUNK), dtype=np.int64)
        X = _index_digits(idx, p, width)
        words = (X @ W + offset) % p if width else np.broadcast_to(offset, (len(idx), offset.size))
        ranks = batch_rank_mod_p(words.reshape(len(idx), *shape), p)
        visited += len(idx)
        best = min(best, int(ranks.min()) // e)
        if best <= floor:
            break
    return best, visited


def projective_count(tower: FieldTower, k: int) -> int:
    Q = tower.order
    return (Q**k - 1) // (Q - 1)


def rank_distance(C: GabidulinCode, budget: int = DEFAULT_BUDGET) -> int:
    """Exact d_1(C), scanning one representative per L-line of C."""
    return _rank_distance_stats(C, budget)[0]


def _rank_distance_stats(C: GabidulinCode, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    if C.k == 0:
        raise InputError("the zero code has no minimum distance")
    tower = C.tower
    need = projective_count(tower, C.k)
    if need > budget:
        raise BudgetExceeded(need, budget)
    L, p, e = tower.top, tower.p, tower.e
    D = L.abs_degree
    k, n = C.k, C.n
    gammas = [p**s for s in range(e)]  # F_p-basis of F_q, as L indices
    # W[i*D:(i+1)*D, (j*e+s)*D:...] is the digit map of x -> x * gamma_s * G[i][j]
    W = np.zeros((k * D, n * e * D), dtype=np.int64)
    for i in range(k):
        for j in range(n):
            for s, gs in enumerate(gammas):
                col = (j * e + s) * D
                W[i * D:(i + 1) * D, col:col + D] = _digit_basis_map(L, L.mul(gs, C.G.rows[i][j]))
    best = n + 1
    visited = 0
    for t in range(k):
        # representatives (0,..,0,1,u_{t+1},..,u_{k-1})
        offset = W[t * D]
        Wfree = W[(t + 1) * D:]
        count = L.size ** (k - 1 - t)
        best, v = _scan_min_rank(offset, Wfree, count, p, (n * e, D), e, 1, best)
        visited += v
        if best <= 1:
            break
    return best, visited


def is_mrd(C: GabidulinCode, budget: int = DEFAULT_BUDGET) -> bool:
    if C.k == 0:
        return False
    return rank_distance(C, budget) == C.n - C.k + 1


def codeword(C: GabidulinCode, coeffs: Sequence) -> list[FieldElement]:
    L = C.tower.top
    u = _values(coeffs, L)
    if len(u) != C.k:
        raise DimensionMismatch("coefficient vector length must equal k")
    out = []
    for j in range(C.n):
        acc = 0
        for i in range(C.k):
            acc = L.add(acc, L.mul(u[i], C.G.rows[i][j]))
        out.append(FieldElement(L, acc))
    return out


def codewords(C: GabidulinCode):
    """Every codeword of C (q^{mk} of them), in coefficient enumeration order."""
    L = C.tower.top
    for idx in range(L.size**C.k):
        u = []
        for _ in range(C.k):
            idx, r = divmod(idx, L.size)
            u.append(L.element(r))
        yield codeword(C, u)


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------

def _embed_form(tower: FieldTower, B: Matrix) -> Matrix:
    # base -> top embedding is the identity on indices
    return Matrix(tower.top, B.rows, B.ncols)


def dual_code(C: GabidulinCode, form: BilinearFormSpec | str = "identity") -> GabidulinCode:
    """{x in L^n : G B x^t = 0}."""
    tower = C.tower
    form = _form_for(form, tower.base, C.n)
    if C.k == 0:
        return GabidulinCode.full(tower, C.n)
    GB = C.G @ _embed_form(tower, form.B)
    return GabidulinCode(tower, GB.kernel())


def pairing_matrix(C: GabidulinCode, form: BilinearFormSpec | str = "identity") -> Matrix:
    """G B G^t."""
    form = _form_for(form, C.tower.base, C.n)
    return C.G @ _embed_form(C.tower, form.B) @ C.G.T


def is_self_dual(C: GabidulinCode, form: BilinearFormSpec | str = "identity") -> bool:
    if C.n != 2 * C.k:
        return False
    if not pairing_matrix(C, form).is_zero():
        return False
    return dual_code(C, form).canonical() == C.canonical()


def _delsarte_functionals(D: DelsarteCode, B: Matrix) -> Matrix:
    # psi_B(M, N) = sum_{i,l} (M B)_{il} N_{il}
    rows = []
    for M in D.basis:
        MB = M @ B
        rows.append([v for r in MB.rows for v in r])
    return Matrix(D.field, rows, D.m * D.n)


def delsarte_dual(D: DelsarteCode, form: BilinearFormSpec | str = "identity") -> DelsarteCode:
    form = _form_for(form, D.field, D.n)
    if D.dim == 0:
        full = Matrix.identity(D.field, D.m * D.n)
    else:
        full = _delsarte_functionals(D, form.B).kernel()
    return DelsarteCode(D.field, D.m, D.n, [_unflatten(D.field, D.m, D.n, r) for r in full.rows])


def delsarte_is_self_dual(D: DelsarteCode, form: BilinearFormSpec | str = "identity") -> bool:
    if 2 * D.dim != D.m * D.n:
        return False
    return delsarte_dual(D, form) == D


def delsarte_rank_distance(D: DelsarteCode, budget: int = DEFAULT_BUDGET) -> int:
    """Exact minimum rank over all q^dim - 1 nonzero codewords."""
    return _delsarte_distance_stats(D, budget)[0]


def _delsarte_distance_stats(D: DelsarteCode, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    if D.dim == 0:
        raise InputError("the zero code has no minimum distance")
    F = D.field
    need = F.size**D.dim - 1
    if need > budget:
        raise BudgetExceeded(need, budget)
    p, e = F.p, F.abs_degree
    m, n = D.m, D.n
    gammas = [p**s for s in range(e)]
    # coefficient x_r in F (e digits) -> matrix with rows (a, s), cols (b, digit)
    W = np.zeros((D.dim * e, m * e * n * e), dtype=np.int64)
    for r, M in enumerate(D.basis):
        for a in range(m):
            for s, gs in enumerate(gammas):
                for b in range(n):
                    col = ((a * e + s) * n + b) * e
                    W[r * e:(r + 1) * e, col:col + e] = _digit_basis_map(F, F.mul(gs, M.rows[a][b]))
    best, visited = _scan_min_rank(np.zeros(W.shape[1], dtype=np.int64), W, need + 1,
                                   p, (m * e, n * e), e, 1, n + 1, start=1)
    return best, visited


def delsarte_singleton_rhs(D: DelsarteCode):
    from fractions import Fraction

    return D.n - Fraction(D.dim, D.m) + 1


def delsarte_is_mrd(D: DelsarteCode, budget: int = DEFAULT_BUDGET) -> bool:
    if D.dim == 0 or D.dim % D.m:
        return False
    return delsarte_rank_distance(D, budget) == D.n - D.dim // D.m + 1


# ---------------------------------------------------------------------------
# Gabidulin -> Delsarte
# ---------------------------------------------------------------------------

def to_delsarte(C: GabidulinCode, alpha: LBasis) -> DelsarteCode:
    """M_alpha(C), spanned by M_alpha(x^u g_v) over the power basis x^u of L."""
    tower = C.tower
    if alpha.tower != tower:
        raise LevelMismatch("basis belongs to a different tower")
    L = tower.top
    mats = []
    for v in range(C.k):
        g = C.G.rows[v]
        for u in range(tower.m):
            lam = L.from_coeffs([0] * u + [1] + [0] * (tower.m - 1 - u))
            mats.append(_expand_values([L.mul(lam, x) for x in g], alpha))
    D = DelsarteCode(tower.base, tower.m, C.n, mats)
    if D.dim != tower.m * C.k:
        raise InputError("expansion lost dimension")
    return D

