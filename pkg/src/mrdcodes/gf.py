"""Exact arithmetic in finite-field towers F_p <= F_q <= L = F_{q^m}.

Every element of a field in the tower is stored as an integer index: the
base-p numeral whose digits are the absolute coefficients of the element,
constant term least significant.  For an extension K = S[x]/(f) the index
of ``c_0 + c_1 x + ... `` is ``sum idx(c_j) * |S|**j``.  Two consequences
are used throughout the package:

* the embeddings F_p -> F_q -> L are the identity on indices, so an element
  of F_q lies in L exactly when its index is below q;
* iterating ``range(size)`` visits the elements in the canonical
  enumeration order (0, 1, 2, ..., x, 1 + x, ...).

Multiplication in fields with at most ``TABLE_LIMIT`` elements goes through
log/exp tables built lazily from the polynomial arithmetic; larger fields
use the polynomial path directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import (
    ConsistencyError,
    DivisionByZero,
    EvenCharacteristic,
    InputError,
    LevelMismatch,
    NoSquareRootOfMinusOne,
    NoSuchElement,
    NotADivisor,
    NotFound,
    NotPrime,
    ReduciblePolynomial,
)

TABLE_LIMIT = 1 << 16

LEVELS = ("prime", "base", "top")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise NotPrime otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p = factors[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# ---------------------------------------------------------------------------
# Polynomials over a field, as lists of element indices, constant term first.
# ---------------------------------------------------------------------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_sub(K: "FiniteField", f: Sequence[int], g: Sequence[int]) -> list[int]:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out.append(K.sub(a, b))
    return _trim(out)


def _poly_mul(K: "FiniteField", f: Sequence[int], g: Sequence[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = K.add(out[i + j], K.mul(a, b))
    return _trim(out)


def _poly_divmod(K: "FiniteField", f: Sequence[int], g: Sequence[int]):
    g = _trim(list(g))
    if not g:
        raise DivisionByZero("polynomial division by zero")
    r = _trim(list(f))
    dg = len(g) - 1
    lead_inv = K.inv(g[-1])
    quot = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = K.mul(r[-1], lead_inv)
        quot[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = K.sub(r[shift + i], K.mul(c, b))
        _trim(r)
    return _trim(quot), r


def _poly_mod(K: "FiniteField", f: Sequence[int], g: Sequence[int]) -> list[int]:
    return _poly_divmod(K, f, g)[1]


def _poly_gcd(K: "FiniteField", f: Sequence[int], g: Sequence[int]) -> list[int]:
    a, b = _trim(list(f)), _trim(list(g))
    while b:
        a, b = b, _poly_mod(K, a, b)
    if a:
        c = K.inv(a[-1])
        a = [K.mul(c, x) for x in a]
    return a


def _poly_powmod(K: "FiniteField", f: Sequence[int], k: int, mod: Sequence[int]) -> list[int]:
    result = [1]
    base = _poly_mod(K, f, mod)
    while k:
        if k & 1:
            result = _poly_mod(K, _poly_mul(K, result, base), mod)
        base = _poly_mod(K, _poly_mul(K, base, base), mod)
        k >>= 1
    return result


def is_irreducible(K: "FiniteField", f: Sequence[int]) -> bool:
    """Ben-Or test: gcd(f, x^(Q^i) - x) = 1 for i <= deg(f)/2, Q = |K|."""
    f = _trim(list(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = _poly_powmod(K, h, K.size, f)
        g = _poly_gcd(K, f, _poly_sub(K, h, x))
        if len(g) > 1:
            return False
    return True


def monic_polynomials(K: "FiniteField", degree: int) -> Iterator[list[int]]:
    """All monic polynomials of the given degree, in canonical order.

    The lower coefficients are read as a base-|K| numeral with the
    constant term least significant, exactly like element indices.
    """
    Q = K.size
    for idx in range(Q**degree):
        coeffs = []
        for _ in range(degree):
            idx, r = divmod(idx, Q)
            coeffs.append(r)
        yield coeffs + [1]


def first_irreducible(K: "FiniteField", degree: int) -> list[int]:
    for f in monic_polynomials(K, degree):
        if is_irreducible(K, f):
            return f
    raise ConsistencyError(f"no irreducible polynomial of degree {degree}")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class FiniteField:
    """One level of a tower.  Operations act on integer indices."""

    level: str
    p: int
    size: int
    abs_degree: int
    key: tuple

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise LevelMismatch(f"element of {value.field!r} given to {self!r}")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        return FieldElement(self, self.parse(value))

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.size:
            raise InputError(f"index {index} outside field of size {self.size}")
        return FieldElement(self, index)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.size):
            yield FieldElement(self, v)

    def from_int(self, n: int) -> int:
        return n % self.p

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.abs_degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        res, mult = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            res += ((ra + rb) % p) * mult
            mult *= p
        return res

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        res, mult = 0, 1
        while a:
            a, r = divmod(a, p)
            res += ((p - r) % p) * mult
            mult *= p
        return res

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale_int(self, a: int, n: int) -> int:
        return self.mul(a, self.from_int(n))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = 1
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.size - 1) // 2) == 1

    def sqrt(self, a: int) -> int:
        """Some square root of ``a`` (the smaller index of the two)."""
        if self.p == 2:
            return self.pow(a, self.size // 2)
        if not self.is_square(a):
            raise NotFound("not a square")
        for x in range(self.size):
            if self.mul(x, x) == a:
                return x
        raise ConsistencyError("square without a root")

    # serialization -------------------------------------------------------
    def to_json(self, a: int):
        raise NotImplementedError

    def parse(self, obj) -> int:
        raise NotImplementedError


class PrimeField(FiniteField):
    level = "prime"

    def __init__(self, p: int):
        self.p = p
        self.size = p
        self.abs_degree = 1
        self.key = ("prime", p)

    def __repr__(self):
        return f"GF({self.p})"

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def to_json(self, a):
        return a

    def parse(self, obj):
        if isinstance(obj, list) and len(obj) == 1:
            obj = obj[0]
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise InputError(f"expected an integer, got {obj!r}")
        return obj % self.p


class ExtensionField(FiniteField):
    """K = S[x]/(f) for a monic irreducible f over the subfield S."""

    def __init__(self, sub: FiniteField, modulus: Sequence[int], level: str):
        self.subfield = sub
        self.modulus = tuple(modulus)
        self.degree = len(self.modulus) - 1
        self.level = level
        self.p = sub.p
        self.size = sub.size**self.degree
        self.abs_degree = sub.abs_degree * self.degree
        self.key = (level, sub.key, self.modulus)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None

    def __repr__(self):
        return f"GF({self.p}^{self.abs_degree})[{self.level}]"

    def coeffs(self, a: int) -> list[int]:
        S = self.subfield.size
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, S)
            out.append(r)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        S = self.subfield.size
        v = 0
        for c in reversed(coeffs):
            v = v * S + c
        return v

    # polynomial path -----------------------------------------------------
    def _reduce(self, prod: list[int]) -> list[int]:
        S, f, d = self.subfield, self.modulus, self.degree
        for i in range(len(prod) - 1, d - 1, -1):
            c = prod[i]
            if c:
                for j in range(d + 1):
                    prod[i - d + j] = S.sub(prod[i - d + j], S.mul(c, f[j]))
        return prod[:d]

    def _mul_poly(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        prod = _poly_mul(self.subfield, self.coeffs(a), self.coeffs(b))
        return self.from_coeffs(self._reduce(prod))

    def _inv_poly(self, a: int) -> int:
        # extended Euclid on (f, a): track s with s*a = r (mod f)
        S = self.subfield
        r0, r1 = list(self.modulus), _trim(self.coeffs(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _poly_divmod(S, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(S, s0, _poly_mul(S, q, s1))
        c = S.inv(r1[0])
        s = [S.mul(c, x) for x in s1]
        s = _poly_mod(S, s, self.modulus)
        return self.from_coeffs(s + [0] * (self.degree - len(s)))

    def _build_tables(self) -> None:
        n = self.size - 1
        g = self._primitive_element()
        exp = [0] * n
        log = [0] * self.size
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_poly(x, g)
        if x != 1:
            raise ConsistencyError("generator order mismatch")
        self._exp, self._log = exp, log

    def _primitive_element(self) -> int:
        n = self.size - 1
        cofactors = [n // r for r in prime_factors(n)]
        for g in range(1, self.size):
            if all(self._pow_poly(g, c) != 1 for c in cofactors):
                return g
        raise ConsistencyError("no primitive element found")

    def _pow_poly(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            k >>= 1
        return result

    def _tables_ready(self) -> bool:
        if self._exp is None and self.size <= TABLE_LIMIT and self.degree > 1:
            self._build_tables()
        return self._exp is not None

    # public arithmetic ---------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._tables_ready():
            return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._tables_ready():
            return self._exp[-self._log[a] % (self.size - 1)]
        return self._inv_poly(a)

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivisionByZero("inverse of zero")
            return 1 if k == 0 else 0
        if self._tables_ready():
            return self._exp[(self._log[a] * k) % (self.size - 1)]
        return super().pow(a, k)

    # serialization -------------------------------------------------------
    def to_json(self, a: int):
        if self.degree == 1:
            return self.subfield.to_json(a)
        return [self.subfield.to_json(c) for c in self.coeffs(a)]

    def parse(self, obj) -> int:
        if self.degree == 1 and not (isinstance(obj, list) and len(obj) == 1
                                     and isinstance(obj[0], list)):
            return self.subfield.parse(obj)
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self.from_int(obj)
        if not isinstance(obj, list) or len(obj) != self.degree:
            raise InputError(
                f"expected {self.degree} coefficients for a {self.level} element, got {obj!r}"
            )
        return self.from_coeffs([self.subfield.parse(c) for c in obj])


class FieldElement:
    """An element of one tower level.  Immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def level(self) -> str:
        return self.field.level

    @property
    def coeffs(self) -> tuple:
        """Coefficients over the level beneath, constant term first."""
        K = self.field
        if isinstance(K, ExtensionField):
            return tuple(FieldElement(K.subfield, c) for c in K.coeffs(self.value))
        return (self.value,)

    def is_zero(self) -> bool:
        return self.value == 0

    def to_json(self):
        return self.field.to_json(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise LevelMismatch(
                    f"cannot combine {self.field!r} and {other.field!r}"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field.from_int(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.value))

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"<{self.field.level} {self.to_json()}>"


def arith(a: FieldElement, b: FieldElement | int | None, kind: str) -> FieldElement:
    """Dispatch form of the element operators (``inv`` ignores ``b``)."""
    if kind == "inv":
        return a.inverse()
    if kind == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.field != a.field:
        raise LevelMismatch(f"cannot combine {a.field!r} and {b.field!r}")
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    if kind not in ops:
        raise InputError(f"unknown operation {kind!r}")
    return ops[kind]()


# ---------------------------------------------------------------------------
# Towers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldTower:
    """F_p <= F_q = F_p[y]/(base_poly) <= L = F_q[x]/(top_poly).

    Polynomials are full monic coefficient tuples, constant term first;
    ``top_poly`` holds indices of F_q elements.  Use :func:`build_tower`
    to get a validated instance.
    """

    p: int
    e: int
    m: int
    base_poly: tuple
    top_poly: tuple
    prime: PrimeField = field(init=False, repr=False, compare=False)
    base: ExtensionField = field(init=False, repr=False, compare=False)
    top: ExtensionField = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        prime = PrimeField(self.p)
        base = ExtensionField(prime, self.base_poly, "base")
        top = ExtensionField(base, self.top_poly, "top")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "top", top)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def order(self) -> int:
        return self.q**self.m

    def level(self, name: str) -> FiniteField:
        if name not in LEVELS:
            raise InputError(f"unknown level {name!r}")
        return getattr(self, name)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "m": self.m,
            "base_poly": list(self.base_poly),
            "top_poly": [self.base.to_json(c) for c in self.top_poly],
        }


def _normalize_poly(K: FiniteField, coeffs, degree: int, which: str) -> list[int]:
    vals = [K.parse(c) if not isinstance(c, int) else K.from_int(c) for c in coeffs]
    if len(vals) == degree:
        vals.append(1)
    if len(vals) != degree + 1:
        raise InputError(
            f"{which} polynomial must have {degree} or {degree + 1} coefficients, got {len(vals)}"
        )
    if vals[-1] != 1:
        raise InputError(f"{which} polynomial must be monic")
    return vals


def build_tower(p: int, e: int, m: int, base_poly=None, top_poly=None) -> FieldTower:
    """Validate (or auto-select) defining polynomials and return the tower.

    Polynomials may be given with or without their leading 1.  Omitted
    polynomials are the first monic irreducibles in canonical order.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1 or m < 1:
        raise InputError("extension degrees must be >= 1")
    prime = PrimeField(p)
    if base_poly is None:
        bpoly = first_irreducible(prime, e)
    else:
        bpoly = _normalize_poly(prime, base_poly, e, "base")
        if not is_irreducible(prime, bpoly):
            raise ReduciblePolynomial("base", bpoly)
    base = ExtensionField(prime, bpoly, "base")
    if top_poly is None:
        tpoly = first_irreducible(base, m)
    else:
        tpoly = _normalize_poly(base, top_poly, m, "top")
        if not is_irreducible(base, tpoly):
            raise ReduciblePolynomial("top", [base.to_json(c) for c in tpoly])
    return FieldTower(p, e, m, tuple(bpoly), tuple(tpoly))


def tower_for(q: int, m: int) -> FieldTower:
    """Canonical tower with base field F_q and top field F_{q^m}."""
    p, e = prime_power(q)
    return build_tower(p, e, m)


def tower_from_json(obj: dict) -> FieldTower:
    try:
        p, e, m = int(obj["p"]), int(obj.get("e", 1)), int(obj["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed field description: {exc}") from None
    return build_tower(p, e, m, obj.get("base_poly"), obj.get("top_poly"))


# ---------------------------------------------------------------------------
# Frobenius, trace, norm, subfields
# ---------------------------------------------------------------------------

def _require_top(x: FieldElement) -> ExtensionField:
    if x.field.level != "top":
        raise LevelMismatch("expected a top-level element")
    return x.field


def frobenius(x: FieldElement, k: int = 1) -> FieldElement:
    """x -> x^(q^k), the k-th power of the Frobenius of L over F_q."""
    L = _require_top(x)
    k %= L.degree
    v = x.value
    for _ in range(L.subfield.abs_degree * k):
        v = L.pow(v, L.p)
    return FieldElement(L, v)


def _frob_value(L: ExtensionField, v: int, k: int) -> int:
    return L.pow(v, L.subfield.size ** (k % L.degree))


def conjugate_sum(L: ExtensionField, v: int, d: int) -> int:
    """sum_{k<d} v^(q^k): the trace from F_{q^d} to F_q when v lies there."""
    acc, y = 0, v
    for _ in range(d):
        acc = L.add(acc, y)
        y = L.pow(y, L.subfield.size)
    return acc


def conjugate_product(L: ExtensionField, v: int, d: int) -> int:
    acc, y = 1, v
    for _ in range(d):
        acc = L.mul(acc, y)
        y = L.pow(y, L.subfield.size)
    return acc


def _down_to_base(L: ExtensionField, v: int) -> FieldElement:
    if _frob_value(L, v, 1) != v or v >= L.subfield.size:
        raise ConsistencyError("trace/norm value not fixed by Frobenius")
    return FieldElement(L.subfield, v)


def trace_norm(x: FieldElement, kind: str) -> FieldElement:
    """Relative trace or norm of a top-level element, as a base element."""
    L = _require_top(x)
    if kind == "trace":
        return _down_to_base(L, conjugate_sum(L, x.value, L.degree))
    if kind == "norm":
        return _down_to_base(L, conjugate_product(L, x.value, L.degree))
    raise InputError(f"unknown kind {kind!r}")


def trace(x: FieldElement) -> FieldElement:
    return trace_norm(x, "trace")


def norm(x: FieldElement) -> FieldElement:
    return trace_norm(x, "norm")


def absolute_trace(c: FieldElement) -> FieldElement:
    """Tr_{F_q/F_p}(c) for a base-level element, as a prime element."""
    K = c.field
    acc, y = 0, c.value
    for _ in range(K.abs_degree):
        acc = K.add(acc, y)
        y = K.pow(y, K.p)
    if acc >= K.p:
        raise ConsistencyError("absolute trace outside the prime field")
    return FieldElement(K.subfield if isinstance(K, ExtensionField) else K, acc)


def enumerate_elements(tower: FieldTower, level: str) -> Iterator[FieldElement]:
    return tower.level(level).elements()


def subfield_membership(x: FieldElement, d: int) -> bool:
    L = _require_top(x)
    if d < 1 or L.degree % d:
        raise NotADivisor(f"{d} does not divide {L.degree}")
    return _frob_value(L, x.value, d) == x.value


def subfield_basis(tower: FieldTower, d: int) -> list[FieldElement]:
    """An F_q-basis (in reduced echelon form) of F_{q^d} inside L."""
    from .linalg import Matrix

    L, F, m = tower.top, tower.base, tower.m
    if d < 1 or m % d:
        raise NotADivisor(f"{d} does not divide {m}")
    # column i of the matrix of (Frob^d - id) is the image of x^i
    cols = []
    for i in range(m):
        xi = L.from_coeffs([0] * i + [1] + [0] * (m - 1 - i))
        cols.append(L.coeffs(L.sub(_frob_value(L, xi, d), xi)))
    A = Matrix(F, [[cols[j][i] for j in range(m)] for i in range(m)])
    kern = A.kernel()
    basis = [FieldElement(L, L.from_coeffs(list(row))) for row in kern.rows]
    if len(basis) != d:
        raise ConsistencyError(f"fixed field of Frobenius^{d} has dimension {len(basis)}")
    return basis


def subfield_elements(tower: FieldTower, d: int) -> list[FieldElement]:
    """All elements of F_{q^d} inside L, in the enumeration order of L."""
    L, F = tower.top, tower.base
    basis = [b.value for b in subfield_basis(tower, d)]
    vals = [0]
    for b in basis:
        vals = [L.add(v, L.mul(c, b)) for c in range(F.size) for v in vals]
    return [FieldElement(L, v) for v in sorted(vals)]


# ---------------------------------------------------------------------------
# Deterministic searches
# ---------------------------------------------------------------------------

def _as_field(obj) -> FiniteField:
    if isinstance(obj, FieldTower):
        return obj.top
    if isinstance(obj, FiniteField):
        return obj
    raise InputError(f"expected a tower or a field, got {obj!r}")


def find_sqrt_minus_one(tower_or_field) -> FieldElement:
    """The first element (enumeration order) whose square is -1."""
    K = _as_field(tower_or_field)
    if K.p == 2:
        raise EvenCharacteristic("characteristic 2: -1 = 1")
    Q = K.size
    if Q % 4 == 3:
        raise NoSquareRootOfMinusOne(f"-1 is not a square in a field with {Q} elements")
    minus_one = K.neg(1)
    # r = z^((Q-1)/4) for a non-square z satisfies r^2 = -1; the roots are +-r
    for z in range(2, Q):
        if K.pow(z, (Q - 1) // 2) == minus_one:
            r = K.pow(z, (Q - 1) // 4)
            break
    else:
        raise ConsistencyError("no non-square found")
    if K.mul(r, r) != minus_one:
        raise ConsistencyError("square root of -1 check failed")
    return FieldElement(K, min(r, K.neg(r)))


def find_artin_schreier(tower: FieldTower) -> tuple[FieldElement, FieldElement]:
    """Return ``(alpha, c)`` with alpha^2 + alpha = c and alpha^q = alpha + 1.

    ``c`` is the first element of F_q with absolute trace 1 and ``alpha``
    the first root in L; alpha generates the quadratic subextension.
    """
    if tower.p != 2:
        raise NoSuchElement("Artin-Schreier elements are only used in characteristic 2")
    if tower.m % 2:
        raise NoSuchElement("L has no quadratic subextension over F_q (m is odd)")
    F, L = tower.base, tower.top
    c = next(x for x in F.elements() if absolute_trace(x).value == 1)
    for a in subfield_elements(tower, 2):
        if L.add(L.mul(a.value, a.value), a.value) == c.value:
            alpha = a
            break
    else:
        raise ConsistencyError("x^2 + x + c has no root in the quadratic subfield")
    if frobenius(alpha, 1) != alpha + 1:
        raise ConsistencyError("alpha^q != alpha + 1")
    return alpha, c


def find_norm_preimage(tower: FieldTower, delta) -> FieldElement:
    """First top-level element (enumeration order) with relative norm ``delta``."""
    F, L = tower.base, tower.top
    dv = F(delta).value
    if dv == 0:
        raise NotFound("zero is not the norm of a unit")
    for v in range(1, L.size):
        if conjugate_product(L, v, L.degree) == dv:
            return FieldElement(L, v)
    raise ConsistencyError("norm map not surjective")
