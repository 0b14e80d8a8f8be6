"""Exact arithmetic over Z_v and GF(p^m), polynomials and small matrices.

Field elements are plain ints: the element with polynomial-basis coefficients
``(a_0, ..., a_{m-1})`` has index ``a_0 + a_1 p + ... + a_{m-1} p^{m-1}``.
Index 0 is the zero element and index 1 the identity.  All higher-level code
(LFSR states, projective coordinates, symbol maps) works on these indices.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    NonPrimeCharacteristic,
    ReducibleModulus,
    SingularMatrix,
    ZeroConstantTerm,
)


# --------------------------------------------------------------------------
# integers
# --------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % r for r in range(2, math.isqrt(n) + 1))


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    r = 2
    while r * r <= n:
        if n % r == 0:
            out.append(r)
            while n % r == 0:
                n //= r
        r += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    for r in prime_factors(n):
        result -= result // r
    return result


def units_mod(n: int) -> list[int]:
    """Units of Z_n in increasing order (``[0]`` for the trivial ring Z_1)."""
    if n == 1:
        return [0]
    return [a for a in range(1, n) if math.gcd(a, n) == 1]


# --------------------------------------------------------------------------
# prime-field polynomial helpers (used only to build and validate moduli)
# --------------------------------------------------------------------------

def _trim(c: Sequence[int]) -> list[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _prime_polymod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        factor = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bc) % p
        a = _trim(a)
    return a


def _monic_polys(q: int, degree: int) -> Iterable[tuple[int, ...]]:
    # constant-first tuples, lexicographic with the constant term most significant
    for low in itertools.product(range(q), repeat=degree):
        yield tuple(low) + (1,)


def _is_irreducible_prime(coeffs: Sequence[int], p: int) -> bool:
    m = len(coeffs) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for g in _monic_polys(p, d):
            if not _prime_polymod(coeffs, g, p):
                return False
    return True


# --------------------------------------------------------------------------
# fields
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with a fixed polynomial basis.

    ``modulus`` is the defining monic irreducible over GF(p), constant term
    first.  It is ``None`` for prime fields.
    """

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def q(self) -> int:
        return self.p ** self.m

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    # representation -----------------------------------------------------
    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def index(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def element(self, a: int) -> "FieldElement":
        return FieldElement(self, self.from_int(a))

    # tables ------------------------------------------------------------
    @cached_property
    def _add(self) -> tuple[tuple[int, ...], ...]:
        q, p = self.q, self.p
        if self.m == 1:
            return tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
        cs = [self.coeffs(a) for a in range(q)]
        return tuple(
            tuple(self.index([(x + y) % p for x, y in zip(cs[a], cs[b])]) for b in range(q))
            for a in range(q)
        )

    @cached_property
    def _mul(self) -> tuple[tuple[int, ...], ...]:
        q, p = self.q, self.p
        if self.m == 1:
            return tuple(tuple(a * b % p for b in range(q)) for a in range(q))
        cs = [self.coeffs(a) for a in range(q)]
        rows = []
        for a in range(q):
            row = []
            for b in range(q):
                prod = [0] * (2 * self.m - 1)
                for i, x in enumerate(cs[a]):
                    if x:
                        for j, y in enumerate(cs[b]):
                            prod[i + j] += x * y
                rem = _prime_polymod(prod, self.modulus, p)
                row.append(self.index(rem))
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def _neg(self) -> tuple[int, ...]:
        return tuple(self._add[a].index(0) for a in range(self.q))

    @cached_property
    def _inv(self) -> tuple[int | None, ...]:
        return (None,) + tuple(self._mul[a].index(1) for a in range(1, self.q))

    # arithmetic on indices -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def from_int(self, c: int) -> int:
        """Map an integer literal to a field element.

        In a prime field ``c`` is reduced mod p.  In an extension field a
        non-negative ``c`` is read as an element index and a negative one as
        the additive inverse of that index.
        """
        if self.m == 1:
            return c % self.p
        if c < 0:
            return self.neg(-c)
        if c >= self.q:
            raise ValueError(f"{c} is not an element index of {self!r}")
        return c


def field_make(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validate and build a field spec.

    Without an explicit modulus an extension field uses the lexicographically
    smallest monic irreducible of degree ``m`` (constant term compared first).
    """
    if p < 2 or not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if m == 1:
        return FieldSpec(p, 1, None)
    if modulus is None:
        for cand in _monic_polys(p, m):
            if _is_irreducible_prime(cand, p):
                modulus = cand
                break
    mod = tuple(c % p for c in modulus)
    if len(_trim(mod)) != m + 1 or mod[-1] != 1:
        raise ReducibleModulus(f"modulus {list(modulus)} is not monic of degree {m}")
    if not _is_irreducible_prime(mod, p):
        raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
    return FieldSpec(p, m, mod)


@dataclass(frozen=True)
class FieldElement:
    """Operator-friendly wrapper around an element index."""

    spec: FieldSpec
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.index)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError("elements of different fields")
            return other.index
        return self.spec.from_int(other)

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.index, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.index, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self._other(other), self.index))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.index))

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.index, self.spec.inv(self._other(other))))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.spec, self.spec.inv(self.index)) ** (-e)
        acc = 1
        for _ in range(e):
            acc = self.spec.mul(acc, self.index)
        return FieldElement(self.spec, acc)

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"FieldElement({self.index} in {self.spec!r})"


# --------------------------------------------------------------------------
# polynomials over GF(q)
# --------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


@dataclass(frozen=True)
class Poly:
    """Polynomial over ``field``; ``coeffs`` are element indices, constant first."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_trim(self.coeffs)))

    @classmethod
    def from_list(cls, field: FieldSpec, coeffs: Sequence[int]) -> "Poly":
        return cls(field, tuple(field.from_int(c) for c in coeffs))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Poly":
        """Parse strings such as ``"x^3-x^2-2x-2"`` or ``"x^2 + x + 1"``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty polynomial")
        acc: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
            sign, num, xpart, exp = m.groups()
            if not num and not xpart:
                raise ValueError(f"cannot parse polynomial {text!r}")
            c = int(num) if num else 1
            e = (int(exp) if exp else 1) if xpart else 0
            val = field.from_int(c)
            if sign == "-":
                val = field.neg(val)
            acc[e] = field.add(acc.get(e, 0), val)
            pos = m.end()
        deg = max(acc)
        return cls(field, tuple(acc.get(i, 0) for i in range(deg + 1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            cs = "" if (c == 1 and e > 0) else str(c)
            xs = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            terms.append(cs + xs)
        return " + ".join(terms) if terms else "0"


def _pmul(f: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
    return out


def _pmod(f: FieldSpec, a: Sequence[int], mod: Sequence[int]) -> list[int]:
    a = _trim(a)
    inv = f.inv(mod[-1])
    n = len(mod) - 1
    while len(a) > n:
        factor = f.mul(a[-1], inv)
        shift = len(a) - len(mod)
        for i, m in enumerate(mod):
            if m:
                a[shift + i] = f.sub(a[shift + i], f.mul(factor, m))
        a = _trim(a)
    return a


def _x_pow_mod(f: FieldSpec, e: int, mod: Sequence[int]) -> list[int]:
    result = [1]
    base = _pmod(f, [0, 1], mod)
    while e:
        if e & 1:
            result = _pmod(f, _pmul(f, result, base), mod)
        base = _pmod(f, _pmul(f, base, base), mod)
        e >>= 1
    return result


def _check_order_pre(fpoly: Poly) -> None:
    if fpoly.degree < 1 or not fpoly.is_monic():
        raise ValueError(f"{fpoly} must be monic of degree >= 1")
    if fpoly.coeffs[0] == 0:
        raise ZeroConstantTerm(f"{fpoly} has zero constant term")


def poly_order(fpoly: Poly) -> int:
    """Least e >= 1 with x^e = 1 modulo ``fpoly``.

    When x^(q^n - 1) = 1 the order is found by stripping prime factors of
    q^n - 1.  Polynomials with repeated factors can have an order that does not
    divide q^n - 1; those fall back to stepping through powers of x.
    """
    _check_order_pre(fpoly)
    f, mod = fpoly.field, fpoly.coeffs
    n = fpoly.degree
    big = f.q ** n - 1
    if _x_pow_mod(f, big, mod) == [1]:
        order = big
        for r in prime_factors(big):
            while order % r == 0 and _x_pow_mod(f, order // r, mod) == [1]:
                order //= r
        return order
    cur = _pmod(f, [0, 1], mod)
    x = cur
    e = 1
    while cur != [1]:
        cur = _pmod(f, _pmul(f, cur, x), mod)
        e += 1
    return e


def is_primitive(fpoly: Poly) -> bool:
    return poly_order(fpoly) == fpoly.field.q ** fpoly.degree - 1


def is_irreducible(fpoly: Poly) -> bool:
    """Trial division by every monic polynomial of degree <= n/2."""
    f = fpoly.field
    n = fpoly.degree
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(f.q, d):
            if not _pmod(f, list(fpoly.coeffs), g):
                return False
    return True


def enumerate_primitive(field: FieldSpec, n: int) -> list[Poly]:
    """All monic primitive polynomials of degree ``n`` in lexicographic order."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    out = []
    for coeffs in _monic_polys(field.q, n):
        if coeffs[0] == 0:
            continue
        fp = Poly(field, coeffs)
        if is_primitive(fp):
            out.append(fp)
    return out


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_ints(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "Matrix":
        return cls(field, tuple(tuple(field.from_int(c) for c in r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)


def identity(field: FieldSpec, n: int) -> Matrix:
    return Matrix(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def vec_mat(field: FieldSpec, v: Sequence[int], A: Matrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    rows, cols = A.shape
    if len(v) != rows:
        raise DimensionMismatch(f"vector of length {len(v)} against {rows}x{cols} matrix")
    out = []
    for j in range(cols):
        acc = 0
        for i in range(rows):
            if v[i]:
                acc = field.add(acc, field.mul(v[i], A.rows[i][j]))
        out.append(acc)
    return tuple(out)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A.field != B.field:
        raise DimensionMismatch("matrices over different fields")
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return Matrix(A.field, tuple(vec_mat(A.field, r, B) for r in A.rows))


def mat_pow(A: Matrix, e: int) -> Matrix:
    rows, cols = A.shape
    if rows != cols:
        raise DimensionMismatch("power of a non-square matrix")
    if e < 0:
        raise ValueError("negative matrix power")
    result = identity(A.field, rows)
    base = A
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def rank(A: Matrix) -> int:
    f = A.field
    m = [list(r) for r in A.rows]
    rk = 0
    ncols = A.shape[1]
    for c in range(ncols):
        piv = next((r for r in range(rk, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = f.inv(m[rk][c])
        m[rk] = [f.mul(inv, x) for x in m[rk]]
        for r in range(len(m)):
            if r != rk and m[r][c]:
                factor = m[r][c]
                m[r] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[r], m[rk])]
        rk += 1
    return rk


def is_invertible(A: Matrix) -> bool:
    rows, cols = A.shape
    return rows == cols and rank(A) == rows


def _is_scalar(A: Matrix) -> bool:
    n = A.shape[0]
    d = A.rows[0][0]
    return d != 0 and all(A.rows[i][j] == (d if i == j else 0) for i in range(n) for j in range(n))


def matrix_order(A: Matrix, projective: bool = False) -> int:
    """Least e >= 1 with A^e = I (or A^e scalar, when ``projective``)."""
    rows, cols = A.shape
    if rows != cols:
        raise DimensionMismatch("order of a non-square matrix")
    if not is_invertible(A):
        raise SingularMatrix("matrix is not invertible")
    done = _is_scalar if projective else (lambda M: M == identity(A.field, rows))
    big = A.field.q ** rows - 1
    if done(mat_pow(A, big)):
        order = big
        for r in prime_factors(big):
            while order % r == 0 and done(mat_pow(A, order // r)):
                order //= r
        return order
    cur, e = A, 1
    while not done(cur):
        cur = mat_mul(cur, A)
        e += 1
    return e


def companion_matrix(fpoly: Poly) -> Matrix:
    """State update matrix C of the LFSR with characteristic polynomial ``fpoly``.

    Ones on the subdiagonal, last column (c_0, ..., c_{n-1}) where
    f(x) = x^n - c_{n-1} x^{n-1} - ... - c_0.  States are row vectors:
    s_{t+1} = s_t C.
    """
    if not fpoly.is_monic() or fpoly.degree < 1:
        raise ValueError(f"{fpoly} must be monic of degree >= 1")
    f = fpoly.field
    n = fpoly.degree
    taps = [f.neg(c) for c in fpoly.coeffs[:n]]
    rows = []
    for i in range(n):
        row = [0] * n
        if i >= 1:
            row[i - 1] = 1
        row[n - 1] = taps[i]
        rows.append(tuple(row))
    # n == 1: the single entry is c_0 (the subdiagonal is empty)
    return Matrix(f, tuple(rows))


def block_diag_one(C: Matrix) -> Matrix:
    """diag(C, 1): the extension fixing the last coordinate hyperplane and its pole."""
    n = C.shape[0]
    rows = [tuple(r) + (0,) for r in C.rows]
    rows.append(tuple([0] * n + [1]))
    return Matrix(C.field, tuple(rows))


def poly_from_taps(field: FieldSpec, taps: Sequence[int]) -> Poly:
    """x^n - c_{n-1} x^{n-1} - ... - c_0 from taps (c_0, ..., c_{n-1})."""
    return Poly(field, tuple(field.neg(field.from_int(c)) for c in taps) + (1,))


def taps_from_poly(fpoly: Poly) -> tuple[int, ...]:
    f = fpoly.field
    return tuple(f.neg(c) for c in fpoly.coeffs[: fpoly.degree])


def field_to_json(field: FieldSpec) -> dict:
    out = {"p": field.p, "m": field.m}
    if field.m > 1:
        out["modulus"] = list(field.modulus)
    return out


def field_from_json(obj: dict) -> FieldSpec:
    return field_make(int(obj["p"]), int(obj.get("m", 1)), obj.get("modulus"))

