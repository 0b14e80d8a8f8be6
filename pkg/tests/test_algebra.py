import itertools
import math

import pytest
from hypothesis import given, strategies as st

from ddfkit.algebra import (
    Matrix,
    Poly,
    companion_matrix,
    enumerate_primitive,
    euler_phi,
    field_from_json,
    field_make,
    field_to_json,
    identity,
    is_irreducible,
    is_primitive,
    mat_mul,
    mat_pow,
    matrix_order,
    poly_from_taps,
    poly_order,
    taps_from_poly,
    units_mod,
)
from ddfkit.errors import (
    DimensionMismatch,
    NonPrimeCharacteristic,
    ReducibleModulus,
    SingularMatrix,
    ZeroConstantTerm,
)
from ddfkit.golden import PRIMITIVE_GRID

from conftest import small_fields


def _field_for_q(q):
    return {2: field_make(2), 3: field_make(3), 4: field_make(2, 2), 5: field_make(5)}[q]


def _brute_order(f):
    """Power iteration of x mod f, independent of the divisor method."""
    F = f.field
    mod = f.coeffs
    n = f.degree
    cur = [0] * n
    cur[1 % n] = 1 if n > 1 else 0
    if n == 1:
        cur = [F.neg(mod[0])]
    one = [1] + [0] * (n - 1)
    e = 1
    while cur != one:
        # multiply by x and reduce with x^n = -(c_0 + ... + c_{n-1} x^{n-1})
        top = cur[-1]
        cur = [0] + cur[:-1]
        for i in range(n):
            cur[i] = F.sub(cur[i], F.mul(top, mod[i]))
        e += 1
        assert e <= F.q ** n
    return e


# field construction --------------------------------------------------------

def test_prime_field():
    F = field_make(3)
    assert F.q == 3 and F.m == 1
    assert F.add(2, 2) == 1 and F.mul(2, 2) == 1 and F.inv(2) == 2


def test_gf4_default_modulus():
    F = field_make(2, 2)
    assert F.modulus == (1, 1, 1)
    assert F.q == 4
    assert field_make(2, 2, [1, 1, 1]) == F


def test_gf8_default_modulus():
    # x^3 + x^2 + 1 precedes x^3 + x + 1 when constant-first tuples are compared
    assert field_make(2, 3).modulus == (1, 0, 1, 1)


def test_non_prime_characteristic():
    with pytest.raises(NonPrimeCharacteristic):
        field_make(4)
    with pytest.raises(NonPrimeCharacteristic):
        field_make(1)


def test_reducible_modulus():
    with pytest.raises(ReducibleModulus):
        field_make(2, 2, [1, 0, 1])
    with pytest.raises(ReducibleModulus):
        field_make(3, 2, [0, 0, 1])


@pytest.mark.parametrize("F", small_fields(), ids=repr)
def test_field_axioms_exhaustive(F):
    q = F.q
    els = range(q)
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("F", small_fields(), ids=repr)
def test_index_bijection(F):
    seen = {F.index(F.coeffs(a)) for a in range(F.q)}
    assert seen == set(range(F.q))
    assert F.coeffs(0) == (0,) * F.m
    assert F.coeffs(1) == (1,) + (0,) * (F.m - 1)


def test_field_json_round_trip():
    for F in small_fields():
        assert field_from_json(field_to_json(F)) == F
    assert field_to_json(field_make(2, 2)) == {"p": 2, "m": 2, "modulus": [1, 1, 1]}


def test_element_wrapper():
    F = field_make(2, 2)
    a = F.element(2)
    assert int(a * a * a) == 1
    assert int(a + a) == 0
    assert int(a / a) == 1


# polynomials ----------------------------------------------------------------

def test_parse(gf3):
    f = Poly.parse(gf3, "x^3-x^2-2x-2")
    assert f.coeffs == (1, 1, 2, 1)
    assert f.degree == 3 and f.is_monic
    assert Poly.parse(gf3, "x^3 - x^2 - 2") == Poly.from_list(gf3, [-2, 0, -1, 1])
    with pytest.raises(ValueError):
        Poly.parse(gf3, "x^^2")


def test_taps_round_trip(gf3):
    f = poly_from_taps(gf3, (2, 0, 1))
    assert f == Poly.parse(gf3, "x^3-x^2-2")
    assert taps_from_poly(f) == (2, 0, 1)


def test_poly_order_examples(gf3):
    assert poly_order(Poly.parse(gf3, "x^3-x^2-2")) == 26
    assert poly_order(Poly.parse(gf3, "x-1")) == 1
    assert poly_order(Poly.parse(field_make(2), "x^2+x+1")) == 3


def test_poly_order_zero_constant(gf3):
    with pytest.raises(ZeroConstantTerm):
        poly_order(Poly.parse(gf3, "x^2+x"))


def test_poly_order_repeated_factor():
    # x^2 + 1 = (x + 1)^2 over GF(2): order 2, which does not divide 2^2 - 1
    f = Poly.parse(field_make(2), "x^2+1")
    assert poly_order(f) == 2 == _brute_order(f)


def test_is_primitive_examples(gf3):
    assert is_primitive(Poly.parse(gf3, "x^3-x^2-2"))
    assert is_primitive(Poly.parse(gf3, "x^3-x^2-2x-2"))
    assert not is_primitive(Poly.parse(gf3, "x^2-1"))


def test_enumerate_examples(gf3):
    got = enumerate_primitive(gf3, 3)
    assert len(got) == 4
    assert Poly.parse(gf3, "x^3-x^2-2") in got
    assert Poly.parse(gf3, "x^3-x^2-2x-2") in got
    assert [f.coeffs for f in got] == sorted(f.coeffs for f in got)
    assert enumerate_primitive(field_make(2), 1) == [Poly.parse(field_make(2), "x+1")]
    assert len(enumerate_primitive(field_make(2), 3)) == 2


@pytest.mark.parametrize("q,n", PRIMITIVE_GRID)
def test_primitive_count(q, n):
    F = _field_for_q(q)
    assert len(enumerate_primitive(F, n)) == euler_phi(q ** n - 1) // n


def _monic_with_constant(F, n):
    for tail in itertools.product(range(F.q), repeat=n):
        if tail[0]:
            yield Poly(F, tail + (1,))


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (5, 1), (5, 2)])
def test_orders_against_iteration(q, n):
    F = _field_for_q(q)
    for f in _monic_with_constant(F, n):
        e = poly_order(f)
        assert e == _brute_order(f)
        assert is_primitive(f) == (e == q ** n - 1)
        assert matrix_order(companion_matrix(f)) == e
        if is_irreducible(f):
            assert (q ** n - 1) % e == 0


def test_irreducible_divisibility_quartic():
    F = field_make(2)
    for f in _monic_with_constant(F, 4):
        if is_irreducible(f):
            assert 15 % poly_order(f) == 0


# matrices ----------------------------------------------------------------

def test_companion_examples(gf3):
    assert companion_matrix(Poly.parse(gf3, "x^3-x^2-2")).to_list() == [[0, 0, 2], [1, 0, 0], [0, 1, 1]]
    assert companion_matrix(Poly.parse(gf3, "x^3-x^2-2x-2")).to_list() == [[0, 0, 2], [1, 0, 2], [0, 1, 1]]
    assert companion_matrix(Poly.parse(gf3, "x-1")).to_list() == [[1]]


def test_matrix_basics(gf3):
    C = companion_matrix(Poly.parse(gf3, "x^3-x^2-2"))
    assert mat_pow(C, 0) == identity(gf3, 3)
    assert mat_mul(identity(gf3, 3), C) == C
    assert matrix_order(C) == 26
    assert mat_pow(C, 26) == identity(gf3, 3)
    assert C @ identity(gf3, 3) == C


def test_matrix_errors(gf3):
    A = Matrix.from_ints(gf3, [[1, 0, 0], [0, 1, 0]])
    with pytest.raises(DimensionMismatch):
        mat_mul(A, A)
    with pytest.raises(SingularMatrix):
        matrix_order(Matrix.from_ints(gf3, [[1, 1], [1, 1]]))


def test_projective_order(gf3):
    # 2*I is the identity projectively but has order 2 as a matrix
    A = Matrix.from_ints(gf3, [[2, 0], [0, 2]])
    assert matrix_order(A) == 2
    assert matrix_order(A, projective=True) == 1


# integers ----------------------------------------------------------------

@pytest.mark.parametrize("n,want", [(26, 12), (1, 1), (7, 6)])
def test_euler_phi_examples(n, want):
    assert euler_phi(n) == want


@given(st.integers(min_value=1, max_value=3000))
def test_euler_phi_matches_count(n):
    assert euler_phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    assert len(units_mod(n)) == euler_phi(n)
