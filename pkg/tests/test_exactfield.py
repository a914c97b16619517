from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from homhopf.exactfield import GF, QQ, DivisionByZero, FieldMismatch, FieldSpec, Scalar, is_prime, scalar_arith


def test_gf5_inverse_of_two():
    assert scalar_arith("inv", Scalar.of(GF(5), 2)).value == 3


def test_q_addition():
    assert scalar_arith("add", Scalar.of(QQ, Fraction(1, 2)), Scalar.of(QQ, Fraction(1, 3))).value == Fraction(5, 6)


def test_gf7_product():
    assert scalar_arith("mul", Scalar.of(GF(7), 3), Scalar.of(GF(7), 5)).value == 1


def test_errors():
    with pytest.raises(DivisionByZero):
        scalar_arith("inv", Scalar.of(GF(5), 0))
    with pytest.raises(DivisionByZero):
        scalar_arith("div", Scalar.of(QQ, 1), Scalar.of(QQ, 0))
    with pytest.raises(FieldMismatch):
        scalar_arith("add", Scalar.of(GF(5), 1), Scalar.of(GF(7), 1))
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(2**31 + 11)


def test_primality_against_sieve():
    n = 5000
    sieve = [True] * n
    sieve[0] = sieve[1] = False
    for i in range(2, n):
        if sieve[i]:
            for j in range(i * i, n, i):
                sieve[j] = False
    assert [is_prime(i) for i in range(n)] == sieve
    assert is_prime(2**31 - 1) and not is_prime(2**31 - 3)


def test_text_encoding():
    assert QQ.format(Fraction(-6, 4)) == "-3/2"
    assert QQ.format(Fraction(4, 2)) == "2"
    assert GF(5).format(GF(5).coerce(-1)) == "4"
    assert GF(5).parse("1/2") == 3
    assert FieldSpec.from_name("gf11") == GF(11) and FieldSpec.from_name("q") == QQ
    assert FieldSpec.from_json(GF(3).to_json()) == GF(3)


primes = st.sampled_from([2, 3, 5, 7, 101, 2**31 - 1])
rationals = st.fractions(max_denominator=10**6)


@given(rationals, rationals, rationals)
def test_q_field_axioms(a, b, c):
    x, y, z = (Scalar.of(QQ, v) for v in (a, b, c))
    assert ((x + y) + z).value == (x + (y + z)).value
    assert ((x * y) * z).value == (x * (y * z)).value
    assert (x + y).value == (y + x).value and (x * y).value == (y * x).value
    assert (x * (y + z)).value == (x * y + x * z).value
    if a != 0:
        assert (x.inverse() * x).value == 1


@given(primes, st.integers(), st.integers(), st.integers())
def test_gf_field_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = (Scalar.of(F, v) for v in (a, b, c))
    assert ((x + y) + z).value == (x + (y + z)).value
    assert ((x * y) * z).value == (x * (y * z)).value
    assert (x * (y + z)).value == (x * y + x * z).value
    assert (x - x).value == 0 and 0 <= x.value < p
    if a % p:
        assert (x / x).value == 1


@given(st.one_of(st.builds(lambda q: (QQ, q), rationals),
                 st.builds(lambda p, v: (GF(p), v), primes, st.integers())))
def test_parse_format_roundtrip(case):
    F, v = case
    x = F.coerce(v)
    assert F.parse(F.format(x)) == x
    assert F.coerce(F.format(x)) == x
