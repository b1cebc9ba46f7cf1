import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhgrass.exactfield import (
    QQ,
    DegreeLimitError,
    FieldError,
    Poly,
    SquareMatrix,
    UnsupportedCharacteristicError,
    char_poly,
    cyclotomic_field,
    distinct_degree_profile,
    factor_squarefree_finite,
    is_irreducible,
    make_extension,
    matrix_poly_eval,
    min_poly,
    multiplicative_generator,
    nth_roots_of_unity,
    parse_field,
    poly_gcd,
    prime_field,
    rational_poly_mod_p,
)

from oracles import (
    gf_irreducible_by_trial_division,
    sympy_charpoly_coeffs,
    sympy_is_irreducible_q,
)

FIELDS_UNDER_TEST = [
    QQ,
    prime_field(2),
    prime_field(7),
    make_extension(7, 2),
    make_extension(2, 3),
    cyclotomic_field(12),
]


@pytest.mark.parametrize("F", FIELDS_UNDER_TEST, ids=lambda f: f.label)
def test_field_axioms_on_samples(F):
    rng = random.Random(12345)
    one, zero = F.one(), F.zero()
    for _ in range(1000):
        a = F.random_element(rng)
        b = F.random_element(rng)
        c = F.random_element(rng)
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == zero
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == one


def test_make_extension_examples():
    assert make_extension(7, 1) is prime_field(7)
    F49 = make_extension(7, 2)
    assert F49.order == 49
    # degree-2 modulus irreducible iff it has no roots in GF(7)
    modulus = [int(c) for c in F49.modulus]
    assert all(
        (modulus[0] + modulus[1] * x + modulus[2] * x * x) % 7 for x in range(7)
    )
    F8 = make_extension(2, 3)
    assert F8.order == 8
    assert gf_irreducible_by_trial_division(2, [int(c) for c in F8.modulus])
    with pytest.raises(FieldError):
        make_extension(6, 2)


def test_extension_determinism():
    assert make_extension(7, 2).modulus == make_extension(7, 2).modulus
    assert make_extension(2, 3).modulus == (1, 1, 0, 1)  # t^3 + t + 1


def test_parse_field():
    assert parse_field("Q") is QQ
    assert parse_field("GF(7)").order == 7
    assert parse_field("GF(3^2)").order == 9
    with pytest.raises(FieldError):
        parse_field("R")


def test_nth_roots_examples():
    F7 = prime_field(7)
    # cube roots oracle: all x in GF(7) with x^3 = 1
    assert set(nth_roots_of_unity(F7, 3)) == {x for x in range(1, 7) if pow(x, 3, 7) == 1}
    assert set(nth_roots_of_unity(F7, 3)) == {1, 2, 4}
    assert set(nth_roots_of_unity(F7, 6)) == {1, 2, 3, 4, 5, 6}
    assert nth_roots_of_unity(F7, 1) == (1,)
    assert nth_roots_of_unity(F7, 3)[0] == 1


@pytest.mark.parametrize(
    "F,n",
    [
        (prime_field(11), 10),
        (prime_field(13), 12),
        (make_extension(2, 4), 5),
        (make_extension(3, 2), 8),
        (cyclotomic_field(12), 12),
        (cyclotomic_field(5), 5),
    ],
    ids=lambda v: getattr(v, "label", v),
)
def test_roots_product_polynomial(F, n):
    """prod (x - zeta) over all n-th roots equals x^n - 1 coefficientwise."""
    roots = nth_roots_of_unity(F, n)
    assert len(set(roots)) == n
    poly = Poly.one(F)
    x = Poly.x(F)
    for zeta in roots:
        poly = poly * (x - Poly.constant(F, zeta))
    expected = Poly(F, [F.neg(F.one())] + [F.zero()] * (n - 1) + [F.one()])
    assert poly == expected


def test_roots_error_cases():
    with pytest.raises(UnsupportedCharacteristicError):
        nth_roots_of_unity(prime_field(5), 10)  # p | n
    with pytest.raises(FieldError):
        nth_roots_of_unity(prime_field(7), 5)  # 5 does not divide 6
    with pytest.raises(FieldError):
        nth_roots_of_unity(QQ, 3)
    assert nth_roots_of_unity(QQ, 2) == (Fraction(1), Fraction(-1))


def test_generator_deterministic():
    assert multiplicative_generator(prime_field(7)) == 3
    assert multiplicative_generator(prime_field(11)) == 2


def test_is_irreducible_finite_examples():
    F3, F5 = prime_field(3), prime_field(5)
    assert is_irreducible(F3, Poly.from_ints(F3, [-1, -1, 1])) is True
    assert is_irreducible(F5, Poly.from_ints(F5, [-1, -1, 1])) is False
    assert is_irreducible(F5, Poly.from_ints(F5, [0, 1])) is True  # y
    with pytest.raises(FieldError):
        is_irreducible(F5, Poly.from_ints(F5, [3]))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_is_irreducible_finite_against_trial_division(p):
    rng = random.Random(99 + p)
    F = prime_field(p)
    for _ in range(40):
        deg = rng.randint(1, 6)
        coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
        poly = Poly.from_ints(F, coeffs)
        assert is_irreducible(F, poly) == gf_irreducible_by_trial_division(p, coeffs)


def test_is_irreducible_rational_examples():
    cases = {
        (-2, 0, 1): True,  # x^2 - 2
        (-1, 0, 1): False,  # (x-1)(x+1)
        (1, 0, -1, 0, 1): True,  # Phi_12, reducible mod every prime
        (1, 0, 0, 0, 1): True,  # x^4 + 1, reducible mod every prime
        (1, 0, -10, 0, 1): True,  # minimal polynomial of sqrt(2) + sqrt(3)
        (1, 3, 2): False,  # (x+1)(2x+1)
        (3, 0, 2): True,  # 2x^2 + 3
    }
    for coeffs, expected in cases.items():
        assert is_irreducible(QQ, Poly.from_ints(QQ, list(coeffs))) is expected


def test_is_irreducible_rational_against_sympy():
    rng = random.Random(2024)
    for _ in range(25):
        deg = rng.randint(1, 8)
        coeffs = [rng.randint(-6, 6) for _ in range(deg)] + [rng.choice([1, 2, 3, -1])]
        poly = Poly.from_ints(QQ, coeffs)
        assert is_irreducible(QQ, poly) == sympy_is_irreducible_q(coeffs)


def test_degree_limit():
    big = Poly.from_ints(QQ, [1] * 66)  # degree 65
    with pytest.raises(DegreeLimitError):
        is_irreducible(QQ, big)


def test_char_poly_examples():
    assert char_poly(QQ, SquareMatrix.identity(QQ, 2)).coeffs == (
        Fraction(1),
        Fraction(-2),
        Fraction(1),
    )
    M = SquareMatrix.from_int_rows(QQ, [[1, -1], [-1, 0]])
    assert char_poly(QQ, M).coeffs == (Fraction(-1), Fraction(-1), Fraction(1))


@pytest.mark.parametrize("size", [2, 3, 4, 5])
def test_char_poly_against_sympy_and_cayley_hamilton(size):
    rng = random.Random(size * 17)
    rows = [[rng.randint(-4, 4) for _ in range(size)] for _ in range(size)]
    M = SquareMatrix.from_int_rows(QQ, rows)
    mine = char_poly(QQ, M)
    # sympy gives det(xI - M); ours is det(M - xI) = (-1)^size * that
    expected = sympy_charpoly_coeffs(rows)
    sign = 1 if size % 2 == 0 else -1
    assert list(mine.coeffs) == [sign * c for c in expected]
    hit = matrix_poly_eval(mine, M)
    assert all(v == 0 for v in hit.entries)
    # and over GF(7)
    F7 = prime_field(7)
    M7 = SquareMatrix.from_int_rows(F7, rows)
    mine7 = char_poly(F7, M7)
    assert list(mine7.coeffs) == [F7.from_int(int(sign * c)) for c in expected]
    assert all(F7.is_zero(v) for v in matrix_poly_eval(mine7, M7).entries)


def test_min_poly_examples():
    assert min_poly(QQ, SquareMatrix.identity(QQ, 3)).coeffs == (Fraction(-1), Fraction(1))
    D = SquareMatrix.from_int_rows(QQ, [[1, 0], [0, 2]])
    assert min_poly(QQ, D).coeffs == (Fraction(2), Fraction(-3), Fraction(1))


def test_min_poly_jordan_blocks():
    J = SquareMatrix.from_int_rows(QQ, [[1, 1], [0, 1]])
    assert min_poly(QQ, J).coeffs == (Fraction(1), Fraction(-2), Fraction(1))  # (x-1)^2
    N = SquareMatrix.from_int_rows(QQ, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert min_poly(QQ, N).coeffs == (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
    # blocks J2(1), J1(1), J2(2): minimal polynomial (x-1)^2 (x-2)^2, degree 4 of 5
    rows = [[1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 2, 1], [0, 0, 0, 0, 2]]
    mp = min_poly(QQ, SquareMatrix.from_int_rows(QQ, rows))
    assert mp.coeffs == (Fraction(4), Fraction(-12), Fraction(13), Fraction(-6), Fraction(1))


@pytest.mark.parametrize("seed", range(6))
def test_min_poly_divides_char_poly(seed):
    rng = random.Random(seed)
    size = rng.randint(2, 5)
    F = random.Random(seed + 1).choice([QQ, prime_field(5), prime_field(2)])
    rows = [[rng.randint(-3, 3) for _ in range(size)] for _ in range(size)]
    M = SquareMatrix.from_int_rows(F, rows)
    mp = min_poly(F, M)
    cp = char_poly(F, M)
    assert (cp % mp).is_zero
    assert all(F.is_zero(v) for v in matrix_poly_eval(mp, M).entries)
    assert mp.lc() == F.one()


def test_poly_text_format():
    f = Poly.from_ints(QQ, [1, 0, 2])
    assert f.to_text() == "1 + 2*x^2"
    assert Poly.zero(QQ).to_text() == "0"
    assert Poly.from_ints(QQ, [0, 1]).to_text() == "x"


def test_distinct_degree_profile_and_factors():
    F2 = prime_field(2)
    # x^4 + x^3 + x^2 + x + 1 is irreducible over GF(2) (order of 2 mod 5 is 4)
    assert distinct_degree_profile(F2, Poly.from_ints(F2, [1, 1, 1, 1, 1])) == [4]
    # x^5 - 1 = (x + 1)(x^4 + x^3 + x^2 + x + 1) over GF(2)
    profile = distinct_degree_profile(F2, Poly.from_ints(F2, [1, 0, 0, 0, 0, 1]))
    assert profile == [1, 4]
    factors = factor_squarefree_finite(F2, Poly.from_ints(F2, [1, 0, 0, 0, 0, 1]))
    assert sorted(int(f.degree) for f in factors) == [1, 4]
    prod = Poly.one(F2)
    for f in factors:
        prod = prod * f
    assert prod == Poly.from_ints(F2, [1, 0, 0, 0, 0, 1])


def test_rational_poly_mod_p():
    f = Poly(QQ, [Fraction(1, 2), Fraction(3)])
    g = rational_poly_mod_p(f, prime_field(5))
    assert g.coeffs == (3, 3)  # 1/2 = 3 mod 5
    with pytest.raises(FieldError):
        rational_poly_mod_p(Poly(QQ, [Fraction(1, 5)]), prime_field(5))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=7),
    st.lists(st.integers(min_value=0, max_value=6), min_size=2, max_size=5),
)
def test_poly_divmod_roundtrip(acoeffs, bcoeffs):
    F = prime_field(7)
    a = Poly(F, acoeffs)
    b = Poly(F, bcoeffs)
    if b.is_zero:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree
    g = poly_gcd(a, b)
    if not g.is_zero:
        assert (a % g).is_zero and (b % g).is_zero
