import json
import random
from fractions import Fraction
from math import gcd

import pytest

from qhgrass.diagram import GrContext, YoungDiagram
from qhgrass.exactfield import (
    QQ,
    Poly,
    SquareMatrix,
    char_poly,
    distinct_degree_profile,
    is_irreducible,
    make_extension,
    min_poly,
    poly_gcd,
    prime_field,
)
from qhgrass.degree_zero import (
    SearchBudgetError,
    charpoly_identity_holds,
    charpoly_mod_p,
    classify,
    closed_form_charpoly,
    closed_form_matrix,
    generates_units,
    is_graded_field,
    mult_matrix,
    orbit_decomposition,
    qh0_basis,
    recursion_polynomial,
    standard_degree_zero_element,
    witness_prime,
    zero_divisor_search,
)
from qhgrass.qh_core import QhElement, q_shift, special_class

from oracles import units_from_powers


def test_qh0_basis_examples():
    assert [(tuple(d), m) for d, m in qh0_basis(GrContext(2, 5))] == [((), 0), ((3, 2), -1)]
    assert [(tuple(d), m) for d, m in qh0_basis(GrContext(1, 9))] == [((), 0)]
    assert len(qh0_basis(GrContext(2, 13))) == 6  # dim QH^0 = 1 + dim H^n


def test_mult_matrix_unit_is_identity():
    ctx = GrContext(2, 9)
    M = mult_matrix(QhElement.unit(ctx, QQ), 7)
    assert M == SquareMatrix.identity(QQ, M.size)


def test_mult_matrix_requires_degree_zero():
    ctx = GrContext(2, 5)
    with pytest.raises(ValueError):
        mult_matrix(special_class(ctx, QQ, 1), 3)


def test_paper_matrices_entry_exact():
    for n, corner in ((13, 0), (12, 1)):
        ctx = GrContext(2, n)
        ring = mult_matrix(standard_degree_zero_element(ctx, QQ), n - 2)
        closed = closed_form_matrix(n, QQ)
        assert ring == closed
        size = ring.size
        assert size == 6
        assert ring.rows[0][0] == 1
        assert ring.rows[size - 1][size - 1] == corner
        for i in range(size - 1):
            assert ring.rows[i][i + 1] == -1 and ring.rows[i + 1][i] == -1


def test_variant_element_matrix():
    """The no-unit variant acts by I - M."""
    ctx = GrContext(2, 13)
    primary = mult_matrix(standard_degree_zero_element(ctx, QQ), 11)
    variant = mult_matrix(standard_degree_zero_element(ctx, QQ, include_unit=False), 11)
    assert primary + variant == SquareMatrix.identity(QQ, 6)


@pytest.mark.parametrize("n", list(range(5, 22, 2)))
def test_matrix_agreement_odd(n):
    ctx = GrContext(2, n)
    ring = mult_matrix(standard_degree_zero_element(ctx, QQ), n - 2)
    assert ring == closed_form_matrix(n, QQ)


@pytest.mark.parametrize("n", list(range(6, 21, 2)))
def test_matrix_agreement_even(n):
    ctx = GrContext(2, n)
    ring = mult_matrix(standard_degree_zero_element(ctx, QQ), n - 2)
    assert ring == closed_form_matrix(n, QQ)


def test_closed_form_charpoly_examples():
    assert closed_form_charpoly(3).coeffs == (Fraction(1), Fraction(-1))
    assert closed_form_charpoly(5).coeffs == (Fraction(-1), Fraction(-1), Fraction(1))
    assert charpoly_identity_holds(13)
    with pytest.raises(ValueError):
        closed_form_charpoly(2)


@pytest.mark.parametrize("ell", list(range(0, 31)))
def test_recursion_gives_all_ones(ell):
    assert recursion_polynomial(ell).coeffs == tuple(Fraction(1) for _ in range(2 * ell + 1))


def test_even_charpoly_via_recursion_sum():
    """x^(l+1) pi(-x - 1/x) = R_(l+1) + x R_l for even n = 2l + 2."""
    for n in (6, 10, 12):
        ell = (n - 2) // 2
        lhs = recursion_polynomial(ell + 1) + recursion_polynomial(ell).shift(1)
        ones = Poly.from_ints(QQ, [1] * n)
        xp1 = Poly.from_ints(QQ, [1, 1])
        assert lhs == xp1 * ones
        assert charpoly_identity_holds(n)


def test_generates_units_examples():
    assert generates_units(2, 3) is True
    assert generates_units(3, 7) is True
    # closure of {7, -1} mod 10 hits all of {1, 3, 7, 9}
    assert generates_units(7, 10) is True
    assert units_from_powers(7, 10) == {1, 3, 7, 9}
    assert generates_units(7, 29) is False  # 7 has order 7, with -1 that is 14 < 28
    with pytest.raises(ValueError):
        generates_units(5, 10)


@pytest.mark.parametrize("n,p", [(n, p) for n in range(3, 20) for p in (2, 3, 5, 7) if gcd(n, p) == 1])
def test_generates_units_against_oracle(n, p):
    units = {a for a in range(1, n) if gcd(a, n) == 1}
    assert generates_units(p, n) == (units_from_powers(p, n) == units)


def test_orbit_examples():
    od = orbit_decomposition(10, 7)
    assert od.count == 3
    assert od.orbits == (((5, 5),), ((1, 9), (3, 7)), ((2, 8), (4, 6)))
    assert od.sizes() == [1, 2, 2]
    assert orbit_decomposition(4, 3).count == 2
    # transitivity when {p,-1} generates and n is prime
    for n, p in ((13, 2), (5, 2), (7, 3)):
        assert generates_units(p, n)
        assert orbit_decomposition(n, p).count == 1
    with pytest.raises(ValueError):
        orbit_decomposition(10, 5)


def test_orbits_partition_pairs():
    for n, p in ((12, 5), (15, 2), (9, 2), (24, 7)):
        od = orbit_decomposition(n, p)
        seen = [pair for orbit in od.orbits for pair in orbit]
        assert sorted(seen) == [(a, n - a) for a in range(1, n // 2 + 1)]


@pytest.mark.parametrize("n", range(3, 25))
def test_orbit_factor_agreement(n):
    """Irreducible factor degrees of pi over GF(p) equal the orbit sizes."""
    for p in (2, 3, 5, 7, 11, 13):
        if gcd(n, p) != 1:
            continue
        pi = charpoly_mod_p(n, p)
        profile = distinct_degree_profile(prime_field(p), pi)
        od = orbit_decomposition(n, p)
        assert sorted(profile) == sorted(od.sizes()), (n, p)


@pytest.mark.parametrize("n", range(3, 25))
def test_distinct_roots_guard(n):
    """gcd(pi, pi') = 1 over GF(p) whenever gcd(n, p) = 1."""
    for p in (2, 3, 5, 7):
        if gcd(n, p) != 1:
            continue
        pi = charpoly_mod_p(n, p)
        assert poly_gcd(pi, pi.derivative()).degree == 0, (n, p)


def test_min_poly_equals_char_poly_for_irreducible_case():
    F2 = prime_field(2)
    M = closed_form_matrix(13, F2)
    cp = char_poly(F2, M)
    assert is_irreducible(F2, cp)
    assert min_poly(F2, M) == cp.monic()


def test_is_graded_field_examples():
    assert is_graded_field(GrContext(1, 6), prime_field(3)).is_field
    assert is_graded_field(GrContext(1, 6), QQ).is_field
    check = is_graded_field(GrContext(2, 13), prime_field(2))
    assert check.is_field and check.routes["charpoly_irreducible"]
    check = is_graded_field(GrContext(2, 10), prime_field(7))
    assert not check.is_field and check.routes["zero_divisor_search"] is False
    # rationals: prime n yes, composite odd n no (the charpoly factors)
    assert is_graded_field(GrContext(2, 7), QQ).is_field
    assert not is_graded_field(GrContext(2, 9), QQ).is_field
    assert not is_graded_field(GrContext(2, 15), QQ).is_field


def test_is_graded_field_rational_zassenhaus_case():
    """n = 25: pi factors as deg 2 x deg 10 with no rational root."""
    check = is_graded_field(GrContext(2, 25), QQ)
    assert not check.is_field
    pi = closed_form_charpoly(25)
    assert not is_irreducible(QQ, pi)


def test_is_graded_field_n_equals_p():
    check = is_graded_field(GrContext(2, 5), prime_field(5))
    assert not check.is_field
    assert any("n = p" in note for note in check.notes)


def test_is_graded_field_p_divides_composite_n():
    # n = 9, p = 3: charpoly route is skipped, the oracle decides
    check = is_graded_field(GrContext(2, 9), prime_field(3))
    assert not check.is_field
    assert "zero_divisor_search" in check.routes


def test_is_graded_field_extension_field():
    """Gr(2,13) is a graded field over GF(2) but not over GF(4)."""
    assert is_graded_field(GrContext(2, 13), prime_field(2)).is_field
    check4 = is_graded_field(GrContext(2, 13), make_extension(2, 2), brute_limit=10**8)
    assert not check4.is_field
    assert check4.routes["charpoly_irreducible"] is False


def test_is_graded_field_dual_context():
    assert is_graded_field(GrContext(3, 5), prime_field(2)).is_field == is_graded_field(
        GrContext(2, 5), prime_field(2)
    ).is_field


def test_zero_divisor_search_small():
    found, witness = zero_divisor_search(GrContext(2, 5), prime_field(2))
    assert not found and witness is None
    found, witness = zero_divisor_search(GrContext(2, 10), prime_field(7))
    assert found and witness is not None
    with pytest.raises(SearchBudgetError):
        zero_divisor_search(GrContext(2, 13), prime_field(101), limit=10**6)


def test_zero_divisor_witness_is_genuine():
    """The reported witness really multiplies some basis vector to zero."""
    ctx = GrContext(2, 10)
    F = prime_field(7)
    found, witness = zero_divisor_search(ctx, F)
    assert found
    basis = qh0_basis(ctx)
    element = QhElement(ctx, F, dict(zip([(d, m) for d, m in basis], witness)))
    M = mult_matrix(element, 0)
    assert M.is_singular()
    assert element.terms  # nonzero class


def test_classify_examples():
    v = classify(2, 5, 0)
    assert v.is_graded_field and v.diameter.kind == "finite" and v.diameter.bound == 2
    v = classify(2, 7, 0)
    assert v.is_graded_field and v.diameter.bound == (2 * 2 * 5) // 7
    v = classify(2, 10, 7)
    assert not v.is_graded_field
    assert v.diameter.kind == "unknown"
    assert v.orbit_count == 3 and v.field_dims == [1, 2, 2]
    v = classify(4, 8, 0)
    assert not v.is_graded_field and v.diameter.kind == "infinite"
    v = classify(2, 4, 0)
    assert v.diameter.kind == "infinite"
    v = classify(1, 17, 13)
    assert v.is_graded_field and v.diameter.kind == "finite"
    v = classify(3, 7, 5)
    assert not v.is_graded_field
    v = classify(2, 5, 5)
    assert not v.is_graded_field  # n = p excluded
    with pytest.raises(ValueError):
        classify(2, 5, 4)
    with pytest.raises(ValueError):
        classify(0, 5, 2)


def test_classify_duality_normalization():
    v = classify(3, 5, 0)  # Gr(3,5) = Gr(2,5)
    assert v.is_graded_field and v.diameter.bound == 2
    assert any("dual" in r.lower() or "n-k" in r for r in v.reasons)


def test_classify_json_schema():
    payload = classify(2, 10, 7).to_json_dict()
    data = json.loads(json.dumps(payload))
    assert set(data) >= {"k", "n", "char", "isGradedField", "diameter", "reasons"}
    assert data["diameter"]["kind"] in ("finite", "infinite", "unknown")
    assert data["orbitCount"] == 3
    assert data["fieldDims"] == [1, 2, 2]


def test_witness_prime_examples():
    assert witness_prime(3) == 2
    assert witness_prime(13) == 2
    assert witness_prime(7) == 2
    assert witness_prime(5) == 2
    with pytest.raises(ValueError):
        witness_prime(10)


def test_rule_consistency_routes_never_disagree():
    rng = random.Random(0)
    for _ in range(25):
        n = rng.randint(3, 14)
        k = rng.randint(1, n)
        p = rng.choice([2, 3, 5, 7])
        is_graded_field(GrContext(k, n), prime_field(p), brute_limit=4000)
