"""Degree-zero ring analysis and the spectral-diameter classifier.

The degree-zero subring QH^0 of the quantum cohomology of Gr(k, n) decides
everything: the full ring is a graded field (every nonzero homogeneous
element invertible) exactly when QH^0 is a field. For k = 2 and odd n this
reduces to irreducibility of the characteristic polynomial of an explicit
tridiagonal matrix, which in turn is equivalent to a unit-group condition
in (Z/nZ)^x; for even n the ring splits into one field summand per orbit
of x -> p*x on the inverse pairs of n-th roots of unity. The classifier
combines these routes with an exhaustive zero-divisor search on small
examples and reports a finite bound, infiniteness, or "unknown" for the
spectral diameter.

All operations are pure; classifying a grid of (k, n, char) tuples
parallelizes with one task per tuple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import gcd

from .diagram import GradedBasisElement, GrContext, YoungDiagram, graded_basis
from .exactfield import (
    QQ,
    FieldCtx,
    FieldError,
    Poly,
    PrimeField,
    RationalField,
    SquareMatrix,
    char_poly,
    is_irreducible,
    prime_field,
    rational_poly_mod_p,
)
from .numberth import is_prime, primes_up_to
from .qh_core import QhElement, pieri_multiply, q_shift, quantum_product


class SearchBudgetError(RuntimeError):
    """Exhaustive search would exceed the configured budget."""


# ---------------------------------------------------------------------------
# degree-zero basis and multiplication operators


def qh0_basis(ctx: GrContext) -> tuple[GradedBasisElement, ...]:
    """Basis of QH^0: pairs (D, -|D|/n) over diagrams of size divisible by n."""
    return graded_basis(ctx, 0)


def standard_degree_zero_element(
    ctx: GrContext, field: FieldCtx, include_unit: bool = True
) -> QhElement:
    """The degree-zero element sigma_empty - q^(-1) x_2 * sigma_(n-3,1) (k = 2).

    With include_unit=False returns the bare q^(-1) x_2 * sigma_(n-3,1)
    variant, whose spectrum is the affine image of the primary one.
    """
    if ctx.k != 2 or ctx.n < 4:
        raise ValueError("the distinguished element lives in Gr(2, n), n >= 4")
    v1 = QhElement.schubert(ctx, field, YoungDiagram((ctx.n - 3, 1)))
    core = q_shift(pieri_multiply(v1, 2), -1)
    if not include_unit:
        return core
    return QhElement.unit(ctx, field) - core


def mult_matrix(element: QhElement, degree: int) -> SquareMatrix:
    """Matrix of b -> element * b on the canonical basis of the degree-d piece."""
    if element.homogeneous_degree() != 0:
        raise ValueError("multiplication operator requires a homogeneous degree-0 class")
    ctx, F = element.ctx, element.field
    basis = graded_basis(ctx, degree)
    index = {tuple(entry): i for i, entry in enumerate(basis)}
    size = len(basis)
    columns = []
    for diagram, m in basis:
        image = quantum_product(element, QhElement.schubert(ctx, F, diagram, m))
        col = [F.zero()] * size
        for key, coeff in image.terms.items():
            col[index[key]] = coeff
        columns.append(col)
    return SquareMatrix(F, [[columns[j][i] for j in range(size)] for i in range(size)])


def closed_form_matrix(n: int, field: FieldCtx) -> SquareMatrix:
    """Tridiagonal matrix of the distinguished element on the degree n-2 piece.

    Size floor((n-1)/2); +1 in the top-left corner, -1 on the off-diagonals,
    and (for even n) +1 in the bottom-right corner as well.
    """
    if n < 3:
        raise ValueError("n >= 3 required")
    size = (n - 1) // 2 if n % 2 == 1 else n // 2
    rows = [[0] * size for _ in range(size)]
    rows[0][0] = 1
    for i in range(size - 1):
        rows[i][i + 1] = -1
        rows[i + 1][i] = -1
    if n % 2 == 0:
        rows[size - 1][size - 1] = 1
    return SquareMatrix.from_int_rows(field, rows)


def closed_form_charpoly(n: int) -> Poly:
    """det(M - xI) over Q for the closed-form degree-(n-2) multiplication matrix."""
    return char_poly(QQ, closed_form_matrix(n, QQ))


def charpoly_mod_p(n: int, p: int) -> Poly:
    return rational_poly_mod_p(closed_form_charpoly(n), prime_field(p))


def charpoly_identity_holds(n: int) -> bool:
    """Exact Laurent check: x^ell pi(-x - 1/x) equals x^(n-1) + ... + x + 1
    for odd n = 2 ell + 1, and (x + 1)(x^(n-1) + ... + 1) for even n = 2 ell + 2."""
    from fractions import Fraction

    pi = closed_form_charpoly(n)
    shift = (n - 1) // 2 if n % 2 == 1 else n // 2
    expansion: dict[int, Fraction] = {}
    for c in reversed(pi.coeffs):
        new: dict[int, Fraction] = {}
        for e, v in expansion.items():  # multiply by (-x - 1/x)
            new[e + 1] = new.get(e + 1, Fraction(0)) - v
            new[e - 1] = new.get(e - 1, Fraction(0)) - v
        new[0] = new.get(0, Fraction(0)) + c
        expansion = {e: v for e, v in new.items() if v}
    shifted = {e + shift: v for e, v in expansion.items()}
    want = {i: Fraction(1) for i in range(n)}
    if n % 2 == 0:
        for i in range(n):
            want[i + 1] = want.get(i + 1, Fraction(0)) + 1
        want = {e: v for e, v in want.items() if v}
    return shifted == want


def recursion_polynomial(ell: int) -> Poly:
    """R_ell over Q from R_ell = (x^2 + 1) R_(ell-1) - x^2 R_(ell-2),
    R_0 = 1, R_1 = 1 + x + x^2."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    r_prev = Poly.from_ints(QQ, [1])
    if ell == 0:
        return r_prev
    r_cur = Poly.from_ints(QQ, [1, 1, 1])
    x2 = Poly.from_ints(QQ, [0, 0, 1])
    x2p1 = Poly.from_ints(QQ, [1, 0, 1])
    for _ in range(ell - 1):
        r_prev, r_cur = r_cur, x2p1 * r_cur - x2 * r_prev
    return r_cur


# ---------------------------------------------------------------------------
# unit-group number theory and Frobenius orbits


def _units_closure(generators: list[int], n: int) -> set[int]:
    closure = {1 % n}
    frontier = [1 % n]
    gens = [g % n for g in generators]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = a * g % n
            if b not in closure:
                closure.add(b)
                frontier.append(b)
    return closure


def generates_units(p: int, n: int) -> bool:
    """Whether {p, -1} generates (Z/nZ)^x, by explicit closure."""
    if n < 1 or gcd(p, n) != 1:
        raise ValueError(f"gcd({p}, {n}) must be 1")
    if n <= 2:
        return True
    closure = _units_closure([p, n - 1], n)
    units = {a for a in range(1, n) if gcd(a, n) == 1}
    return closure == units


@dataclass(frozen=True)
class OrbitDecomposition:
    """Orbits of {a, -a} -> {pa, -pa} on nonzero inverse pairs mod n."""

    n: int
    p: int
    orbits: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def count(self) -> int:
        return len(self.orbits)

    def sizes(self) -> list[int]:
        """Orbit sizes sorted by (size, smallest representative)."""
        keyed = sorted((len(o), min(a for a, _ in o)) for o in self.orbits)
        return [size for size, _ in keyed]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "orbitCount": self.count,
            "orbits": [[list(pair) for pair in orbit] for orbit in self.orbits],
            "sizes": self.sizes(),
        }


def orbit_decomposition(n: int, p: int) -> OrbitDecomposition:
    """Partition of the pairs {a, -a}, a != 0, under multiplication by p."""
    if gcd(n, p) != 1:
        raise ValueError(f"gcd({n}, {p}) must be 1")
    reps = list(range(1, n // 2 + 1))  # pair {a, n-a} keyed by min
    seen: set[int] = set()
    orbits = []
    for start in reps:
        if start in seen:
            continue
        orbit = []
        a = start
        while a not in seen:
            seen.add(a)
            orbit.append((a, n - a))
            a = min(p * a % n, (n - p * a) % n)
        orbits.append(tuple(sorted(orbit)))
    orbits.sort(key=lambda o: (len(o), o[0][0]))
    return OrbitDecomposition(n, p, tuple(orbits))


def witness_prime(n: int, bound: int = 10_000) -> int:
    """Smallest prime p coprime to n with {p, -1} generating (Z/nZ)^x."""
    if not is_prime(n):
        raise ValueError(f"{n} is not prime")
    for p in primes_up_to(bound):
        if p % n and generates_units(p, n):
            return p
    raise SearchBudgetError(f"no witness prime below {bound} for n={n}")


# ---------------------------------------------------------------------------
# exhaustive zero-divisor oracle


def _qh0_mult_tables(ctx: GrContext, F: FieldCtx) -> list[list[list]]:
    """mats[t][i][j] = coefficient of basis_i in basis_t * basis_j."""
    basis = qh0_basis(ctx)
    index = {tuple(entry): i for i, entry in enumerate(basis)}
    dim = len(basis)
    mats = [[[F.zero()] * dim for _ in range(dim)] for _ in range(dim)]
    for t, (dt, mt) in enumerate(basis):
        et = QhElement.schubert(ctx, F, dt, mt)
        for j, (dj, mj) in enumerate(basis):
            product = quantum_product(et, QhElement.schubert(ctx, F, dj, mj))
            for key, coeff in product.terms.items():
                mats[t][index[key]][j] = coeff
    return mats


def _det_mod_p(rows: list[list[int]], p: int) -> int:
    n = len(rows)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col] % p
        inv = pow(rows[col][col], -1, p)
        for r in range(col + 1, n):
            if rows[r][col] % p:
                t = rows[r][col] * inv % p
                rows[r] = [(a - t * b) % p for a, b in zip(rows[r], rows[col])]
    return det % p


def zero_divisor_search(ctx: GrContext, F: FieldCtx, limit: int = 10**6):
    """Exhaustively test every nonzero degree-0 class for zero divisors.

    Returns (found, witness_coefficients). Scaling a class does not change
    whether it is a zero divisor, so only vectors with first nonzero
    coordinate 1 are enumerated.
    """
    if F.order is None:
        raise FieldError("exhaustive zero-divisor search needs a finite field")
    dim = len(qh0_basis(ctx))
    if F.order**dim > limit:
        raise SearchBudgetError(
            f"|F|^dim = {F.order}^{dim} exceeds the search limit {limit}"
        )
    mats = _qh0_mult_tables(ctx, F)
    scalars = list(F.elements())
    prime_fast = isinstance(F, PrimeField)
    for lead in range(dim):
        tail = dim - lead - 1
        for rest in itertools.product(scalars, repeat=tail):
            coeffs = [F.zero()] * lead + [F.one()] + list(rest)
            if prime_fast:
                p = F.order
                acc = [[0] * dim for _ in range(dim)]
                for t, c in enumerate(coeffs):
                    if c:
                        mt = mats[t]
                        for i in range(dim):
                            row = acc[i]
                            mrow = mt[i]
                            for j in range(dim):
                                row[j] = (row[j] + c * mrow[j]) % p
                singular = _det_mod_p(acc, p) == 0
            else:
                acc = [[F.zero()] * dim for _ in range(dim)]
                for t, c in enumerate(coeffs):
                    if not F.is_zero(c):
                        for i in range(dim):
                            for j in range(dim):
                                acc[i][j] = F.add(acc[i][j], F.mul(c, mats[t][i][j]))
                singular = SquareMatrix(F, acc).is_singular()
            if singular:
                return True, coeffs
    return False, None


# ---------------------------------------------------------------------------
# graded-field decision


@dataclass
class GradedFieldCheck:
    """Verdict plus the evidence trail (each route that actually ran)."""

    is_field: bool
    routes: dict[str, bool] = dc_field(default_factory=dict)
    notes: list[str] = dc_field(default_factory=list)

    def __bool__(self):
        return self.is_field


def _rule_verdict(k: int, n: int, char: int) -> bool:
    """Graded-field criterion: k = 1, or k = 2 with n prime, char != n, and
    (char = 0 or {char, -1} generating the units mod n)."""
    kk = min(k, n - k)
    if kk <= 1:
        return True
    if kk == 2:
        return (
            is_prime(n)
            and char != n
            and (char == 0 or generates_units(char, n))
        )
    return False


def is_graded_field(
    ctx: GrContext,
    F: FieldCtx,
    brute_limit: int = 10**6,
    run_brute_force: bool | None = None,
) -> GradedFieldCheck:
    """Decide whether QH^*(Gr(k,n); F) is a graded field, with evidence.

    For k = 2 and odd n the decision is irreducibility of the closed-form
    characteristic polynomial over F, cross-checked against the unit-group
    criterion; small cases additionally run the exhaustive zero-divisor
    oracle. Outside those regimes the rule verdict is reported (evidence
    "rule-only") unless the exhaustive search is feasible.
    """
    k, n = ctx.k, ctx.n
    kk = min(k, n - k)
    p = F.characteristic
    check = GradedFieldCheck(is_field=False)

    if kk <= 1:
        check.is_field = True
        check.routes["rule"] = True
        check.notes.append("rank-one degree pieces: k = 1 (or its dual)")
        return check

    if isinstance(F, (PrimeField, RationalField)):
        check.routes["rule"] = _rule_verdict(k, n, p)

    charpoly_route = None
    if kk == 2 and n % 2 == 1:
        if p and n % p == 0:
            if n == p:
                check.notes.append("n = p excluded: x^n - 1 = (x-1)^n collapses the roots")
                check.routes["rule"] = False
            else:
                check.notes.append("p | n composite: charpoly route skipped, oracle only")
        else:
            pi = closed_form_charpoly(n)
            if p:
                pi = rational_poly_mod_p(pi, prime_field(p))
                if F.order != p:
                    pi = Poly(F, [F.from_int(c) for c in pi.coeffs])
            charpoly_route = is_irreducible(F, pi)
            check.routes["charpoly_irreducible"] = charpoly_route
            if F.order is not None and F.order != p:
                # extension field: the Frobenius is x -> x^|F|, so the unit-group
                # cross-check uses |F| mod n instead of p
                if gcd(F.order, n) == 1:
                    check.routes["units_closure"] = is_prime(n) and generates_units(
                        F.order % n, n
                    )

    brute_route = None
    want_brute = run_brute_force if run_brute_force is not None else True
    if want_brute and F.order is not None and F.order ** len(qh0_basis(ctx)) <= brute_limit:
        found, _ = zero_divisor_search(ctx, F, limit=brute_limit)
        brute_route = not found
        check.routes["zero_divisor_search"] = brute_route

    votes = [v for v in check.routes.values()]
    if charpoly_route is not None:
        check.is_field = charpoly_route
    elif brute_route is not None:
        check.is_field = brute_route
    elif "rule" in check.routes:
        check.is_field = check.routes["rule"]
        check.notes.append("rule-only")
    else:
        check.is_field = _rule_verdict(k, n, p)
        check.notes.append("rule-only")
    if votes and any(v != votes[0] for v in votes):
        raise RuntimeError(f"graded-field routes disagree for Gr({k},{n})/{F.label}: {check.routes}")
    return check


# ---------------------------------------------------------------------------
# classifier


@dataclass(frozen=True)
class Diameter:
    kind: str  # "finite" | "infinite" | "unknown"
    bound: int | None = None

    @classmethod
    def finite(cls, bound: int) -> "Diameter":
        return cls("finite", bound)

    @classmethod
    def infinite(cls) -> "Diameter":
        return cls("infinite")

    @classmethod
    def unknown(cls) -> "Diameter":
        return cls("unknown")

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.bound is not None:
            out["bound"] = self.bound
        return out


@dataclass
class ClassifierVerdict:
    k: int
    n: int
    char: int
    is_graded_field: bool
    diameter: Diameter
    reasons: list[str]
    orbit_count: int | None = None
    field_dims: list[int] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "k": self.k,
            "n": self.n,
            "char": self.char,
            "isGradedField": self.is_graded_field,
            "diameter": self.diameter.to_json_dict(),
            "reasons": self.reasons,
        }
        if self.orbit_count is not None:
            out["orbitCount"] = self.orbit_count
        if self.field_dims is not None:
            out["fieldDims"] = self.field_dims
        return out


def classify(k: int, n: int, char_spec: int) -> ClassifierVerdict:
    """Graded-field / spectral-diameter verdict for (Gr(k, n), characteristic)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if char_spec != 0 and not is_prime(char_spec):
        raise ValueError("characteristic must be 0 or a prime")
    reasons: list[str] = []
    kk = min(k, n - k)
    if kk != k:
        reasons.append(f"replaced k={k} by n-k={kk} via the duality Gr(k,n) = Gr(n-k,n)")

    is_field = _rule_verdict(k, n, char_spec)
    if kk <= 1:
        reasons.append("k = 1: every graded piece has rank one, so QH^0 = F")
    elif kk == 2:
        if is_field:
            if char_spec == 0:
                reasons.append(f"k = 2 with n = {n} prime over characteristic 0")
            else:
                reasons.append(
                    f"k = 2, n = {n} prime, and {{{char_spec}, -1}} generates (Z/{n}Z)^x"
                )
        elif not is_prime(n):
            reasons.append(f"k = 2 but n = {n} is not prime")
        elif char_spec == n:
            reasons.append("n = p excluded: the characteristic divides n")
        else:
            reasons.append(
                f"{{{char_spec}, -1}} does not generate (Z/{n}Z)^x"
            )
    else:
        reasons.append(
            f"k = {kk} >= 3: the degree-zero dimension count rules out a field"
        )

    if is_field:
        diameter = Diameter.finite((2 * kk * (n - kk)) // n)
        reasons.append("graded field: spectral diameter bounded by 2k(n-k)/n rounded down")
    elif char_spec == 0 and n % 2 == 0 and kk % 2 == 0 and kk >= 2:
        diameter = Diameter.infinite()
        reasons.append(
            f"Gr({kk},{n}) = Gr(2*{kk // 2}, 2*{n // 2}) with {kk // 2} < {n // 2}: "
            "disjoint quaternionic and Gelfand-Cetlin Lagrangians force infinite diameter"
        )
    else:
        diameter = Diameter.unknown()
        reasons.append("no finiteness rule applies and no infiniteness theorem covers this case")

    verdict = ClassifierVerdict(
        k=k, n=n, char=char_spec, is_graded_field=is_field, diameter=diameter, reasons=reasons
    )
    if kk == 2 and char_spec and gcd(n, char_spec) == 1:
        orbits = orbit_decomposition(n, char_spec)
        verdict.orbit_count = orbits.count
        verdict.field_dims = orbits.sizes()
    elif kk == 2 and char_spec and n % char_spec == 0:
        reasons.append("p | n: the orbit method does not apply (no field-summand count)")
    return verdict
