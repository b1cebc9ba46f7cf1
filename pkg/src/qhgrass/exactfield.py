"""Exact field arithmetic plus polynomial and matrix utilities.

Supported fields: the rationals Q, prime fields GF(p), extension fields
GF(p^m) presented by a monic irreducible modulus, and cyclotomic
extensions Q[x]/(Phi_N). Field elements are plain immutable values
(Fraction, int in [0, p), or tuple of base elements); all arithmetic goes
through the field-context object, so the generic algorithms here
(characteristic polynomials, gcds, irreducibility tests) are written once.

Everything is exact; no floating point appears in this module. Field
contexts and element values are immutable and the operations are pure
functions, so everything is safe to share across threads.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Any, Iterator, Sequence

from .numberth import cyclotomic_polynomial, factorize, is_prime, prime_iter

Element = Any

NEG_INF = float("-inf")


class FieldError(ValueError):
    """Invalid field construction or operation."""


class DegreeLimitError(FieldError):
    """Polynomial degree above the supported bound."""


class UnsupportedCharacteristicError(FieldError):
    """Operation undefined in this characteristic (e.g. p | n roots of unity)."""


class FieldCtx:
    """Abstract exact field; concrete elements are opaque immutable values."""

    label = "?"
    order: int | None = None  # None for infinite fields

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    def zero(self) -> Element:
        raise NotImplementedError

    def one(self) -> Element:
        raise NotImplementedError

    def add(self, a, b) -> Element:
        raise NotImplementedError

    def neg(self, a) -> Element:
        raise NotImplementedError

    def mul(self, a, b) -> Element:
        raise NotImplementedError

    def inv(self, a) -> Element:
        raise NotImplementedError

    def sub(self, a, b) -> Element:
        return self.add(a, self.neg(b))

    def div(self, a, b) -> Element:
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def from_int(self, value: int) -> Element:
        raise NotImplementedError

    def pow(self, a, exponent: int) -> Element:
        if exponent < 0:
            return self.pow(self.inv(a), -exponent)
        result = self.one()
        base = a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    def elements(self) -> Iterator[Element]:
        raise FieldError(f"{self.label} is not finite")

    def random_element(self, rng: random.Random) -> Element:
        raise NotImplementedError

    def element_to_str(self, a) -> str:
        return str(a)

    def __repr__(self):
        return self.label


class RationalField(FieldCtx):
    """The field Q with arbitrary-precision Fraction elements."""

    label = "Q"
    order = None

    @property
    def characteristic(self) -> int:
        return 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by 0")
        return a / b

    def is_zero(self, a):
        return a == 0

    def from_int(self, value):
        return Fraction(value)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


QQ = RationalField()


class PrimeField(FieldCtx):
    """GF(p) with elements the integers 0..p-1."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.label = f"GF({p})"

    @property
    def characteristic(self) -> int:
        return self.p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

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
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, value):
        return value % self.p

    def pow(self, a, exponent):
        if exponent < 0:
            return pow(self.inv(a), -exponent, self.p)
        return pow(a, exponent, self.p)

    def elements(self):
        return iter(range(self.p))

    def random_element(self, rng):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


class ExtensionField(FieldCtx):
    """base[x]/(modulus) for a monic irreducible modulus; elements are tuples."""

    def __init__(self, base: FieldCtx, modulus: Sequence[Element], label: str | None = None):
        modulus = tuple(modulus)
        if len(modulus) < 3 or modulus[-1] != base.one():
            raise FieldError("modulus must be monic of degree >= 2")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self._mod_low = modulus[:-1]
        self.order = None if base.order is None else base.order**self.degree
        self.label = label or f"{base.label}[t]/({_poly_text(base, modulus, 't')})"
        self.cyclotomic_order: int | None = None
        self._generator_cache: Element | None = None

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    def zero(self):
        return (self.base.zero(),) * self.degree

    def one(self):
        return (self.base.one(),) + (self.base.zero(),) * (self.degree - 1)

    def gen(self):
        """The class of t, i.e. a root of the modulus."""
        z = self.base.zero()
        return tuple(self.base.one() if i == 1 else z for i in range(self.degree))

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        base = self.base
        m = self.degree
        prod = [base.zero()] * (2 * m - 1)
        for i, ai in enumerate(a):
            if base.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d]
            if base.is_zero(c):
                continue
            prod[d] = base.zero()
            low = self._mod_low
            for j in range(m):
                prod[d - m + j] = base.sub(prod[d - m + j], base.mul(c, low[j]))
        return tuple(prod[:m])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        f = Poly(self.base, a)
        g = Poly(self.base, self.modulus)
        d, s, _ = poly_ext_gcd(f, g)
        if d.degree != 0:
            raise FieldError("modulus is not irreducible")
        s = s.scale(self.base.inv(d.coeffs[0]))
        coeffs = list(s.coeffs) + [self.base.zero()] * self.degree
        return tuple(coeffs[: self.degree])

    def is_zero(self, a):
        base = self.base
        return all(base.is_zero(x) for x in a)

    def from_int(self, value):
        z = self.base.zero()
        return (self.base.from_int(value),) + (z,) * (self.degree - 1)

    def lift(self, a) -> Element:
        """Embed a base-field element."""
        z = self.base.zero()
        return (a,) + (z,) * (self.degree - 1)

    def elements(self):
        if self.order is None:
            raise FieldError(f"{self.label} is not finite")
        p = self.base.order
        for index in range(self.order):
            digits = []
            c = index
            for _ in range(self.degree):
                c, r = divmod(c, p)
                digits.append(r)
            yield tuple(digits)

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in range(self.degree))

    def element_to_str(self, a):
        return _poly_text(self.base, a, "t")

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtensionField", self.base, self.modulus))


def _poly_text(field: FieldCtx, coeffs: Sequence[Element], var: str) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if field.is_zero(c):
            continue
        cstr = field.element_to_str(c)
        if i == 0:
            parts.append(cstr)
        else:
            xpow = var if i == 1 else f"{var}^{i}"
            parts.append(xpow if cstr == "1" else f"{cstr}*{xpow}")
    return " + ".join(parts) if parts else "0"


class Poly:
    """Dense univariate polynomial over a field, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldCtx, coeffs: Sequence[Element] = ()):
        coeffs = list(coeffs)
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, field: FieldCtx, ints: Sequence[int]) -> "Poly":
        return cls(field, [field.from_int(i) for i in ints])

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one(),))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero(), field.one()))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Element:
        if not self.coeffs:
            raise FieldError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.label, self.coeffs))

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if not self.coeffs or not other.coeffs:
            return Poly.zero(F)
        out = [F.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly(self.field, (self.field.zero(),) * k + self.coeffs)

    def __divmod__(self, other):
        F = self.field
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlen = len(other.coeffs)
        if len(rem) < dlen:
            return Poly.zero(F), Poly(F, rem)
        inv_lc = F.inv(other.lc())
        quot = [F.zero()] * (len(rem) - dlen + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = F.mul(rem[i + dlen - 1], inv_lc)
            if F.is_zero(c):
                continue
            quot[i] = c
            for j, d in enumerate(other.coeffs):
                rem[i + j] = F.sub(rem[i + j], F.mul(c, d))
        return Poly(F, quot), Poly(F, rem[: dlen - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.lc()))

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(
            F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:]
        )

    def evaluate(self, value) -> Element:
        F = self.field
        acc = F.zero()
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, value), c)
        return acc

    def pow_mod(self, exponent: int, modulus: "Poly") -> "Poly":
        if exponent < 0:
            raise FieldError("negative exponent in pow_mod")
        result = Poly.one(self.field) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            exponent >>= 1
        return result

    def to_text(self) -> str:
        return _poly_text(self.field, self.coeffs, "x")

    def __repr__(self):
        return f"Poly({self.field.label}: {self.to_text()})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero(a.field)
    return ((a * b) // poly_gcd(a, b)).monic()


def poly_ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


# ---------------------------------------------------------------------------
# field constructors


@lru_cache(maxsize=None)
def make_extension(p: int, m: int) -> FieldCtx:
    """Deterministic field of order p^m; first irreducible modulus in a fixed scan."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    base = prime_field(p)
    if m == 1:
        return base
    for counter in range(p**m):
        digits = []
        c = counter
        for _ in range(m):
            c, r = divmod(c, p)
            digits.append(r)
        candidate = Poly(base, digits + [1])
        if _finite_irreducible(base, candidate):
            return ExtensionField(base, candidate.coeffs, label=f"GF({p}^{m})")
    raise FieldError("no irreducible modulus found")  # pragma: no cover


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> FieldCtx:
    """Q(zeta_n) as Q[x]/(Phi_n); the generator is a primitive n-th root of unity."""
    if n < 1:
        raise FieldError("n must be positive")
    coeffs = cyclotomic_polynomial(n)
    if len(coeffs) == 2:  # n in {1, 2}: Phi_n linear, the field is Q itself
        return QQ
    modulus = Poly.from_ints(QQ, coeffs)
    if not is_irreducible(QQ, modulus):  # pragma: no cover - cyclotomics are irreducible
        raise FieldError(f"Phi_{n} unexpectedly reducible")
    field = ExtensionField(QQ, modulus.coeffs, label=f"Q(zeta{n})")
    field.cyclotomic_order = n
    return field


def parse_field(text: str) -> FieldCtx:
    """Field spec strings: "Q", "GF(p)", "GF(p^m)"."""
    text = text.strip()
    if text in ("Q", "QQ", "q"):
        return QQ
    if text.startswith("GF(") and text.endswith(")"):
        inner = text[3:-1]
        if "^" in inner:
            p_str, m_str = inner.split("^", 1)
            return make_extension(int(p_str), int(m_str))
        return prime_field(int(inner))
    raise FieldError(f"cannot parse field spec {text!r}")


# ---------------------------------------------------------------------------
# roots of unity


def multiplicative_generator(F: FieldCtx) -> Element:
    """Smallest generator of F^x in the canonical element enumeration."""
    if F.order is None:
        raise FieldError("multiplicative generator needs a finite field")
    cached = getattr(F, "_generator_cache", None)
    if cached is not None:
        return cached
    q1 = F.order - 1
    prime_divs = list(factorize(q1)) if q1 > 1 else []
    one = F.one()
    for g in F.elements():
        if F.is_zero(g):
            continue
        if all(F.pow(g, q1 // r) != one for r in prime_divs):
            try:
                F._generator_cache = g
            except AttributeError:
                pass
            return g
    raise FieldError("no generator found")  # pragma: no cover


def nth_roots_of_unity(F: FieldCtx, n: int) -> tuple[Element, ...]:
    """All n distinct n-th roots of unity, as consecutive powers of a fixed root."""
    if n < 1:
        raise FieldError("n must be positive")
    one = F.one()
    if n == 1:
        return (one,)
    p = F.characteristic
    if p and n % p == 0:
        raise UnsupportedCharacteristicError(
            f"x^{n} - 1 is inseparable in characteristic {p}; use m = n / p^d roots"
        )
    if F.order is not None:
        if (F.order - 1) % n:
            raise FieldError(f"{F.label} has no primitive {n}-th root of unity")
        zeta = F.pow(multiplicative_generator(F), (F.order - 1) // n)
    elif isinstance(F, ExtensionField) and F.cyclotomic_order is not None:
        if F.cyclotomic_order % n:
            raise FieldError(f"{F.label} has no primitive {n}-th root of unity")
        zeta = F.pow(F.gen(), F.cyclotomic_order // n)
    elif isinstance(F, RationalField):
        if n == 2:
            return (one, F.neg(one))
        raise FieldError(f"Q has no primitive {n}-th root; use cyclotomic_field({n})")
    else:
        raise FieldError(f"no roots of unity available in {F.label}")
    roots = [one]
    for _ in range(n - 1):
        roots.append(F.mul(roots[-1], zeta))
    if len(set(roots)) != n:  # pragma: no cover - guarded by the order checks
        raise FieldError("roots of unity are not distinct")
    return tuple(roots)


def splitting_degree(p: int, n: int) -> int:
    """Degree m of the smallest GF(p^m) containing the n-th roots of unity."""
    from .numberth import multiplicative_order

    if n % p == 0:
        raise UnsupportedCharacteristicError(f"gcd({n}, {p}) != 1")
    return multiplicative_order(p, n) if n > 1 else 1


# ---------------------------------------------------------------------------
# matrices


class SquareMatrix:
    """Dense square matrix over a field."""

    __slots__ = ("field", "size", "rows")

    def __init__(self, field: FieldCtx, rows: Sequence[Sequence[Element]]):
        rows = tuple(tuple(r) for r in rows)
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix is not square")
        self.field = field
        self.size = size
        self.rows = rows

    @classmethod
    def identity(cls, field, size):
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(size)] for i in range(size)])

    @classmethod
    def zeros(cls, field, size):
        z = field.zero()
        return cls(field, [[z] * size for _ in range(size)])

    @classmethod
    def from_int_rows(cls, field, rows):
        return cls(field, [[field.from_int(v) for v in row] for row in rows])

    @property
    def entries(self) -> tuple[Element, ...]:
        return tuple(v for row in self.rows for v in row)

    def __eq__(self, other):
        return (
            isinstance(other, SquareMatrix)
            and other.field == self.field
            and other.rows == self.rows
        )

    def __add__(self, other):
        F = self.field
        return SquareMatrix(
            F,
            [
                [F.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        F = self.field
        return SquareMatrix(
            F,
            [
                [F.sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def scale(self, c):
        F = self.field
        return SquareMatrix(F, [[F.mul(c, a) for a in row] for row in self.rows])

    def __matmul__(self, other):
        F = self.field
        n = self.size
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = F.zero()
                for a, b in zip(row, col):
                    if not F.is_zero(a):
                        acc = F.add(acc, F.mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return SquareMatrix(F, out)

    def apply(self, vector: Sequence[Element]) -> list[Element]:
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero()
            for a, b in zip(row, vector):
                if not F.is_zero(a):
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def determinant(self) -> Element:
        F = self.field
        n = self.size
        m = [list(r) for r in self.rows]
        det = F.one()
        for col in range(n):
            pivot = next((r for r in range(col, n) if not F.is_zero(m[r][col])), None)
            if pivot is None:
                return F.zero()
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = F.neg(det)
            det = F.mul(det, m[col][col])
            inv = F.inv(m[col][col])
            for r in range(col + 1, n):
                if F.is_zero(m[r][col]):
                    continue
                t = F.mul(m[r][col], inv)
                m[r] = [F.sub(a, F.mul(t, b)) for a, b in zip(m[r], m[col])]
        return det

    def is_singular(self) -> bool:
        return self.field.is_zero(self.determinant())

    def convert(self, target: FieldCtx, fn) -> "SquareMatrix":
        return SquareMatrix(target, [[fn(v) for v in row] for row in self.rows])

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.element_to_str(v) for v in row) for row in self.rows
        )
        return f"SquareMatrix({self.field.label} {self.size}x{self.size}: {body})"


def char_poly(F: FieldCtx, M: SquareMatrix) -> Poly:
    """det(M - xI), computed by exact Hessenberg reduction over the field.

    Leading coefficient is (-1)^size (the det(M - xI) sign convention).
    """
    n = M.size
    h = [list(row) for row in M.rows]
    for j in range(n - 2):
        pivot = next((r for r in range(j + 1, n) if not F.is_zero(h[r][j])), None)
        if pivot is None:
            continue
        if pivot != j + 1:
            h[j + 1], h[pivot] = h[pivot], h[j + 1]
            for row in h:
                row[j + 1], row[pivot] = row[pivot], row[j + 1]
        inv = F.inv(h[j + 1][j])
        for r in range(j + 2, n):
            if F.is_zero(h[r][j]):
                continue
            t = F.mul(h[r][j], inv)
            h[r] = [F.sub(a, F.mul(t, b)) for a, b in zip(h[r], h[j + 1])]
            for row in h:
                row[j + 1] = F.add(row[j + 1], F.mul(t, row[r]))
    x = Poly.x(F)
    polys = [Poly.one(F)]
    for r in range(1, n + 1):
        p = (x - Poly.constant(F, h[r - 1][r - 1])) * polys[r - 1]
        prod = F.one()
        for i in range(r - 1, 0, -1):
            prod = F.mul(prod, h[i][i - 1])
            p = p - polys[i - 1].scale(F.mul(h[i - 1][r - 1], prod))
        polys.append(p)
    monic = polys[n]  # det(xI - M)
    return monic if n % 2 == 0 else -monic


def matrix_poly_eval(poly: Poly, M: SquareMatrix) -> SquareMatrix:
    """Horner evaluation of a polynomial at a matrix."""
    F = M.field
    acc = SquareMatrix.zeros(F, M.size)
    ident = SquareMatrix.identity(F, M.size)
    for c in reversed(poly.coeffs):
        acc = (acc @ M) + ident.scale(c)
    return acc


def min_poly(F: FieldCtx, M: SquareMatrix) -> Poly:
    """Monic minimal polynomial: lcm of exact per-seed Krylov relations.

    Each seed's chain e, Me, M^2 e, ... is reduced only against its own
    rows, so the first dependence gives the exact local minimal polynomial;
    the global echelon (the union of explored Krylov spaces, M-invariant)
    is used only to skip seeds whose local polynomial already divides f.
    """
    n = M.size
    f = Poly.one(F)
    echelon: list[tuple[int, list[Element]]] = []

    def echelon_residue(vec):
        vec = list(vec)
        for piv, row in echelon:
            c = vec[piv]
            if not F.is_zero(c):
                vec = [F.sub(a, F.mul(c, b)) for a, b in zip(vec, row)]
        return vec

    for seed in range(n):
        start = [F.zero()] * n
        start[seed] = F.one()
        if all(F.is_zero(c) for c in echelon_residue(start)):
            continue
        local: list[tuple[int, list[Element], Poly]] = []
        vec = start
        weight = Poly.one(F)
        while True:
            reduced = list(vec)
            rel = weight
            for piv, row, row_poly in local:
                c = reduced[piv]
                if not F.is_zero(c):
                    reduced = [F.sub(a, F.mul(c, b)) for a, b in zip(reduced, row)]
                    rel = rel - row_poly.scale(c)
            pivot = next((i for i, c in enumerate(reduced) if not F.is_zero(c)), None)
            if pivot is None:
                f = poly_lcm(f, rel.monic())
                break
            inv = F.inv(reduced[pivot])
            reduced = [F.mul(inv, c) for c in reduced]
            rel = rel.scale(inv)
            local.append((pivot, reduced, rel))
            vec = M.apply(reduced)
            weight = Poly.x(F) * rel
        for _piv, row, _poly in local:
            residue = echelon_residue(row)
            pivot = next((i for i, c in enumerate(residue) if not F.is_zero(c)), None)
            if pivot is not None:
                inv = F.inv(residue[pivot])
                echelon.append((pivot, [F.mul(inv, c) for c in residue]))
        if f.degree == n:
            break
    return f


# ---------------------------------------------------------------------------
# irreducibility over finite fields


def _frobenius_power(F: FieldCtx, steps: int, modulus: Poly) -> Poly:
    """x^(q^steps) mod modulus over GF(q)."""
    t = Poly.x(F) % modulus
    for _ in range(steps):
        t = t.pow_mod(F.order, modulus)
    return t


def _finite_irreducible(F: FieldCtx, f: Poly) -> bool:
    n = int(f.degree)
    if n < 1:
        raise FieldError("irreducibility is only defined for nonconstant polynomials")
    if n == 1:
        return True
    f = f.monic()
    x = Poly.x(F)
    for r in factorize(n):
        t = _frobenius_power(F, n // r, f)
        if poly_gcd(f, t - x).degree != 0:
            return False
    t = _frobenius_power(F, n, f)
    return (t - x) % f == Poly.zero(F)


def distinct_degree_profile(F: FieldCtx, f: Poly) -> list[int]:
    """Degrees (with multiplicity) of the irreducible factors of squarefree f."""
    f = f.monic()
    if poly_gcd(f, f.derivative()).degree != 0:
        raise FieldError("distinct-degree profile requires a squarefree polynomial")
    degrees: list[int] = []
    g = f
    w = Poly.x(F) % g
    d = 0
    while g.degree > 0:
        d += 1
        if 2 * d > g.degree:
            degrees.append(int(g.degree))
            break
        w = w.pow_mod(F.order, g)
        h = poly_gcd(g, w - Poly.x(F))
        if h.degree > 0:
            degrees.extend([d] * (int(h.degree) // d))
            g = g // h
            w = w % g
    return sorted(degrees)


def _equal_degree_split(F: FieldCtx, g: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    if g.degree == d:
        return [g.monic()]
    q = F.order
    x = Poly.x(F)
    while True:
        h = Poly(F, [F.from_int(rng.randrange(q)) for _ in range(int(g.degree))])
        if h.degree < 1:
            continue
        if q % 2 == 1:
            t = h.pow_mod((q**d - 1) // 2, g) - Poly.one(F)
        else:
            t = Poly.zero(F)
            w = h % g
            for _ in range(d):
                t = (t + w) % g
                w = w.pow_mod(q, g)
        u = poly_gcd(g, t)
        if 0 < u.degree < g.degree:
            return _equal_degree_split(F, u, d, rng) + _equal_degree_split(
                F, g // u, d, rng
            )


def factor_squarefree_finite(F: FieldCtx, f: Poly) -> list[Poly]:
    """Monic irreducible factors of a squarefree polynomial over a finite field."""
    rng = random.Random(0x5EED)
    f = f.monic()
    factors: list[Poly] = []
    g = f
    w = Poly.x(F) % g
    d = 0
    while g.degree > 0:
        d += 1
        if 2 * d > g.degree:
            factors.append(g)
            break
        w = w.pow_mod(F.order, g)
        h = poly_gcd(g, w - Poly.x(F))
        if h.degree > 0:
            factors.extend(_equal_degree_split(F, h, d, rng))
            g = g // h
            w = w % g
    return sorted(factors, key=lambda p: (p.degree, p.coeffs))


# ---------------------------------------------------------------------------
# irreducibility over Q (rational-root screen, modular degree patterns,
# then Hensel lifting with factor recombination)

RATIONAL_DEGREE_LIMIT = 64


def _int_content_primitive(coeffs: list[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g == 0:
        return coeffs
    out = [c // g for c in coeffs]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _int_poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_poly_divmod_monic(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den monic
    num = list(num)
    if len(num) < len(den):
        return [], num
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return q, num


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            large.append(n // d)
    return small + large[::-1]


def _rational_root_exists(coeffs: list[int]) -> bool:
    # candidates +-p/q with p | constant term, q | leading coefficient
    if coeffs[0] == 0:
        return True
    for p in _divisors(coeffs[0]):
        for q in _divisors(coeffs[-1]):
            if gcd(p, q) != 1:
                continue
            for num in (p, -p):
                # f(num/q) * q^deg, evaluated exactly by Horner
                acc = 0
                qi = 1
                for c in coeffs[::-1]:
                    acc = acc * num + c * qi
                    qi *= q
                if acc == 0:
                    return True
    return False


def _subset_sum_mask(degrees: list[int]) -> int:
    mask = 1
    for d in degrees:
        mask |= mask << d
    return mask


def _balanced(c: int, modulus: int) -> int:
    c %= modulus
    return c - modulus if c > modulus // 2 else c


def _hensel_pair(
    F_int: list[int], u: Poly, v: Poly, p: int, target: int
) -> tuple[list[int], list[int]]:
    """Lift F = u*v mod p (u, v monic coprime) to mod p^e >= target."""
    Fp = u.field
    g, s, t = poly_ext_gcd(u, v)
    inv = Fp.inv(g.coeffs[0])
    s, t = s.scale(inv), t.scale(inv)  # s*u + t*v = 1 mod p
    U = [c % p for c in u.coeffs]
    V = [c % p for c in v.coeffs]
    m = p
    while m < target:
        prod = _int_poly_mul(U, V)
        diff = [a - b for a, b in zip(F_int + [0] * len(prod), prod + [0] * len(F_int))]
        diff = diff[: max(len(F_int), len(prod))]
        assert all(c % m == 0 for c in diff), "Hensel invariant broken"
        dbar = Poly.from_ints(Fp, [(c // m) % p for c in diff])
        if dbar.is_zero:
            m *= p
            continue
        a = (t * dbar) % u
        b, rem = divmod(dbar - a * v, u)
        assert rem.is_zero
        acoef = [c % p for c in a.coeffs]
        bcoef = [c % p for c in b.coeffs]
        for i, c in enumerate(acoef):
            U[i] = (U[i] + m * c) % (m * p)
        for i, c in enumerate(bcoef):
            V[i] = (V[i] + m * c) % (m * p)
        U = [c % (m * p) for c in U]
        V = [c % (m * p) for c in V]
        m *= p
    return U, V


def _hensel_chain(F_int: list[int], factors: list[Poly], p: int, target: int) -> list[list[int]]:
    if len(factors) == 1:
        return [[c % target for c in F_int]]
    Fp = factors[0].field
    rest = Poly.one(Fp)
    for g in factors[1:]:
        rest = rest * g
    U, V = _hensel_pair(F_int, factors[0], rest, p, target)
    return [U] + _hensel_chain(V, factors[1:], p, target)


def _zassenhaus_reducible(F_int: list[int], p: int, factors: list[Poly]) -> bool:
    """True iff monic integer polynomial F_int factors over Z (Zassenhaus search)."""
    n = len(F_int) - 1
    norm2 = isqrt(sum(c * c for c in F_int)) + 1
    bound = 2 * (norm2 << n) + 1
    modulus = p
    while modulus < bound:
        modulus *= p
    lifted = _hensel_chain(F_int, factors, p, modulus)
    r = len(lifted)
    from math import comb

    if sum(comb(r, size) for size in range(1, r // 2 + 1)) > 200_000:
        raise DegreeLimitError("factor recombination search too large")
    degs = [len(f) - 1 for f in lifted]
    for size in range(1, r // 2 + 1):
        for subset in itertools.combinations(range(r), size):
            cand = [1]
            for i in subset:
                cand = [c % modulus for c in _int_poly_mul(cand, lifted[i])]
            cand = [_balanced(c, modulus) for c in cand]
            if len(cand) - 1 != sum(degs[i] for i in subset):
                continue
            _, rem = _int_poly_divmod_monic(F_int, cand)
            if not rem:
                return True
    return False


def _rational_irreducible(coeffs: list[Fraction]) -> bool:
    denom = 1
    for c in coeffs:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    ints = _int_content_primitive(ints)
    n = len(ints) - 1
    if n == 1:
        return True
    if ints[0] == 0:
        return False  # divisible by x
    fq = Poly(QQ, [Fraction(c) for c in ints])
    if poly_gcd(fq, fq.derivative()).degree != 0:
        return False  # repeated factor
    if _rational_root_exists(ints):
        return False
    # monicize: F(y) = lc^(n-1) * f(y / lc), which is monic with integer coefficients
    lc = ints[-1]
    F_int = [c * lc ** (n - 1 - i) for i, c in enumerate(ints[:-1])] + [1]
    allowed = (1 << (n + 1)) - 1
    screening: list[tuple[int, list[Poly]]] = []
    usable = 0
    for p in prime_iter():
        if p > 1000:  # pragma: no cover - plenty of usable primes exist
            break
        Fp = prime_field(p)
        fp = Poly.from_ints(Fp, F_int).monic()
        if poly_gcd(fp, fp.derivative()).degree != 0:
            continue
        profile = distinct_degree_profile(Fp, fp)
        if len(profile) == 1:
            return True
        allowed &= _subset_sum_mask(profile)
        if not any((allowed >> d) & 1 for d in range(1, n)):
            return True
        screening.append((p, [fp]))
        usable += 1
        if usable >= 10:
            break
    # recombination at the prime with the fewest modular factors
    best_p = None
    best_factors: list[Poly] | None = None
    for p, _ in screening:
        Fp = prime_field(p)
        fp = Poly.from_ints(Fp, F_int).monic()
        factors = factor_squarefree_finite(Fp, fp)
        if best_factors is None or len(factors) < len(best_factors):
            best_p, best_factors = p, factors
    if best_factors is None:  # pragma: no cover
        raise FieldError("no usable screening prime found")
    return not _zassenhaus_reducible(F_int, best_p, best_factors)


def is_irreducible(F: FieldCtx, f: Poly) -> bool:
    """Exact irreducibility over a finite field or over Q (degree <= 64)."""
    if f.degree < 1:
        raise FieldError("irreducibility is only defined for nonconstant polynomials")
    if F.characteristic == 0:
        if not isinstance(F, RationalField):
            raise FieldError("characteristic-0 irreducibility is supported over Q only")
        if f.degree > RATIONAL_DEGREE_LIMIT:
            raise DegreeLimitError(
                f"degree {int(f.degree)} above the supported bound {RATIONAL_DEGREE_LIMIT}"
            )
        return _rational_irreducible([Fraction(c) for c in f.coeffs])
    if F.order is None:  # pragma: no cover
        raise FieldError("infinite fields of positive characteristic unsupported")
    return _finite_irreducible(F, f)


def rational_poly_mod_p(poly: Poly, Fp: FieldCtx) -> Poly:
    """Reduce a rational polynomial mod p (denominators must be coprime to p)."""
    p = Fp.characteristic
    out = []
    for c in poly.coeffs:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise FieldError(f"denominator of {c} not invertible mod {p}")
        out.append(Fp.mul(Fp.from_int(c.numerator), Fp.inv(Fp.from_int(c.denominator))))
    return Poly(Fp, out)
