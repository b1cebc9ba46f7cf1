"""The small quantum cohomology ring of Gr(k, n).

Elements are finite sums of monomials q^m * sigma_D with coefficients in a
working exact field. Multiplication by the special classes x_j follows the
quantum Pieri rule; products of general classes go through the Giambelli
determinant in the x_j followed by iterated Pieri steps. Structure
constants are integers independent of the coefficient field and are cached
per context, so repeated products are cheap.

All values are immutable after construction; the structure-constant cache
only ever inserts (single-writer semantics), so concurrent readers are safe.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Mapping

from . import _xpoly
from .diagram import EMPTY, GrContext, YoungDiagram, column_diagram
from .exactfield import FieldCtx

TermKey = tuple[YoungDiagram, int]


class QhElement:
    """A quantum cohomology class: mapping (diagram, q-power) -> coefficient."""

    __slots__ = ("ctx", "field", "terms")

    def __init__(self, ctx: GrContext, field: FieldCtx, terms: Mapping[TermKey, object] | None = None):
        clean: dict[TermKey, object] = {}
        for (diagram, m), coeff in (terms or {}).items():
            if field.is_zero(coeff):
                continue
            if not diagram.fits(ctx.k, ctx.cols):
                raise ValueError(f"{diagram!r} does not fit in {ctx}")
            clean[(diagram, m)] = coeff
        self.ctx = ctx
        self.field = field
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx, field):
        return cls(ctx, field)

    @classmethod
    def unit(cls, ctx, field):
        return cls(ctx, field, {(EMPTY, 0): field.one()})

    @classmethod
    def schubert(cls, ctx, field, diagram: YoungDiagram, q_power: int = 0, coeff=None):
        coeff = field.one() if coeff is None else coeff
        return cls(ctx, field, {(YoungDiagram(diagram), q_power): coeff})

    # -- linear structure --------------------------------------------------

    def _check_compatible(self, other: "QhElement"):
        if other.ctx != self.ctx or other.field != self.field:
            raise ValueError("context or field mismatch")

    def __add__(self, other):
        self._check_compatible(other)
        F = self.field
        acc = dict(self.terms)
        for key, c in other.terms.items():
            _bump(acc, key, c, F)
        return QhElement(self.ctx, F, acc)

    def __neg__(self):
        F = self.field
        return QhElement(self.ctx, F, {k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff) -> "QhElement":
        F = self.field
        return QhElement(self.ctx, F, {k: F.mul(coeff, c) for k, c in self.terms.items()})

    def __mul__(self, other):
        return quantum_product(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, QhElement)
            and other.ctx == self.ctx
            and other.field == self.field
            and other.terms == self.terms
        )

    def __bool__(self):
        return bool(self.terms)

    # -- inspection --------------------------------------------------------

    def coeff(self, diagram: YoungDiagram, q_power: int = 0):
        return self.terms.get((YoungDiagram(diagram), q_power), self.field.zero())

    def term_degree(self, key: TermKey) -> int:
        diagram, m = key
        return diagram.size + self.ctx.n * m

    def homogeneous_degree(self) -> int | None:
        """Complex degree if homogeneous (zero element counts as any degree)."""
        degrees = {self.term_degree(key) for key in self.terms}
        if len(degrees) > 1:
            return None
        return degrees.pop() if degrees else 0

    def __repr__(self):
        return f"QhElement(Gr({self.ctx.k},{self.ctx.n}) over {self.field.label}: {format_element(self)})"


def _bump(acc: dict, key, c, field: FieldCtx):
    if key in acc:
        new = field.add(acc[key], c)
        if field.is_zero(new):
            del acc[key]
        else:
            acc[key] = new
    elif not field.is_zero(c):
        acc[key] = c


def special_class(ctx: GrContext, field: FieldCtx, j: int) -> QhElement:
    """The Chern class x_j (column of j boxes)."""
    if not 1 <= j <= ctx.k:
        raise ValueError(f"x_{j} undefined for k={ctx.k}")
    return QhElement.schubert(ctx, field, column_diagram(j))


def point_class(ctx: GrContext, field: FieldCtx) -> QhElement:
    """PD(pt): the full k x (n-k) rectangle."""
    return QhElement.schubert(ctx, field, YoungDiagram((ctx.cols,) * ctx.k))


# ---------------------------------------------------------------------------
# quantum Pieri rule


@lru_cache(maxsize=None)
def _pieri_additions(k: int, cols: int, rows: YoungDiagram, j: int) -> tuple[YoungDiagram, ...]:
    padded = tuple(rows) + (0,) * (k - len(rows))
    out = []
    for subset in itertools.combinations(range(k), j):
        new = list(padded)
        for i in subset:
            new[i] += 1
        if new[0] <= cols and all(new[i] >= new[i + 1] for i in range(k - 1)):
            out.append(YoungDiagram(new))
    return tuple(out)


@lru_cache(maxsize=None)
def _pieri_removals(k: int, cols: int, rows: YoungDiagram, j: int) -> tuple[YoungDiagram, ...]:
    # quantum part: needs a full top row; remove it plus k-j boxes, at most one
    # per lower row (each the last box of its row), then shift rows up; only
    # removals whose shifted complement is a valid diagram count.
    if not rows or rows[0] != cols:
        return ()
    rest = tuple(rows[1:]) + (0,) * (k - len(rows))
    candidates = [i for i in range(k - 1) if rest[i] >= 1]
    out = []
    for subset in itertools.combinations(candidates, k - j):
        new = [rest[i] - (1 if i in subset else 0) for i in range(k - 1)]
        if all(new[i] >= new[i + 1] for i in range(k - 2)):
            out.append(YoungDiagram(new))
    return tuple(out)


def pieri_multiply(element: QhElement, j: int) -> QhElement:
    """x_j * element by the quantum Pieri rule."""
    ctx, F = element.ctx, element.field
    if not 1 <= j <= ctx.k:
        raise ValueError(f"Pieri index {j} out of range 1..{ctx.k}")
    acc: dict[TermKey, object] = {}
    for (diagram, m), c in element.terms.items():
        for added in _pieri_additions(ctx.k, ctx.cols, diagram, j):
            _bump(acc, (added, m), c, F)
        for removed in _pieri_removals(ctx.k, ctx.cols, diagram, j):
            _bump(acc, (removed, m + 1), c, F)
    return QhElement(ctx, F, acc)


def transposed_pieri_multiply(element: QhElement, j: int) -> QhElement:
    """V_{j,0} * element (single row of j boxes), via the transposition isomorphism."""
    ctx = element.ctx
    if not 1 <= j <= ctx.cols:
        raise ValueError(f"transposed Pieri index {j} out of range 1..{ctx.cols}")
    dual = ctx.dual()
    flipped = QhElement(
        dual,
        element.field,
        {(diagram.conjugate(), m): c for (diagram, m), c in element.terms.items()},
    )
    product = pieri_multiply(flipped, j)
    return QhElement(
        ctx,
        element.field,
        {(diagram.conjugate(), m): c for (diagram, m), c in product.terms.items()},
    )


def q_shift(element: QhElement, m: int) -> QhElement:
    """Multiply by q^m."""
    return QhElement(
        element.ctx,
        element.field,
        {(diagram, power + m): c for (diagram, power), c in element.terms.items()},
    )


# ---------------------------------------------------------------------------
# Giambelli expansion and general products


@lru_cache(maxsize=None)
def _giambelli_cached(k: int, diagram: YoungDiagram) -> tuple[tuple[tuple[int, ...], int], ...]:
    conj = diagram.conjugate()
    m = diagram.width
    if m == 0:
        return ((tuple([0] * k), 1),)
    full_mask = (1 << m) - 1

    @lru_cache(maxsize=None)
    def minor(i: int, mask: int):
        if i == m:
            return _xpoly.one(k)
        acc: dict = {}
        sign = 1
        for j in range(m):
            if not mask & (1 << j):
                continue
            v = conj[i] - i + j
            if 0 <= v <= k:
                sub = minor(i + 1, mask & ~(1 << j))
                term = _xpoly.mul_variable(sub, v)
                _xpoly.add_into(acc, term, sign)
            sign = -sign
        return acc

    result = minor(0, full_mask)
    minor.cache_clear()
    return tuple(sorted(result.items()))


def giambelli_expand(ctx: GrContext, diagram: YoungDiagram) -> dict[tuple[int, ...], int]:
    """sigma_D as an integer polynomial in x_1..x_k (dual Jacobi-Trudi determinant).

    Keys are exponent tuples (a_1..a_k) meaning x_1^a_1 * ... * x_k^a_k.
    """
    if not diagram.fits(ctx.k, ctx.cols):
        raise ValueError(f"{diagram!r} does not fit in {ctx}")
    return dict(_giambelli_cached(ctx.k, YoungDiagram(diagram)))


def _int_pieri(k: int, cols: int, terms: dict[TermKey, int], j: int) -> dict[TermKey, int]:
    acc: dict[TermKey, int] = {}
    for (diagram, m), c in terms.items():
        for added in _pieri_additions(k, cols, diagram, j):
            acc[(added, m)] = acc.get((added, m), 0) + c
        for removed in _pieri_removals(k, cols, diagram, j):
            acc[(removed, m + 1)] = acc.get((removed, m + 1), 0) + c
    return {key: c for key, c in acc.items() if c}


@lru_cache(maxsize=None)
def _schubert_constants(
    k: int, n: int, first: YoungDiagram, second: YoungDiagram
) -> tuple[tuple[TermKey, int], ...]:
    """Integer structure constants of sigma_first * sigma_second."""
    cols = n - k
    if not first:
        return (((second, 0), 1),)
    if not second:
        return (((first, 0), 1),)
    # expand the narrower diagram; its Giambelli determinant is smaller
    a, b = first, second
    if (a.width, a.size) > (b.width, b.size):
        a, b = b, a
    acc: dict[TermKey, int] = {}
    for exps, coeff in _giambelli_cached(k, a):
        element: dict[TermKey, int] = {(b, 0): 1}
        for i in range(k, 0, -1):
            for _ in range(exps[i - 1]):
                element = _int_pieri(k, cols, element, i)
        for key, value in element.items():
            acc[key] = acc.get(key, 0) + coeff * value
    return tuple(sorted(((key, c) for key, c in acc.items() if c), key=lambda t: (t[0][1], t[0][0].sort_key())))


def schubert_product(ctx: GrContext, first: YoungDiagram, second: YoungDiagram) -> dict[TermKey, int]:
    """sigma_first * sigma_second with integer coefficients."""
    return dict(_schubert_constants(ctx.k, ctx.n, YoungDiagram(first), YoungDiagram(second)))


def quantum_product(a: QhElement, b: QhElement) -> QhElement:
    """Bilinear extension of the Schubert-class product."""
    a._check_compatible(b)
    ctx, F = a.ctx, a.field
    acc: dict[TermKey, object] = {}
    for (d1, m1), c1 in a.terms.items():
        for (d2, m2), c2 in b.terms.items():
            c12 = F.mul(c1, c2)
            if F.is_zero(c12):
                continue
            for (diagram, dm), coeff in _schubert_constants(ctx.k, ctx.n, d1, d2):
                _bump(acc, (diagram, m1 + m2 + dm), F.mul(c12, F.from_int(coeff)), F)
    return QhElement(ctx, F, acc)


# ---------------------------------------------------------------------------
# text format: "sigma[3,1] + q^2*sigma[-]" with sigma spelled with its
# unicode letter; coefficients print before the q-power.

_TERM_RE = re.compile(
    r"^(?:(?P<coeff>-?\d+(?:/\d+)?)\*)?(?P<q>q(?:\^(?P<qpow>-?\d+))?\*)?(?:σ|s)\[(?P<rows>[-0-9,]*)\]$"
)


def format_element(element: QhElement) -> str:
    if not element.terms:
        return "0"
    F = element.field
    items = sorted(element.terms.items(), key=lambda t: (t[0][1], t[0][0].sort_key()))
    pieces = []
    for (diagram, m), coeff in items:
        qpart = "" if m == 0 else ("q*" if m == 1 else f"q^{m}*")
        cstr = F.element_to_str(coeff)
        if cstr == "1":
            cpart = ""
        elif any(ch in cstr for ch in " +"):
            cpart = f"({cstr})*"
        else:
            cpart = f"{cstr}*"
        pieces.append(f"{cpart}{qpart}σ[{diagram.to_text()}]")
    return " + ".join(pieces)


def parse_element(ctx: GrContext, field: FieldCtx, text: str) -> QhElement:
    """Parse the element grammar; coefficients are integers or fractions."""
    from fractions import Fraction

    acc: dict[TermKey, object] = {}
    body = text.strip()
    if body in ("0", ""):
        return QhElement.zero(ctx, field)
    for raw in body.split("+"):
        term = raw.strip().replace(" ", "")
        negate = False
        while term.startswith("-") and not _TERM_RE.match(term):
            negate = not negate
            term = term[1:]
        match = _TERM_RE.match(term)
        if not match:
            raise ValueError(f"cannot parse element term {raw!r}")
        coeff_text = match.group("coeff")
        if coeff_text is None:
            coeff = field.one()
        elif "/" in coeff_text:
            frac = Fraction(coeff_text)
            coeff = field.div(field.from_int(frac.numerator), field.from_int(frac.denominator))
        else:
            coeff = field.from_int(int(coeff_text))
        if negate:
            coeff = field.neg(coeff)
        qpow = 0 if match.group("q") is None else int(match.group("qpow") or 1)
        diagram = YoungDiagram.from_text(match.group("rows"))
        _bump(acc, (diagram, qpow), coeff, field)
    return QhElement(ctx, field, acc)
