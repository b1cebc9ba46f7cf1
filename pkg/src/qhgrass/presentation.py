"""Symmetric-function presentation of the quantum ring and its evaluation maps.

The ring is F[x_1..x_k, q] modulo the ideal generated by Y_{n-k+1}, ...,
Y_{n-1}, Y_n + (-1)^k q, where Y_r is the r-th complete symmetric function
written in the elementary ones. Evaluating x_i at xi^i * e_i(zeta_1..zeta_k)
for an admissible multiset of n-th roots of unity and q at 1 kills the ideal
generators and produces a ring homomorphism into a splitting field; these
maps are the workhorse behind the degree-zero analysis.

All functions are pure over immutable contexts; work over the admissible
multisets is embarrassingly parallel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from . import _xpoly
from .diagram import GrContext, YoungDiagram
from .exactfield import (
    QQ,
    ExtensionField,
    FieldCtx,
    PrimeField,
    RationalField,
    UnsupportedCharacteristicError,
    cyclotomic_field,
    make_extension,
    nth_roots_of_unity,
    splitting_degree,
)
from .qh_core import QhElement, giambelli_expand


@dataclass(frozen=True)
class SymContext:
    """k symmetric variables z_1..z_k targeting Gr(k, n)."""

    k: int
    n: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError("need 1 <= k <= n")


def elementary_sym(F: FieldCtx, values: Sequence, i: int):
    """e_i evaluated at the given field elements; e_0 = 1."""
    if not 0 <= i <= len(values):
        raise ValueError(f"e_{i} undefined for {len(values)} values")
    # row DP: table[j] = e_j of the prefix processed so far
    table = [F.one()] + [F.zero()] * i
    for v in values:
        for j in range(min(i, len(table) - 1), 0, -1):
            table[j] = F.add(table[j], F.mul(v, table[j - 1]))
    return table[i]


def complete_sym(F: FieldCtx, values: Sequence, i: int):
    """h_i at the values, through h_r = h_{r-1}e_1 - h_{r-2}e_2 + ... (E(-t)H(t) = 1)."""
    if i < 0:
        raise ValueError("h_i needs i >= 0")
    k = len(values)
    es = [elementary_sym(F, values, j) for j in range(k + 1)]
    hs = [F.one()]
    for r in range(1, i + 1):
        acc = F.zero()
        sign = 1
        for j in range(1, min(r, k) + 1):
            term = F.mul(hs[r - j], es[j])
            acc = F.add(acc, term) if sign > 0 else F.sub(acc, term)
            sign = -sign
        hs.append(acc)
    return hs[i]


def y_polynomial(r: int, k: int) -> dict[tuple[int, ...], int]:
    """Y_r as an integer polynomial in x_1..x_k (x_j = 0 for j > k), via the
    Laplace recursion Y_r = x_1 Y_{r-1} - x_2 Y_{r-2} + ... """
    if r < 0:
        raise ValueError("Y_r needs r >= 0")
    ys: list[dict] = [_xpoly.one(k)]
    for m in range(1, r + 1):
        acc: dict = {}
        sign = 1
        for j in range(1, min(m, k) + 1):
            _xpoly.add_into(acc, _xpoly.mul_variable(ys[m - j], j), sign)
            sign = -sign
        ys.append(acc)
    return ys[r]


@dataclass(frozen=True)
class AdmissibleMultiset:
    """Multiset of n-th roots of unity of cardinality k, given by root indices.

    Indices refer to the canonical ordering of the distinct roots (consecutive
    powers of the fixed primitive root). In characteristic p with n = p^d * m
    the distinct roots are the m-th roots and each may repeat up to p^d times.
    """

    indices: tuple[int, ...]
    roots: tuple = dc_field(repr=False)

    def to_text(self) -> str:
        return "[" + ",".join(map(str, self.indices)) + "]"


class EvContext:
    """Evaluation data: splitting field K, the scalar xi with xi^n = -(-1)^k,
    and the distinct n-th roots of unity."""

    def __init__(self, ctx: GrContext, base: FieldCtx):
        self.ctx = ctx
        self.base = base
        k, n = ctx.k, ctx.n
        p = base.characteristic
        if p == 0:
            if not isinstance(base, RationalField):
                raise ValueError("characteristic-0 evaluation starts from Q")
            big_n = n if k % 2 == 1 else 2 * n
            self.field = cyclotomic_field(big_n)
            self.root_multiplicity = 1
            distinct = n
        else:
            if not isinstance(base, PrimeField):
                raise ValueError("positive-characteristic evaluation starts from GF(p)")
            power = 1
            reduced = n
            while reduced % p == 0:
                reduced //= p
                power *= p
            self.root_multiplicity = power
            distinct = reduced
            want_sign = -1 if (k % 2 == 0 and p != 2) else 1
            big_n = distinct if want_sign == 1 else 2 * distinct
            self.field = make_extension(p, splitting_degree(p, big_n))
        K = self.field
        self.distinct_root_count = distinct
        self.roots = nth_roots_of_unity(K, distinct)
        # xi must solve xi^n + (-1)^k = 0
        target = K.neg(K.one()) if k % 2 == 0 else K.one()
        self.xi = None
        for index, candidate in enumerate(nth_roots_of_unity(K, big_n)):
            if K.pow(candidate, n) == target:
                self.xi = candidate
                self.xi_index = index
                break
        if self.xi is None:  # pragma: no cover - big_n always suffices
            raise ValueError("no xi with xi^n = -(-1)^k found")

    def embed(self, value):
        """Embed a base-field element into the splitting field."""
        base, K = self.base, self.field
        if K is base:
            return value
        if isinstance(base, RationalField):
            if isinstance(K, ExtensionField):
                return K.lift(value)
            return value
        return K.from_int(value)

    def __repr__(self):
        return (
            f"EvContext(Gr({self.ctx.k},{self.ctx.n}), {self.base.label} -> "
            f"{self.field.label}, xi=zeta^{self.xi_index})"
        )


def admissible_multisets(F: FieldCtx, k: int, n: int) -> tuple[AdmissibleMultiset, ...]:
    """All admissible cardinality-k multisets of n-th roots of unity in F.

    In characteristic p with n = p^d * m, the distinct roots are the m-th
    roots, each admitted with multiplicity at most p^d; in characteristic 0
    (or gcd(n, p) = 1) multiplicities are at most 1 and the count is C(n, k).
    """
    p = F.characteristic
    cap = 1
    reduced = n
    while p and reduced % p == 0:
        reduced //= p
        cap *= p
    roots = nth_roots_of_unity(F, reduced)
    out = []
    for combo in itertools.combinations_with_replacement(range(reduced), k):
        if cap == 1 and len(set(combo)) != k:
            continue
        if cap > 1 and any(combo.count(i) > cap for i in set(combo)):
            continue
        out.append(AdmissibleMultiset(combo, tuple(roots[i] for i in combo)))
    return tuple(out)


def ev_map(ev: EvContext, J: AdmissibleMultiset, element: QhElement):
    """Image of a quantum cohomology class under ev_J (q -> 1, x_i -> xi^i e_i)."""
    if element.ctx != ev.ctx:
        raise ValueError("context mismatch")
    if element.field.characteristic != ev.base.characteristic:
        raise ValueError("field characteristic mismatch")
    K = ev.field
    k = ev.ctx.k
    xvals = [None] + [
        K.mul(K.pow(ev.xi, i), elementary_sym(K, J.roots, i)) for i in range(1, k + 1)
    ]
    total = K.zero()
    for (diagram, _m), coeff in element.terms.items():
        for exps, c in giambelli_expand(ev.ctx, diagram).items():
            mono = K.from_int(c)
            for i in range(1, k + 1):
                for _ in range(exps[i - 1]):
                    mono = K.mul(mono, xvals[i])
            total = K.add(total, K.mul(ev.embed(coeff), mono))
    return total


def verify_ideal_vanishing(ev: EvContext, J: AdmissibleMultiset) -> dict:
    """Check that the presentation-ideal generators vanish under ev_J.

    Asserts h_{n-k+1}(xi*zeta_J) = ... = h_{n-1}(xi*zeta_J) = 0 and
    h_n(xi*zeta_J) + (-1)^k = 0, reporting each computed value.
    """
    K = ev.field
    k, n = ev.ctx.k, ev.ctx.n
    scaled = tuple(K.mul(ev.xi, z) for z in J.roots)
    checks = []
    for r in range(n - k + 1, n):
        value = complete_sym(K, scaled, r)
        checks.append(
            {"generator": f"h_{r}", "value": K.element_to_str(value), "ok": K.is_zero(value)}
        )
    sign = K.one() if k % 2 == 0 else K.neg(K.one())
    value = K.add(complete_sym(K, scaled, n), sign)
    checks.append(
        {
            "generator": f"h_{n} + (-1)^{k}",
            "value": K.element_to_str(value),
            "ok": K.is_zero(value),
        }
    )
    return {
        "k": k,
        "n": n,
        "field": K.label,
        "multiset": J.to_text(),
        "checks": checks,
        "all_ok": all(c["ok"] for c in checks),
    }


def in_zeta_subfield(ev: EvContext, value) -> bool:
    """Membership of a splitting-field element in the subfield F(zeta_n)."""
    K = ev.field
    p = K.characteristic
    if p:
        s = splitting_degree(p, ev.distinct_root_count) if ev.distinct_root_count > 1 else 1
        return K.pow(value, p**s) == value
    big_n = getattr(K, "cyclotomic_order", None)
    if big_n is None or big_n == ev.ctx.n or ev.ctx.n % 2 == 1:
        # for odd n, Q(zeta_2n) = Q(zeta_n); nothing to check
        return True
    # span test: reduce against the Q-basis zeta_n^0 .. zeta_n^(phi(n)-1)
    from .numberth import euler_phi

    zeta = nth_roots_of_unity(K, ev.ctx.n)[1]
    basis = []
    power = K.one()
    for _ in range(euler_phi(ev.ctx.n)):
        basis.append(list(power))
        power = K.mul(power, zeta)
    target = list(value)
    pivots: list[tuple[int, list]] = []
    for vec in basis:
        vec = list(vec)
        for piv, row in pivots:
            c = vec[piv]
            if not QQ.is_zero(c):
                vec = [a - c * b for a, b in zip(vec, row)]
        piv = next((i for i, c in enumerate(vec) if c != 0), None)
        if piv is None:
            continue
        inv = 1 / vec[piv]
        vec = [c * inv for c in vec]
        pivots.append((piv, vec))
    for piv, row in pivots:
        c = target[piv]
        if c != 0:
            target = [a - c * b for a, b in zip(target, row)]
    return all(c == 0 for c in target)
