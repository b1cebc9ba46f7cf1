"""Integer polynomials in x_1..x_k, stored as {exponent tuple: coefficient}."""

from __future__ import annotations

XPoly = dict


def one(k: int) -> XPoly:
    return {(0,) * k: 1}


def variable(k: int, i: int) -> XPoly:
    """x_i, 1-based; x_0 is the constant 1."""
    if i == 0:
        return one(k)
    exps = [0] * k
    exps[i - 1] = 1
    return {tuple(exps): 1}


def add_into(acc: XPoly, poly: XPoly, scalar: int = 1) -> None:
    for exps, c in poly.items():
        new = acc.get(exps, 0) + scalar * c
        if new:
            acc[exps] = new
        else:
            acc.pop(exps, None)


def mul(a: XPoly, b: XPoly) -> XPoly:
    out: XPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exps = tuple(x + y for x, y in zip(ea, eb))
            new = out.get(exps, 0) + ca * cb
            if new:
                out[exps] = new
            else:
                out.pop(exps, None)
    return out


def mul_variable(a: XPoly, i: int) -> XPoly:
    """Multiply by x_i (1-based); i = 0 is a no-op."""
    if i == 0:
        return dict(a)
    out: XPoly = {}
    for exps, c in a.items():
        lst = list(exps)
        lst[i - 1] += 1
        out[tuple(lst)] = c
    return out
