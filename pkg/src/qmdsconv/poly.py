"""Univariate polynomials over a finite field as coefficient tuples.

A polynomial is a tuple of element indices, constant term first, with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from collections.abc import Sequence

from .galois import FiniteField

Poly = tuple[int, ...]

ZERO: Poly = ()


def trim(c: Sequence[int]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(a: Poly) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(a) - 1


def is_unit(a: Poly) -> bool:
    return len(a) == 1


def add(f: FiniteField, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = f.add(out[i], y)
    return trim(out)


def neg(f: FiniteField, a: Poly) -> Poly:
    return tuple(f.neg(x) for x in a)


def sub(f: FiniteField, a: Poly, b: Poly) -> Poly:
    return add(f, a, neg(f, b))


def scale(f: FiniteField, c: int, a: Poly) -> Poly:
    if c == 0:
        return ZERO
    return tuple(f.mul(c, x) for x in a)


def mul(f: FiniteField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
    return trim(out)


def divmod_(f: FiniteField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return ZERO, tuple(r)
    inv_lead = f.inv(b[-1])
    quo = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            t = f.mul(c, inv_lead)
            quo[i - db] = t
            for j, y in enumerate(b):
                if y:
                    r[i - db + j] = f.sub(r[i - db + j], f.mul(t, y))
    return trim(quo), trim(r[:db])


def exact_div(f: FiniteField, a: Poly, b: Poly) -> Poly:
    q, r = divmod_(f, a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def monic(f: FiniteField, a: Poly) -> Poly:
    if not a:
        return a
    return scale(f, f.inv(a[-1]), a)


def gcd(f: FiniteField, a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (``()`` only when both inputs are zero)."""
    while b:
        a, b = b, divmod_(f, a, b)[1]
    return monic(f, a)


def det(f: FiniteField, m: list[list[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return (1,)
    a = [list(r) for r in m]
    sign = 1
    prev: Poly = (1,)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return ZERO
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = sub(f, mul(f, a[k][k], a[i][j]), mul(f, a[i][k], a[k][j]))
                a[i][j] = exact_div(f, num, prev)
            a[i][k] = ZERO
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else neg(f, d)


def evaluate(f: FiniteField, a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = f.add(f.mul(acc, x), c)
    return acc
