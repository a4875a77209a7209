"""Arithmetic in prime-power finite fields GF(p^e).

Elements are identified with integer indices in ``[0, p^e)``: the index of
``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` is ``sum(c_i * p**i)`` (base-p,
little-endian).  That index is also the interchange format used by every
text record in the package.

Internally a field keeps exp/log tables with respect to the root of its
modulus plus a Zech-logarithm table, so that addition, multiplication and
inversion are all table lookups on plain ints.  :class:`FieldElement` is a
thin operator-overloading wrapper for interactive use and tests; the
matrix and code modules work on raw indices for speed.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from collections.abc import Iterator, Sequence

from .errors import FieldError, FormatError

MAX_FIELD_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``n == p**e`` for a prime ``p``, else None."""
    if n < 2:
        return None
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
    return (n, 1)


class FiniteField:
    """The field GF(p^e) with a fixed primitive modulus.

    Build instances with :func:`field_build`; the constructor trusts its
    arguments and raises :class:`FieldError` only if the modulus turns out
    not to be primitive.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]) -> None:
        self.p = p
        self.e = e
        self.order = p**e
        self.modulus = tuple(int(c) for c in modulus)
        self._modulus_bits = sum(c << k for k, c in enumerate(self.modulus)) if p == 2 else 0
        n = self.order - 1
        self._n = n
        exp = [0] * (2 * n)
        log = [-1] * self.order
        val = 1
        for i in range(n):
            if i and val == 1:
                raise FieldError(f"modulus {self.modulus} is not primitive over GF({p})")
            exp[i] = val
            log[val] = i
            val = self._times_root(val)
        if val != 1:
            raise FieldError(f"modulus {self.modulus} is not primitive over GF({p})")
        exp[n:] = exp[:n]
        self._exp = exp
        self._log = log
        # zech[k] = log(1 + alpha^k), or -1 where 1 + alpha^k == 0
        self._zech = [log[self._plus_one(exp[k])] if self._plus_one(exp[k]) else -1 for k in range(n)]
        self.q = math.isqrt(self.order) if e % 2 == 0 else None

    # -- construction helpers -------------------------------------------------

    def _times_root(self, i: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return (i * (-self.modulus[0])) % p
        if p == 2:
            i <<= 1
            return i ^ self._modulus_bits if i >> e else i
        digits = self.to_coeffs(i)
        top = digits[-1]
        shifted = [0] + digits[:-1]
        if top:
            shifted = [(d - top * m) % p for d, m in zip(shifted, self.modulus[:e])]
        return self.from_coeffs(shifted)

    def _plus_one(self, i: int) -> int:
        c0 = i % self.p
        return i - c0 + (c0 + 1) % self.p

    # -- representation -------------------------------------------------------

    def to_coeffs(self, i: int) -> list[int]:
        """Little-endian coefficient list of length ``e`` for index ``i``."""
        out = []
        for _ in range(self.e):
            i, r = divmod(i, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        i = 0
        for c in reversed(coeffs):
            i = i * self.p + (c % self.p)
        return i

    def descriptor(self) -> str:
        """Text record ``GF(p^e;m0,...,me)`` naming the field and its modulus."""
        return f"GF({self.p}^{self.e};{','.join(map(str, self.modulus))})"

    @property
    def primitive_element(self) -> int:
        return self._exp[1] if self._n > 1 else 1

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    def __repr__(self) -> str:
        return f"FiniteField({self.descriptor()})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __reduce__(self):
        return (field_build, (self.p, self.e))

    def check(self, i: int) -> int:
        if not 0 <= i < self.order:
            raise FieldError(f"{i} is not an element index of GF({self.order})")
        return i

    # -- arithmetic on indices ------------------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x + y) % self.p
        if self.p == 2:
            return x ^ y
        if x == 0:
            return y
        if y == 0:
            return x
        lx = self._log[x]
        z = self._zech[(self._log[y] - lx) % self._n]
        if z < 0:
            return 0
        return self._exp[lx + z]

    def neg(self, x: int) -> int:
        if x == 0 or self.p == 2:
            return x
        if self.e == 1:
            return self.p - x
        return self._exp[self._log[x] + self._n // 2]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(self._n - self._log[x]) % self._n]

    def div(self, x: int, y: int) -> int:
        if y == 0:
            raise ZeroDivisionError("division by zero in a finite field")
        if x == 0:
            return 0
        return self._exp[(self._log[x] - self._log[y]) % self._n]

    def pow(self, x: int, k: int) -> int:
        """``x**k`` by square-and-multiply, exponent reduced mod ``order-1``."""
        if x == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        k %= self._n
        result, base = 1, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def log(self, x: int) -> int:
        if x == 0:
            raise ValueError("log of zero")
        return self._log[x]

    def exp(self, k: int) -> int:
        return self._exp[k % self._n]

    def conj(self, x: int) -> int:
        """The q-th power map of GF(q^2)."""
        if self.q is None:
            raise FieldError(f"GF({self.order}) is not of square order; no conjugation")
        if x == 0:
            return 0
        return self._exp[(self._log[x] * self.q) % self._n]

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        acc = 0
        for x, y in zip(xs, ys):
            if x and y:
                acc = self.add(acc, self._exp[self._log[x] + self._log[y]])
        return acc

    def subfield(self) -> list[int]:
        """Elements fixed by conjugation, i.e. the copy of GF(q) in GF(q^2)."""
        return [x for x in self.elements() if self.conj(x) == x]

    def norm(self, x: int) -> int:
        """``x**(q+1)``, which always lies in the subfield GF(q)."""
        if self.q is None:
            raise FieldError(f"GF({self.order}) is not of square order")
        return self.pow(x, self.q + 1)


class FieldElement:
    """An element of a :class:`FiniteField`, with Python operators."""

    __slots__ = ("field", "index")

    def __init__(self, field: FiniteField, index: int) -> None:
        self.field = field
        self.index = field.check(int(index))

    @property
    def coeffs(self) -> list[int]:
        return self.field.to_coeffs(self.index)

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands belong to different fields")
            return other.index
        if isinstance(other, int) and not isinstance(other, bool):
            if other in (0, 1):
                return other
        raise FieldError(f"cannot combine {other!r} with an element of GF({self.field.order})")

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.index, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.index, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.index))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.index, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.index, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.index))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.index, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.index))

    def conjugate(self) -> FieldElement:
        return FieldElement(self.field, self.field.conj(self.index))

    def __bool__(self) -> bool:
        return self.index != 0

    def __int__(self) -> int:
        return self.index

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.index == other.index
        if isinstance(other, int) and other in (0, 1):
            return self.index == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.index))

    def __repr__(self) -> str:
        return f"{self.field.descriptor()}[{self.index}]"


def _monic_candidates(p: int, e: int) -> Iterator[tuple[int, ...]]:
    for low in itertools.product(range(p), repeat=e):
        if low[0] == 0 and e > 1:
            continue
        yield low + (1,)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(e):
                prod[k - e + j] -= c * modulus[j]
    return [c % p for c in prod[:e]]


def _root_order_is(p: int, modulus: tuple[int, ...], n: int) -> bool:
    """True iff x has multiplicative order exactly ``n`` modulo ``modulus``."""
    e = len(modulus) - 1
    one = [1] + [0] * (e - 1)

    def xpow(k: int) -> list[int]:
        result, base = one, ([0, 1] + [0] * (e - 2)) if e > 1 else [(-modulus[0]) % p]
        while k:
            if k & 1:
                result = _polymulmod(result, base, modulus, p)
            base = _polymulmod(base, base, modulus, p)
            k >>= 1
        return result

    if xpow(n) != one:
        return False
    return all(xpow(n // r) != one for r in _prime_factors(n))


@functools.lru_cache(maxsize=None)
def _build(p: int, e: int) -> FiniteField:
    n = p**e - 1
    for modulus in _monic_candidates(p, e):
        if _root_order_is(p, modulus, n):
            return FiniteField(p, e, modulus)
    raise FieldError(f"no primitive polynomial of degree {e} over GF({p})")  # pragma: no cover


def field_build(p: int, e: int = 1, *, max_order: int = MAX_FIELD_ORDER) -> FiniteField:
    """Build GF(p^e) using the lexicographically smallest primitive modulus.

    Candidates are monic degree-``e`` polynomials whose low coefficients
    ``(c_0, ..., c_{e-1})`` are compared low-degree first.  Results are
    cached, so equal arguments return the same object.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if not isinstance(e, int) or e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if p**e > max_order:
        raise FieldError(f"field order {p}^{e} exceeds the maximum {max_order}")
    return _build(p, e)


def gf(order: int) -> FiniteField:
    """Shorthand: the field with ``order`` elements."""
    pe = prime_power(order)
    if pe is None:
        raise FieldError(f"{order} is not a prime power")
    return field_build(*pe)


def hermitian_field(q: int) -> FiniteField:
    """GF(q^2), the field carrying the Hermitian inner product over GF(q)."""
    pe = prime_power(q)
    if pe is None:
        raise FieldError(f"q={q} is not a prime power")
    return field_build(pe[0], 2 * pe[1])


def conjugate(x: FieldElement) -> FieldElement:
    return x.conjugate()


_DESCRIPTOR = re.compile(r"GF\((\d+)\^(\d+);([\d,]+)\)")


def parse_field_descriptor(text: str) -> FiniteField:
    """Inverse of :meth:`FiniteField.descriptor`; the modulus must match."""
    m = _DESCRIPTOR.fullmatch(text.strip())
    if not m:
        raise FormatError(f"bad field descriptor {text!r}")
    p, e = int(m.group(1)), int(m.group(2))
    modulus = tuple(int(c) for c in m.group(3).split(","))
    field = field_build(p, e)
    if modulus != field.modulus:
        raise FormatError(f"modulus {modulus} differs from the canonical {field.modulus} for GF({p}^{e})")
    return field
