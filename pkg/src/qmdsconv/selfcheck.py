"""Small-instance structural checks shared by the CLI and the test suite."""

from __future__ import annotations

import random
import time
from collections.abc import Callable
from typing import NamedTuple

from .convcode import (
    PolyMatrix,
    build_generator_poly,
    split_parity,
    unpad_blocks,
)
from .galois import FiniteField, gf, hermitian_field, prime_power
from .grs import (
    GrsCode,
    grs_generator,
    grs_parity_check,
    hermitian_dual_by_membership,
    is_hermitian_dual_containing,
    search_dual_containing,
)
from .matf import FFMatrix


class CheckResult(NamedTuple):
    name: str
    passed: bool
    cases: int
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.cases} cases, {self.seconds:.2f}s" + (f" ({self.detail})" if self.detail else "")


def _field_axioms(f: FiniteField) -> list[str]:
    errs = []
    els = list(f.elements())
    p = f.p
    for x in els:
        if f.add(x, f.neg(x)) != 0:
            errs.append(f"{f}: x + (-x) != 0 for x={x}")
        if x and f.mul(x, f.inv(x)) != 1:
            errs.append(f"{f}: x * x^-1 != 1 for x={x}")
        if f.pow(x, f.order) != x:
            errs.append(f"{f}: x^order != x for x={x}")
    for x in els:
        for y in els:
            xy = f.mul(x, y)
            if xy != f.mul(y, x) or f.add(x, y) != f.add(y, x):
                errs.append(f"{f}: not commutative at ({x},{y})")
            for z in els:
                if f.mul(x, f.add(y, z)) != f.add(xy, f.mul(x, z)):
                    errs.append(f"{f}: not distributive at ({x},{y},{z})")
                if f.mul(xy, z) != f.mul(x, f.mul(y, z)):
                    errs.append(f"{f}: not associative at ({x},{y},{z})")
            if errs:
                return errs
    # Frobenius x -> x^p is a ring automorphism
    frob = [f.pow(x, p) for x in els]
    if len(set(frob)) != f.order:
        errs.append(f"{f}: Frobenius is not bijective")
    for x in els:
        for y in els:
            if frob[f.add(x, y)] != f.add(frob[x], frob[y]):
                errs.append(f"{f}: Frobenius not additive at ({x},{y})")
            if frob[f.mul(x, y)] != f.mul(frob[x], frob[y]):
                errs.append(f"{f}: Frobenius not multiplicative at ({x},{y})")
            if errs:
                return errs
    # its order is exactly e
    power = list(els)
    for i in range(1, f.e + 1):
        power = [frob[x] for x in power]
        if (power == list(els)) != (i == f.e):
            errs.append(f"{f}: Frobenius has order other than {f.e}")
            break
    if f.q is not None:
        fixed = [x for x in els if f.conj(x) == x]
        if len(fixed) != f.q or sorted(fixed) != sorted(f.subfield()):
            errs.append(f"{f}: conjugation fixes {len(fixed)} elements, expected {f.q}")
        for x in els:
            if f.conj(f.conj(x)) != x:
                errs.append(f"{f}: conjugation is not an involution at {x}")
            if f.conj(f.norm(x)) != f.norm(x):
                errs.append(f"{f}: norm of {x} leaves the subfield")
    return errs


def check_field_automorphisms(max_order: int = 49) -> tuple[int, list[str]]:
    errs: list[str] = []
    orders = [x for x in range(2, max_order + 1) if prime_power(x) is not None]
    for order in orders:
        errs.extend(_field_axioms(gf(order)))
    return len(orders), errs


def _random_grs(rng: random.Random, q: int, n: int, k: int) -> GrsCode:
    f = hermitian_field(q)
    a = rng.sample(range(f.order), n)
    v = [rng.randrange(1, f.order) for _ in range(n)]
    return GrsCode(f, k, tuple(a), tuple(v))


def _small_codes(rng: random.Random, per_shape: int = 2) -> list[GrsCode]:
    codes = []
    for q in (2, 3, 4, 5):
        for n in range(2, min(8, q * q) + 1):
            for k in range(1, n + 1):
                codes.extend(_random_grs(rng, q, n, k) for _ in range(per_shape))
    return codes


def _witnesses() -> list[GrsCode]:
    out = []
    for q, n, k in ((2, 4, 3), (3, 4, 2), (3, 8, 6), (4, 8, 6), (5, 10, 8), (5, 24, 21)):
        w = search_dual_containing(q, n, k, budget=16)
        if w is not None:
            out.append(w)
    return out


def check_parity(codes: list[GrsCode]) -> tuple[int, list[str]]:
    errs = []
    for c in codes:
        g, h = grs_generator(c), grs_parity_check(c)
        if h.nrows and not (g @ h.transpose()).is_zero():
            errs.append(f"G H^T != 0 for [{c.n},{c.k}] over {c.field}")
    return len(codes), errs


def check_split_roundtrip(codes: list[GrsCode], rng: random.Random) -> tuple[int, list[str]]:
    errs = []
    cases = 0
    for c in codes:
        h = grs_parity_check(c)
        r = h.nrows
        if r < 1:
            continue
        # random composition of r with the first part largest
        parts = []
        left = r
        while left:
            cap = left if not parts else min(left, parts[0])
            parts.append(rng.randint(1, cap))
            left -= parts[-1]
        blocks = split_parity(h, parts)
        gen = build_generator_poly(blocks)
        back = unpad_blocks(gen, parts)
        cases += 1
        if back != blocks or back[0].vstack(*back[1:]) != h:
            errs.append(f"split {parts} of a {r}x{c.n} matrix does not round-trip")
        if PolyMatrix.from_text(gen.to_text()) != gen:
            errs.append(f"text record of split {parts} does not round-trip")
    return cases, errs


def check_conj_transpose(rng: random.Random, trials: int = 200) -> tuple[int, list[str]]:
    errs = []
    for i in range(trials):
        f = hermitian_field(rng.choice((2, 3, 4, 5, 7)))
        r, c = rng.randint(0, 5), rng.randint(0, 5)
        m = FFMatrix(f, [[rng.randrange(f.order) for _ in range(c)] for _ in range(r)], c)
        if m.conj_transpose().conj_transpose() != m:
            errs.append(f"conj_transpose is not an involution (trial {i})")
        if m.conj_transpose() != m.transpose().conj():
            errs.append(f"conj_transpose differs from conj of transpose (trial {i})")
    return trials, errs


def check_containment(codes: list[GrsCode]) -> tuple[int, list[str]]:
    errs = []
    outcomes = set()
    for c in codes:
        if c.field.order > 25:
            continue
        pred, ref = is_hermitian_dual_containing(c), hermitian_dual_by_membership(c)
        outcomes.add(pred)
        if pred != ref:
            errs.append(f"predicate {pred} vs membership {ref} for [{c.n},{c.k}] a={c.a} v={c.v}")
    if outcomes != {True, False}:
        errs.append(f"sample only exercised outcomes {sorted(outcomes)}")
    return len(codes), errs


def run_selfcheck(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    codes = _small_codes(rng)
    witnesses = _witnesses()
    steps: list[tuple[str, Callable[[], tuple[int, list[str]]]]] = [
        ("field automorphisms (orders <= 49)", check_field_automorphisms),
        ("G H^T = 0", lambda: check_parity(codes + witnesses)),
        ("split/build round trip", lambda: check_split_roundtrip(codes + witnesses, rng)),
        ("conj_transpose involution", lambda: check_conj_transpose(rng)),
        ("containment predicate vs membership (q^2 <= 25)", lambda: check_containment(codes + witnesses)),
    ]
    out = []
    for name, fn in steps:
        t = time.perf_counter()
        cases, errs = fn()
        out.append(CheckResult(name, not errs, cases, "; ".join(errs[:3]), time.perf_counter() - t))
    return out
