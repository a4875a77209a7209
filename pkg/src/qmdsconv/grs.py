"""Generalized Reed-Solomon codes over GF(q^2) and Hermitian dual containment.

``GRS_k(a, v)`` is the set of vectors ``(v_0 f(a_0), ..., v_{n-1} f(a_{n-1}))``
for polynomials ``f`` of degree below ``k``.  Its Euclidean dual is
``GRS_{n-k}(a, w)`` where ``w`` spans the dual of ``GRS_{n-1}(a, v)``.
"""

from __future__ import annotations

import dataclasses
import logging
import random
from collections.abc import Iterator, Sequence

from .errors import FormatError, InvalidCodeError
from .galois import FiniteField, hermitian_field, parse_field_descriptor
from .linear import DEFAULT_BUDGET, min_distance
from .matf import FFMatrix, kernel, rref

log = logging.getLogger(__name__)


def dual_multipliers(field: FiniteField, a: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Column multipliers ``w`` of the Euclidean dual, normalized to ``w_0 = 1``."""
    n = len(a)
    if n < 2:
        return (1,) * n
    gen = _vandermonde(field, a, v, n - 1)
    null = kernel(gen)
    if null.nrows != 1:
        raise InvalidCodeError("evaluation points must be distinct")
    w = null.rows[0]
    if not all(w):
        raise InvalidCodeError("degenerate GRS code: dual multiplier has a zero entry")
    inv0 = field.inv(w[0])
    return tuple(field.mul(inv0, x) for x in w)


def _vandermonde(field: FiniteField, a: Sequence[int], mult: Sequence[int], rows: int) -> FFMatrix:
    out = []
    for i in range(rows):
        out.append(tuple(field.mul(m, field.pow(x, i)) for x, m in zip(a, mult)))
    return FFMatrix(field, out, len(a))


@dataclasses.dataclass(frozen=True)
class GrsCode:
    """The code ``GRS_k(a, v)`` over ``field`` (which must have order ``q^2``).

    ``w`` is derived when omitted; a supplied ``w`` must equal the derived
    one.
    """

    field: FiniteField
    k: int
    a: tuple[int, ...]
    v: tuple[int, ...]
    w: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        a, v = tuple(self.a), tuple(self.v)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)
        n = len(a)
        if self.field.q is None:
            raise InvalidCodeError(f"GRS codes here live over GF(q^2); GF({self.field.order}) is not a square")
        if len(v) != n:
            raise InvalidCodeError("a and v must have the same length")
        if not 1 <= n <= self.field.order:
            raise InvalidCodeError(f"length {n} outside 1..{self.field.order}")
        if not 1 <= self.k <= n:
            raise InvalidCodeError(f"dimension {self.k} outside 1..{n}")
        for x in a + v:
            self.field.check(x)
        if len(set(a)) != n:
            raise InvalidCodeError("evaluation points must be pairwise distinct")
        if not all(v):
            raise InvalidCodeError("column multipliers must be nonzero")
        w = dual_multipliers(self.field, a, v)
        if self.w is not None and tuple(self.w) != w:
            raise InvalidCodeError("supplied dual multipliers do not match (a, v)")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def designed_distance(self) -> int:
        return self.n - self.k + 1

    def translate(self, beta: int) -> GrsCode:
        """The same code, described with evaluation points ``a + beta``.

        ``f(x)`` and ``f(x - beta)`` have the same degree, so the code (and
        therefore ``w``) is unchanged; only the generator matrix rows move.
        """
        f = self.field
        return GrsCode(f, self.k, tuple(f.add(x, beta) for x in self.a), self.v)

    def to_text(self) -> str:
        return "\n".join([
            "grs",
            f"field {self.field.descriptor()}",
            f"q {self.q}",
            f"n {self.n}",
            f"k {self.k}",
            "a " + " ".join(map(str, self.a)),
            "v " + " ".join(map(str, self.v)),
            "w " + " ".join(map(str, self.w)),
        ]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> GrsCode:
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines or lines[0] != ["grs"]:
            raise FormatError("GRS record must start with 'grs'")
        rec = {ln[0]: ln[1:] for ln in lines[1:]}
        try:
            field = parse_field_descriptor(rec["field"][0])
            q, n, k = int(rec["q"][0]), int(rec["n"][0]), int(rec["k"][0])
            a, v, w = (tuple(int(x) for x in rec[key]) for key in ("a", "v", "w"))
        except (KeyError, IndexError, ValueError) as exc:
            raise FormatError(f"incomplete GRS record: {exc}") from exc
        if field.q != q or len(a) != n:
            raise FormatError("GRS record header disagrees with its contents")
        return cls(field, k, a, v, w)


def grs_code(q: int, k: int, a: Sequence[int], v: Sequence[int] | None = None) -> GrsCode:
    field = hermitian_field(q)
    return GrsCode(field, k, tuple(a), tuple(v) if v is not None else (1,) * len(a))


def grs_generator(c: GrsCode) -> FFMatrix:
    """``k x n`` matrix with entries ``v_j a_j^i``."""
    return _vandermonde(c.field, c.a, c.v, c.k)


def grs_dual_multipliers(c: GrsCode) -> tuple[int, ...]:
    if c.n < 2:
        raise InvalidCodeError("dual multipliers need n >= 2")
    return dual_multipliers(c.field, c.a, c.v)


def grs_parity_check(c: GrsCode) -> FFMatrix:
    """``(n-k) x n`` matrix with entries ``w_j a_j^i``; the generator of ``GRS_{n-k}(a, w)``."""
    if c.k == c.n:
        return FFMatrix.zeros(c.field, 0, c.n)
    return _vandermonde(c.field, c.a, c.w, c.n - c.k)


def min_distance_bruteforce(c: GrsCode, budget: int = DEFAULT_BUDGET) -> int:
    return min_distance(grs_generator(c), budget)


def is_hermitian_dual_containing(c: GrsCode) -> bool:
    """``C^{perp H} <= C``, tested as ``H conj(H)^T == 0``."""
    h = grs_parity_check(c)
    if h.nrows == 0:
        return True
    return (h @ h.conj_transpose()).is_zero()


def is_hermitian_self_dual(c: GrsCode) -> bool:
    return 2 * c.k == c.n and is_hermitian_dual_containing(c)


def hermitian_dual_by_membership(c: GrsCode) -> bool:
    """Reference check straight from the definitions, without ``w``.

    Computes a basis of ``C^{perp H} = {x : sum x_i y_i^q = 0 for y in C}`` as
    the kernel of the conjugated generator, then tests each basis vector for
    membership in the row space of the generator.
    """
    g = grs_generator(c)
    dual = kernel(g.conj())
    if dual.nrows == 0:
        return True
    k = rref(g)[1]
    return rref(g.vstack(dual))[1] == k


# -- witness search ----------------------------------------------------------


def _exponents(q: int, s: int) -> list[int]:
    return sorted({i + q * l for i in range(s) for l in range(s)})


def _subgroup_cosets(field: FiniteField, t: int) -> list[list[int]]:
    big = field.order - 1
    step = big // t
    return [[field.exp(j + step * i) for i in range(t)] for j in range(step)]


def _candidate_sets(field: FiniteField, n: int, rng: random.Random, budget: int) -> Iterator[tuple[str, tuple[int, ...]]]:
    q = field.q
    big = field.order - 1
    if n <= q:
        yield "subfield", tuple(sorted(field.subfield())[:n])
        nz = sorted(x for x in field.subfield() if x)
        if n <= len(nz):
            yield "subfield*", tuple(nz[:n])
    for t in sorted((d for d in range(1, big + 1) if big % d == 0), reverse=True):
        cosets = _subgroup_cosets(field, t)
        for extra, label in ((0, "cosets"), (1, "cosets+0")):
            if (n - extra) % t == 0 and 0 < (n - extra) // t <= len(cosets):
                r = (n - extra) // t
                pts = [x for cs in cosets[:r] for x in cs] + ([0] * extra)
                yield f"{label}(t={t},r={r})", tuple(pts)
    orbits, seen = [], set()
    for x in field.elements():
        if x not in seen:
            orb = sorted({x, field.conj(x)})
            seen.update(orb)
            orbits.append(orb)
    pts: list[int] = []
    for orb in orbits:
        if len(pts) + len(orb) <= n:
            pts.extend(orb)
    if len(pts) == n:
        yield "orbits", tuple(pts)
    yield "prefix", tuple(range(n))
    for i in range(budget):
        yield f"random#{i}", tuple(rng.sample(range(field.order), n))


def _rational_kernel(field: FiniteField, a: Sequence[int], exps: Sequence[int]) -> FFMatrix:
    """Basis of ``{lam in GF(q)^n : sum lam_j a_j^m = 0 for m in exps}``."""
    m = FFMatrix(field, [[field.pow(x, e) for x in a] for e in exps], len(a))
    null = kernel(m)
    if null.nrows == 0:
        return null
    theta = next(x for x in field.elements() if field.conj(x) != x)
    # traces of beta * b lie in GF(q)^n and span the rational points
    vecs = []
    for b in null.rows:
        for beta in (1, theta):
            vecs.append(tuple(field.add(field.mul(beta, x), field.conj(field.mul(beta, x))) for x in b))
    r, rk, _ = rref(FFMatrix(field, vecs, len(a)))
    return r.take_rows(0, rk)


def _nonvanishing_combination(field: FiniteField, basis: FFMatrix, rng: random.Random, tries: int = 400) -> tuple[int, ...] | None:
    """A GF(q)-combination of ``basis`` rows with no zero entry, by greedy repair."""
    n = basis.ncols
    if any(not any(col) for col in zip(*basis.rows)):
        return None
    sub = [x for x in field.subfield() if x]
    f = field

    def combo(coeffs):
        out = [0] * n
        for c, row in zip(coeffs, basis.rows):
            if c:
                out = [f.add(x, f.mul(c, y)) for x, y in zip(out, row)]
        return out

    for _ in range(tries):
        lam = combo([rng.choice(sub + [0]) for _ in basis.rows])
        for _ in range(4 * n):
            zeros = [j for j, x in enumerate(lam) if not x]
            if not zeros:
                return tuple(lam)
            j = zeros[0]
            best = None
            for row in basis.rows:
                if not row[j]:
                    continue
                for c in sub:
                    cand = [f.add(x, f.mul(c, y)) for x, y in zip(lam, row)]
                    nz = sum(1 for x in cand if x)
                    if cand[j] and (best is None or nz > best[0]):
                        best = (nz, cand)
            if best is None:
                break
            lam = best[1]
    return None


def _witness_from_weights(field: FiniteField, k: int, a: Sequence[int], lam: Sequence[int]) -> GrsCode:
    q = field.q
    norm_root = {}
    for x in field.nonzero():
        norm_root.setdefault(field.pow(x, q + 1), x)
    w = [norm_root[x] for x in lam]
    v = []
    for j, aj in enumerate(a):
        u = 1
        for i, ai in enumerate(a):
            if i != j:
                u = field.mul(u, field.sub(aj, ai))
        v.append(field.div(field.inv(u), w[j]))
    return GrsCode(field, k, tuple(a), tuple(v))


def search_dual_containing(q: int, n: int, k: int, budget: int = 64, seed: int = 0,
                           distance_budget: int = DEFAULT_BUDGET) -> GrsCode | None:
    """Find a Hermitian dual-containing ``[n, k]`` GRS code over GF(q^2).

    Structured evaluation sets (subfield, unions of multiplicative cosets,
    conjugation orbits) are tried first, then ``budget`` seeded random sets.
    For each set, multipliers with ``w_j^{q+1}`` in the rational kernel of
    the Hermitian conditions are sought.  Returns a verified witness, or
    None; None is not a proof of non-existence.
    """
    field = hermitian_field(q)
    if not 1 <= k <= n <= field.order:
        raise InvalidCodeError(f"need 1 <= k <= n <= q^2, got n={n}, k={k}")
    if 2 * k < n:
        return None
    rng = random.Random(seed)
    s = n - k
    exps = _exponents(q, s)
    tried = 0
    for label, a in _candidate_sets(field, n, rng, budget):
        tried += 1
        if s == 0:
            code = GrsCode(field, k, a, (1,) * n)
        else:
            basis = _rational_kernel(field, a, exps)
            if basis.nrows == 0:
                continue
            lam = _nonvanishing_combination(field, basis, rng)
            if lam is None:
                continue
            code = _witness_from_weights(field, k, a, lam)
        if not is_hermitian_dual_containing(code):  # pragma: no cover - construction guarantees it
            log.warning("candidate %s failed the containment check", label)
            continue
        if field.order ** min(k, s) <= distance_budget and s:
            d = min_distance_bruteforce(code, distance_budget)
            if d != n - k + 1:  # pragma: no cover
                raise InvalidCodeError(f"witness has distance {d}, expected {n - k + 1}")
        log.info("witness for [%d,%d]_%d from %s after %d candidate sets", n, k, q * q, label, tried)
        return code
    return None
