"""Convolutional codes over GF(q^2) built by splitting a parity-check matrix.

A parity-check matrix ``H`` is cut into consecutive row blocks
``H_0, ..., H_mu``; padding every block with zero rows to the row count of
``H_0`` and summing ``H~_i D^i`` gives a polynomial generator ``G(D)``.
This module builds such generators, checks that they are reduced and
basic, reads off ``(n, k, gamma, mu)``, tests Hermitian self-orthogonality
and searches for free distances on both sides of the Hermitian dual.
"""

from __future__ import annotations

import dataclasses
import heapq
import itertools
from collections.abc import Iterator, Sequence
from math import comb
from typing import NamedTuple

from . import poly
from .errors import BudgetExceeded, FormatError, InvalidCodeError, ShapeError
from .galois import FiniteField, parse_field_descriptor
from .linear import DEFAULT_BUDGET, kernel_code_distance
from .matf import FFMatrix, _parse_matrix, kernel, rref
from .poly import Poly

DEFAULT_STATE_BUDGET = 1 << 20
DEFAULT_MINOR_LIMIT = 4096


@dataclasses.dataclass(frozen=True)
class PolyMatrix:
    """``G(D) = sum_t coeffs[t] D^t`` with trailing zero coefficients trimmed."""

    field: FiniteField
    nrows: int
    ncols: int
    coeffs: tuple[FFMatrix, ...]

    def __post_init__(self) -> None:
        cs = list(self.coeffs)
        for c in cs:
            if c.field != self.field or c.shape != (self.nrows, self.ncols):
                raise ShapeError("coefficient matrices must share field and shape")
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_entries(cls, field: FiniteField, entries: Sequence[Sequence[Poly]]) -> PolyMatrix:
        nrows, ncols = len(entries), len(entries[0])
        top = max((len(p) for r in entries for p in r), default=0)
        coeffs = []
        for t in range(top):
            coeffs.append(FFMatrix(field, [[p[t] if t < len(p) else 0 for p in r] for r in entries], ncols))
        return cls(field, nrows, ncols, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, t: int) -> FFMatrix:
        if 0 <= t < len(self.coeffs):
            return self.coeffs[t]
        return FFMatrix.zeros(self.field, self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> Poly:
        return poly.trim([c.rows[i][j] for c in self.coeffs])

    def entries(self) -> list[list[Poly]]:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def row(self, i: int) -> list[tuple[int, ...]]:
        """Coefficient vectors of row ``i``, trimmed to its own degree."""
        out = [c.rows[i] for c in self.coeffs]
        while out and not any(out[-1]):
            out.pop()
        return out

    def row_degrees(self) -> list[int]:
        return [len(self.row(i)) - 1 for i in range(self.nrows)]

    def leading_row_matrix(self) -> FFMatrix:
        """Row ``i`` is the coefficient of ``D^{gamma_i}`` in row ``i``."""
        rows = []
        for i in range(self.nrows):
            r = self.row(i)
            rows.append(r[-1] if r else (0,) * self.ncols)
        return FFMatrix(self.field, rows, self.ncols)

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols} {self.degree} {self.field.descriptor()}"]
        lines.extend(c.to_text().rstrip("\n") for c in self.coeffs)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> PolyMatrix:
        lines = [ln for ln in text.split("\n") if not ln.startswith("#")]
        while lines and not lines[0].strip():
            lines.pop(0)
        if not lines:
            raise FormatError("empty polynomial matrix record")
        head = lines.pop(0).split()
        if len(head) != 4:
            raise FormatError("polynomial matrix header must be 'rows cols degree field'")
        nrows, ncols, degree = (int(x) for x in head[:3])
        field = parse_field_descriptor(head[3])
        coeffs = []
        for _ in range(degree + 1):
            m, lines = _parse_matrix(lines)
            if m.shape != (nrows, ncols) or m.field != field:
                raise FormatError("coefficient block disagrees with the header")
            coeffs.append(m)
        if any(ln.strip() for ln in lines):
            raise FormatError("trailing content after polynomial matrix record")
        out = cls(field, nrows, ncols, tuple(coeffs))
        if out.degree != degree:
            raise FormatError("declared degree does not match the leading coefficient")
        return out


@dataclasses.dataclass(frozen=True)
class SplitSpec:
    """Row counts ``t_0, ..., t_mu`` of consecutive blocks, top to bottom."""

    row_counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(t) for t in self.row_counts)
        object.__setattr__(self, "row_counts", counts)
        if not counts:
            raise ShapeError("a split needs at least one block")
        if any(t < 1 for t in counts):
            raise ShapeError(f"block row counts must be positive, got {counts}")
        if any(t > counts[0] for t in counts[1:]):
            raise ShapeError(f"first block must be the largest, got {counts}")

    @property
    def kappa(self) -> int:
        return self.row_counts[0]

    @property
    def mu(self) -> int:
        return len(self.row_counts) - 1


def split_parity(h: FFMatrix, spec: SplitSpec | Sequence[int]) -> list[FFMatrix]:
    if not isinstance(spec, SplitSpec):
        spec = SplitSpec(tuple(spec))
    if sum(spec.row_counts) != h.nrows:
        raise ShapeError(f"split {spec.row_counts} does not cover {h.nrows} rows")
    blocks, start = [], 0
    for t in spec.row_counts:
        blocks.append(h.take_rows(start, start + t))
        start += t
    return blocks


def build_generator_poly(blocks: Sequence[FFMatrix]) -> PolyMatrix:
    if not blocks:
        raise ShapeError("no blocks")
    kappa = blocks[0].nrows
    for b in blocks[1:]:
        if b.nrows > kappa:
            raise ShapeError("block 0 must have the maximal row count")
        if b.ncols != blocks[0].ncols or b.field != blocks[0].field:
            raise ShapeError("blocks must share field and column count")
    return PolyMatrix(blocks[0].field, kappa, blocks[0].ncols, tuple(b.pad_rows(kappa) for b in blocks))


def unpad_blocks(g: PolyMatrix, row_counts: Sequence[int]) -> list[FFMatrix]:
    return [g.coeff(t).take_rows(0, r) for t, r in enumerate(row_counts)]


# -- reduced / basic ------------------------------------------------------------


class BasicReport(NamedTuple):
    basic: bool
    reduced: bool
    minor_gcd: Poly
    method: str
    detail: str

    def __bool__(self) -> bool:
        return self.basic and self.reduced


def maximal_minor_gcd(g: PolyMatrix, limit: int | None = None) -> tuple[Poly, bool]:
    """Monic gcd of the ``k x k`` minors; stops early once it is 1.

    Returns ``(gcd, complete)`` where ``complete`` says whether the value is
    final (all minors seen, or a unit reached).
    """
    f, k = g.field, g.nrows
    entries = g.entries()
    acc: Poly = poly.ZERO
    for count, cols in enumerate(itertools.combinations(range(g.ncols), k)):
        if limit is not None and count >= limit:
            return acc, False
        m = [[entries[i][j] for j in cols] for i in range(k)]
        acc = poly.gcd(f, acc, poly.det(f, m))
        if poly.is_unit(acc):
            return acc, True
    return acc, True


def column_reduced_diagonal(g: PolyMatrix) -> list[Poly]:
    """Diagonal of a lower-triangular form reached by unimodular column operations.

    Their product equals the gcd of maximal minors up to a unit.  Raises
    :class:`InvalidCodeError` when ``g`` is rank deficient.
    """
    f = g.field
    a = g.entries()
    k, n = g.nrows, g.ncols
    diag = []
    for r in range(k):
        while True:
            live = [c for c in range(r, n) if a[r][c]]
            if not live:
                raise InvalidCodeError("generator matrix is rank deficient over F[D]")
            p = min(live, key=lambda c: (len(a[r][c]), c))
            others = [c for c in live if c != p]
            if not others:
                break
            for c in others:
                quo, _ = poly.divmod_(f, a[r][c], a[r][p])
                if quo:
                    for i in range(k):
                        if a[i][p]:
                            a[i][c] = poly.sub(f, a[i][c], poly.mul(f, quo, a[i][p]))
        for i in range(k):
            a[i][r], a[i][p] = a[i][p], a[i][r]
        diag.append(a[r][r])
    return diag


def check_reduced_basic(g: PolyMatrix, minor_limit: int = DEFAULT_MINOR_LIMIT) -> BasicReport:
    """Decide whether ``g`` is basic (unit minor gcd) and reduced (full-rank leading rows)."""
    f = g.field
    lead_rank = rref(g.leading_row_matrix())[1]
    reduced = lead_rank == g.nrows
    total = comb(g.ncols, g.nrows)
    gcd, complete = maximal_minor_gcd(g, minor_limit)
    if complete:
        if not gcd:
            raise InvalidCodeError("generator matrix is rank deficient over F[D]")
        method = "minor-gcd"
    else:
        prod: Poly = (1,)
        for d in column_reduced_diagonal(g):
            prod = poly.mul(f, prod, d)
        gcd = poly.monic(f, prod)
        method = "column-reduction"
    basic = poly.is_unit(gcd)
    detail = (f"minor gcd degree {poly.deg(gcd)} via {method} ({total} maximal minors); "
              f"leading-row rank {lead_rank}/{g.nrows}")
    return BasicReport(basic, reduced, gcd, method, detail)


# -- convolutional codes ----------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ConvCode:
    """Code generated by a reduced basic ``gen``; ``blocks`` records its split, if any."""

    gen: PolyMatrix
    blocks: tuple[FFMatrix, ...] | None = None

    @classmethod
    def from_generator(cls, gen: PolyMatrix, blocks: Sequence[FFMatrix] | None = None, check: bool = True) -> ConvCode:
        if check:
            report = check_reduced_basic(gen)
            if not report:
                raise InvalidCodeError(f"generator is not reduced basic: {report.detail}")
        return cls(gen, tuple(blocks) if blocks is not None else None)

    @property
    def field(self) -> FiniteField:
        return self.gen.field

    @property
    def n(self) -> int:
        return self.gen.ncols

    @property
    def k(self) -> int:
        return self.gen.nrows

    @property
    def row_degrees(self) -> list[int]:
        return self.gen.row_degrees()

    @property
    def gamma(self) -> int:
        return sum(max(d, 0) for d in self.row_degrees)

    @property
    def mu(self) -> int:
        return max(self.row_degrees, default=0)

    @property
    def kappa(self) -> int:
        return self.blocks[0].nrows if self.blocks else self.k


def conv_from_split(h: FFMatrix, spec: SplitSpec | Sequence[int], check: bool = True) -> ConvCode:
    blocks = split_parity(h, spec)
    return ConvCode.from_generator(build_generator_poly(blocks), blocks, check=check)


def conv_params(c: ConvCode) -> tuple[int, int, int, int]:
    return (c.n, c.k, c.gamma, c.mu)


def conv_self_orthogonal(c: ConvCode) -> bool:
    """``G(D) conj(G)(1/D)^T == 0``, checked coefficient by coefficient."""
    coeffs = c.gen.coeffs
    mu = len(coeffs) - 1
    conj_t = [m.conj_transpose() for m in coeffs]
    for s in range(-mu, mu + 1):
        acc = FFMatrix.zeros(c.field, c.k, c.k)
        for t in range(len(coeffs)):
            if 0 <= t + s <= mu:
                acc = acc + coeffs[t] @ conj_t[t + s]
        if not acc.is_zero():
            return False
    return True


# -- free distance -----------------------------------------------------------------


class FreeDistance(NamedTuple):
    lower: int
    upper: int
    exact: bool


def _weight(v: Sequence[int]) -> int:
    return sum(1 for x in v if x)


class _Encoder:
    """Controller-form encoder: row ``i`` remembers its last ``gamma_i`` inputs."""

    def __init__(self, c: ConvCode) -> None:
        self.f = c.field
        self.n = c.n
        self.k = c.k
        self.deg = [max(d, 0) for d in c.row_degrees]
        self.rows = [c.gen.row(i) for i in range(c.k)]
        self.gamma = sum(self.deg)

    def output(self, state: tuple[int, ...], x: Sequence[int]) -> list[int]:
        f = self.f
        out = [0] * self.n
        pos = 0
        for i in range(self.k):
            taps = [x[i]] + list(state[pos:pos + self.deg[i]])
            pos += self.deg[i]
            for j, u in enumerate(taps):
                if u and j < len(self.rows[i]):
                    for col, g in enumerate(self.rows[i][j]):
                        if g:
                            out[col] = f.add(out[col], f.mul(u, g))
        return out

    def step(self, state: tuple[int, ...], x: Sequence[int]) -> tuple[int, ...]:
        nxt = []
        pos = 0
        for i in range(self.k):
            d = self.deg[i]
            if d:
                nxt.append(x[i])
                nxt.extend(state[pos:pos + d - 1])
            pos += d
        return tuple(nxt)


def _exact_free_distance(c: ConvCode) -> int:
    enc = _Encoder(c)
    q = c.field.order
    zero = (0,) * enc.gamma
    inputs = list(itertools.product(range(q), repeat=c.k))
    best = None
    dist: dict[tuple[int, ...], int] = {}
    heap: list[tuple[int, tuple[int, ...]]] = []
    for x in inputs[1:]:
        w = _weight(enc.output(zero, x))
        nxt = enc.step(zero, x)
        if nxt == zero:
            best = w if best is None else min(best, w)
        elif w < dist.get(nxt, 1 << 60):
            dist[nxt] = w
            heapq.heappush(heap, (w, nxt))
    while heap:
        d, state = heapq.heappop(heap)
        if best is not None and d >= best:
            break
        if d > dist[state]:
            continue
        for x in inputs:
            w = d + _weight(enc.output(state, x))
            if best is not None and w >= best:
                continue
            nxt = enc.step(state, x)
            if nxt == zero:
                best = w
            elif w < dist.get(nxt, 1 << 60):
                dist[nxt] = w
                heapq.heappush(heap, (w, nxt))
    if best is None:  # pragma: no cover - impossible for a reduced basic generator
        raise InvalidCodeError("no path returns to the zero state")
    return best


def encode(c: ConvCode, u: Sequence[Poly]) -> list[tuple[int, ...]]:
    """Frames of ``u(D) G(D)`` for an input row of polynomials."""
    f = c.field
    top = max((len(p) for p in u), default=0) + c.gen.degree
    frames = [[0] * c.n for _ in range(max(top, 0))]
    for i, p in enumerate(u):
        for s, coef in enumerate(p):
            if not coef:
                continue
            for t, g in enumerate(c.gen.row(i)):
                fr = frames[s + t]
                for col, x in enumerate(g):
                    if x:
                        fr[col] = f.add(fr[col], f.mul(coef, x))
    while frames and not any(frames[-1]):
        frames.pop()
    return [tuple(fr) for fr in frames]


def _sparse_inputs(k: int, span: int, q: int, budget: int) -> Iterator[list[Poly]]:
    slots = [(i, t) for i in range(k) for t in range(span + 1)]
    produced = 0
    for nnz in range(1, len(slots) + 1):
        for support in itertools.combinations(slots, nnz):
            if all(t != 0 for _, t in support):
                continue
            for vals in itertools.product(range(1, q), repeat=nnz):
                rows = [[0] * (span + 1) for _ in range(k)]
                for (i, t), val in zip(support, vals):
                    rows[i][t] = val
                yield [poly.trim(r) for r in rows]
                produced += 1
                if produced >= budget:
                    return


def free_distance_search(c: ConvCode, state_budget: int = DEFAULT_STATE_BUDGET, span_limit: int = 4,
                         lower_bound: int = 1, exact: bool | None = None,
                         input_budget: int = 1 << 16) -> FreeDistance:
    """Free distance of ``c``.

    Exact mode runs a uniform-cost search over the ``(q^2)^gamma`` encoder
    states.  Bounded mode encodes sparse inputs of degree at most
    ``span_limit`` (up to ``input_budget`` of them) for an upper bound and
    reports ``lower_bound`` as the certified floor.
    """
    states = c.field.order ** c.gamma
    if exact is None:
        exact = states <= state_budget
    if exact:
        if states > state_budget:
            raise BudgetExceeded(f"{states} states exceeds the state budget {state_budget}")
        d = _exact_free_distance(c)
        return FreeDistance(d, d, True)
    best = None
    for u in _sparse_inputs(c.k, span_limit, c.field.order, input_budget):
        w = sum(_weight(fr) for fr in encode(c, u))
        if w and (best is None or w < best):
            best = w
    if best is None:
        raise InvalidCodeError("no nonzero codeword found")
    lower = min(lower_bound, best)
    return FreeDistance(lower, best, lower == best)


class DualBounds(NamedTuple):
    """Certified range for the free distance of ``V^{perp H}`` and a floor for ``V``."""

    low: int
    high: int
    primal_floor: int


def free_distance_bounds_dual(c: ConvCode, blocks: Sequence[FFMatrix], dual_distance: int, distance: int,
                              block_distances: Sequence[int] | None = None,
                              budget: int = DEFAULT_BUDGET) -> DualBounds:
    """Bounds from the block distances of a split parity-check matrix.

    ``d_i`` is the minimum distance of ``{x : x H~_i^T = 0}``; it is found by
    enumeration unless supplied.  Returns ``low = min(d_0 + d_mu, d)``,
    ``high = d`` and ``primal_floor = dual_distance``.
    """
    if block_distances is None:
        block_distances = [kernel_code_distance(b, budget) for b in blocks]
    if len(blocks) == 1:
        d0 = block_distances[0]
        return DualBounds(d0, d0, dual_distance)
    low = min(block_distances[0] + block_distances[-1], distance)
    return DualBounds(low, distance, dual_distance)


# -- search on the dual side ---------------------------------------------------------


class RelativeDistance(NamedTuple):
    """Outcome of a bounded search for the lightest word of ``V^{perp H}`` outside ``V``.

    ``weight`` is None when nothing was found; every weight up to
    ``exhaustive_through`` has been ruled out within ``span_limit``.
    """

    weight: int | None
    witness: tuple[tuple[int, ...], ...] | None
    exhaustive_through: int
    span_limit: int


def _window_checks(c: ConvCode, span: int) -> FFMatrix:
    n, mu = c.n, c.gen.degree
    conj = [m.conj() for m in c.gen.coeffs]
    width = (span + 1) * n
    rows = []
    for s in range(-mu, span + 1):
        for r in range(c.k):
            row = [0] * width
            for t, m in enumerate(conj):
                frame = s + t
                if 0 <= frame <= span:
                    row[frame * n:(frame + 1) * n] = m.rows[r]
            if any(row):
                rows.append(row)
    return FFMatrix(c.field, rows, width)


def _window_generator(c: ConvCode, span: int) -> FFMatrix:
    n = c.n
    width = (span + 1) * n
    rows = []
    for i in range(c.k):
        g = c.gen.row(i)
        for shift in range(span + 2 - len(g)):
            row = [0] * width
            for t, vec in enumerate(g):
                row[(shift + t) * n:(shift + t + 1) * n] = vec
            rows.append(row)
    return FFMatrix(c.field, rows, width)


def relative_distance_search(c: ConvCode, span_limit: int, max_weight: int) -> RelativeDistance:
    """Lightest ``x in V^{perp H} \\ V`` whose frames fit in ``0..span_limit``.

    Supports are enumerated by increasing size, anchored in frame 0 (a time
    shift moves any word there).  A support ``S`` carries a dual codeword
    iff the check columns indexed by ``S`` are dependent; the kernel is then
    tested against the windowed generator to exclude words of ``V``.
    """
    checks = _window_checks(c, span_limit)
    gen_w = _window_generator(c, span_limit)
    gen_rank = rref(gen_w)[1] if gen_w.nrows else 0
    n, width = c.n, (span_limit + 1) * c.n
    cols = [checks.column(j) for j in range(width)]
    f = c.field
    for w in range(1, max_weight + 1):
        for first in range(n):
            for rest in itertools.combinations(range(first + 1, width), w - 1):
                support = (first,) + rest
                sub = FFMatrix(f, [[cols[j][i] for j in support] for i in range(checks.nrows)], w) \
                    if checks.nrows else FFMatrix.zeros(f, 0, w)
                if rref(sub)[1] == w:
                    continue
                for vec in kernel(sub).rows:
                    full = [0] * width
                    for j, x in zip(support, vec):
                        full[j] = x
                    if gen_w.nrows and rref(gen_w.vstack(FFMatrix(f, [full], width)))[1] == gen_rank:
                        continue
                    frames = tuple(tuple(full[t * n:(t + 1) * n]) for t in range(span_limit + 1))
                    return RelativeDistance(w, frames, w - 1, span_limit)
    return RelativeDistance(None, None, max_weight, span_limit)


def in_hermitian_dual(c: ConvCode, frames: Sequence[Sequence[int]]) -> bool:
    """Whether the finite sequence ``frames`` is Hermitian-orthogonal to every shift of every row."""
    span = len(frames) - 1
    checks = _window_checks(c, span)
    flat = [x for fr in frames for x in fr]
    return not any(checks.apply(flat))
