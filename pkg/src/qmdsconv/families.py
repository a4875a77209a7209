"""Parameter families of Hermitian dual-containing GRS codes and the quantum
MDS convolutional codes built from them.

Family ids 1-7 are the arithmetic families keyed on the shape of ``q``
(``2am +- 1`` or ``2ab +- 1``); id 8 takes a divisor ``t`` of ``q^2 - 1``
and id 9 a partition of the length.  Each classical family gives
``[n, n - s, s + 1]_{q^2}`` codes for ``1 <= s <= s_max``; the memory-one
construction turns them into ``[(n, n - 2t0, 1; s - t0, s + 1)]_q`` codes and
the memory-two construction into ``[(n, n - 2s + 4, 2; 2, s + 1)]_q`` codes.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
from collections.abc import Iterator, Sequence
from typing import Literal, NamedTuple

from .errors import FormatError, PreconditionError
from .galois import prime_power
from .quantum import QConvParams, mds_bound

Construction = Literal["mu1", "mu2"]
CONSTRUCTIONS: tuple[Construction, ...] = ("mu1", "mu2")
T0_RULE = "s/2<=t0<s"
CSV_HEADER = ["q", "a", "b", "c", "n", "k", "mu", "gamma", "dfree", "s_min", "s_max", "t0_rule", "verdict"]


class FamilyError(PreconditionError):
    """A family spec violates one of its arithmetic or range constraints."""


@dataclasses.dataclass(frozen=True, order=True)
class FamilySpec:
    construction: Construction
    family_id: int
    q: int
    a: int | None = None
    b: int | None = None
    c: int | None = None
    c1: int | None = None
    c2: int | None = None
    c3: int | None = None
    t: int | None = None
    r: int | None = None
    plus_one: bool = False
    parts: tuple[int, ...] | None = None

    def params_text(self) -> str:
        out = []
        for name in ("a", "b", "c", "c1", "c2", "c3", "t", "r"):
            val = getattr(self, name)
            if val is not None:
                out.append(f"{name}={val}")
        if self.family_id == 8:
            out.append(f"plus_one={int(self.plus_one)}")
        if self.parts is not None:
            out.append("parts=" + ",".join(map(str, self.parts)))
        return " ".join(out)


@dataclasses.dataclass(frozen=True)
class ClassicalFamily:
    """``[n, n - s, s + 1]_{q^2}`` for ``s_min <= s <= s_max``."""

    q: int
    n: int
    s_min: int
    s_max: int
    m: int | None = None
    c1: int | None = None

    def triple(self, s: int) -> tuple[int, int, int]:
        return (self.n, self.n - s, s + 1)


def _require(cond: bool, constraint: str, detail: str = "") -> None:
    if not cond:
        raise FamilyError(constraint, detail)


def _need(spec: FamilySpec, *names: str) -> None:
    for name in names:
        _require(getattr(spec, name) is not None, f"parameter {name} required for family {spec.family_id}")


def _odd_prime_power(q: int) -> None:
    _require(prime_power(q) is not None, "q is a prime power", f"q={q}")
    _require(q % 2 == 1, "q is odd", f"q={q}")


def _m_for(q: int, a: int, sign: int) -> int:
    """``m`` with ``q = 2am + sign``."""
    _require(a >= 1, "a >= 1", f"a={a}")
    num = q - sign
    form = f"q = 2am{'+' if sign > 0 else '-'}1"
    _require(num % (2 * a) == 0 and num // (2 * a) >= 1, form, f"q={q}, a={a}")
    return num // (2 * a)


def _c1_piecewise(a: int, b: int, c: int) -> int:
    return c if c <= a + b - 1 else c // 2


def enumerate_classical(spec: FamilySpec) -> ClassicalFamily:
    """Length and distance range of the classical family named by ``spec``."""
    q, fid = spec.q, spec.family_id
    big = q * q - 1
    m = c1 = None
    if fid in (1, 2, 3, 4):
        _odd_prime_power(q)
        if fid in (1, 3):
            _need(spec, "a", "b")
        else:
            _need(spec, "a", "b", "c")
        a, b = spec.a, spec.b
        m = _m_for(q, a, +1 if fid in (1, 2) else -1)
        unit = big // (2 * a)
        if fid in (1, 3):
            _require(1 <= b <= 2 * a, "1 <= b <= 2a", f"b={b}, a={a}")
            n = b * unit
            s_max = (a + 1) * m - (0 if fid == 1 else 2)
        else:
            c = spec.c
            _require(b >= 0 and c >= 0, "b, c >= 0", f"b={b}, c={c}")
            _require(1 <= b + c <= 2 * a, "1 <= b+c <= 2a", f"b={b}, c={c}, a={a}")
            shift = q + 1 if fid == 2 else q - 1
            n = b * unit + c * (unit - shift)
            s_max = (a + 1) * m - (1 if fid == 2 else 3)
    elif fid == 5:
        _odd_prime_power(q)
        _need(spec, "a", "c1", "c2", "c3")
        a = spec.a
        m = _m_for(q, a, -1)
        _require(a % 2 == 1, "a is odd", f"a={a}")
        x1, x2, x3 = spec.c1, spec.c2, spec.c3
        _require(min(x1, x2, x3) >= 0, "c1, c2, c3 >= 0")
        _require(x1 + x2 <= a, "c1+c2 <= a", f"c1={x1}, c2={x2}, a={a}")
        _require(x1 + x3 <= a, "c1+c3 <= a", f"c1={x1}, c3={x3}, a={a}")
        _require(x1 + x2 + x3 >= 1, "c1+c2+c3 >= 1")
        n = (x2 + x3) * (big // (2 * a)) + x1 * (big // a - q + 1)
        s_max = (a + 1) * m - 2
    elif fid in (6, 7):
        _odd_prime_power(q)
        _need(spec, "a", "b", "c")
        a, b, c = spec.a, spec.b, spec.c
        sign = -1 if fid == 6 else +1
        _require(a >= 1 and b >= 1, "a, b >= 1", f"a={a}, b={b}")
        _require(math.gcd(a, b) == 1, "gcd(a,b) = 1", f"a={a}, b={b}")
        _require(a % 2 == 1 and b % 2 == 1, "a and b odd", f"a={a}, b={b}")
        _require(q == 2 * a * b + sign, f"q = 2ab{'-' if sign < 0 else '+'}1", f"q={q}, a={a}, b={b}")
        _require(1 <= c <= 2 * (a + b - 1), "1 <= c <= 2(a+b-1)", f"c={c}")
        c1 = _c1_piecewise(a, b, c)
        n = c * (q + sign)
        s_max = a * b + c1 - (2 if fid == 6 else 0)
    elif fid == 8:
        _require(prime_power(q) is not None, "q is a prime power", f"q={q}")
        _need(spec, "t", "r")
        t, r = spec.t, spec.r
        _require(t >= 1 and big % t == 0, "t divides q^2-1", f"t={t}")
        _require(1 <= r <= big // t, "1 <= r <= (q^2-1)/t", f"r={r}, t={t}")
        n = r * t + (1 if spec.plus_one else 0)
        s_max = (t - 1) // (q + 1)
    elif fid == 9:
        _require(prime_power(q) is not None, "q is a prime power", f"q={q}")
        _need(spec, "parts")
        parts = spec.parts
        _require(1 <= len(parts) <= q, "1 <= t <= q", f"t={len(parts)}")
        _require(all(2 <= p <= q for p in parts), "2 <= n_i <= q", f"parts={parts}")
        n = sum(parts)
        _require(2 <= n <= q * q, "2 <= n <= q^2", f"n={n}")
        s_max = min(parts) // 2
    else:
        raise FamilyError("family id in 1..9", f"got {fid}")
    _require(n <= q * q, "n <= q^2", f"n={n}")
    _require(n >= 2, "n >= 2", f"n={n}")
    _require(s_max >= 1, "nonempty s range", f"s_max={s_max}")
    return ClassicalFamily(q, n, 1, s_max, m, c1)


@dataclasses.dataclass(frozen=True)
class FamilyRow:
    spec: FamilySpec
    n: int
    s_min: int
    s_max: int
    template: str
    t0_rule: str | None
    empty_s: tuple[int, ...]

    @property
    def s_range(self) -> str:
        return f"{self.s_min}<=s<={self.s_max}"

    @property
    def empty(self) -> bool:
        return not any(True for _ in self.instantiations())

    def instantiations(self) -> Iterator[Instance]:
        q, n = self.spec.q, self.n
        for s in range(self.s_min, self.s_max + 1):
            if s in self.empty_s:
                continue
            if self.spec.construction == "mu1":
                for t0 in range((s + 1) // 2, s):
                    yield Instance(q, s, t0, n, n - 2 * t0, 1, s - t0, s + 1)
            else:
                yield Instance(q, s, None, n, n - 2 * s + 4, 2, 2, s + 1)


class Instance(NamedTuple):
    """One ``(s, t0)`` choice of a family row and the code parameters it promises."""

    q: int
    s: int
    t0: int | None
    n: int
    k: int
    mu: int
    gamma: int
    d: int

    def params(self) -> QConvParams:
        return QConvParams(self.q, self.n, self.k, self.mu, self.gamma, self.d, self.d, mds=True)


def enumerate_quantum(spec: FamilySpec) -> FamilyRow:
    """The quantum family obtained by feeding the classical family to a construction."""
    cl = enumerate_classical(spec)
    n, q = cl.n, spec.q
    if spec.construction == "mu1":
        s_min = 1
        # s=1 leaves no t0 with s/2 <= t0 < s; s=n/2 would mean k=n/2
        empty = tuple(s for s in range(s_min, cl.s_max + 1) if (s + 1) // 2 >= s or 2 * s == n)
        template = f"[({n},{n}-2t0,1;s-t0,s+1)]_{q}"
        rule = T0_RULE
    elif spec.construction == "mu2":
        s_min = 3
        _require(cl.s_max >= s_min, "3 <= s", f"s_max={cl.s_max}")
        empty = tuple(s for s in range(s_min, cl.s_max + 1) if 2 * s >= n)
        template = f"[({n},{n + 4}-2s,2;2,s+1)]_{q}"
        rule = None
    else:
        raise FamilyError("construction is mu1 or mu2", f"got {spec.construction!r}")
    return FamilyRow(spec, n, s_min, cl.s_max, template, rule, empty)


# -- published tables ----------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class PublishedRow:
    q: int
    a: int
    b: int
    c: int | None
    n: int
    s_max: int


PUBLISHED_ROWS: tuple[PublishedRow, ...] = (
    PublishedRow(17, 1, 2, None, 288, 16),
    PublishedRow(17, 2, 2, 1, 198, 11),
    PublishedRow(11, 2, 4, None, 120, 7),
    PublishedRow(23, 3, 3, 2, 394, 13),
    PublishedRow(29, 3, 5, 10, 300, 20),
    PublishedRow(31, 3, 5, 10, 320, 20),
)

# both tables list the same (q, a, b, c) rows; they differ only in the construction
PUBLISHED_TABLES: dict[Construction, tuple[PublishedRow, ...]] = {"mu1": PUBLISHED_ROWS, "mu2": PUBLISHED_ROWS}


@dataclasses.dataclass(frozen=True)
class Verdict:
    match: bool
    family_id: int
    n: int
    s_min: int
    s_max: int
    row: FamilyRow

    def text(self) -> str:
        if self.match:
            return "match"
        return f"mismatch(family={self.family_id};n={self.n};s_max={self.s_max})"


def validate_table_row(row: PublishedRow, construction: Construction = "mu1") -> Verdict:
    """Recompute ``n`` and the ``s`` range of a published row from the families it fits."""
    ids = (1, 3) if row.c is None else (2, 4, 6, 7)
    candidates = []
    for fid in ids:
        spec = FamilySpec(construction, fid, row.q, a=row.a, b=row.b, c=row.c)
        try:
            candidates.append((fid, enumerate_quantum(spec)))
        except FamilyError:
            continue
    if not candidates:
        raise FamilyError("published row fits a family", f"no family accepts q={row.q}, a={row.a}, b={row.b}, c={row.c}")
    for fid, fr in candidates:
        if (fr.n, fr.s_max) == (row.n, row.s_max):
            return Verdict(True, fid, fr.n, fr.s_min, fr.s_max, fr)
    fid, fr = candidates[0]
    return Verdict(False, fid, fr.n, fr.s_min, fr.s_max, fr)


def _published_cells(row: PublishedRow, construction: Construction) -> tuple[str, str, str, str]:
    """Template, s-range, k and t0 columns exactly as printed."""
    if construction == "mu1":
        return (f"[({row.n},{row.n}-2t0,1;s-t0,s+1)]_{row.q}", f"1<=s<={row.s_max}", f"{row.n}-2t0", T0_RULE)
    return (f"[({row.n},{row.n + 4}-2s,2;2,s+1)]_{row.q}", f"3<=s<={row.s_max}", f"{row.n + 4}-2s", "")


def table_rows(construction: Construction) -> list[dict[str, str]]:
    """One record per published row: regenerated when it matches, as printed otherwise."""
    out = []
    for row in PUBLISHED_TABLES[construction]:
        verdict = validate_table_row(row, construction)
        template, s_range, k, rule = _published_cells(row, construction)
        n, s_min, s_max = row.n, (1 if construction == "mu1" else 3), row.s_max
        if verdict.match:
            fr = verdict.row
            template, s_range, rule = fr.template, fr.s_range, fr.t0_rule or ""
            n, s_min, s_max = fr.n, fr.s_min, fr.s_max
            k = f"{fr.n}-2t0" if construction == "mu1" else f"{fr.n + 4}-2s"
        out.append({
            "q": str(row.q), "a": str(row.a), "b": str(row.b), "c": "" if row.c is None else str(row.c),
            "n": str(n), "k": k, "mu": "1" if construction == "mu1" else "2",
            "gamma": "s-t0" if construction == "mu1" else "2", "dfree": "s+1",
            "s_min": str(s_min), "s_max": str(s_max), "t0_rule": rule,
            "template": template, "s_range": s_range, "verdict": verdict.text(),
        })
    return out


def emit_tables(fmt: Literal["markdown", "csv"] = "markdown") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for construction in CONSTRUCTIONS:
            for rec in table_rows(construction):
                writer.writerow([rec[h] for h in CSV_HEADER])
        return buf.getvalue()
    if fmt != "markdown":
        raise ValueError(f"unknown table format {fmt!r}")
    lines = []
    for number, construction in ((1, "mu1"), (2, "mu2")):
        lines.append(f"Table {number}: quantum MDS convolutional codes, memory {number}")
        lines.append("")
        cols = ["q", "a", "b", "c", "[(n,k,mu;gamma,d')]_q", "s"] + (["t0"] if construction == "mu1" else []) + ["verdict"]
        lines.append("| " + " | ".join(cols) + " |")
        lines.append("|" + "|".join("---" for _ in cols) + "|")
        for rec in table_rows(construction):
            cells = [rec["q"], rec["a"], rec["b"], rec["c"] or "-", rec["template"], rec["s_range"]]
            if construction == "mu1":
                cells.append(rec["t0_rule"])
            cells.append(rec["verdict"])
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
    return "\n".join(lines)


# -- grids -------------------------------------------------------------------------


def prime_powers(upto: int) -> list[int]:
    return [x for x in range(2, upto + 1) if prime_power(x) is not None]


def _balanced_parts(n: int, q: int) -> tuple[int, ...] | None:
    """Partition of ``n`` into at most ``q`` parts in ``[2, q]`` with the largest minimum."""
    t = -(-n // q)
    if t > q or n // t < 2:
        return None
    base, extra = divmod(n, t)
    return tuple([base + 1] * extra + [base] * (t - extra))


def family_grid(q_max: int, construction: Construction) -> Iterator[FamilySpec]:
    """Every valid spec for ids 1-8 with ``q <= q_max``; id 9 uses one balanced
    partition per length, which attains the largest ``s`` range for that length."""
    for q in prime_powers(q_max):
        if q % 2:
            for a in range(1, (q + 1) // 2 + 1):
                for fid, sign in ((1, 1), (2, 1), (3, -1), (4, -1), (5, -1)):
                    if (q - sign) % (2 * a) or (q - sign) // (2 * a) < 1:
                        continue
                    if fid in (1, 3):
                        specs = (FamilySpec(construction, fid, q, a=a, b=b) for b in range(1, 2 * a + 1))
                    elif fid in (2, 4):
                        specs = (FamilySpec(construction, fid, q, a=a, b=b, c=c)
                                 for b in range(0, 2 * a + 1) for c in range(0, 2 * a + 1 - b) if b + c >= 1)
                    else:
                        if a % 2 == 0:
                            continue
                        specs = (FamilySpec(construction, 5, q, a=a, c1=x1, c2=x2, c3=x3)
                                 for x1 in range(a + 1) for x2 in range(a + 1 - x1) for x3 in range(a + 1 - x1)
                                 if x1 + x2 + x3 >= 1)
                    yield from specs
            for fid, sign in ((6, -1), (7, 1)):
                ab = (q - sign) // 2
                if (q - sign) % 2:
                    continue
                for a in range(1, ab + 1):
                    if ab % a:
                        continue
                    b = ab // a
                    if math.gcd(a, b) != 1 or a % 2 == 0 or b % 2 == 0:
                        continue
                    for c in range(1, 2 * (a + b - 1) + 1):
                        yield FamilySpec(construction, fid, q, a=a, b=b, c=c)
        big = q * q - 1
        for t in range(1, big + 1):
            if big % t:
                continue
            for r in range(1, big // t + 1):
                for plus in (False, True):
                    yield FamilySpec(construction, 8, q, t=t, r=r, plus_one=plus)
        for n in range(2, q * q + 1):
            parts = _balanced_parts(n, q)
            if parts is not None:
                yield FamilySpec(construction, 9, q, parts=parts)


def grid_rows(q_max: int, construction: Construction) -> Iterator[FamilyRow]:
    """Rows for every grid spec that passes validation."""
    for spec in family_grid(q_max, construction):
        try:
            yield enumerate_quantum(spec)
        except FamilyError:
            continue


def check_bound_equality(row: FamilyRow) -> list[tuple[int, int | None]]:
    """Instantiations of ``row`` whose MDS bound is not exactly ``s + 1`` (empty when all hold)."""
    return [(i.s, i.t0) for i in row.instantiations() if mds_bound(i.n, i.k, i.gamma) != i.d]


# -- text config -------------------------------------------------------------------


def parse_family_grid(text: str) -> list[FamilySpec]:
    """Parse lines ``construction id q key=value ...``; ``#`` starts a comment."""
    specs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) < 3:
            raise FormatError(f"line {lineno}: expected 'construction id q [params]'")
        kwargs: dict = {}
        for item in tok[3:]:
            key, _, val = item.partition("=")
            if key == "parts":
                kwargs[key] = tuple(int(x) for x in val.split(","))
            elif key == "plus_one":
                kwargs[key] = val not in ("0", "false", "no")
            elif key in ("a", "b", "c", "c1", "c2", "c3", "t", "r"):
                kwargs[key] = int(val)
            else:
                raise FormatError(f"line {lineno}: unknown parameter {key!r}")
        if tok[0] not in CONSTRUCTIONS:
            raise FormatError(f"line {lineno}: construction must be mu1 or mu2")
        specs.append(FamilySpec(tok[0], int(tok[1]), int(tok[2]), **kwargs))
    return sorted(specs, key=_order_key)


def _order_key(spec: FamilySpec) -> tuple:
    return (spec.construction, spec.family_id, spec.q, spec.params_text())


def render_family_rows(rows: Sequence[FamilyRow], fmt: Literal["markdown", "csv"] = "markdown") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["construction", "family", "q", "params", "template", "s_min", "s_max", "t0_rule", "empty"])
        for r in rows:
            writer.writerow([r.spec.construction, r.spec.family_id, r.spec.q, r.spec.params_text(), r.template,
                             r.s_min, r.s_max, r.t0_rule or "", int(r.empty)])
        return buf.getvalue()
    lines = ["| construction | family | q | params | code | s | t0 |", "|---|---|---|---|---|---|---|"]
    for r in rows:
        lines.append(f"| {r.spec.construction} | {r.spec.family_id} | {r.spec.q} | {r.spec.params_text()} | "
                     f"{r.template} | {r.s_range} | {r.t0_rule or '-'} |")
    return "\n".join(lines) + "\n"
