"""Dense matrices over a finite field.

Entries are element indices (see :mod:`qmdsconv.galois`).  Matrices are
immutable; every operation returns a new matrix.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import FieldError, FormatError, ShapeError
from .galois import FieldElement, FiniteField, parse_field_descriptor


class FFMatrix:
    """An ``nrows x ncols`` matrix over ``field``, stored row-major."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: FiniteField, rows: Iterable[Sequence[int]], ncols: int | None = None) -> None:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ShapeError("column count required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ShapeError(f"ragged rows: expected {ncols} entries, got {len(r)}")
            for x in r:
                if not 0 <= x < field.order:
                    raise FieldError(f"entry {x} outside GF({field.order})")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("FFMatrix is immutable")

    @classmethod
    def _trusted(cls, field: FiniteField, rows: tuple[tuple[int, ...], ...], ncols: int) -> FFMatrix:
        m = object.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        return m

    @classmethod
    def zeros(cls, field: FiniteField, nrows: int, ncols: int) -> FFMatrix:
        return cls._trusted(field, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> FFMatrix:
        return cls._trusted(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_elements(cls, rows: Sequence[Sequence[FieldElement]]) -> FFMatrix:
        field = rows[0][0].field
        for r in rows:
            for x in r:
                if x.field != field:
                    raise FieldError("matrix entries from different fields")
        return cls(field, [[x.index for x in r] for r in rows])

    # -- basic access ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self.rows[i][j])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FFMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"FFMatrix({self.nrows}x{self.ncols} over GF({self.field.order}), {list(map(list, self.rows))})"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    # -- structural -----------------------------------------------------------

    def transpose(self) -> FFMatrix:
        rows = tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols))
        return FFMatrix._trusted(self.field, rows, self.nrows)

    @property
    def T(self) -> FFMatrix:
        return self.transpose()

    def conj(self) -> FFMatrix:
        """Entrywise conjugation x -> x^q (requires square order)."""
        c = self.field.conj
        return FFMatrix._trusted(self.field, tuple(tuple(c(x) for x in r) for r in self.rows), self.ncols)

    def conj_transpose(self) -> FFMatrix:
        return self.conj().transpose()

    def take_rows(self, start: int, stop: int) -> FFMatrix:
        return FFMatrix._trusted(self.field, self.rows[start:stop], self.ncols)

    def select_rows(self, idx: Iterable[int]) -> FFMatrix:
        return FFMatrix._trusted(self.field, tuple(self.rows[i] for i in idx), self.ncols)

    def select_columns(self, idx: Sequence[int]) -> FFMatrix:
        return FFMatrix._trusted(self.field, tuple(tuple(r[j] for j in idx) for r in self.rows), len(idx))

    def pad_rows(self, nrows: int) -> FFMatrix:
        """Append zero rows at the bottom up to ``nrows`` rows."""
        if nrows < self.nrows:
            raise ShapeError(f"cannot pad {self.nrows} rows down to {nrows}")
        extra = tuple((0,) * self.ncols for _ in range(nrows - self.nrows))
        return FFMatrix._trusted(self.field, self.rows + extra, self.ncols)

    def vstack(self, *others: FFMatrix) -> FFMatrix:
        rows = list(self.rows)
        for o in others:
            self._same_field(o)
            if o.ncols != self.ncols:
                raise ShapeError("vstack needs equal column counts")
            rows.extend(o.rows)
        return FFMatrix._trusted(self.field, tuple(rows), self.ncols)

    def hstack(self, *others: FFMatrix) -> FFMatrix:
        for o in others:
            self._same_field(o)
            if o.nrows != self.nrows:
                raise ShapeError("hstack needs equal row counts")
        rows = tuple(sum((o.rows[i] for o in others), self.rows[i]) for i in range(self.nrows))
        return FFMatrix._trusted(self.field, rows, self.ncols + sum(o.ncols for o in others))

    # -- arithmetic -----------------------------------------------------------

    def _same_field(self, other: FFMatrix) -> None:
        if other.field != self.field:
            raise FieldError("matrices over different fields")

    def __add__(self, other: FFMatrix) -> FFMatrix:
        self._same_field(other)
        if other.shape != self.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        add = self.field.add
        rows = tuple(tuple(add(x, y) for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return FFMatrix._trusted(self.field, rows, self.ncols)

    def scale(self, c: int) -> FFMatrix:
        mul = self.field.mul
        return FFMatrix._trusted(self.field, tuple(tuple(mul(c, x) for x in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: FFMatrix) -> FFMatrix:
        self._same_field(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        dot = self.field.dot
        cols = [other.column(j) for j in range(other.ncols)]
        rows = tuple(tuple(dot(r, c) for c in cols) for r in self.rows)
        return FFMatrix._trusted(self.field, rows, other.ncols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """``self @ vec`` for a column vector given as a sequence."""
        if len(vec) != self.ncols:
            raise ShapeError("vector length does not match column count")
        dot = self.field.dot
        return tuple(dot(r, vec) for r in self.rows)

    def vec_mul(self, vec: Sequence[int]) -> tuple[int, ...]:
        """``vec @ self`` for a row vector given as a sequence."""
        if len(vec) != self.nrows:
            raise ShapeError("vector length does not match row count")
        f = self.field
        out = [0] * self.ncols
        for c, r in zip(vec, self.rows):
            if c:
                for j, x in enumerate(r):
                    if x:
                        out[j] = f.add(out[j], f.mul(c, x))
        return tuple(out)

    # -- elimination ----------------------------------------------------------

    def rref(self) -> tuple[FFMatrix, int, list[int]]:
        return rref(self)

    def rank(self) -> int:
        return rref(self)[1]

    def kernel(self) -> FFMatrix:
        return kernel(self)

    def row_space_contains(self, vec: Sequence[int]) -> bool:
        return self.rank() == self.vstack(FFMatrix(self.field, [vec], self.ncols)).rank()

    # -- text format ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols} {self.field.descriptor()}"]
        lines.extend(" ".join(map(str, r)) for r in self.rows)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> FFMatrix:
        m, rest = _parse_matrix(text.split("\n"))
        if any(line.strip() for line in rest):
            raise FormatError("trailing content after matrix record")
        return m


def _parse_matrix(lines: list[str]) -> tuple[FFMatrix, list[str]]:
    lines = list(lines)
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise FormatError("empty matrix record")
    head = lines.pop(0).split()
    if len(head) != 3:
        raise FormatError(f"matrix header must be 'rows cols field', got {head!r}")
    try:
        nrows, ncols = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError(f"bad matrix header {head!r}") from exc
    field = parse_field_descriptor(head[2])
    tokens: list[int] = []
    while len(tokens) < nrows * ncols:
        if not lines:
            raise FormatError("matrix record truncated")
        tokens.extend(int(t) for t in lines.pop(0).split())
    if len(tokens) != nrows * ncols:
        raise FormatError("matrix record has too many entries on its last row")
    rows = [tokens[i * ncols:(i + 1) * ncols] for i in range(nrows)]
    return FFMatrix(field, rows, ncols), lines


def rref(m: FFMatrix) -> tuple[FFMatrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns.

    Pivots are chosen as the first nonzero entry at or below the current
    row, scanning columns left to right.
    """
    f = m.field
    a = [list(r) for r in m.rows]
    pivots: list[int] = []
    row = 0
    for col in range(m.ncols):
        if row == m.nrows:
            break
        piv = next((i for i in range(row, m.nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = f.inv(a[row][col])
        if inv != 1:
            a[row] = [f.mul(inv, x) for x in a[row]]
        prow = a[row]
        for i in range(m.nrows):
            c = a[i][col]
            if i != row and c:
                nc = f.neg(c)
                a[i] = [f.add(x, f.mul(nc, y)) if y else x for x, y in zip(a[i], prow)]
        pivots.append(col)
        row += 1
    return FFMatrix._trusted(f, tuple(map(tuple, a)), m.ncols), len(pivots), pivots


def rank(m: FFMatrix) -> int:
    return rref(m)[1]


def kernel(m: FFMatrix) -> FFMatrix:
    """Basis (as rows) of the right null space ``{x : m x^T = 0}``.

    One basis vector per free column, in increasing column order, with a 1
    in that free position.
    """
    f = m.field
    r, rk, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        x = [0] * m.ncols
        x[free] = 1
        for i, pc in enumerate(pivots):
            x[pc] = f.neg(r.rows[i][free])
        basis.append(tuple(x))
    return FFMatrix._trusted(f, tuple(basis), m.ncols)


def conj_transpose(m: FFMatrix) -> FFMatrix:
    if m.field.q is None:
        raise FieldError(f"GF({m.field.order}) is not of square order")
    return m.conj_transpose()
