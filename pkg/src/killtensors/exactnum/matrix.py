"""Sparse matrices over the rationals with exact rank and null space.

Elimination is fraction-free: every working row is kept as a primitive
integer vector (gcd of entries 1) and rows are combined by integer
cross-multiplication, so no rational arithmetic happens inside the loop.
"""

from __future__ import annotations

import heapq
from collections import Counter
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping

IntRow = dict  # column -> nonzero int


class ExactMatrix:
    """Immutable sparse ``rows x cols`` matrix with nonzero Fraction entries.

    Entries are held row-wise: ``self._data[r]`` maps column to value.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, Fraction]] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if not isinstance(v, Rational):
                raise TypeError("ExactMatrix entries must be exact rationals")
            if v:
                data.setdefault(r, {})[c] = Fraction(v)
        self._data = data

    @classmethod
    def _from_row_dicts(cls, rows: int, cols: int, data: dict[int, dict[int, Fraction]]) -> ExactMatrix:
        m = cls.__new__(cls)
        m.rows, m.cols = rows, cols
        m._data = {r: d for r, d in data.items() if d}
        return m

    @classmethod
    def from_dense(cls, dense) -> ExactMatrix:
        dense = [list(r) for r in dense]
        cols = len(dense[0]) if dense else 0
        return cls(len(dense), cols, {(i, j): v for i, r in enumerate(dense) for j, v in enumerate(r)})

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Mapping[int, object]]) -> ExactMatrix:
        columns = list(columns)
        data: dict[int, dict[int, Fraction]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if not 0 <= i < rows:
                    raise IndexError(f"row index {i} outside {rows}")
                if v:
                    data.setdefault(i, {})[j] = Fraction(v)
        return cls._from_row_dicts(rows, len(columns), data)

    @classmethod
    def from_rows(cls, cols: int, rows: Iterable[Mapping[int, object]]) -> ExactMatrix:
        data = {}
        rows = list(rows)
        for i, row in enumerate(rows):
            d = {}
            for j, v in row.items():
                if not 0 <= j < cols:
                    raise IndexError(f"column index {j} outside {cols}")
                if v:
                    d[j] = Fraction(v)
            data[i] = d
        return cls._from_row_dicts(len(rows), cols, data)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return sum(len(d) for d in self._data.values())

    def __getitem__(self, idx) -> Fraction:
        r, c = idx
        return self._data.get(r, {}).get(c, Fraction(0))

    def entries(self):
        """Iterate ``((row, col), value)`` over stored entries in row-major order."""
        for r in sorted(self._data):
            d = self._data[r]
            for c in sorted(d):
                yield (r, c), d[c]

    def row(self, r: int) -> dict[int, Fraction]:
        return dict(self._data.get(r, {}))

    def column(self, c: int) -> dict[int, Fraction]:
        return {r: d[c] for r, d in self._data.items() if c in d}

    def columns(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for r, d in self._data.items():
            for c, v in d.items():
                out[c][r] = v
        return out

    def transpose(self) -> ExactMatrix:
        return ExactMatrix._from_row_dicts(self.cols, self.rows, dict(enumerate(self.columns())))

    T = property(transpose)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: dict[int, dict[int, Fraction]] = {}
        for r, d in self._data.items():
            acc: dict[int, Fraction] = {}
            for k, a in d.items():
                for c, b in other._data.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return ExactMatrix._from_row_dicts(self.rows, other.cols, out)

    def scale_rows(self, factors: Mapping[int, object]) -> ExactMatrix:
        data = {r: {c: v * Fraction(factors.get(r, 1)) for c, v in d.items()} for r, d in self._data.items()}
        return ExactMatrix._from_row_dicts(self.rows, self.cols, data)

    def permute(self, row_perm=None, col_perm=None) -> ExactMatrix:
        """Move row i to ``row_perm[i]`` and column j to ``col_perm[j]``."""
        rp = row_perm or range(self.rows)
        cp = col_perm or range(self.cols)
        data: dict[int, dict[int, Fraction]] = {}
        for r, d in self._data.items():
            data[rp[r]] = {cp[c]: v for c, v in d.items()}
        return ExactMatrix._from_row_dicts(self.rows, self.cols, data)

    def is_zero(self) -> bool:
        return not self._data

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries():
            out[r][c] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def integer_rows(self) -> list[IntRow]:
        """Nonzero rows scaled to primitive integer vectors (row space is unchanged)."""
        return [_primitive(d) for _, d in sorted(self._data.items())]

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> ExactMatrix:
        return kernel_basis(self)

    # -- serialization -------------------------------------------------
    def dumps(self) -> str:
        """Sparse text: header ``rows cols`` then ``row col num/den`` per entry."""
        lines = [f"{self.rows} {self.cols}"]
        for (r, c), v in self.entries():
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> ExactMatrix:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        rows, cols = (int(t) for t in lines[0].split())
        entries = {}
        for ln in lines[1:]:
            r, c, v = ln.split()
            entries[int(r), int(c)] = Fraction(v)
        return cls(rows, cols, entries)


def _primitive(row: Mapping[int, object]) -> IntRow:
    """Clear denominators and divide out the content; first (lowest column) entry positive."""
    if not row:
        return {}
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = lcm(den, v.denominator)
    ints = {c: int(v * den) for c, v in row.items() if v}
    g = gcd(*ints.values())
    if ints[min(ints)] < 0:
        g = -g
    if g != 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


class Echelon:
    """Incremental semi-echelon basis of a row space.

    Pivot rows are stored in insertion order; row ``o`` has no entries in
    the pivot columns of rows inserted before it. ``colcount`` (optional)
    ranks candidate pivot columns, the sparsest column winning.
    """

    def __init__(self, ncols: int, colcount: Mapping[int, int] | None = None):
        self.ncols = ncols
        self.pivot_cols: list[int] = []
        self.pivot_rows: list[IntRow] = []
        self.order: dict[int, int] = {}
        self._colcount = colcount or {}

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def reduce(self, row: IntRow) -> IntRow:
        """Reduce a primitive integer row against all pivots; returns a primitive remainder."""
        row = dict(row)
        order = self.order
        heap = [order[c] for c in row if c in order]
        heapq.heapify(heap)
        touched = False
        while heap:
            o = heapq.heappop(heap)
            col = self.pivot_cols[o]
            a = row.get(col)
            if not a:
                continue
            prow = self.pivot_rows[o]
            p = prow[col]
            g = gcd(a, p)
            ma, mp = p // g, a // g
            if ma != 1:
                for c in row:
                    row[c] *= ma
            for c, v in prow.items():
                old = row.get(c)
                if old is None:
                    row[c] = -mp * v
                    if c in order:
                        heapq.heappush(heap, order[c])
                else:
                    nv = old - mp * v
                    if nv:
                        row[c] = nv
                    else:
                        del row[c]
            touched = True
        return _primitive(row) if touched else row

    def add(self, row: IntRow) -> bool:
        """Insert a row; returns True when it enlarged the span."""
        red = self.reduce(row)
        if not red:
            return False
        cc = self._colcount
        col = min(red, key=lambda c: (cc.get(c, 0), c))
        self.order[col] = len(self.pivot_cols)
        self.pivot_cols.append(col)
        self.pivot_rows.append(red)
        return True

    def contains(self, row: IntRow) -> bool:
        return not self.reduce(row)

    def null_space(self) -> list[dict[int, Fraction]]:
        """Basis of {x : row . x = 0 for every pivot row}, one vector per free column."""
        pivots = set(self.pivot_cols)
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free:
            x: dict[int, Fraction] = {f: Fraction(1)}
            for o in range(len(self.pivot_cols) - 1, -1, -1):
                col = self.pivot_cols[o]
                prow = self.pivot_rows[o]
                s = 0
                for c, v in prow.items():
                    if c != col:
                        xc = x.get(c)
                        if xc:
                            s += v * xc
                if s:
                    x[col] = Fraction(-s) / prow[col]
            basis.append(x)
        return basis


def _unique_rows(rows: Iterable[IntRow]) -> list[IntRow]:
    seen = set()
    out = []
    for r in rows:
        if not r:
            continue
        key = frozenset(r.items())
        if key not in seen:
            seen.add(key)
            out.append(r)
    out.sort(key=lambda r: (len(r), min(r)))
    return out


def echelon_of_rows(ncols: int, rows: Iterable[IntRow], stop_at: int | None = None) -> Echelon:
    """Semi-echelon form of a collection of primitive integer rows (sparsest first)."""
    rows = _unique_rows(rows)
    counts = Counter(c for r in rows for c in r)
    ech = Echelon(ncols, counts)
    cap = ncols if stop_at is None else min(stop_at, ncols)
    for r in rows:
        ech.add(r)
        if ech.rank >= cap:
            break
    return ech


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.rows < m.cols:
        return echelon_of_rows(m.cols, m.integer_rows(), stop_at=m.rows).rank
    cols = [_primitive(c) for c in m.columns()]
    return echelon_of_rows(m.rows, cols, stop_at=m.cols).rank


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns form a basis of {x : m x = 0}; the count is cols - rank."""
    ech = echelon_of_rows(m.cols, m.integer_rows())
    vecs = ech.null_space()
    return ExactMatrix.from_columns(m.cols, vecs)


def column_rank(ncols_ambient: int, vectors: Iterable[Mapping[int, object]]) -> int:
    """Rank of a family of sparse vectors (their span dimension)."""
    return echelon_of_rows(ncols_ambient, (_primitive(v) for v in vectors)).rank
