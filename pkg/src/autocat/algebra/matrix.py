"""Dense exact-rational matrices and the elementary operations on them."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ..errors import NotSquareError


class RationalMatrix:
    """Immutable dense matrix of ``Fraction`` entries.

    A matrix with zero rows still remembers its column count, so 0xn and
    nx0 shapes are distinguishable.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[object]], ncols: int | None = None):
        self._rows = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if self._rows:
            width = len(self._rows[0])
            if any(len(row) != width for row in self._rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("column count mismatch")
            self._ncols = width
        else:
            self._ncols = ncols or 0

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), self._ncols

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([self.column(j) for j in range(self.ncols)], self.nrows)

    def __eq__(self, other):
        if isinstance(other, RationalMatrix):
            return self.shape == other.shape and self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"RationalMatrix({self.tolist()!r})"

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._rows]

    def apply(self, v: Sequence[object]) -> tuple[Fraction, ...]:
        """Matrix-vector product M v."""
        if len(v) != self.ncols:
            raise ValueError("vector length does not match column count")
        v = [Fraction(a) for a in v]
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self._rows)

    def left_apply(self, y: Sequence[object]) -> tuple[Fraction, ...]:
        """Row-vector product y^T M."""
        if len(y) != self.nrows:
            raise ValueError("vector length does not match row count")
        y = [Fraction(a) for a in y]
        return tuple(sum((y[i] * self._rows[i][j] for i in range(self.nrows)), Fraction(0))
                     for j in range(self.ncols))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = [other.column(j) for j in range(other.ncols)]
        return RationalMatrix([[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
                               for row in self._rows], other.ncols)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)],
                              self.ncols)

    def scale(self, c: object) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix([[c * a for a in row] for row in self._rows], self.ncols)

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def drop_column(self, j: int) -> "RationalMatrix":
        keep = [k for k in range(self.ncols) if k != j]
        return self.select(range(self.nrows), keep)

    def permute(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return self.select(rows, cols)

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self._rows[i][i] for i in range(min(self.shape)))

    def max_abs_row_sum(self) -> Fraction:
        return max((sum(abs(a) for a in row) for row in self._rows), default=Fraction(0))


def _require_square(m: RationalMatrix) -> None:
    if not m.is_square():
        raise NotSquareError(f"expected a square matrix, got shape {m.shape}")


def det(m: RationalMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers; the scaling is divided out at the end.
    """
    _require_square(m)
    n = m.nrows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for row in m.rows:
        d = lcm(*(v.denominator for v in row))
        scale *= d
        a.append([int(v * d) for v in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1]) / scale


def det_sign(m: RationalMatrix) -> int:
    d = det(m)
    return (d > 0) - (d < 0)


def rank(m: RationalMatrix) -> int:
    a = [list(row) for row in m.rows]
    r = 0
    for c in range(m.ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def is_metzler(m: RationalMatrix) -> bool:
    """Square with non-negative off-diagonal entries."""
    if not m.is_square():
        return False
    n = m.nrows
    return all(m[i, j] >= 0 for i in range(n) for j in range(n) if i != j)


def metzler_part(m: RationalMatrix) -> RationalMatrix:
    """Keep the diagonal and non-negative off-diagonal entries; zero the rest."""
    _require_square(m)
    n = m.nrows
    return RationalMatrix([[m[i, j] if i == j or m[i, j] >= 0 else 0 for j in range(n)]
                           for i in range(n)], n)


def dependency_graph(m: RationalMatrix) -> dict[int, list[int]]:
    """Arcs i -> j for i != j whenever M[j][i] != 0."""
    _require_square(m)
    n = m.nrows
    return {i: [j for j in range(n) if j != i and m[j, i] != 0] for i in range(n)}


def _reaches_all(adj: dict[int, list[int]], start: int) -> bool:
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def is_irreducible(m: RationalMatrix) -> bool:
    """True iff the dependency graph is strongly connected (1x1 counts as irreducible)."""
    _require_square(m)
    n = m.nrows
    if n == 0:
        return False
    adj = dependency_graph(m)
    radj = {i: [] for i in range(n)}
    for i, succ in adj.items():
        for j in succ:
            radj[j].append(i)
    return _reaches_all(adj, 0) and _reaches_all(radj, 0)
