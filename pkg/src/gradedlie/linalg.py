"""Exact linear algebra over the rationals.

Every matrix here carries ``fractions.Fraction`` entries and every result is
exact; there is no tolerance anywhere in this module.  Elimination is
fraction-free (Bareiss) on row-scaled integer data, followed by an exact
division pass that produces the reduced row echelon form.  Pivots are always
the first nonzero entry in column order, which makes every returned basis
deterministic (bit-exact across runs).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = list[Fraction]


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not allowed in exact matrices")
    return value if isinstance(value, Fraction) else Fraction(value)


class RatMatrix:
    """A rows x cols matrix of rationals with sparse storage."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        self._entries: dict[tuple[int, int], Fraction] = {}
        if entries is not None:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), value in items:
                self.set(r, c, value)

    @classmethod
    def from_rows(cls, data: Iterable[Sequence], cols: int | None = None) -> "RatMatrix":
        data = [list(row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        mat = cls(len(data), cols)
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("rows of unequal length")
            for c, value in enumerate(row):
                mat.set(r, c, value)
        return mat

    def _check(self, r: int, c: int) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols} matrix")

    def set(self, r: int, c: int, value) -> None:
        self._check(r, c)
        value = _frac(value)
        if value:
            self._entries[(r, c)] = value
        else:
            self._entries.pop((r, c), None)

    def add_to(self, r: int, c: int, value) -> None:
        self.set(r, c, self.get(r, c) + _frac(value))

    def get(self, r: int, c: int) -> Fraction:
        self._check(r, c)
        return self._entries.get((r, c), Fraction(0))

    def items(self):
        return sorted(self._entries.items())

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def dense_rows(self) -> list[Vector]:
        rows = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), value in self._entries.items():
            rows[r][c] = value
        return rows

    def transpose(self) -> "RatMatrix":
        out = RatMatrix(self.cols, self.rows)
        for (r, c), value in self._entries.items():
            out._entries[(c, r)] = value
        return out

    def matvec(self, vector: Sequence) -> Vector:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        out = [Fraction(0)] * self.rows
        for (r, c), value in self._entries.items():
            if vector[c]:
                out[r] += value * vector[c]
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _scaled_integer_rows(rows: list[Vector]) -> list[list[int]]:
    # Row scaling changes neither row space, nullspace nor solution sets of
    # augmented systems, and lets Bareiss run on plain integers.
    out = []
    for row in rows:
        mult = 1
        for x in row:
            if x:
                mult = lcm(mult, x.denominator)
        ints = [int(x * mult) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _bareiss_echelon(rows: list[list[int]], cols: int) -> tuple[list[int], list[list[int]]]:
    """Fraction-free forward elimination; returns (pivot columns, echelon rows).

    The usual Bareiss divisibility argument survives skipped (pivotless)
    columns; the division by the previous pivot stays exact.  The divmod
    check guards that invariant rather than trusting it.
    """
    m = len(rows)
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(cols):
        pr = None
        for i in range(r, m):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            row_i = rows[i]
            f = row_i[c]
            for j in range(c + 1, cols):
                num = row_i[j] * piv - f * prow[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exact divisibility")
                row_i[j] = q
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots, rows[:r]


def rref(matrix: RatMatrix) -> tuple[tuple[int, ...], list[Vector]]:
    """Reduced row echelon form: (pivot columns, nonzero reduced rows)."""
    ints = _scaled_integer_rows(matrix.dense_rows())
    pivots, echelon = _bareiss_echelon(ints, matrix.cols)
    rows = [[Fraction(v) for v in row] for row in echelon]
    for r in reversed(range(len(pivots))):
        c = pivots[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        for r2 in range(r):
            f = rows[r2][c]
            if f:
                rows[r2] = [a - f * b for a, b in zip(rows[r2], rows[r])]
    return tuple(pivots), rows


def rank(matrix: RatMatrix) -> int:
    return len(rref(matrix)[0])


def nullspace(matrix: RatMatrix) -> list[Vector]:
    """Basis of ker A, echelon-normalized and ordered by free column.

    Each basis vector carries a 1 at its free coordinate and zeros at the
    free coordinates of the other vectors.
    """
    pivots, rows = rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(matrix.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * matrix.cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    # rank-nullity and exactness, asserted on every call.
    assert len(basis) == matrix.cols - len(pivots)
    for v in basis:
        assert not any(matrix.matvec(v))
    return basis


def solve(matrix: RatMatrix, rhs: Sequence) -> Vector | None:
    """Solve A x = b exactly; None when inconsistent.

    With free variables the solution with zero free coordinates is returned,
    so the result is deterministic.
    """
    if len(rhs) != matrix.rows:
        raise ValueError("right-hand side length does not match row count")
    aug = RatMatrix(matrix.rows, matrix.cols + 1)
    for (r, c), value in matrix._entries.items():
        aug._entries[(r, c)] = value
    for r, value in enumerate(rhs):
        value = _frac(value)
        if value:
            aug._entries[(r, matrix.cols)] = value
    pivots, rows = rref(aug)
    if pivots and pivots[-1] == matrix.cols:
        return None
    x = [Fraction(0)] * matrix.cols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][matrix.cols]
    assert matrix.matvec(x) == [_frac(v) for v in rhs]
    return x


def column_complement(matrix: RatMatrix) -> list[int]:
    """Coordinates whose standard basis vectors complete the column space.

    Row-reducing the transposed matrix marks one coordinate per echelon
    pivot; the remaining coordinates index a standard-basis complement of
    the column space inside the target space.  The result has exactly
    rows - rank(A) entries and is deterministic.
    """
    pivots, _ = rref(matrix.transpose())
    covered = set(pivots)
    return [i for i in range(matrix.rows) if i not in covered]


def determinant(matrix: RatMatrix) -> Fraction:
    if matrix.rows != matrix.cols:
        raise ValueError("determinant of a non-square matrix")
    rows = matrix.dense_rows()
    n = matrix.rows
    det = Fraction(1)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            return Fraction(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        piv = rows[c][c]
        det *= piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def vectors_rank(vectors: Sequence[Sequence], length: int | None = None) -> int:
    """Rank of a list of coordinate vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    if length is None:
        length = len(vectors[0])
    return rank(RatMatrix.from_rows(vectors, length))


def express_in_basis(vectors: Sequence[Sequence], target: Sequence) -> Vector | None:
    """Coordinates of `target` over `vectors`, or None if outside their span."""
    if not vectors:
        return [] if not any(_frac(t) for t in target) else None
    length = len(vectors[0])
    if len(target) != length:
        raise ValueError("target length does not match basis vectors")
    mat = RatMatrix(length, len(vectors))
    for c, vec in enumerate(vectors):
        if len(vec) != length:
            raise ValueError("basis vectors of unequal length")
        for r, value in enumerate(vec):
            if value:
                mat.set(r, c, value)
    return solve(mat, list(target))
