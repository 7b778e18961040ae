"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``. Elimination picks the first
non-zero column as pivot column and the lowest row index with a non-zero
entry in it as pivot row, so every result is deterministic.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def transpose(m, cols=None):
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*m)]


def matmul(a, b):
    """Product of an r x s and s x t matrix; zero entries of ``a`` are skipped."""
    if not a:
        return []
    t = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * t
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(t):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a]


def is_zero(m):
    return all(not x for row in m for x in row)


def rref(m, ncols=None):
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``; zero rows dropped."""
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m):
    return len(rref(m)[1])


def nullspace(m, ncols=None):
    """Basis of ``{x : m x = 0}``, one vector per free column (that entry set to 1)."""
    ncols = (len(m[0]) if m else 0) if ncols is None else ncols
    rows, pivots = rref(m, ncols) if m else ([], [])
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        out.append(v)
    return out


def row_space(vectors, dim):
    """RREF basis of the span of ``vectors`` (each of length ``dim``)."""
    if not vectors:
        return []
    return rref(vectors, dim)[0]


def span_dim(vectors, dim):
    return len(row_space(vectors, dim))


def intersection_dim(u, v, dim):
    return span_dim(u, dim) + span_dim(v, dim) - span_dim(list(u) + list(v), dim)


class Echelon:
    """Incrementally built echelon basis; ``add`` reports whether a vector was new."""

    def __init__(self, dim):
        self.dim = dim
        self.rows = []  # (pivot, row) with row[pivot] == 1

    def _reduce(self, v):
        v = list(v)
        for p, row in self.rows:
            f = v[p]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v):
        v = self._reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        piv = v[p]
        self.rows.append((p, [x / piv for x in v]))
        return True

    def __len__(self):
        return len(self.rows)


class Solver:
    """Solve ``A x = b`` repeatedly for a fixed ``A`` (given as columns).

    The elimination on ``[A | I]`` is done once; each solve is then a single
    matrix-vector product plus a consistency check on the zero rows.
    """

    def __init__(self, columns, dim):
        self.dim = dim
        self.ncols = len(columns)
        a = transpose(columns, dim) if columns else [[] for _ in range(dim)]
        aug = [list(a[i]) + [ONE if j == i else ZERO for j in range(dim)] for i in range(dim)]
        rows = [[Fraction(x) for x in r] for r in aug]
        pivots = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, dim) if rows[i][c]), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            piv = rows[r][c]
            if piv != 1:
                rows[r] = [x / piv for x in rows[r]]
            prow = rows[r]
            for i in range(dim):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
            pivots.append(c)
            r += 1
        self.rank = r
        self.pivots = pivots
        # sparse rows of the transform T with T A = rref(A)
        self._transform = [{j: x for j, x in enumerate(row[self.ncols:]) if x} for row in rows]

    def _apply(self, rows, b):
        if not isinstance(b, dict):
            b = {j: x for j, x in enumerate(b) if x}
        out = []
        for row in rows:
            if len(row) < len(b):
                acc = sum((x * b[j] for j, x in row.items() if j in b), ZERO)
            else:
                acc = sum((x * row[j] for j, x in b.items() if j in row), ZERO)
            out.append(acc)
        return out

    def solve(self, b):
        """A particular solution (free variables zero) or None if inconsistent.

        ``b`` is a dense list or a sparse ``{index: value}`` dict.
        """
        if any(self._apply(self._transform[self.rank:], b)):
            return None
        tb = self._apply(self._transform[:self.rank], b)
        x = [ZERO] * self.ncols
        for i, p in enumerate(self.pivots):
            x[p] = tb[i]
        return x

    def contains(self, b):
        return not any(self._apply(self._transform[self.rank:], b))


def det(m):
    """Determinant by exact elimination."""
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            out = -out
        piv = a[c][c]
        out *= piv
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / piv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def inverse(m):
    n = len(m)
    s = Solver(transpose(m, n), n)
    if s.rank < n:
        raise ZeroDivisionError("singular matrix")
    cols = [s.solve([ONE if i == j else ZERO for i in range(n)]) for j in range(n)]
    return transpose(cols, n)
