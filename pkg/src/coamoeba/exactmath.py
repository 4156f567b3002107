"""Exact integer and GF(2) linear algebra.

Integer matrices are plain row-major ``list[list[int]]`` values; Python ints
give arbitrary precision for free, which matters because intermediate entries
of a Smith reduction can grow well past machine range even for small inputs.
GF(2) matrices pack each row into a single Python int so that row operations
are word-parallel XORs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

IntMatrix = list[list[int]]


class SingularMatrix(ValueError):
    """Raised when an operation needs a nonzero determinant."""


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(a) -> IntMatrix:
    return [list(row) for row in a]


def transpose(a) -> IntMatrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a, b) -> IntMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det(a) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def minor_gcd(a, k: int) -> int:
    """gcd of all k x k minors, by exhaustive enumeration (0 if all vanish).

    Deliberately brute force: this is the independent oracle against which
    the Smith diagonal is checked, so it must not share code with ``snf``.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if not 1 <= k <= min(rows, cols):
        raise ValueError(f"minor order {k} out of range for {rows}x{cols} matrix")
    g = 0
    for ri in combinations(range(rows), k):
        for ci in combinations(range(cols), k):
            sub = [[a[i][j] for j in ci] for i in ri]
            g = gcd(g, det(sub))
    return g


@dataclass(frozen=True)
class SmithDecomposition:
    """Unimodular G, H and diagonal D with G*A*H = diag(D), d1 | d2 | ... | dn."""

    G: IntMatrix
    H: IntMatrix
    D: tuple[int, ...]


def _pivot(m, t: int, n: int):
    """Smallest-absolute-value nonzero entry of m[t:, t:], ties to lowest (row, col)."""
    best = None
    for i in range(t, n):
        for j in range(t, n):
            v = abs(m[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return best


def snf(a) -> SmithDecomposition:
    """Smith normal form of a square nonsingular integer matrix.

    Returns (G, H, D) with G*A*H = diag(D), |det G| = |det H| = 1, every
    d_i > 0 and d_1 | d_2 | ... | d_n.  The pivot rule (smallest absolute
    value, ties broken by lowest row then column) is fixed, so the output is
    deterministic for a given input.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("snf expects a square matrix")
    if n == 0:
        return SmithDecomposition([], [], ())
    if det(a) == 0:
        raise SingularMatrix("matrix is singular")

    m = mat_copy(a)
    g = identity(n)
    h = identity(n)

    def row_op(i, j, q):  # row_i -= q * row_j, in m and g
        m[i] = [x - q * y for x, y in zip(m[i], m[j])]
        g[i] = [x - q * y for x, y in zip(g[i], g[j])]

    def col_op(i, j, q):  # col_i -= q * col_j, in m and h
        for row in m:
            row[i] -= q * row[j]
        for row in h:
            row[i] -= q * row[j]

    for t in range(n):
        while True:
            _, pi, pj = _pivot(m, t, n)
            if pi != t:
                m[t], m[pi] = m[pi], m[t]
                g[t], g[pi] = g[pi], g[t]
            if pj != t:
                for row in m:
                    row[t], row[pj] = row[pj], row[t]
                for row in h:
                    row[t], row[pj] = row[pj], row[t]
            if m[t][t] < 0:
                m[t] = [-x for x in m[t]]
                g[t] = [-x for x in g[t]]
            p = m[t][t]
            for i in range(t + 1, n):
                if m[i][t]:
                    row_op(i, t, m[i][t] // p)
            for j in range(t + 1, n):
                if m[t][j]:
                    col_op(j, t, m[t][j] // p)
            if any(m[i][t] for i in range(t + 1, n)):
                continue
            if any(m[t][j] for j in range(t + 1, n)):
                continue
            # Drag any non-multiple of the pivot into row t and keep reducing,
            # so the divisibility chain comes out right.
            bad = next(
                (i for i in range(t + 1, n) if any(x % p for x in m[i])), None
            )
            if bad is None:
                break
            row_op(t, bad, -1)
        # pivot normalized positive above

    return SmithDecomposition(g, h, tuple(m[i][i] for i in range(n)))


# ---------------------------------------------------------------------------
# GF(2)


@dataclass
class Z2Matrix:
    """Bit matrix over GF(2); bit j of rows[i] is the (i, j) entry."""

    rows: list[int]
    cols: int

    @classmethod
    def from_rows(cls, bit_rows, cols: int | None = None) -> "Z2Matrix":
        rows = []
        width = cols
        for r in bit_rows:
            mask = 0
            for j, b in enumerate(r):
                if b & 1:
                    mask |= 1 << j
            rows.append(mask)
            if width is None:
                width = len(r)
            elif len(r) != width:
                raise ValueError("ragged rows")
        return cls(rows, width or 0)

    @classmethod
    def from_int_matrix(cls, a) -> "Z2Matrix":
        return cls.from_rows([[x % 2 for x in row] for row in a], len(a[0]) if a else 0)

    @classmethod
    def from_masks(cls, masks, cols: int) -> "Z2Matrix":
        return cls(list(masks), cols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.rows]


def _vector_mask(v) -> int:
    if isinstance(v, int):
        return v
    mask = 0
    for j, b in enumerate(v):
        if b & 1:
            mask |= 1 << j
    return mask


def z2_rank(m: Z2Matrix) -> int:
    """Rank over GF(2) by elimination against a pivot table."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in m.rows:
        r = row
        while r:
            b = r.bit_length() - 1
            p = pivots.get(b)
            if p is None:
                pivots[b] = r
                rank += 1
                break
            r ^= p
    return rank


def z2_in_span(m: Z2Matrix, v) -> bool:
    """True iff v lies in the GF(2) row span of m."""
    if not isinstance(v, int) and len(v) != m.cols:
        raise ValueError(f"vector length {len(v)} != {m.cols} columns")
    pivots: dict[int, int] = {}
    for row in m.rows:
        r = row
        while r:
            b = r.bit_length() - 1
            p = pivots.get(b)
            if p is None:
                pivots[b] = r
                break
            r ^= p
    r = _vector_mask(v)
    while r:
        b = r.bit_length() - 1
        p = pivots.get(b)
        if p is None:
            return False
        r ^= p
    return True


def z2_left_kernel(m: Z2Matrix) -> Z2Matrix:
    """Basis of {x : x * m = 0}, each row a combination mask over m's rows."""
    pivots: dict[int, tuple[int, int]] = {}  # bit -> (reduced row, combo)
    kernel: list[int] = []
    for i, row in enumerate(m.rows):
        r, c = row, 1 << i
        while r:
            b = r.bit_length() - 1
            hit = pivots.get(b)
            if hit is None:
                pivots[b] = (r, c)
                break
            r ^= hit[0]
            c ^= hit[1]
        else:
            kernel.append(c)
    return Z2Matrix(kernel, m.nrows)


def z2_mat_mul(a: Z2Matrix, b: Z2Matrix) -> Z2Matrix:
    """Product over GF(2); row i of the result is XOR of b-rows picked by a's bits."""
    if a.cols != b.nrows:
        raise ValueError("dimension mismatch")
    out = []
    for row in a.rows:
        acc = 0
        r = row
        while r:
            j = r.bit_length() - 1
            acc ^= b.rows[j]
            r ^= 1 << j
        out.append(acc)
    return Z2Matrix(out, b.cols)
