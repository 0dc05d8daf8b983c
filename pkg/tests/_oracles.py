"""Independent brute-force linear algebra used only as a test oracle.

Deliberately a different algorithm path from the package: fraction-free
Bareiss forward elimination over integers followed by rational back
substitution, versus the library's all-rational Gauss-Jordan.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = 1
        for x in fracs:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        out.append([int(x * scale) for x in fracs])
    return out


def bareiss_echelon(rows) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form over the integers; returns (rows, pivots)."""
    m = [list(r) for r in _integer_rows(rows)]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


def oracle_rank(rows) -> int:
    return len(bareiss_echelon(rows)[1])


def oracle_rref(rows) -> list[tuple[Fraction, ...]]:
    """Canonical reduced rows via Bareiss + rational back substitution."""
    if not rows:
        return []
    echelon, pivots = bareiss_echelon(rows)
    reduced = [[Fraction(x) for x in row] for row in echelon]
    for i in range(len(reduced) - 1, -1, -1):
        p = pivots[i]
        inv = 1 / reduced[i][p]
        reduced[i] = [x * inv for x in reduced[i]]
        for j in range(i):
            f = reduced[j][p]
            if f:
                reduced[j] = [a - f * b for a, b in zip(reduced[j], reduced[i])]
    return [tuple(row) for row in reduced]


def oracle_kernel(matrix_rows, width: int) -> list[tuple[Fraction, ...]]:
    """Canonical kernel basis of the matrix given by its rows."""
    reduced = oracle_rref(matrix_rows)
    pivots = [next(j for j, x in enumerate(row) if x != 0) for row in reduced]
    pivot_set = set(pivots)
    out = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * width
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        out.append(v)
    return oracle_rref(out)


def oracle_image(matrix_rows, n_cols: int) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the column space."""
    if not matrix_rows:
        return []
    columns = [[row[j] for row in matrix_rows] for j in range(n_cols)]
    return oracle_rref(columns)


def oracle_intersect(a_rows, b_rows, width: int) -> list[tuple[Fraction, ...]]:
    """Canonical basis of span(a) ∩ span(b), by stacked-kernel elimination."""
    if not a_rows or not b_rows:
        return []
    stacked = [
        [a_rows[i][r] for i in range(len(a_rows))] + [-Fraction(b_rows[j][r]) for j in range(len(b_rows))]
        for r in range(width)
    ]
    coeffs = oracle_kernel(stacked, len(a_rows) + len(b_rows))
    vectors = []
    for lam in coeffs:
        v = [Fraction(0)] * width
        for c, row in zip(lam[: len(a_rows)], a_rows):
            if c:
                v = [x + c * Fraction(y) for x, y in zip(v, row)]
        vectors.append(v)
    return oracle_rref(vectors)


def oracle_sum(a_rows, b_rows) -> list[tuple[Fraction, ...]]:
    return oracle_rref(list(a_rows) + list(b_rows))


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` ascending (no repeats)."""
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign
