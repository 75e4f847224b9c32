"""Exact integer and rational linear algebra kernel.

Everything here is deterministic and allocation-cheap at the sizes the rest of
the library produces.  Rational elimination is done on integer sparse rows
(denominators cleared, content removed) so the inner loop stays in machine or
big-integer arithmetic rather than Fraction arithmetic.

Conventions:
  * dense matrices are lists of lists, row major;
  * sparse rows are dicts mapping column index -> nonzero value;
  * the pivot of an echelon row is its lowest nonzero column, so the pivot
    column set of any row space is canonical (it equals the RREF pivot set).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

# Prime used by the modular pre-rank filter.  Mersenne, fits comfortably in
# int64 products (values < 2^31, products < 2^62).
PREFILTER_PRIME = 2147483647


# ---------------------------------------------------------------------------
# dense rational reduced row echelon form


def rref(matrix: Sequence[Sequence[Fraction | int]]):
    """Reduced row echelon form over the rationals.

    Returns ``(R, rank, pivots)`` where ``R`` is the (unique) RREF as a list
    of Fraction rows, and ``pivots`` is the tuple of pivot column indices in
    increasing order.  Pivot choice is lowest column index first, then lowest
    row index.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, r, tuple(pivots)


def rank_rational(matrix: Sequence[Sequence[Fraction | int]]) -> int:
    return rref(matrix)[1]


# ---------------------------------------------------------------------------
# integer helpers


def identity_int(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    nb = len(b)
    cols = len(b[0]) if nb else 0
    return [
        [sum(row[k] * b[k][j] for k in range(nb)) for j in range(cols)]
        for row in a
    ]


def mat_vec_int(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form with transformation certificates


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """Smith normal form ``U @ A @ V = D`` with unimodular ``U``, ``V``.

    ``D`` is diagonal with non-negative entries satisfying ``d1 | d2 | ...``.
    """
    a = [list(row) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = identity_int(nrows)
    v = identity_int(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    size = min(nrows, ncols)

    def diagonalize():
        t = 0
        while t < size:
            # locate smallest-magnitude nonzero entry in the trailing block
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    x = a[i][j]
                    if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            # clear row and column t; swaps can reintroduce entries, but each
            # swap strictly shrinks the pivot magnitude so this terminates
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, nrows):
                    if a[i][t] != 0:
                        q = a[i][t] // a[t][t]
                        add_row(t, i, -q)
                        if a[i][t] != 0:
                            swap_rows(t, i)
                            dirty = True
                for j in range(t + 1, ncols):
                    if a[t][j] != 0:
                        q = a[t][j] // a[t][t]
                        add_col(t, j, -q)
                        if a[t][j] != 0:
                            swap_cols(t, j)
                            dirty = True
            if a[t][t] < 0:
                negate_row(t)
            t += 1

    diagonalize()
    # enforce the divisibility chain d_i | d_{i+1}: fold the offender into the
    # earlier position with a column addition and re-diagonalize
    while True:
        bad = next(
            (
                i
                for i in range(size - 1)
                if a[i][i] != 0 and a[i + 1][i + 1] % a[i][i] != 0
            ),
            None,
        )
        if bad is None:
            break
        add_col(bad + 1, bad, 1)
        diagonalize()
    return u, a, v


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(matrix)
    size = min(len(d), len(d[0]) if d else 0)
    return [d[i][i] for i in range(size) if d[i][i] != 0]


def solve_integer(matrix: Sequence[Sequence[int]], rhs: Sequence[int]):
    """A particular integer solution of ``A u = b``, or None if b is not in
    the integer image of A (decided through the Smith normal form)."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if len(rhs) != nrows:
        raise ValueError("rhs length does not match row count")
    u, d, v = smith_normal_form(matrix)
    ub = mat_vec_int(u, list(rhs))
    y = [0] * ncols
    for i in range(nrows):
        di = d[i][i] if i < min(nrows, ncols) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
    return mat_vec_int(v, y)


# ---------------------------------------------------------------------------
# Hermite normal form (row style), used to canonicalize grading bases


def hermite_row_canonical(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    Left multiplication by a unimodular matrix, so the row lattice is
    preserved; the output is the canonical basis of that lattice.
    """
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # Euclidean elimination in column c below row r
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[i0] = rows[i0], rows[r]
            done = True
            for i in range(r + 1, nrows):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return rows


# ---------------------------------------------------------------------------
# incremental sparse echelon basis over Q (integer-cleared rows)


def _content_normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        row = {c: x // g for c, x in row.items()}
    lead = min(row)
    if row[lead] < 0:
        row = {c: -x for c, x in row.items()}
    return row


def clear_denominators(row: Mapping[int, Fraction | int]) -> dict[int, int]:
    den = 1
    for x in row.values():
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    out = {}
    for c, x in row.items():
        v = int(x * den) if isinstance(x, Fraction) else x * den
        if v:
            out[c] = v
    return out


class EchelonBasis:
    """Incrementally built echelon basis of a sparse rational row space.

    Each stored row is an integer sparse vector whose lowest nonzero column is
    its pivot; no other stored row has that pivot.  Rows are not inter-reduced
    (plain echelon, not RREF), which keeps fill-in down; reduction against the
    basis in increasing pivot order still yields the canonical normal form.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))

    def is_full_column_rank(self) -> bool:
        return len(self.rows) == self.ncols

    def add_row(self, row: Mapping[int, Fraction | int]) -> bool:
        """Insert a row; returns True if the rank grew."""
        work = clear_denominators(row)
        while work:
            c = min(work)
            piv = self.rows.get(c)
            if piv is None:
                self.rows[c] = _content_normalize(work)
                return True
            a, b = work[c], piv[c]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            new = {}
            for col, x in work.items():
                new[col] = x * ma
            for col, y in piv.items():
                v = new.get(col, 0) - y * mb
                if v:
                    new[col] = v
                elif col in new:
                    del new[col]
            work = _content_normalize(new) if new else {}
        return False

    def reduce(self, row: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
        """Canonical remainder of ``row`` modulo the row space.

        Columns are consumed left to right; eliminating a pivot introduces
        fill-in strictly to its right, so one ascending sweep terminates.
        """
        work: dict[int, Fraction] = {
            c: Fraction(x) for c, x in row.items() if x != 0
        }
        out: dict[int, Fraction] = {}
        while work:
            c = min(work)
            val = work.pop(c)
            piv = self.rows.get(c)
            if piv is None:
                out[c] = val
                continue
            factor = val / piv[c]
            for col, y in piv.items():
                if col == c:
                    continue
                cur = work.get(col, Fraction(0)) - factor * y
                if cur:
                    work[col] = cur
                elif col in work:
                    del work[col]
        return out


def echelon_rank(
    rows: Iterable[Mapping[int, Fraction | int]],
    ncols: int,
    stop_at: int | None = None,
) -> int:
    basis = EchelonBasis(ncols)
    for row in rows:
        basis.add_row(row)
        if stop_at is not None and basis.rank >= stop_at:
            break
    return basis.rank


# ---------------------------------------------------------------------------
# modular rank prefilter


def rank_mod_p(
    rows: Sequence[Mapping[int, int]],
    ncols: int,
    p: int = PREFILTER_PRIME,
) -> int:
    """Rank of an integer sparse matrix modulo ``p``.

    Always a lower bound for the rank over Q; used to certify full-column-rank
    (zero-dimensional quotient) pieces without exact elimination.
    """
    nrows = len(rows)
    if nrows * ncols <= 8_000_000:
        return _rank_mod_p_dense(rows, ncols, p)
    return _rank_mod_p_sparse(rows, ncols, p)


def _rank_mod_p_dense(rows, ncols, p):
    import numpy as np

    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, x in row.items():
            m[i, c] = x % p
    rank = 0
    nrows = m.shape[0]
    for c in range(ncols):
        if rank == nrows:
            break
        col = m[rank:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = rank + int(nz[0])
        if pr != rank:
            m[[rank, pr]] = m[[pr, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        m[rank] = (m[rank] * inv) % p
        below = m[rank + 1 :, c]
        mask = below != 0
        if mask.any():
            m[rank + 1 :][mask] = (
                m[rank + 1 :][mask] - below[mask, None] * m[rank][None, :]
            ) % p
        rank += 1
    return rank


def _rank_mod_p_sparse(rows, ncols, p):
    basis: dict[int, dict[int, int]] = {}
    for row in rows:
        work = {c: x % p for c, x in row.items() if x % p}
        while work:
            c = min(work)
            piv = basis.get(c)
            if piv is None:
                inv = pow(work[c], p - 2, p)
                basis[c] = {col: (x * inv) % p for col, x in work.items()}
                break
            factor = work[c]
            for col, y in piv.items():
                v = (work.get(col, 0) - factor * y) % p
                if v:
                    work[col] = v
                elif col in work:
                    del work[col]
    return len(basis)
