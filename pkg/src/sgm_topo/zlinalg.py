"""Exact integer matrix algebra: Smith and Hermite normal forms, kernels, cokernels.

All arithmetic is on arbitrary-precision Python integers.  Matrices are
immutable; empty matrices (zero rows or columns) are legal and denote zero
maps, which is the common case for sphere-like chain complexes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import FinAbGroup


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(ent) != self.rows or any(len(row) != self.cols for row in ent):
            raise ValueError(
                f"entry shape does not match declared {self.rows}x{self.cols}"
            )
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> IntMatrix:
        r = len(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(r, cols, tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, diag: list[int] | tuple[int, ...], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        n = len(diag)
        r = rows if rows is not None else n
        c = cols if cols is not None else n
        return cls(r, c, tuple(
            tuple(diag[i] if i == j and i < n else 0 for j in range(c)) for i in range(r)
        ))

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ent = tuple(
            tuple(
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return IntMatrix(self.rows, other.cols, ent)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def hstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.rows != b.rows:
        raise ValueError("hstack requires equal row counts")
    return IntMatrix(a.rows, a.cols + b.cols,
                     tuple(ra + rb for ra, rb in zip(a.entries, b.entries)))


@dataclass(frozen=True)
class SnfResult:
    """Unimodular U, V with U @ A @ V = S, S diagonal with divisibility chain."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.S.rows, self.S.cols)
        return tuple(self.S.entries[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


class _Snf:
    """Smith normal form working state; tracks U, V and their inverses."""

    def __init__(self, a: IntMatrix):
        self.m, self.n = a.rows, a.cols
        self.s = [list(row) for row in a.entries]
        self.u = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
        self.uinv = [[int(i == j) for j in range(self.m)] for i in range(self.m)]
        self.v = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        self.vinv = [[int(i == j) for j in range(self.n)] for i in range(self.n)]

    def swap_rows(self, i, j):
        if i == j:
            return
        self.s[i], self.s[j] = self.s[j], self.s[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for row in self.uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for row in self.s:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def add_row(self, dst, src, q):
        """Row dst += q * row src."""
        if q == 0:
            return
        self.s[dst] = [x + q * y for x, y in zip(self.s[dst], self.s[src])]
        self.u[dst] = [x + q * y for x, y in zip(self.u[dst], self.u[src])]
        for row in self.uinv:  # inverse picks up the opposite column operation
            row[src] -= q * row[dst]

    def add_col(self, dst, src, q):
        """Column dst += q * column src."""
        if q == 0:
            return
        for row in self.s:
            row[dst] += q * row[src]
        for row in self.v:
            row[dst] += q * row[src]
        self.vinv[src] = [x - q * y for x, y in zip(self.vinv[src], self.vinv[dst])]

    def negate_col(self, j):
        for row in self.s:
            row[j] = -row[j]
        for row in self.v:
            row[j] = -row[j]
        self.vinv[j] = [-x for x in self.vinv[j]]

    def _min_pivot(self, t):
        best = None
        for i in range(t, self.m):
            row = self.s[i]
            for j in range(t, self.n):
                x = row[j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best
        return best

    def run(self):
        t = 0
        while t < min(self.m, self.n):
            best = self._min_pivot(t)
            if best is None:
                break
            _, pi, pj = best
            self.swap_rows(t, pi)
            self.swap_cols(t, pj)
            while True:
                pivot = self.s[t][t]
                dirty = False
                for i in range(t + 1, self.m):
                    if self.s[i][t] != 0:
                        self.add_row(i, t, -(self.s[i][t] // pivot))
                        if self.s[i][t] != 0:
                            dirty = True
                for j in range(t + 1, self.n):
                    if self.s[t][j] != 0:
                        self.add_col(j, t, -(self.s[t][j] // pivot))
                        if self.s[t][j] != 0:
                            dirty = True
                if dirty:
                    best = self._min_pivot(t)
                    _, pi, pj = best
                    self.swap_rows(t, pi)
                    self.swap_cols(t, pj)
                    continue
                # pivot must divide the remaining block for the chain property
                culprit = None
                for i in range(t + 1, self.m):
                    row = self.s[i]
                    for j in range(t + 1, self.n):
                        if row[j] % pivot != 0:
                            culprit = i
                            break
                    if culprit is not None:
                        break
                if culprit is None:
                    break
                self.add_row(t, culprit, 1)
            if self.s[t][t] < 0:
                self.negate_col(t)
            t += 1
        return t


def _smith_full(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """(U, Uinv, S, V, Vinv) with U @ A @ V = S."""
    st = _Snf(a)
    st.run()
    mk = lambda rows, r, c: IntMatrix(r, c, tuple(tuple(row) for row in rows))
    return (
        mk(st.u, st.m, st.m),
        mk(st.uinv, st.m, st.m),
        mk(st.s, st.m, st.n),
        mk(st.v, st.n, st.n),
        mk(st.vinv, st.n, st.n),
    )


def smith_normal_form(a: IntMatrix) -> SnfResult:
    """Smith normal form with transforming unimodular matrices.

    The diagonal is non-negative, satisfies d1 | d2 | ..., and lists the
    invariant factors of the cokernel lattice; trailing zeros come last.
    """
    u, _, s, v, _ = _smith_full(a)
    return SnfResult(u, s, v)


def hermite_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-echelon Hermite form: (H, U) with U unimodular and U @ A = H.

    Pivots are positive; entries above each pivot are reduced into [0, pivot).
    """
    m, n = a.rows, a.cols
    h = [list(row) for row in a.entries]
    u = [[int(i == j) for j in range(m)] for i in range(m)]

    def add_row(dst, src, q):
        h[dst] = [x + q * y for x, y in zip(h[dst], h[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    pivot_row = 0
    for col in range(n):
        if pivot_row >= m:
            break
        while True:
            nz = [i for i in range(pivot_row, m) if h[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(h[i][col]))
            if i0 != pivot_row:
                h[pivot_row], h[i0] = h[i0], h[pivot_row]
                u[pivot_row], u[i0] = u[i0], u[pivot_row]
            if len(nz) == 1:
                break
            p = h[pivot_row][col]
            for i in range(pivot_row + 1, m):
                if h[i][col] != 0:
                    add_row(i, pivot_row, -(h[i][col] // p))
        if h[pivot_row][col] != 0:
            if h[pivot_row][col] < 0:
                h[pivot_row] = [-x for x in h[pivot_row]]
                u[pivot_row] = [-x for x in u[pivot_row]]
            p = h[pivot_row][col]
            for i in range(pivot_row):
                add_row(i, pivot_row, -(h[i][col] // p))
            pivot_row += 1
    mk = lambda rows, r, c: IntMatrix(r, c, tuple(tuple(row) for row in rows))
    return mk(h, m, n), mk(u, m, m)


def cokernel(a: IntMatrix) -> FinAbGroup:
    """Z^rows modulo the column span of a, as an abelian group."""
    diag = smith_normal_form(a).diagonal
    nonzero = [d for d in diag if d != 0]
    return FinAbGroup(a.rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def image_rank(a: IntMatrix) -> int:
    return smith_normal_form(a).rank


def kernel_rank(a: IntMatrix) -> int:
    return a.cols - image_rank(a)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the full integer kernel lattice of a."""
    _, _, s, v, _ = _smith_full(a)
    r = sum(1 for i in range(min(a.rows, a.cols)) if s.entries[i][i] != 0)
    ent = tuple(tuple(v.entries[i][j] for j in range(r, a.cols)) for i in range(a.cols))
    return IntMatrix(a.cols, a.cols - r, ent)


def column_hermite(a: IntMatrix) -> IntMatrix:
    """Canonical basis of the column lattice of a, as the columns of the
    transposed Hermite form with zero rows dropped."""
    h, _ = hermite_normal_form(a.transpose())
    kept = [row for row in h.entries if any(x != 0 for x in row)]
    return IntMatrix(len(kept), h.cols, tuple(kept)).transpose()


def lattice_contains(ambient: IntMatrix, candidate: IntMatrix) -> bool:
    """Whether every column of candidate lies in the column lattice of ambient."""
    if ambient.rows != candidate.rows:
        raise ValueError("lattice comparison requires equal ambient dimensions")
    return column_hermite(ambient) == column_hermite(hstack(ambient, candidate))


def det(a: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant requires a square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.entries]
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
