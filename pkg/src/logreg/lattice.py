"""Exact integer linear algebra: Smith/Hermite normal forms, kernels, quotients.

Everything here works on Python ints, so entries are arbitrary precision and
no floating point is ever involved. Matrices are stored row-major as tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable rectangular integer matrix.

    ``cols`` is stored explicitly so that matrices with zero rows keep their
    width (a 0x3 matrix is not the same thing as a 0x0 one).
    """

    rows: tuple[Vector, ...]
    cols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.cols:
                raise ValueError(f"row {r} does not have {self.cols} entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix without rows")
            cols = len(rows[0])
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntegerMatrix":
        return cls(tuple((0,) * n for _ in range(m)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        return IntegerMatrix(
            tuple(tuple(dot(r, c) for c in ocols) for r in self.rows), other.cols
        )

    def columns(self) -> tuple[Vector, ...]:
        return tuple(tuple(r[j] for r in self.rows) for j in range(self.cols))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.columns(), self.nrows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.rows) for j, v in enumerate(r) if i != j)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with U, V unimodular and D diagonal."""

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d != 0)


@dataclass(frozen=True)
class LatticeQuotient:
    """The group Z^n / L for a sublattice L, with an explicit projection.

    Coordinates of ``x`` in the quotient are read off from ``x @ V`` where V
    comes from the Smith form of the sublattice basis: positions beyond the
    rank are free, positions with divisor > 1 are torsion.
    """

    ambient_rank: int
    sublattice_basis: IntegerMatrix
    free_rank: int
    torsion: tuple[int, ...]
    smith: SmithDecomposition = field(repr=False)

    @property
    def _free_columns(self) -> tuple[int, ...]:
        r = self.smith.rank
        return tuple(range(r, self.ambient_rank))

    @property
    def _torsion_columns(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, d) for i, d in enumerate(self.smith.divisors) if d > 1)

    def project(self, x: Sequence[int]) -> Vector:
        """Free coordinates of the class of ``x``."""
        y = vec_mat(x, self.smith.V)
        return tuple(y[j] for j in self._free_columns)

    def torsion_class(self, x: Sequence[int]) -> Vector:
        y = vec_mat(x, self.smith.V)
        return tuple(y[i] % d for i, d in self._torsion_columns)

    def class_key(self, x: Sequence[int]) -> tuple[Vector, Vector]:
        """Canonical key of the coset ``x + L``."""
        return (self.project(x), self.torsion_class(x))

    def projection_matrix(self) -> IntegerMatrix:
        """n x free_rank matrix P with ``project(x) == x @ P``."""
        V = self.smith.V
        return IntegerMatrix(
            tuple(tuple(V.rows[i][j] for j in self._free_columns) for i in range(self.ambient_rank)),
            self.free_rank,
        )

    def lift(self, y: Sequence[int]) -> Vector:
        """A lattice vector whose projection is ``y`` (a section of project)."""
        z = [0] * self.ambient_rank
        for j, v in zip(self._free_columns, y):
            z[j] = v
        return vec_mat(z, unimodular_inverse(self.smith.V))


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def vec_mat(x: Sequence[int], M: IntegerMatrix) -> Vector:
    return tuple(dot(x, c) for c in M.columns())


def vec_add(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: int, a: Sequence[int]) -> Vector:
    return tuple(c * x for x in a)


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def smith_normal_form(M: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    The pivot is always the nonzero entry of smallest absolute value in the
    active block, ties broken row-major, so U and V are reproducible.
    """
    m, n = M.shape
    A = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def smallest(cells):
        best = None
        for i, j in cells:
            v = A[i][j]
            if v != 0 and (best is None or abs(v) < abs(A[best[0]][best[1]])):
                best = (i, j)
        return best

    for t in range(min(m, n)):
        block = [(i, j) for i in range(t, m) for j in range(t, n)]
        piv = smallest(block)
        if piv is None:
            break
        while True:
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            line = [(i, t) for i in range(t + 1, m)] + [(t, j) for j in range(t + 1, n)]
            piv = smallest(line)
            if piv is not None:
                # a remainder survived; it is smaller than the current pivot
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
            piv = (t, t)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]

    divisors = tuple(A[i][i] for i in range(min(m, n)))
    return SmithDecomposition(
        IntegerMatrix.from_rows(U, m),
        IntegerMatrix.from_rows(A, n),
        IntegerMatrix.from_rows(V, n),
        divisors,
    )


def hermite_normal_form(rows: Sequence[Sequence[int]], cols: int) -> IntegerMatrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped, pivots are positive and entries above a pivot are
    reduced into ``[0, pivot)``. The result is a canonical basis.
    """
    A = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while A and col < cols:
        nz = [r for r in A if r[col] != 0]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(cols):
                    r[k] -= q * p[k]
            nz = [r for r in nz if r[col] != 0]
        p = nz[0]
        if p[col] < 0:
            p[:] = [-x for x in p]
        out.append(p)
        A = [r for r in A if r is not p and any(r)]
        col += 1
    pivots = []
    for r in out:
        pivots.append(next(k for k, x in enumerate(r) if x))
    for i, r in enumerate(out):
        for k in range(i):
            rk = out[k]
            c = pivots[i]
            q = rk[c] // r[c]
            if q:
                out[k] = [a - q * b for a, b in zip(rk, r)]
    return IntegerMatrix.from_rows(out, cols)


def unimodular_inverse(M: IntegerMatrix) -> IntegerMatrix:
    inv = rational_inverse(M.rows)
    rows = []
    for r in inv:
        if any(x.denominator != 1 for x in r):
            raise ValueError("matrix is not unimodular")
        rows.append([int(x) for x in r])
    return IntegerMatrix.from_rows(rows, M.cols)


def rational_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    A = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [r[n:] for r in A]


def rational_row_echelon(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rational_row_echelon(rows)[1])


def rational_nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0} over Q."""
    R, piv = rational_row_echelon(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(R, piv):
            v[pc] = -r[f]
        basis.append(v)
    return basis


def rational_solve(rows: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Some solution y of ``y @ rows == b`` over Q, or None."""
    ncols = len(b)
    m = len(rows)
    # transpose system: sum_i y_i rows[i][j] = b[j]
    aug = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(b[j])] for j in range(ncols)]
    R, piv = rational_row_echelon(aug)
    if m in piv:
        return None
    y = [Fraction(0)] * m
    for r, pc in zip(R, piv):
        y[pc] = r[m]
    return y


def kernel_basis(M: IntegerMatrix) -> IntegerMatrix:
    """Saturated basis (as rows) of the integer kernel {v : M @ v = 0}."""
    snf = smith_normal_form(M)
    r = snf.rank
    Vcols = snf.V.columns()
    ker = [Vcols[j] for j in range(r, M.cols)]
    return hermite_normal_form(ker, M.cols)


def lattice_quotient(ambient_rank: int, sublattice: IntegerMatrix | Sequence[Sequence[int]]) -> LatticeQuotient:
    if not isinstance(sublattice, IntegerMatrix):
        sublattice = IntegerMatrix.from_rows(sublattice, ambient_rank)
    if sublattice.cols != ambient_rank:
        raise ValueError("sublattice vectors must live in the ambient lattice")
    snf = smith_normal_form(sublattice)
    # pad the divisor list so that it always has ambient_rank entries
    divisors = snf.divisors + (0,) * (ambient_rank - len(snf.divisors))
    snf = SmithDecomposition(snf.U, snf.D, snf.V, divisors)
    torsion = tuple(d for d in divisors if d > 1)
    return LatticeQuotient(ambient_rank, sublattice, ambient_rank - snf.rank, torsion, snf)


def solve_integer(generators: Sequence[Sequence[int]], x: Sequence[int]) -> Vector | None:
    """Integer coefficients y with ``sum y_i * generators[i] == x``, or None.

    ``generators`` need not be independent.
    """
    n = len(x)
    if not generators:
        return () if not any(x) else None
    M = IntegerMatrix.from_rows(generators, n)
    snf = smith_normal_form(M)
    xv = vec_mat(x, snf.V)
    z = [0] * M.nrows
    for i, v in enumerate(xv):
        d = snf.divisors[i] if i < len(snf.divisors) else 0
        if d == 0:
            if v != 0:
                return None
        else:
            if v % d:
                return None
            z[i] = v // d
    return vec_mat(z, snf.U)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    A = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(det)
