"""Exact integer linear algebra.

Smith and Hermite normal forms, saturation of sublattices of Z^n, finite
indices and projections onto quotient lattices. Everything is plain Python
``int`` arithmetic, so there is no overflow and no floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

from .errors import PreconditionError

Row = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major.

    ``ncols`` is kept explicitly so that matrices with zero rows still know
    their width.
    """

    data: tuple[Row, ...]
    ncols: int

    def __post_init__(self):
        for row in self.data:
            if len(row) != self.ncols:
                raise ValueError(f"row {row} has length {len(row)}, expected {self.ncols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        data = tuple(tuple(int(v) for v in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        return cls(data, ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> IntMatrix:
        return cls(tuple((0,) * n for _ in range(m)), n)

    @property
    def nrows(self) -> int:
        return len(self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.data), self.ncols)

    def __getitem__(self, idx):
        return self.data[idx]

    def __iter__(self):
        return iter(self.data)

    def __len__(self):
        return len(self.data)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.data)) if self.data else tuple(() for _ in range(self.ncols)), self.nrows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.T.data
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.data),
            other.ncols,
        )

    def apply(self, v: Sequence[int]) -> Row:
        """Matrix-vector product ``self @ v``."""
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self.data) for j, v in enumerate(r) if i != j)

    def diagonal(self) -> Row:
        return tuple(self.data[i][i] for i in range(min(self.shape)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def determinant(A: IntMatrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = A.nrows
    if A.ncols != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(r) for r in A.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> Row:
        return tuple(d for d in self.D.diagonal() if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Pivots are chosen as the nonzero entry of smallest absolute value in the
    remaining block, ties broken by row-major position, so the output is a
    deterministic function of ``A``.
    """
    m, n = A.shape
    D = [list(r) for r in A.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def move_smallest_to(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            return False
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        return True

    for t in range(min(m, n)):
        if not move_smallest_to(t):
            break
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, i, j = min(rest)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]

    return SmithDecomposition(
        IntMatrix.from_rows(U, m), IntMatrix.from_rows(D, n), IntMatrix.from_rows(V, n)
    )


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped, pivots are positive and entries above a pivot lie
    in ``[0, pivot)``. The result is a canonical basis of the row lattice.
    """
    M = [list(r) for r in rows if any(r)]
    r = 0
    for j in range(ncols):
        if r == len(M):
            break
        while True:
            nz = [i for i in range(r, len(M)) if M[i][j]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(M[i][j]), i))
            M[r], M[k] = M[k], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][j]:
                    q = M[i][j] // M[r][j]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][j]:
                        done = False
            if done:
                break
        if r < len(M) and M[r][j]:
            if M[r][j] < 0:
                M[r] = [-a for a in M[r]]
            p = M[r][j]
            for i in range(r):
                q = M[i][j] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
    return IntMatrix.from_rows([row for row in M[:r] if any(row)], ncols)


def integer_kernel(A: IntMatrix) -> IntMatrix:
    """Rows form a basis of ``{x in Z^n : A x = 0}`` (a saturated lattice)."""
    snf = smith_normal_form(A)
    cols = snf.V.T.data
    return IntMatrix.from_rows(cols[snf.rank:], A.ncols)


@dataclass(frozen=True)
class SublatticeBasis:
    """A sublattice of Z^n stored by its Hermite normal form basis."""

    basis: IntMatrix

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], n: int) -> SublatticeBasis:
        return cls(hermite_normal_form(generators, n))

    @classmethod
    def zero(cls, n: int) -> SublatticeBasis:
        return cls(IntMatrix.zeros(0, n))

    @classmethod
    def full(cls, n: int) -> SublatticeBasis:
        return cls(IntMatrix.identity(n))

    @property
    def rank(self) -> int:
        return self.basis.nrows

    @property
    def ambient_dim(self) -> int:
        return self.basis.ncols

    def coordinates(self, v: Sequence[int]) -> tuple[Fraction, ...] | None:
        """Rational coordinates of ``v`` in this basis, or None if ``v`` is off the span."""
        H = self.basis.data
        pivots = [next(j for j, a in enumerate(r) if a) for r in H]
        c: list[Fraction] = []
        for i, p in enumerate(pivots):
            acc = Fraction(v[p]) - sum(c[k] * H[k][p] for k in range(i))
            c.append(acc / H[i][p])
        recon = [sum(ci * H[i][j] for i, ci in enumerate(c)) for j in range(self.ambient_dim)]
        if any(a != b for a, b in zip(recon, v)):
            return None
        return tuple(c)

    def contains(self, v: Sequence[int]) -> bool:
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)


def saturate(G: SublatticeBasis) -> SublatticeBasis:
    """Basis of ``span_R(G) ∩ Z^n``, the saturation of ``G``."""
    n = G.ambient_dim
    kernel = integer_kernel(G.basis)
    return SublatticeBasis(hermite_normal_form(integer_kernel(kernel).data, n))


def is_saturated(G: SublatticeBasis) -> bool:
    return saturate(G) == G


def sublattice_index(G: SublatticeBasis, L: SublatticeBasis) -> int:
    """The finite index ``[L : G]`` of a full-rank sublattice ``G`` of ``L``."""
    if G.ambient_dim != L.ambient_dim:
        raise PreconditionError("lattices live in different ambient dimensions")
    if G.rank != L.rank:
        raise PreconditionError(f"rank mismatch: rank(G)={G.rank}, rank(L)={L.rank}")
    change = []
    for g in G.basis:
        c = L.coordinates(g)
        if c is None or any(x.denominator != 1 for x in c):
            raise PreconditionError(f"generator {g} of G is not in L")
        change.append([int(x) for x in c])
    if not change:
        return 1
    return prod(smith_normal_form(IntMatrix.from_rows(change, L.rank)).invariant_factors)


@dataclass(frozen=True)
class QuotientProjection:
    """Surjection ``P : Z^n -> Z^(n-r)`` whose kernel is a saturated lattice."""

    kernel: SublatticeBasis
    matrix: IntMatrix

    @property
    def ambient_dim(self) -> int:
        return self.matrix.ncols

    @property
    def codim_rank(self) -> int:
        return self.kernel.rank

    @property
    def target_dim(self) -> int:
        return self.matrix.nrows

    def __call__(self, v: Sequence[int]) -> Row:
        return self.matrix.apply(v)


def quotient_projection(kernel: SublatticeBasis) -> QuotientProjection:
    """Canonical projection of Z^n onto Z^n / kernel.

    The rows of the returned matrix are the Hermite basis of the integer
    vectors orthogonal to ``kernel``; that lattice is saturated, so the map is
    onto Z^(n-r) and its integer kernel is exactly ``kernel``.
    """
    if not is_saturated(kernel):
        raise PreconditionError("kernel lattice is not saturated; call saturate() first")
    P = hermite_normal_form(integer_kernel(kernel.basis).data, kernel.ambient_dim)
    return QuotientProjection(kernel, P)
