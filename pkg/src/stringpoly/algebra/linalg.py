"""Exact linear algebra over Q and Z.

Matrices are plain lists of rows holding ``int`` or ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import Iterable, Sequence

Vector = Sequence[int]


def as_fraction_rows(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = as_fraction_rows(rows)
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of the square system A x = b, or None if singular."""
    n = len(A)
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, piv = rref(aug)
    if piv[: n] != list(range(n)) or len(piv) != n:
        return None
    return [R[i][n] for i in range(n)]


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over Q."""
    if not rows:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0])
    R, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points`` (-1 if empty)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([[Fraction(a) - Fraction(b) for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


# --- integer normal forms -------------------------------------------------


def hnf(rows: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; zero rows dropped.

    Pivots are positive, move strictly right going down, and entries above a
    pivot lie in [0, pivot).
    """
    H, _ = _hnf_with_transform([list(map(int, r)) for r in rows], track=False)
    return H


def _hnf_with_transform(A: list[list[int]], track: bool):
    m = len(A)
    if m == 0:
        return [], []
    ncols = len(A[0])
    A = [row[:] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    r = 0
    for c in range(ncols):
        if r == m:
            break
        # euclid down the column until a single nonzero entry remains at row r
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            if piv != r:
                A[r], A[piv] = A[piv], A[r]
                if track:
                    U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c] != 0:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if track:
                        U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if A[i][c] != 0:
                        done = False
            if done:
                break
        if all(A[i][c] == 0 for i in range(r, m)):
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            if track:
                U[r] = [-x for x in U[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                if track:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    if track:
        return A[:r], U
    return A[:r], None


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {y in Z^ncols : A y = 0} (a saturated lattice)."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    At = [[int(rows[i][j]) for i in range(len(rows))] for j in range(ncols)]
    H, U = _hnf_with_transform(At, track=True)
    # rows of U past rank(H) send A^T to zero rows
    return [u for u in U[len(H):]]


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j] != 0]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        changed = True
            if changed:
                nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                      if A[i][j] != 0 and (i == t or j == t)]
                _, pi, pj = min(nz)
                A[t], A[pi] = A[pi], A[t]
                for row in A:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # divisibility: fold a non-divisible entry into row t
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


class IntegerLattice:
    """Sublattice of Z^dim spanned by integer generators."""

    def __init__(self, generators: Iterable[Sequence[int]], dim: int):
        self.dim = dim
        self.generators = [tuple(int(x) for x in g) for g in generators]
        for g in self.generators:
            if len(g) != dim:
                raise ValueError(f"generator {g} has length {len(g)} != {dim}")
        self.basis = hnf(self.generators) if self.generators else []
        self._pivots = [next(j for j, x in enumerate(row) if x) for row in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of v + L."""
        v = [int(x) for x in v]
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        for row, p in zip(self.basis, self._pivots):
            q = v[p] // row[p]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def saturation_index(self) -> int:
        return prod(smith_invariants(self.basis)) if self.basis else 1

    def complement_basis(self) -> list[list[int]]:
        """Z-basis of {y : <u, y> = 0 for all u in L}."""
        return integer_kernel(self.basis, self.dim)

    def __repr__(self):
        return f"IntegerLattice(rank={self.rank}, dim={self.dim})"


def lattice_contains(L: IntegerLattice, v: Sequence[int]) -> bool:
    return L.contains(v)


def lattice_saturation_index(L: IntegerLattice) -> int:
    return L.saturation_index()
