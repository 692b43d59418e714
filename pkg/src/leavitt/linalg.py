"""Exact kernel tests for coefficient matrices over Z, Q and Z/nZ."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rings import INTEGERS_MOD, Raw, RingSpec


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix with entries normalized in ``ring``.

    Rows index monomials, columns index the elements under test.
    """

    ring: RingSpec
    rows: tuple[tuple[Raw, ...], ...]

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = tuple(tuple(ring.normalize(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        return cls(ring, rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_form(m: Sequence[Sequence[int]]):
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` and U, V unimodular.

    D is diagonal with nonnegative entries and each diagonal entry divides
    the next.
    """
    a = [[int(x) for x in row] for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    U = _identity(nr)
    V = _identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (a, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for M in (a, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(nr, nc)):
        while True:
            # smallest nonzero |entry| in the trailing block bounds growth
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, a, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            # pivot must divide the whole trailing block
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    return U, a, V


def smith_normal_form(m: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form, length ``min(rows, cols)``."""
    _, d, _ = smith_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def rational_rank(m: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][c]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def kernel_is_trivial(m: ExactMatrix) -> bool:
    """True iff ``m @ x == 0`` forces ``x == 0`` over the matrix's ring."""
    if m.ring.kind == INTEGERS_MOD:
        n = m.ring.modulus
        diag = smith_normal_form([[int(x) for x in row] for row in m.rows])
        if len(diag) < m.ncols:
            return False
        return all(d != 0 and math.gcd(d, n) == 1 for d in diag)
    # over Z an integer kernel vector exists iff a rational one does
    return rational_rank(m.rows) == m.ncols
