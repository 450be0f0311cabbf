"""Exact-rational lattice toolkit: Gram-Schmidt, LLL reduction, Babai rounding.

All arithmetic is exact (ints and Fractions); there is no floating-point
path. Reductions keep the Gram-Schmidt data (mu, |b~|^2) incrementally up to
date instead of recomputing it per swap, which keeps desk-scale runs (n up to
~40) fast even with the large last-row entries of prime lattices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class RankDeficientError(ValueError):
    """Input columns are linearly dependent."""


def round_half_up(x: Fraction) -> int:
    """Nearest integer, ties toward +infinity."""
    return math.floor(x + Fraction(1, 2))


@dataclass(frozen=True)
class ExactMatrix:
    """Column-major exact matrix; columns are the basis vectors."""

    columns: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence]) -> "ExactMatrix":
        return cls(tuple(tuple(Fraction(x) for x in c) for c in cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        m = len(rows)
        n = len(rows[0]) if m else 0
        return cls(tuple(tuple(Fraction(rows[i][j]) for i in range(m)) for j in range(n)))

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def nrows(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.columns[j]

    def entry(self, i: int, j: int) -> Fraction:
        return self.columns[j][i]

    def rows(self) -> list[list[Fraction]]:
        return [[self.columns[j][i] for j in range(self.ncols)] for i in range(self.nrows)]

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for c in self.columns for x in c)

    def int_columns(self) -> list[list[int]]:
        if not self.is_integer():
            raise ValueError("matrix has non-integer entries")
        return [[int(x) for x in c] for c in self.columns]

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = []
        for c in other.columns:
            out = [Fraction(0)] * self.nrows
            for j, coef in enumerate(c):
                if coef:
                    col = self.columns[j]
                    for i in range(self.nrows):
                        out[i] += coef * col[i]
            cols.append(tuple(out))
        return ExactMatrix(tuple(cols))

    def determinant(self) -> Fraction:
        """Exact determinant of a square matrix (fraction-free elimination)."""
        if self.ncols != self.nrows:
            raise ValueError("determinant needs a square matrix")
        n = self.ncols
        a = [[self.columns[j][i] for j in range(n)] for i in range(n)]
        det = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det *= a[col][col]
            inv = 1 / a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] * inv
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return det


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class GramSchmidt:
    """Exact orthogonalization: ortho columns b~_i and coefficients mu[i][j]."""

    ortho: ExactMatrix
    mu: tuple[tuple[Fraction, ...], ...]

    def norm_sq(self, i: int) -> Fraction:
        c = self.ortho.columns[i]
        return _dot(c, c)


def gram_schmidt(basis: ExactMatrix) -> GramSchmidt:
    """Exact Gram-Schmidt; raises RankDeficientError on dependent columns."""
    ortho: list[list[Fraction]] = []
    mus: list[tuple[Fraction, ...]] = []
    for i in range(basis.ncols):
        b = list(basis.columns[i])
        row = []
        v = b[:]
        for j in range(i):
            denom = _dot(ortho[j], ortho[j])
            m = _dot(b, ortho[j]) / denom
            row.append(m)
            v = [a - m * c for a, c in zip(v, ortho[j])]
        if all(x == 0 for x in v):
            raise RankDeficientError(f"column {i} depends on earlier columns")
        ortho.append(v)
        mus.append(tuple(row))
    return GramSchmidt(ExactMatrix.from_columns(ortho), tuple(mus))


@dataclass(frozen=True)
class LLLResult:
    reduced: ExactMatrix
    transform: ExactMatrix  # unimodular U with reduced = B . U


@dataclass(frozen=True)
class BabaiResult:
    """Full rounding trace of the nearest-plane pass.

    coeffs/mus/directions are indexed by basis column (0-based); the pass
    itself visits columns n-1 down to 0. directions[i] is +1 where
    c_i <= mu_i (the coefficient was rounded down, the refinement alphabet is
    {0, +1}) and -1 otherwise.
    """

    b_op: tuple[int, ...]
    coeffs: tuple[int, ...]
    mus: tuple[Fraction, ...]
    directions: tuple[int, ...]

    def step_order(self) -> list[tuple[int, Fraction, int]]:
        """(coeff, mu, direction) triples in pass order (last column first)."""
        return [
            (self.coeffs[i], self.mus[i], self.directions[i])
            for i in range(len(self.coeffs) - 1, -1, -1)
        ]


class _GsState:
    """Basis + transform + incrementally maintained GS data (mu, |b~|^2)."""

    def __init__(self, cols: list[list[int]]):
        self.b = [c[:] for c in cols]
        n = len(cols)
        self.u = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        gram = [[_dot(cols[i], cols[j]) for j in range(i + 1)] for i in range(n)]
        self.mu: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
        self.B2: list[Fraction] = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = Fraction(gram[i][j])
                for l in range(j):
                    s -= self.mu[j][l] * self.mu[i][l] * self.B2[l]
                self.mu[i][j] = s / self.B2[j]
            s = Fraction(gram[i][i])
            for l in range(i):
                s -= self.mu[i][l] * self.mu[i][l] * self.B2[l]
            if s <= 0:
                raise RankDeficientError(f"column {i} depends on earlier columns")
            self.B2[i] = s

    def size_reduce(self, i: int, j: int) -> None:
        c = round_half_up(self.mu[i][j])
        if c == 0:
            return
        self.b[i] = [a - c * x for a, x in zip(self.b[i], self.b[j])]
        self.u[i] = [a - c * x for a, x in zip(self.u[i], self.u[j])]
        mi, mj = self.mu[i], self.mu[j]
        for l in range(j):
            mi[l] -= c * mj[l]
        mi[j] -= c

    def swap(self, k: int) -> None:
        """Swap basis columns k and k+1, updating GS data in place."""
        mu, B2 = self.mu, self.B2
        nu = mu[k + 1][k]
        Bnew = B2[k + 1] + nu * nu * B2[k]
        mu[k + 1][k] = nu * B2[k] / Bnew
        B2[k + 1] = B2[k] * B2[k + 1] / Bnew
        B2[k] = Bnew
        self.b[k], self.b[k + 1] = self.b[k + 1], self.b[k]
        self.u[k], self.u[k + 1] = self.u[k + 1], self.u[k]
        for j in range(k):
            mu[k][j], mu[k + 1][j] = mu[k + 1][j], mu[k][j]
        for i in range(k + 2, len(self.b)):
            t = mu[i][k + 1]
            mu[i][k + 1] = mu[i][k] - nu * t
            mu[i][k] = t + mu[k + 1][k] * mu[i][k + 1]


def lll_reduce(basis: ExactMatrix, delta: Fraction = Fraction(3, 4)) -> LLLResult:
    """LLL-reduce an integer basis.

    Follows the reduce-all / swap-one / repeat structure: each round fully
    size-reduces the basis, then swaps at the highest index violating the
    Lovasz condition. Output columns are sign-normalized (first nonzero
    entry positive); the transform tracks every operation, so
    reduced = basis . transform with |det transform| = 1.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("delta must satisfy 1/4 < delta <= 1")
    cols = basis.int_columns()
    n = len(cols)
    if n == 0:
        return LLLResult(basis, ExactMatrix.from_columns([]))
    st = _GsState(cols)
    while True:
        for i in range(1, n):
            for j in range(i - 1, -1, -1):
                st.size_reduce(i, j)
        worst = None
        for i in range(n - 1):
            m = st.mu[i + 1][i]
            if delta * st.B2[i] > m * m * st.B2[i] + st.B2[i + 1]:
                worst = i
        if worst is None:
            break
        st.swap(worst)
    for i in range(n):
        lead = next((x for x in st.b[i] if x != 0), 0)
        if lead < 0:
            st.b[i] = [-x for x in st.b[i]]
            st.u[i] = [-x for x in st.u[i]]
    return LLLResult(
        ExactMatrix.from_columns(st.b), ExactMatrix.from_columns(st.u)
    )


def is_lll_reduced(basis: ExactMatrix, delta: Fraction = Fraction(3, 4)) -> bool:
    """Exact check of the size-reduction and Lovasz conditions."""
    delta = Fraction(delta)
    gs = gram_schmidt(basis)
    n = basis.ncols
    for i in range(1, n):
        for j in range(i):
            if abs(gs.mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(n - 1):
        m = gs.mu[i + 1][i]
        if delta * gs.norm_sq(i) > m * m * gs.norm_sq(i) + gs.norm_sq(i + 1):
            return False
    return True


def babai_nearest_plane(basis: ExactMatrix, target: Sequence[int]) -> BabaiResult:
    """Nearest-plane pass over an LLL-reduced basis, capturing the trace.

    Works on the GS coefficient representation, so no rational vectors are
    formed: with tau_j = <t, b~_j>/|b~_j|^2, the running mu at column j is
    tau_j - sum_{i>j} c_i mu[i][j].
    """
    cols = basis.int_columns()
    n = len(cols)
    t = [int(x) for x in target]
    if len(t) != basis.nrows:
        raise ValueError("target length must match the ambient dimension")
    st = _GsState(cols)
    # tau via the same triangular recurrence used for mu
    tau = [Fraction(0)] * n
    for j in range(n):
        s = Fraction(_dot(t, cols[j]))
        for l in range(j):
            s -= tau[l] * st.mu[j][l] * st.B2[l]
        tau[j] = s / st.B2[j]
    coeffs = [0] * n
    mus = [Fraction(0)] * n
    for j in range(n - 1, -1, -1):
        m = tau[j] - sum(coeffs[i] * st.mu[i][j] for i in range(j + 1, n))
        c = round_half_up(m)
        mus[j] = m
        coeffs[j] = c
    b_op = [0] * len(t)
    for i in range(n):
        if coeffs[i]:
            for r in range(len(t)):
                b_op[r] += coeffs[i] * cols[i][r]
    dirs = tuple(+1 if coeffs[i] <= mus[i] else -1 for i in range(n))
    return BabaiResult(tuple(b_op), tuple(coeffs), tuple(mus), dirs)


def residual(result: BabaiResult, target: Sequence[int]) -> tuple[int, ...]:
    """b_op - t, the distance vector left after the nearest-plane pass."""
    return tuple(b - int(x) for b, x in zip(result.b_op, target))


def residual_norm_sq(result: BabaiResult, target: Sequence[int]) -> int:
    r = residual(result, target)
    return sum(x * x for x in r)
