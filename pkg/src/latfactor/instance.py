"""CVP instance construction: the prime lattice, its target, dimension rules.

The lattice for a semiprime N is the (n+1) x n integer matrix whose diagonal
block carries a permuted weight vector and whose last row holds
round(10^c * ln p_i); the target is zero except for round(10^c * ln N).
Rounding of the log entries is done at high precision (mpmath) so entries
are reproducible for any rational c, including fractional ones like 1.5.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .lattice import ExactMatrix
from .numtheory import PrimeBasis, first_primes


def _round_scaled_log(value: int, c: Fraction) -> int:
    """round(10^c * ln(value)), half away from zero, computed exactly enough."""
    digits = 30 + int(3.33 * float(c))
    with mpmath.workdps(digits):
        x = mpmath.power(10, mpmath.mpf(c.numerator) / c.denominator) * mpmath.ln(value)
        r = int(mpmath.floor(x + mpmath.mpf("0.5")))
        # guard: a value this close to a rounding boundary would need more digits
        if abs(x - r) > mpmath.mpf("0.5") - mpmath.mpf("1e-12"):
            with mpmath.workdps(digits * 2):
                x = mpmath.power(10, mpmath.mpf(c.numerator) / c.denominator) * mpmath.ln(value)
                r = int(mpmath.floor(x + mpmath.mpf("0.5")))
    return r


@dataclass(frozen=True)
class CvpInstance:
    """The factoring sub-problem: lattice basis B, target t, prime basis."""

    N: int
    n: int
    c: Fraction
    diag: tuple[int, ...]
    B: ExactMatrix
    t: tuple[int, ...]
    basis: PrimeBasis

    def last_row(self) -> tuple[int, ...]:
        return tuple(int(self.B.entry(self.n, j)) for j in range(self.n))

    def to_json(self) -> str:
        payload = {
            "N": self.N,
            "n": self.n,
            "c": str(self.c),
            "diag": list(self.diag),
            "basis": list(self.basis.primes),
            "B": [[int(x) for x in row] for row in self.B.rows()],
            "t": list(self.t),
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "CvpInstance":
        d = json.loads(text)
        inst = build_instance(d["N"], d["n"], Fraction(str(d["c"])), d["diag"])
        got_B = [[int(x) for x in row] for row in inst.B.rows()]
        if got_B != d["B"] or list(inst.t) != d["t"]:
            raise ValueError("instance file does not match its own parameters")
        return inst


def select_dimension(N: int, scheme: str = "experiment") -> int:
    """Lattice dimension for an integer N by named scheme.

    experiment: floor(m / log2 m); resource: round(2m / log2 m); m = bit
    length of N. sublinear(c) scales the experiment value by c.
    """
    if N < 4:
        raise ValueError("N must be at least 4")
    m = N.bit_length()
    x = m / math.log2(m)
    if scheme == "experiment":
        return max(1, math.floor(x))
    if scheme == "resource":
        return max(1, math.floor(2 * x + 0.5))
    if scheme.startswith("sublinear"):
        c = float(scheme[len("sublinear("):-1]) if "(" in scheme else 1.0
        return max(1, math.floor(c * x + 0.5))
    raise ValueError(f"unknown scheme {scheme!r}")


def default_diag_multiset(n: int) -> list[int]:
    """The weight multiset {round(i/2), i=1..n}, halves rounded up."""
    return [(i + 1) // 2 for i in range(1, n + 1)]


def random_diag(n: int, seed: int, multiset: list[int] | None = None) -> list[int]:
    """Seeded permutation of the default (or given) diagonal multiset."""
    base = list(multiset) if multiset is not None else default_diag_multiset(n)
    if len(base) != n:
        raise ValueError("multiset length must equal n")
    rng = random.Random(seed)
    perm = base[:]
    rng.shuffle(perm)
    return perm


def build_instance(N: int, n: int, c, diag) -> CvpInstance:
    """Assemble the exact lattice and target for (N, n, c, diag)."""
    c = Fraction(str(c)) if not isinstance(c, Fraction) else c
    if c <= 0:
        raise ValueError("precision c must be positive")
    diag = tuple(int(d) for d in diag)
    if len(diag) != n or any(d <= 0 for d in diag):
        raise ValueError("diag must hold n positive integers")
    basis = first_primes(n)
    cols = []
    for i in range(n):
        col = [0] * (n + 1)
        col[i] = diag[i]
        col[n] = _round_scaled_log(basis[i], c)
        cols.append(col)
    t = tuple([0] * n + [_round_scaled_log(N, c)])
    return CvpInstance(
        N=N, n=n, c=c, diag=diag, B=ExactMatrix.from_columns(cols), t=t, basis=basis
    )
