"""Ising encoding of the rounding refinement and exact energy evaluation.

The refinement floats each Babai coefficient by x_i in {0, s_i} where the
sign s_i comes from the rounding direction. Substituting the single-qubit
operator for x_i into ||t - v_new||^2 gives a diagonal Hamiltonian
constant + sum h_i Z_i + sum_{i<j} J_ij Z_i Z_j whose eigenvalue on a
bitstring is exactly the squared distance of the refined lattice vector to
the target. Coefficients are exact rationals (quarter-integers occur).

Bit convention: the leftmost character of a bitstring is qubit 1; bit b on
qubit i means z_i = 1 - 2b, and b = 1 applies the float x_i = s_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .lattice import BabaiResult, ExactMatrix


@dataclass(frozen=True)
class IsingModel:
    n: int
    constant: Fraction
    h: tuple[Fraction, ...]
    J: dict[tuple[int, int], Fraction]  # keys (i, j) with 0 <= i < j < n
    directions: tuple[int, ...]  # +1 where Babai rounded down (alphabet {0,+1})

    def coefficient_bound(self) -> float:
        vals = [abs(float(self.constant))]
        vals += [abs(float(x)) for x in self.h]
        vals += [abs(float(x)) for x in self.J.values()]
        return max(vals)


def encode_hamiltonian(
    reduced: ExactMatrix, babai: BabaiResult, target: Sequence[int]
) -> IsingModel:
    """Expand ||(b_op - t) + sum_i x_i d_i||^2 over the direction alphabet."""
    n = reduced.ncols
    if len(babai.coeffs) != n:
        raise ValueError("Babai trace does not match basis shape")
    r = [Fraction(b - int(t)) for b, t in zip(babai.b_op, target)]
    s = babai.directions
    g = [[Fraction(s[i]) * x / 2 for x in reduced.columns[i]] for i in range(n)]
    a = [r[row] + sum(g[i][row] for i in range(n)) for row in range(reduced.nrows)]

    def dot(u, v):
        return sum(p * q for p, q in zip(u, v))

    constant = dot(a, a) + sum(dot(gi, gi) for gi in g)
    h = tuple(-2 * dot(a, gi) for gi in g)
    J = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = 2 * dot(g[i], g[j])
            if v:
                J[(i, j)] = v
    return IsingModel(n=n, constant=constant, h=h, J=J, directions=tuple(s))


def parse_bits(bits: str | Sequence[int], n: int) -> tuple[int, ...]:
    if isinstance(bits, str):
        vals = tuple(int(ch) for ch in bits)
    else:
        vals = tuple(int(b) for b in bits)
    if len(vals) != n or any(b not in (0, 1) for b in vals):
        raise ValueError(f"need {n} bits")
    return vals


def energy(model: IsingModel, bits: str | Sequence[int]) -> Fraction:
    """constant + sum h_i z_i + sum J_ij z_i z_j with z = 1 - 2b."""
    b = parse_bits(bits, model.n)
    z = [1 - 2 * x for x in b]
    e = model.constant
    for i in range(model.n):
        e += model.h[i] * z[i]
    for (i, j), v in model.J.items():
        e += v * z[i] * z[j]
    return e


def index_of_bits(bits: str | Sequence[int], n: int) -> int:
    """Statevector index with qubit 1 as the most significant bit."""
    b = parse_bits(bits, n)
    idx = 0
    for x in b:
        idx = (idx << 1) | x
    return idx


def bits_of_index(k: int, n: int) -> str:
    return format(k, f"0{n}b")


def energies_scaled(model: IsingModel) -> tuple[np.ndarray, int]:
    """All 2^n energies times a common denominator, as an int64 vector.

    The scale is the lcm of the coefficient denominators (4 for the paper
    cases); entry k corresponds to bits_of_index(k).
    """
    n = model.n
    if n > 24:
        raise ValueError("exhaustive enumeration is capped at n = 24")
    denoms = [model.constant.denominator]
    denoms += [x.denominator for x in model.h]
    denoms += [x.denominator for x in model.J.values()]
    scale = 1
    for d in denoms:
        scale = scale * d // math.gcd(scale, d)
    bound = abs(model.constant) + sum(abs(x) for x in model.h) + sum(
        abs(v) for v in model.J.values()
    )
    dtype = np.int64 if int(bound * scale) < (1 << 62) else object
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    z = np.empty((size, n), dtype=dtype)
    for i in range(n):
        z[:, i] = 1 - 2 * ((idx >> (n - 1 - i)) & 1)
    e = np.full(size, int(model.constant * scale), dtype=dtype)
    for i in range(n):
        hi = int(model.h[i] * scale)
        if hi:
            e += hi * z[:, i]
    for (i, j), v in model.J.items():
        e += int(v * scale) * z[:, i] * z[:, j]
    return e, scale


def spectrum(model: IsingModel, k: int) -> list[tuple[Fraction, str]]:
    """k lowest (energy, bitstring) pairs by exhaustive enumeration.

    Sorted by energy, ties broken by bitstring value.
    """
    size = 1 << model.n
    if k > size:
        raise ValueError("k exceeds the state-space size")
    scaled, scale = energies_scaled(model)
    if scaled.dtype == object:
        order = sorted(range(size), key=lambda i: (scaled[i], i))[:k]
    else:
        order = np.lexsort((np.arange(size), scaled))[:k]
    return [
        (Fraction(int(scaled[i]), scale), bits_of_index(int(i), model.n)) for i in order
    ]


def ground(model: IsingModel) -> tuple[Fraction, str]:
    return spectrum(model, 1)[0]
