"""Brute-force CVP oracle and quantum-vs-Babai comparison experiments.

The oracle enumerates the refinement alphabet around the Babai point
exactly; comparisons score solutions by the relative distance
r = ||b - t||^2 / |det [B | t]|^(2/(n+1)), which normalizes away the lattice
determinant so runs with different moduli are comparable.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Sequence

from .instance import CvpInstance, build_instance, default_diag_multiset, random_diag
from .ising import energies_scaled
from .lattice import BabaiResult, ExactMatrix
from .numtheory import is_prime
from .relations import PIPELINE_DELTA, prepare


def brute_force_best(
    reduced: ExactMatrix,
    babai: BabaiResult,
    target: Sequence[int],
    alphabet: Sequence[int] = (-1, 0, 1),
) -> tuple[tuple[int, ...], int]:
    """Exact minimizer of ||t - b_op - sum x_i d_i||^2 over alphabet^n."""
    n = reduced.ncols
    if len(alphabet) ** n > 3**16:
        raise ValueError("alphabet^n too large for exhaustive search")
    cols = reduced.int_columns()
    base = [b - int(t) for b, t in zip(babai.b_op, target)]
    best_x: tuple[int, ...] | None = None
    best = None
    for xs in itertools.product(alphabet, repeat=n):
        v = base[:]
        for i, x in enumerate(xs):
            if x:
                col = cols[i]
                for r in range(len(v)):
                    v[r] += x * col[r]
        norm = sum(t * t for t in v)
        if best is None or norm < best:
            best, best_x = norm, xs
    assert best_x is not None and best is not None
    return best_x, best


def extended_determinant(inst: CvpInstance) -> int:
    """det of the square extension [B | t] (exact)."""
    cols = [list(c) for c in inst.B.columns] + [list(inst.t)]
    det = ExactMatrix.from_columns(cols).determinant()
    if det.denominator != 1:
        raise ValueError("extended matrix is not integral")
    return int(det)


def relative_distance(inst: CvpInstance, norm_sq) -> float:
    """norm^2 / |det [B | t]|^(2/(n+1)); zero norm gives zero."""
    det = abs(extended_determinant(inst))
    if det == 0:
        raise ValueError("extended lattice is singular")
    return float(norm_sq) / det ** (2.0 / (inst.n + 1))


def _random_semiprime(rng: random.Random, bits: int) -> int:
    half = (bits + 1) // 2

    def rand_prime() -> int:
        while True:
            cand = rng.getrandbits(half) | (1 << (half - 1)) | 1
            if is_prime(cand):
                return cand

    p = rand_prime()
    q = rand_prime()
    while q == p:
        q = rand_prime()
    return p * q


def default_bits_for_dim(n: int) -> int:
    """Smallest bit length whose experiment-scheme dimension reaches n."""
    m = 8
    while math.floor(m / math.log2(m)) < n:
        m += 1
    return m


@dataclass
class ComparisonStats:
    n: int
    c: Fraction
    samples: int
    seed: int
    r_babai: list[float] = field(default_factory=list)
    r_quantum: list[float] = field(default_factory=list)

    @property
    def advantage_ratio(self) -> float:
        wins = sum(1 for b, q in zip(self.r_babai, self.r_quantum) if q < b)
        return wins / len(self.r_babai)

    def write_csv(self, fh: IO[str]) -> None:
        fh.write("sample_id,r_babai,r_quantum\n")
        for i, (b, q) in enumerate(zip(self.r_babai, self.r_quantum)):
            fh.write(f"{i},{b:.12g},{q:.12g}\n")

    def summary_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "c": str(self.c),
                "samples": self.samples,
                "seed": self.seed,
                "advantage_ratio": self.advantage_ratio,
                "mean_r_babai": sum(self.r_babai) / len(self.r_babai),
                "mean_r_quantum": sum(self.r_quantum) / len(self.r_quantum),
            }
        )


def compare(
    n: int,
    c,
    samples: int,
    seed: int = 0,
    bits: int | None = None,
    delta: Fraction = PIPELINE_DELTA,
) -> ComparisonStats:
    """Per sample: random semiprime + diagonal permutation; Babai residual vs
    the exact minimum over the encoded refinement space (the idealized
    quantum optimum)."""
    c = Fraction(str(c)) if not isinstance(c, Fraction) else c
    bits = bits if bits is not None else default_bits_for_dim(n)
    stats = ComparisonStats(n=n, c=c, samples=samples, seed=seed)
    multiset = default_diag_multiset(n)
    rng = random.Random(seed)
    for i in range(samples):
        N = _random_semiprime(rng, bits)
        diag = random_diag(n, seed=rng.getrandbits(32), multiset=multiset)
        inst = build_instance(N, n, c, diag)
        pipe = prepare(inst, delta)
        babai_norm = sum(
            (a - b) ** 2 for a, b in zip(pipe.babai.b_op, inst.t)
        )
        scaled, scale = energies_scaled(pipe.model)
        ground = Fraction(int(scaled.min()), scale)
        stats.r_babai.append(relative_distance(inst, babai_norm))
        stats.r_quantum.append(relative_distance(inst, ground))
        if ground > babai_norm:
            raise AssertionError("encoded minimum exceeded the Babai residual")
    return stats
