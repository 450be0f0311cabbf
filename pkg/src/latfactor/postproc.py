"""GF(2) dependency search over relation rows and factor extraction.

Rows are bitmasks: bit 0 is the sign of u - vN, bit i the parity of
(e'_i - e_i) on the i-th prime of the second smoothness basis. A left-kernel
vector selects relations whose product of (u - vN)/u telescopes to a square
congruence X^2 = 1 (mod N); gcd(X +- 1, N) then splits N unless X = +-1.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .numtheory import NonInvertibleError, first_primes, gcd, is_prime, mod_inv
from .relations import (
    CollectConfig,
    PIPELINE_DELTA,
    Relation,
    RelationStore,
    collect,
    default_b2_dim,
)


@dataclass(frozen=True)
class Gf2Matrix:
    width: int               # 1 + b2_dim: sign column then prime parities
    rows: tuple[int, ...]    # bitmasks, bit 0 = sign column

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Dependency:
    """Selection of relation rows XORing to zero (bit j = row j selected)."""

    mask: int
    n_rows: int

    def indices(self) -> list[int]:
        return [j for j in range(self.n_rows) if (self.mask >> j) & 1]


def relation_row(rel: Relation, b2_primes: Sequence[int]) -> int:
    """Sign bit then per-prime parity of (diff exponent - u exponent)."""
    row = rel.sign & 1
    for i, p in enumerate(b2_primes):
        parity = (rel.e_diff[p] + rel.e_u[p]) & 1
        if parity:
            row |= 1 << (i + 1)
    return row


def build_matrix(relations: Sequence[Relation], b2_dim: int) -> Gf2Matrix:
    primes = list(first_primes(b2_dim))
    return Gf2Matrix(
        width=1 + b2_dim, rows=tuple(relation_row(r, primes) for r in relations)
    )


def nullspace(matrix: Gf2Matrix) -> list[Dependency]:
    """Basis of the left kernel: row subsets XORing to zero.

    Gaussian elimination with combination tracking; each row that reduces to
    zero yields one basis dependency.
    """
    pivots: dict[int, tuple[int, int]] = {}  # pivot bit -> (value, mask)
    deps: list[Dependency] = []
    for j, value in enumerate(matrix.rows):
        mask = 1 << j
        while value:
            top = value.bit_length() - 1
            if top not in pivots:
                pivots[top] = (value, mask)
                break
            pv, pm = pivots[top]
            value ^= pv
            mask ^= pm
        else:
            deps.append(Dependency(mask=mask, n_rows=len(matrix.rows)))
    return deps


def verify_dependency(matrix: Gf2Matrix, dep: Dependency) -> bool:
    acc = 0
    for j in dep.indices():
        acc ^= matrix.rows[j]
    return acc == 0


def extract_factors(
    dep: Dependency, relations: Sequence[Relation], N: int
) -> tuple[int, int] | None:
    """Assemble X from half the exponent sums; return the split when nontrivial.

    Negative half-exponents enter through modular inverses; a prime sharing a
    factor with N short-circuits to that factor directly.
    """
    selected = [relations[j] for j in dep.indices()]
    if not selected:
        return None
    sums: dict[int, int] = {}
    sign_total = 0
    for rel in selected:
        sign_total += rel.sign
        for p, e in rel.e_diff.items():
            sums[p] = sums.get(p, 0) + e
        for p, e in rel.e_u.items():
            sums[p] = sums.get(p, 0) - e
    if sign_total % 2:
        raise ValueError("dependency has odd sign parity; not a kernel vector")
    x = 1
    try:
        for p, total in sums.items():
            if total % 2:
                raise ValueError("dependency has odd exponent parity; not a kernel vector")
            half = total // 2
            if half == 0:
                continue
            if half > 0:
                x = x * pow(p, half, N) % N
            else:
                x = x * mod_inv(pow(p, -half, N), N) % N
    except NonInvertibleError as err:
        p = err.factor
        if 1 < p < N:
            return (p, N // p) if p <= N // p else (N // p, p)
        raise
    for candidate in (x - 1, x + 1):
        g = gcd(candidate % N, N)
        if 1 < g < N:
            p, q = g, N // g
            return (p, q) if p <= q else (q, p)
    return None


@dataclass
class FactorReport:
    N: int
    p: int | None
    q: int | None
    relations_used: int = 0
    dependencies_tried: int = 0
    instances_tried: int = 0
    wall_time_ms: int = 0
    success: bool = False
    detail: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "N": str(self.N),
                "p": str(self.p) if self.p else None,
                "q": str(self.q) if self.q else None,
                "relations_used": self.relations_used,
                "dependencies_tried": self.dependencies_tried,
                "instances_tried": self.instances_tried,
                "wall_time_ms": self.wall_time_ms,
                "success": self.success,
                "detail": self.detail,
            }
        )


@dataclass(frozen=True)
class FactorConfig:
    n: int | None = None
    c: Fraction | None = None
    b2_dim: int | None = None
    seed: int = 0
    strategy: str = "spectrum"
    top_k: int = 10
    layers: int = 1
    shots: int = 30000
    max_instances: int = 1000
    extra_relations: int = 2
    max_dependency_pairs: int = 2000
    retries: int = 3
    diag_multiset: tuple[int, ...] | None = None
    delta: Fraction = PIPELINE_DELTA


def _integer_kth_root(N: int, k: int) -> int | None:
    lo, hi = 2, 1 << (N.bit_length() // k + 2)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**k
        if v == N:
            return mid
        if v < N:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def _dependency_stream(deps: list[Dependency], pair_limit: int):
    for d in deps:
        yield d
    pairs = 0
    for i in range(len(deps)):
        for j in range(i + 1, len(deps)):
            if pairs >= pair_limit:
                return
            yield Dependency(mask=deps[i].mask ^ deps[j].mask, n_rows=deps[i].n_rows)
            pairs += 1


def factor(N: int, config: FactorConfig = FactorConfig()) -> FactorReport:
    """End-to-end: collect relations, solve GF(2), extract a factor pair."""
    start = time.monotonic()
    if N < 9 or N % 2 == 0:
        raise ValueError("N must be an odd composite >= 9")
    if is_prime(N):
        raise ValueError("N is prime")
    for k in range(2, N.bit_length() + 1):
        root = _integer_kth_root(N, k)
        if root is not None:
            report = FactorReport(N=N, p=root, q=N // root, success=True,
                                  detail=f"perfect {k}-th power")
            report.wall_time_ms = int((time.monotonic() - start) * 1000)
            return report

    from .instance import select_dimension

    n = config.n if config.n is not None else select_dimension(N, "experiment")
    c = config.c if config.c is not None else Fraction(4)
    b2_dim = config.b2_dim if config.b2_dim is not None else default_b2_dim(n)

    report = FactorReport(N=N, p=None, q=None)
    top_k = config.top_k
    target = b2_dim + config.extra_relations
    for attempt in range(config.retries + 1):
        cfg = CollectConfig(
            n=n,
            c=c,
            b2_dim=b2_dim,
            seed=config.seed + attempt * 10_000,
            strategy=config.strategy,
            top_k=top_k,
            layers=config.layers,
            shots=config.shots,
            max_instances=config.max_instances,
            diag_multiset=config.diag_multiset,
            delta=config.delta,
        )
        store = collect(N, cfg, target)
        report.instances_tried += store.instances_tried
        rels = store.ordered()
        matrix = build_matrix(rels, b2_dim)
        deps = nullspace(matrix)
        for dep in _dependency_stream(deps, config.max_dependency_pairs):
            report.dependencies_tried += 1
            got = extract_factors(dep, rels, N)
            if got is not None:
                report.p, report.q = got
                report.relations_used = len(dep.indices())
                report.success = True
                report.detail = f"attempt {attempt}"
                report.wall_time_ms = int((time.monotonic() - start) * 1000)
                return report
        # all dependencies trivial or store insufficient: widen the search
        target += b2_dim // 2 + 2
        top_k = min(2 * top_k, 1 << n)
    report.detail = "budget exhausted without a nontrivial dependency"
    report.wall_time_ms = int((time.monotonic() - start) * 1000)
    return report
