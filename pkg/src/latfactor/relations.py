"""Decoding refined lattice vectors into (u, v) pairs and smooth relations.

A bitstring plus the Babai trace yields a lattice vector v_new; dividing its
first n coordinates by the lattice diagonal recovers the signed prime
exponents, hence u (positive exponents) and v (negated negative ones). The
pair is a smooth relation when u factors over the n-prime bound and
|u - v N| factors over the wider second bound. The collector loops seeded
diagonal permutations and harvests low-energy states per instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .instance import CvpInstance, build_instance, default_diag_multiset, random_diag
from .ising import IsingModel, encode_hamiltonian, parse_bits, spectrum
from .lattice import BabaiResult, ExactMatrix, babai_nearest_plane, lll_reduce
from .numtheory import Factorization, PrimeBasis, first_primes, smooth_factor

PIPELINE_DELTA = Fraction(99, 100)  # reduction parameter used across the pipeline


@dataclass(frozen=True)
class Bounds:
    b1_dim: int
    b2_dim: int

    def __post_init__(self):
        if self.b2_dim < self.b1_dim:
            raise ValueError("the second smoothness bound cannot be tighter than the first")


def default_b2_dim(n: int) -> int:
    """Prime count for the |u - vN| bound: 2n^2, with small-case overrides."""
    overrides = {3: 15}
    return overrides.get(n, 2 * n * n)


@dataclass(frozen=True)
class DecodedState:
    bits: str
    x: tuple[int, ...]
    v_new: tuple[int, ...]
    e: tuple[int, ...]
    residual_sq: int


@dataclass(frozen=True)
class Relation:
    """One row of the GF(2) system: u, v, and the exponent data."""

    u: int
    v: int
    e_u: Factorization
    e_v: Factorization
    e_diff: Factorization        # exponents of |u - vN| over the B2 basis
    sign: int                    # 1 iff u - vN < 0

    def key(self) -> tuple[int, int]:
        return (self.u, self.v)

    def to_json(self) -> str:
        return json.dumps(
            {
                "u": str(self.u),
                "v": str(self.v),
                "sign": self.sign,
                "e_u": {str(p): e for p, e in sorted(self.e_u.items())},
                "e_diff": {str(p): e for p, e in sorted(self.e_diff.items())},
            }
        )

    @classmethod
    def from_json(cls, line: str) -> "Relation":
        d = json.loads(line)
        e_u = Factorization({int(p): e for p, e in d["e_u"].items()})
        e_diff = Factorization({int(p): e for p, e in d["e_diff"].items()})
        u, v = int(d["u"]), int(d["v"])
        e_v = Factorization({})  # not serialized; recoverable from u, v when needed
        return cls(u=u, v=v, e_u=e_u, e_v=e_v, e_diff=e_diff, sign=int(d["sign"]))


def decode_state(
    inst: CvpInstance,
    reduced: ExactMatrix,
    babai: BabaiResult,
    model: IsingModel,
    bits: str | Sequence[int],
) -> DecodedState:
    """bits -> floats x -> lattice vector v_new -> exponent vector e."""
    n = inst.n
    b = parse_bits(bits, n)
    x = tuple(b[i] * model.directions[i] for i in range(n))
    v_new = list(babai.b_op)
    cols = reduced.int_columns()
    for i in range(n):
        if x[i]:
            for r in range(len(v_new)):
                v_new[r] += x[i] * cols[i][r]
    e = []
    for i in range(n):
        q, rem = divmod(v_new[i], inst.diag[i])
        if rem:
            raise ValueError("v_new is not a lattice vector; pipeline objects disagree")
        e.append(q)
    resid = sum((a - b) ** 2 for a, b in zip(v_new, inst.t))
    return DecodedState(
        bits="".join(map(str, b)),
        x=x,
        v_new=tuple(v_new),
        e=tuple(e),
        residual_sq=resid,
    )


def exponents_to_uv(e: Sequence[int], basis: PrimeBasis) -> tuple[int, int]:
    """Positive exponents build u, negated negative ones build v."""
    if len(e) != len(basis):
        raise ValueError("exponent vector and basis disagree")
    u = v = 1
    for exp, p in zip(e, basis):
        if exp > 0:
            u *= p**exp
        elif exp < 0:
            v *= p ** (-exp)
    return u, v


def try_relation(
    u: int,
    v: int,
    N: int,
    bounds: Bounds,
    b1_basis: PrimeBasis,
    b2_basis: PrimeBasis,
) -> Relation | None:
    """Build the relation when u, v are B1-smooth and |u - vN| is B2-smooth."""
    if u < 1 or v < 1:
        raise ValueError("u and v must be positive")
    if u == v * N:
        return None
    e_u = smooth_factor(u, b1_basis)
    if e_u is None:
        return None
    e_v = smooth_factor(v, b1_basis)
    if e_v is None:
        return None
    diff = u - v * N
    e_diff = smooth_factor(abs(diff), b2_basis)
    if e_diff is None:
        return None
    return Relation(u=u, v=v, e_u=e_u, e_v=e_v, e_diff=e_diff, sign=1 if diff < 0 else 0)


@dataclass
class RelationStore:
    """Deduplicated relations keyed by (u, v), with collection diagnostics."""

    b2_dim: int
    relations: dict[tuple[int, int], Relation] = field(default_factory=dict)
    instances_tried: int = 0
    sufficient: bool = True

    def add(self, rel: Relation) -> bool:
        if rel.key() in self.relations:
            return False
        self.relations[rel.key()] = rel
        return True

    def __len__(self) -> int:
        return len(self.relations)

    def ordered(self) -> list[Relation]:
        return list(self.relations.values())

    def write_jsonl(self, fh: IO[str]) -> None:
        for rel in self.ordered():
            fh.write(rel.to_json() + "\n")

    @classmethod
    def read_jsonl(cls, fh: IO[str], b2_dim: int) -> "RelationStore":
        store = cls(b2_dim=b2_dim)
        for line in fh:
            line = line.strip()
            if line:
                store.add(Relation.from_json(line))
        return store


@dataclass(frozen=True)
class CollectConfig:
    n: int
    c: Fraction
    b2_dim: int
    seed: int = 0
    strategy: str = "spectrum"   # "spectrum" (top-k states) or "qaoa" (optimize+sample)
    top_k: int = 10
    layers: int = 1
    shots: int = 30000
    max_instances: int = 1000
    diag_multiset: tuple[int, ...] | None = None
    delta: Fraction = PIPELINE_DELTA


@dataclass(frozen=True)
class InstancePipeline:
    """One reduced-and-encoded instance, ready for decoding bitstrings."""

    inst: CvpInstance
    reduced: ExactMatrix
    babai: BabaiResult
    model: IsingModel


def prepare(inst: CvpInstance, delta: Fraction = PIPELINE_DELTA) -> InstancePipeline:
    reduced = lll_reduce(inst.B, delta).reduced
    trace = babai_nearest_plane(reduced, inst.t)
    model = encode_hamiltonian(reduced, trace, inst.t)
    return InstancePipeline(inst=inst, reduced=reduced, babai=trace, model=model)


def _candidate_bits(pipe: InstancePipeline, config: CollectConfig) -> list[str]:
    n = pipe.inst.n
    zero = "0" * n
    if config.strategy == "spectrum":
        k = min(config.top_k, 1 << n)
        cands = [bits for _, bits in spectrum(pipe.model, k)]
    elif config.strategy == "qaoa":
        cands = _qaoa_candidates(pipe, config)
    else:
        raise ValueError(f"unknown strategy {config.strategy!r}")
    if zero not in cands:
        cands.append(zero)  # the Babai point is always tested
    return cands


def _qaoa_candidates(pipe: InstancePipeline, config: CollectConfig) -> list[str]:
    import numpy as np

    from . import mgd, qsim

    model = pipe.model
    glo, ghi = qsim.default_gamma_window(model)
    blo, bhi = qsim.default_beta_window()
    p = config.layers

    def objective(point: np.ndarray) -> float:
        params = qsim.QaoaParams.of(point[:p], point[p:])
        return qsim.expectation(model, params)

    x0 = np.array([(glo + ghi) / 2] * p + [(blo + bhi) / 2] * p)
    hyper = mgd.default_hyper(2 * p, max(ghi - glo, bhi - blo))
    result = mgd.minimize(objective, x0, hyper, seed=config.seed)
    params = qsim.QaoaParams.of(result.x_best[:p], result.x_best[p:])
    state = qsim.qaoa_state(model, params)
    counts = qsim.sample(state, config.shots, seed=config.seed)
    ranked = sorted(counts.items(), key=lambda kv: -kv[1])
    return [bits for bits, _ in ranked[: config.top_k]]


def harvest_instance(
    pipe: InstancePipeline,
    config: CollectConfig,
    store: RelationStore,
    b1_basis: PrimeBasis,
    b2_basis: PrimeBasis,
) -> int:
    """Decode candidate states of one instance into the store; count additions."""
    N = pipe.inst.N
    bounds = Bounds(b1_dim=config.n, b2_dim=config.b2_dim)
    added = 0
    for bits in _candidate_bits(pipe, config):
        decoded = decode_state(pipe.inst, pipe.reduced, pipe.babai, pipe.model, bits)
        u, v = exponents_to_uv(decoded.e, pipe.inst.basis)
        rel = try_relation(u, v, N, bounds, b1_basis, b2_basis)
        if rel is not None and store.add(rel):
            added += 1
    return added


def collect(N: int, config: CollectConfig, target_count: int) -> RelationStore:
    """Loop seeded diagonal permutations until enough distinct relations."""
    if target_count < config.b2_dim + 2:
        raise ValueError("target_count must be at least b2_dim + 2")
    b1_basis = first_primes(config.n)
    b2_basis = first_primes(config.b2_dim)
    store = RelationStore(b2_dim=config.b2_dim)
    multiset = (
        list(config.diag_multiset)
        if config.diag_multiset is not None
        else default_diag_multiset(config.n)
    )
    for i in range(config.max_instances):
        diag = random_diag(config.n, seed=config.seed + i, multiset=multiset)
        inst = build_instance(N, config.n, config.c, diag)
        pipe = prepare(inst, config.delta)
        store.instances_tried += 1
        harvest_instance(pipe, config, store, b1_basis, b2_basis)
        if len(store) >= target_count:
            break
    store.sufficient = len(store) >= target_count
    return store
