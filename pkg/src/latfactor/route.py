"""Swap-network schedules and circuit-resource projections per topology.

Complete-graph rounds come from the polygon matching construction
(round-robin); the chain schedule is the odd/even parallel bubble sort.
Depth projections per topology follow the published resource tables:
kn = 3n + 2, lnn = 4n + 2, dsl = 3n + round(sqrt(n)) + 4 (the +2 is a layer
of single-qubit Rz plus a layer of Rx).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TOPOLOGIES = ("kn", "dsl", "lnn")


@dataclass(frozen=True)
class Schedule:
    n: int
    rounds: tuple[tuple[tuple[int, int], ...], ...]
    kind: str  # "matching" (complete graph) or "adjacent-swap" (chain)

    def all_pairs(self) -> list[tuple[int, int]]:
        return [pair for rnd in self.rounds for pair in rnd]


@dataclass(frozen=True)
class ResourceEstimate:
    bits: int
    qubits: int
    kn_depth: int
    dsl_depth: int
    lnn_depth: int

    def depth(self, topology: str) -> int:
        return {"kn": self.kn_depth, "dsl": self.dsl_depth, "lnn": self.lnn_depth}[topology]


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def kn_schedule(n: int) -> Schedule:
    """Edge partition of the complete graph into parallel rounds.

    Even n: n-1 rounds of n/2 pairs (vertex n fixed at the polygon center);
    odd n: n rounds of (n-1)/2 pairs (the center pairing is dropped).
    Qubits are numbered 1..n and every unordered pair appears exactly once.
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    odd = n % 2 == 1
    m = n + 1 if odd else n          # polygon size including the center vertex
    rounds = []
    for r in range(m - 1):
        pairs = []
        if not odd:
            pairs.append(tuple(sorted((r + 1, m))))
        for k in range(1, (m - 1) // 2 + 1):
            a = (r + k) % (m - 1)
            b = (r - k) % (m - 1)
            pairs.append(tuple(sorted((a + 1, b + 1))))
        rounds.append(tuple(sorted(pairs)))
    return Schedule(n=n, rounds=tuple(rounds), kind="matching")


def lnn_schedule(n: int) -> Schedule:
    """Odd/even phases of parallel bubble sort, as adjacent position pairs.

    Round r (1-based) swaps positions (2j - flag, 2j + 1 - flag) with
    flag = r mod 2. Executing all rounds reverses the qubit order and every
    unordered pair of logical qubits meets exactly once.
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    rounds = []
    for r in range(1, n + 1):
        flag = r % 2
        pairs = []
        for j in range(1, (n - 1 + flag) // 2 + 1):
            lo = 2 * j - flag
            pairs.append((lo, lo + 1))
        rounds.append(tuple(pairs))
    return Schedule(n=n, rounds=tuple(rounds), kind="adjacent-swap")


def simulate_lnn(schedule: Schedule) -> tuple[list[int], list[tuple[int, int]]]:
    """Run the swap rounds on (1..n); return final order and met value pairs."""
    order = list(range(1, schedule.n + 1))
    met = []
    for rnd in schedule.rounds:
        for lo, hi in rnd:
            a, b = order[lo - 1], order[hi - 1]
            met.append((min(a, b), max(a, b)))
            order[lo - 1], order[hi - 1] = b, a
    return order, met


def depth_estimate(topology: str, n: int) -> int:
    """Single-layer circuit depth for n qubits under the given topology."""
    if n < 2:
        raise ValueError("need at least two qubits")
    if topology == "kn":
        return 3 * n + 2
    if topology == "lnn":
        return 4 * n + 2
    if topology == "dsl":
        return 3 * n + _round_half_up(math.sqrt(n)) + 4
    raise ValueError(f"unknown topology {topology!r}")


def qubits_for_bits(m: int) -> int:
    """Qubit count for an m-bit modulus: round(2m / log2 m)."""
    if m < 8:
        raise ValueError("bit length must be at least 8")
    return _round_half_up(2 * m / math.log2(m))


def rsa_resources(m: int) -> ResourceEstimate:
    n = qubits_for_bits(m)
    return ResourceEstimate(
        bits=m,
        qubits=n,
        kn_depth=depth_estimate("kn", n),
        dsl_depth=depth_estimate("dsl", n),
        lnn_depth=depth_estimate("lnn", n),
    )


# Margin on the continuous qubit estimate when inverting it for touch_size;
# calibrates the inversion to the published per-device table.
_TOUCH_MARGIN = 0.275


def touch_size(device_qubits: int, topology: str) -> tuple[int, int]:
    """Largest modulus bit length a device can attempt, and the least depth.

    Depth is evaluated at the device's full qubit count; topology "others"
    is treated as a chain.
    """
    if device_qubits < 4:
        raise ValueError("device too small")
    topo = "lnn" if topology == "others" else topology
    best = None
    m = 8
    while True:
        if 2 * m / math.log2(m) <= device_qubits - _TOUCH_MARGIN:
            best = m
        elif best is not None:
            break
        m += 1
        if m > 100 * device_qubits:
            break
    if best is None:
        raise ValueError("device too small for any modulus")
    return best, depth_estimate(topo, device_qubits)


RSA_TABLE_BITS = (128, 256, 512, 1024, 2048)
