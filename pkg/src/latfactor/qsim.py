"""Dense statevector QAOA simulator for a diagonal cost Hamiltonian.

A p-layer circuit alternates the diagonal phase exp(-i*gamma*E) with the
per-qubit transverse-field kernel
    [[cos(beta), -i sin(beta)], [-i sin(beta), cos(beta)]]
starting from the uniform superposition. Indexing puts qubit 1 at the most
significant bit, matching the Ising bitstring convention.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .ising import IsingModel, bits_of_index, energies_scaled


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas):
            raise ValueError("gammas and betas must have equal length")

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def of(cls, gammas: Sequence[float], betas: Sequence[float]) -> "QaoaParams":
        return cls(tuple(float(g) for g in gammas), tuple(float(b) for b in betas))


def diagonal_energies(model: IsingModel) -> np.ndarray:
    """Energy of every bitstring as float64, indexed like the statevector."""
    scaled, scale = energies_scaled(model)
    return scaled.astype(np.float64) / float(scale)


def uniform_state(n: int) -> np.ndarray:
    size = 1 << n
    return np.full(size, 1.0 / math.sqrt(size), dtype=np.complex128)


def _apply_mixer(state: np.ndarray, n: int, beta: float) -> np.ndarray:
    c = math.cos(beta)
    s = -1j * math.sin(beta)
    for q in range(n):
        block = 1 << (n - 1 - q)
        view = state.reshape(-1, 2, block)
        a = view[:, 0, :].copy()
        b = view[:, 1, :]
        view[:, 0, :] = c * a + s * b
        view[:, 1, :] = s * a + c * b
    return state


def qaoa_state(model: IsingModel, params: QaoaParams) -> np.ndarray:
    """Statevector after p alternating cost/mixer layers on |+>^n."""
    energies = diagonal_energies(model)
    state = uniform_state(model.n)
    for gamma, beta in zip(params.gammas, params.betas):
        state = state * np.exp(-1j * gamma * energies)
        state = _apply_mixer(state, model.n, beta)
    return state


def expectation(model: IsingModel, params: QaoaParams) -> float:
    state = qaoa_state(model, params)
    energies = diagonal_energies(model)
    probs = np.abs(state) ** 2
    return float(probs @ energies)


def state_probability(model: IsingModel, params: QaoaParams, bits: str) -> float:
    from .ising import index_of_bits

    state = qaoa_state(model, params)
    return float(abs(state[index_of_bits(bits, model.n)]) ** 2)


def sample(state: np.ndarray, shots: int, seed: int) -> dict[str, int]:
    """Seeded multinomial draw from |amplitude|^2; counts sum to shots."""
    if shots < 1:
        raise ValueError("shots must be positive")
    n = int(round(math.log2(len(state))))
    probs = np.abs(state) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {
        bits_of_index(i, n): int(c) for i, c in enumerate(counts) if c > 0
    }


@dataclass(frozen=True)
class Landscape:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]
    E: np.ndarray        # shape (len(gammas), len(betas))
    Estar: np.ndarray    # normalized to [0, 1]; all zero when E is flat

    def min_point(self) -> tuple[float, float, float]:
        i, j = np.unravel_index(int(np.argmin(self.E)), self.E.shape)
        return self.gammas[i], self.betas[j], float(self.E[i, j])

    def write_csv(self, fh: IO[str]) -> None:
        writer = csv.writer(fh)
        writer.writerow(["gamma", "beta", "E", "Estar"])
        for i, g in enumerate(self.gammas):
            for j, b in enumerate(self.betas):
                writer.writerow(
                    [f"{g:.12g}", f"{b:.12g}", f"{self.E[i, j]:.12g}", f"{self.Estar[i, j]:.12g}"]
                )


def landscape(
    model: IsingModel,
    gamma_range: tuple[float, float],
    beta_range: tuple[float, float],
    steps: int,
) -> Landscape:
    """Expectation over a steps x steps grid, row-major in gamma then beta."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if gamma_range[0] == gamma_range[1] or beta_range[0] == beta_range[1]:
        raise ValueError("degenerate parameter range")
    gammas = np.linspace(gamma_range[0], gamma_range[1], steps)
    betas = np.linspace(beta_range[0], beta_range[1], steps)
    energies = diagonal_energies(model)
    u0 = uniform_state(model.n)
    E = np.empty((steps, steps))
    for i, g in enumerate(gammas):
        phased = u0 * np.exp(-1j * g * energies)
        for j, b in enumerate(betas):
            state = _apply_mixer(phased.copy(), model.n, float(b))
            E[i, j] = (np.abs(state) ** 2) @ energies
    span = E.max() - E.min()
    Estar = np.zeros_like(E) if span == 0 else (E - E.min()) / span
    return Landscape(tuple(map(float, gammas)), tuple(map(float, betas)), E, Estar)


def default_gamma_window(model: IsingModel) -> tuple[float, float]:
    """A usable gamma window scaled by the largest Hamiltonian coefficient."""
    bound = model.coefficient_bound()
    top = math.pi / max(bound, 1e-12)
    return (0.0, top)


def default_beta_window() -> tuple[float, float]:
    return (0.0, math.pi / 2)
