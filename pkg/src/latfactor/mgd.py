"""Model Gradient Descent: quadratic-surrogate descent for QAOA parameters.

Per outer iteration: sample k points uniformly from a shrinking Euclidean
ball around the iterate, fit a full quadratic by least squares to every
evaluation within the current radius, and step along the model gradient
with a decaying rate. A grid-search baseline lives here too.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, IO, Sequence

import numpy as np

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class MgdHyper:
    learning_rate: float = 0.03
    sample_radius: float = 0.1
    sample_count: int = 10
    rate_decay: float = 0.6       # exponent alpha on the step size
    stability: float = 3.0        # additive constant A in the rate schedule
    radius_decay: float = 0.6     # exponent xi on the sampling radius
    tolerance: float = 1e-6
    max_evals: int = 2000

    def __post_init__(self):
        if self.sample_radius <= 0:
            raise ValueError("sample_radius must be positive")
        if self.max_evals < self.sample_count + 1:
            raise ValueError("max_evals must allow at least one iteration")


def default_hyper(dim: int, scale: float) -> MgdHyper:
    """Defaults keyed to the parameter-box scale; k covers the quadratic fit."""
    delta = 0.1 * scale
    return MgdHyper(
        learning_rate=0.3 * delta,
        sample_radius=delta,
        sample_count=max(2 * dim + 6, dim + 2),
        rate_decay=0.6,
        stability=3.0,
        radius_decay=0.6,
        tolerance=1e-6,
        max_evals=2000,
    )


@dataclass
class MgdResult:
    x_best: np.ndarray
    f_best: float
    converged: bool
    n_evals: int
    iterations: int
    trace: list[dict] = field(default_factory=list)  # {iter, point, value}

    def write_trace_jsonl(self, fh: IO[str]) -> None:
        for rec in self.trace:
            fh.write(json.dumps(rec) + "\n")

    def best_within(self, iterations: int) -> float:
        vals = [r["value"] for r in self.trace if r["iter"] <= iterations]
        return min(vals) if vals else float("inf")


def _quadratic_features(points: np.ndarray) -> np.ndarray:
    """1, x_i, x_i * x_j (i <= j) feature columns."""
    npts, dim = points.shape
    cols = [np.ones(npts)]
    for i in range(dim):
        cols.append(points[:, i])
    for i in range(dim):
        for j in range(i, dim):
            cols.append(points[:, i] * points[:, j])
    return np.stack(cols, axis=1)


def _quadratic_gradient(coef: np.ndarray, x: np.ndarray) -> np.ndarray:
    dim = len(x)
    grad = coef[1 : 1 + dim].copy()
    k = 1 + dim
    for i in range(dim):
        for j in range(i, dim):
            c = coef[k]
            if i == j:
                grad[i] += 2 * c * x[i]
            else:
                grad[i] += c * x[j]
                grad[j] += c * x[i]
            k += 1
    return grad


def _sample_ball(rng: np.random.Generator, center: np.ndarray, radius: float, k: int) -> np.ndarray:
    dim = len(center)
    directions = rng.normal(size=(k, dim))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    radii = radius * rng.random(k) ** (1.0 / dim)
    return center + directions / norms * radii[:, None]


def minimize(
    objective: Objective,
    x0: Sequence[float],
    hyper: MgdHyper,
    seed: int = 0,
) -> MgdResult:
    """Surrogate-gradient descent; the trace records every evaluation."""
    rng = np.random.default_rng(seed)
    x = np.asarray(x0, dtype=float)
    history_x: list[np.ndarray] = []
    history_f: list[float] = []
    trace: list[dict] = []
    n_evals = 0
    m = 0

    def evaluate(pt: np.ndarray) -> float:
        nonlocal n_evals
        val = float(objective(pt))
        n_evals += 1
        history_x.append(pt.copy())
        history_f.append(val)
        trace.append({"iter": m, "point": [float(v) for v in pt], "value": val})
        return val

    converged = False
    while n_evals + hyper.sample_count + 1 <= hyper.max_evals:
        evaluate(x)
        radius = hyper.sample_radius / (m + 1) ** hyper.radius_decay
        for pt in _sample_ball(rng, x, radius, hyper.sample_count):
            evaluate(pt)
        xs = np.array(history_x)
        fs = np.array(history_f)
        near = np.linalg.norm(xs - x, axis=1) < radius
        pts, vals = xs[near], fs[near]
        features = _quadratic_features(pts)
        coef, *_ = np.linalg.lstsq(features, vals, rcond=None)
        grad = _quadratic_gradient(coef, x)
        rate = hyper.learning_rate / (m + 1 + hyper.stability) ** hyper.rate_decay
        if rate * float(np.linalg.norm(grad)) < hyper.tolerance:
            converged = True
            break
        x = x - rate * grad
        m += 1

    best = int(np.argmin(history_f)) if history_f else None
    if best is None:
        raise ValueError("evaluation budget too small to evaluate x0")
    return MgdResult(
        x_best=history_x[best],
        f_best=history_f[best],
        converged=converged,
        n_evals=n_evals,
        iterations=m,
        trace=trace,
    )


def grid_search(
    objective: Objective,
    ranges: Sequence[tuple[float, float]],
    steps: int,
) -> tuple[np.ndarray, float]:
    """Exhaustive minimum over the Cartesian grid (steps points per axis).

    steps = 1 degenerates to evaluating the lower corner of each range.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    axes = [
        np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])
        for lo, hi in ranges
    ]
    best_x, best_f = None, float("inf")
    grids = np.meshgrid(*axes, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    for pt in points:
        val = float(objective(pt))
        if val < best_f:
            best_x, best_f = pt.copy(), val
    return best_x, best_f
