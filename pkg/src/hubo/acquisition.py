"""GP-UCB acquisition: confidence schedules and seeded maximization.

The acquisition value is mean + sqrt(beta_t) * std under the current GP
posterior.  Maximization is derivative-free: uniform multi-start plus
coordinate-wise pattern search with shrinking steps, clamped to the feasible
box, under a hard evaluation budget.  Everything is deterministic given the
seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import series
from .cubes import HypercubeSet
from .gp import Dataset, GpModel, PosteriorState
from .space import SearchBox

__all__ = [
    "BetaSchedule",
    "MaximizerConfig",
    "beta",
    "ucb",
    "maximize_over_box",
    "maximize_over_cubes",
]


@dataclass(frozen=True)
class BetaSchedule:
    """Confidence-width schedule for one of the two algorithm variants.

    The "hubo" variant needs the initial interval [a, b] and the expansion
    rate alpha (its beta grows with the expanded side); the "hdhubo" variant
    needs the cube side l_h instead.
    """

    variant: str
    delta: float
    dim: int
    s1: float = 1.0
    s2: float = 1.0
    a: float | None = None
    b: float | None = None
    alpha: float | None = None
    l_h: float | None = None

    def __post_init__(self):
        if self.variant not in ("hubo", "hdhubo"):
            raise ValueError(f"unknown beta variant {self.variant!r}")
        if not (0.0 < self.delta < 1.0):
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.s1 <= 0.0 or self.s2 <= 0.0:
            raise ValueError("s1 and s2 must be > 0")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.variant == "hubo":
            if self.a is None or self.b is None or self.alpha is None:
                raise ValueError("hubo beta needs a, b, and alpha")
            if not self.b > self.a:
                raise ValueError(f"need b > a, got a={self.a}, b={self.b}")
            if not (-1.0 <= self.alpha < 0.0):
                raise ValueError(f"alpha must lie in [-1, 0), got {self.alpha}")
        else:
            if self.l_h is None or self.l_h <= 0.0:
                raise ValueError("hdhubo beta needs l_h > 0")


def beta(t: int, sched: BetaSchedule, side: float | None = None) -> float:
    """Confidence multiplier beta_t, clamped below at 0.

    For the "hubo" variant `side` may supply the current expanded side
    (b-a)(1 + sum j^alpha) so callers tracking it incrementally avoid an O(t)
    recomputation; when omitted it is computed from the schedule.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    d = sched.dim
    if sched.variant == "hubo":
        if side is None:
            side = (sched.b - sched.a) * (1.0 + series.partial_sum(sched.alpha, t))
        pi_t = math.pi**2 * t * t / 6.0
        tail = math.sqrt(math.log(4.0 * d * sched.s1 / sched.delta))
        val = 2.0 * math.log(4.0 * pi_t / sched.delta) + 4.0 * d * math.log(
            d * t * sched.s2 * side * tail
        )
    else:
        tail = math.sqrt(math.log(6.0 * d * sched.s1 / sched.delta))
        val = 2.0 * math.log(math.pi**2 * t * t / sched.delta) + 2.0 * d * math.log(
            2.0 * sched.s2 * sched.l_h * d * tail * t * t
        )
    return max(0.0, val)


def ucb(model: GpModel, data: Dataset, beta_t: float, x: np.ndarray) -> float:
    """Acquisition value mean + sqrt(beta_t)*std at a single point."""
    if beta_t < 0.0:
        raise ValueError(f"beta_t must be >= 0, got {beta_t}")
    state = PosteriorState(model, data)
    means, variances = state.predict(np.asarray(x, dtype=np.float64).reshape(1, -1))
    return float(means[0] + math.sqrt(beta_t) * math.sqrt(variances[0]))


@dataclass(frozen=True)
class MaximizerConfig:
    """Budget for one acquisition maximization."""

    restarts: int = 20
    max_evals: int = 1000
    seed: int = 0
    step_tolerance: float = 1e-6

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_evals < self.restarts:
            raise ValueError(
                f"max_evals ({self.max_evals}) must be >= restarts ({self.restarts})"
            )
        if not self.step_tolerance > 0.0:
            raise ValueError(
                f"step_tolerance must be > 0, got {self.step_tolerance}"
            )


def _ucb_batch(state: PosteriorState, beta_t: float):
    root = math.sqrt(beta_t)

    def predict(X: np.ndarray) -> np.ndarray:
        means, variances = state.predict(X)
        return means + root * np.sqrt(variances)

    return predict


def _search_rect(predict, lo, hi, restarts, max_evals, rng, tol):
    """Multi-start coordinate pattern search over [lo, hi], batched in lockstep.

    Starts are drawn before any truncation so the start set depends only on
    the rng state, never on the budget; a larger budget therefore replays the
    same trajectory prefix and can only improve the result.  Returns
    (best point, best value, evaluations used).
    """
    d = len(lo)
    widths = hi - lo
    X = rng.uniform(lo, hi, size=(restarts, d))
    n0 = min(restarts, max_evals)
    X = X[:n0]
    vals = predict(X)
    used = n0
    steps = np.full(n0, 0.25)
    active = np.ones(n0, dtype=bool)

    while used < max_evals and np.any(active):
        improved = np.zeros(n0, dtype=bool)
        for i in range(d):
            if used >= max_evals:
                break
            if widths[i] == 0.0:
                continue
            for sign in (1.0, -1.0):
                idx = np.flatnonzero(active)
                if idx.size == 0 or used >= max_evals:
                    break
                idx = idx[: max_evals - used]
                cand = X[idx].copy()
                cand[:, i] = np.clip(
                    cand[:, i] + sign * steps[idx] * widths[i], lo[i], hi[i]
                )
                cvals = predict(cand)
                used += len(idx)
                better = cvals > vals[idx]
                sel = idx[better]
                X[sel, i] = cand[better, i]
                vals[sel] = cvals[better]
                improved[sel] = True
        stalled = active & ~improved
        steps[stalled] *= 0.5
        active &= steps >= tol

    best_val = float(np.max(vals))
    tied = np.flatnonzero(vals == best_val)
    if len(tied) > 1:
        order = np.lexsort(X[tied].T[::-1])
        winner = int(tied[order[0]])
    else:
        winner = int(tied[0])
    return X[winner].copy(), best_val, used


def maximize_over_box(
    model: GpModel,
    data: Dataset,
    beta_t: float,
    box: SearchBox,
    cfg: MaximizerConfig,
) -> tuple[np.ndarray, float]:
    """Best acquisition point found inside the box within cfg's budget."""
    state = PosteriorState(model, data)
    predict = _ucb_batch(state, beta_t)
    rng = np.random.default_rng(cfg.seed)
    x, val, _ = _search_rect(
        predict,
        box.lower,
        box.upper,
        cfg.restarts,
        cfg.max_evals,
        rng,
        cfg.step_tolerance,
    )
    return x, val


def maximize_over_cubes(
    model: GpModel,
    data: Dataset,
    beta_t: float,
    cube_set: HypercubeSet,
    cfg: MaximizerConfig,
) -> tuple[np.ndarray, float]:
    """Best acquisition point over the cube union.

    Each clipped cube gets an independent search with a per-cube share of the
    budget (floors: 10 evaluations, 1 restart).  Ties go to the lower cube
    index; per-cube rng streams are derived from (seed, cube index) so the
    result is independent of evaluation order.
    """
    state = PosteriorState(model, data)
    predict = _ucb_batch(state, beta_t)
    n = cube_set.n
    evals_per = max(10, cfg.max_evals // n)
    restarts_per = max(1, cfg.restarts // n)
    lo_all, hi_all = cube_set.clipped_bounds()

    best_x = None
    best_val = -math.inf
    for ci in range(n):
        lo, hi = lo_all[ci], hi_all[ci]
        if np.any(hi < lo):  # cube entirely outside the parent; defensive
            continue
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=cfg.seed, spawn_key=(ci,))
        )
        x, val, _ = _search_rect(
            predict, lo, hi, restarts_per, evals_per, rng, cfg.step_tolerance
        )
        if val > best_val:
            best_val = val
            best_x = x
    if best_x is None:
        raise ValueError("every cube was empty after clipping to the parent box")
    return best_x, best_val
