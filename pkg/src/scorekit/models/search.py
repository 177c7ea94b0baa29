"""Hyperparameter tuning by seeded uniform random search."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..metrics import gini


@dataclass
class TrainConfig:
    """One sampled hyperparameter draw and its validation score."""

    params: dict
    seed: int
    trial: int
    score: float = float("nan")
    trials: list = field(default_factory=list, repr=False)  # full log, on the winner


def sample_params(space: dict, rng: np.random.Generator) -> dict:
    """Draw one config uniformly from the declared ranges.

    Range forms: (int_low, int_high) inclusive integer range,
    (float_low, float_high) uniform float range, or a list of choices.
    """
    out = {}
    for name, spec in space.items():
        if isinstance(spec, list):
            out[name] = spec[int(rng.integers(0, len(spec)))]
        elif isinstance(spec, tuple) and len(spec) == 2:
            lo, hi = spec
            if isinstance(lo, int) and isinstance(hi, int):
                out[name] = int(rng.integers(lo, hi + 1))
            else:
                out[name] = float(rng.uniform(lo, hi))
        else:
            out[name] = spec  # fixed value
    return out


def default_eval(model, X_val, y_val) -> float:
    return gini(model.predict_proba(X_val), y_val)


def random_search(space, trainer, X, y, X_val, y_val, budget: int, seed: int,
                  eval_metric=default_eval, threads: int = 1):
    """Train `budget` uniformly drawn configs, keep the validation winner.

    trainer(X, y, seed=..., **params) -> Predictor. Ties break toward the
    earliest draw. Per-trial RNG streams come from (seed, trial), so the
    winner is identical whatever the thread count. The full trial log
    rides along on the winning TrainConfig.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")

    def run(trial):
        rng = np.random.default_rng((seed, trial))
        params = sample_params(space, rng)
        trial_seed = int(rng.integers(0, 2**31 - 1))
        model = trainer(X, y, seed=trial_seed, **params)
        cfg = TrainConfig(params=params, seed=trial_seed, trial=trial)
        cfg.score = float(eval_metric(model, X_val, y_val))
        return cfg, model

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(budget)))
    else:
        results = [run(t) for t in range(budget)]

    best_cfg, best_model = results[0]
    for cfg, model in results[1:]:
        if cfg.score > best_cfg.score:
            best_cfg, best_model = cfg, model
    best_cfg.trials = [cfg for cfg, _ in results]
    return best_cfg, best_model
