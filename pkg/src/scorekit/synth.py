"""Synthetic credit-application data with a known generative process.

The default probability follows a logistic link over nonlinear but
monotone transforms of a few informative features; the remaining features
are pure noise (plus optional constant columns). Every row carries an
observation date; rows dated after `drift_start` have their signal
attenuated by the drift factor, so models fitted on the earlier period
genuinely lose discrimination on the late (out-of-time) window.

Being synthetic, the generator doubles as ground truth for tests: the
informative feature names are returned alongside the data.
"""

from __future__ import annotations

import numpy as np

from .data import Dataset, Feature, NUMERIC
from .models.base import sigmoid

START_DATE = "2017-10-01"
END_DATE = "2018-11-30"
DRIFT_START = "2018-08-31"  # everything after this date is the late window


def _monotone_transforms():
    # each is monotone increasing; curvature (steps, kinks, saturation)
    # is what separates the flexible models from a raw-linear fit
    return [
        lambda z: 0.55 * z ** 3,
        lambda z: 2.6 * np.log1p(np.maximum(z, 0.0)) + 0.10 * np.minimum(z, 0.0),
        lambda z: 2.4 * (z > 0.4) + 0.12 * z,
        lambda z: 2.1 * np.maximum(z - 0.3, 0.0) + 0.10 * np.minimum(z - 0.3, 0.0),
        lambda z: 3.0 / (1.0 + np.exp(-5.0 * z)) - 1.5,
    ]


def _draw_feature(rng: np.random.Generator, n: int, which: int) -> np.ndarray:
    which = which % 5
    if which == 0:
        return rng.normal(0.0, 1.0, size=n)
    if which == 1:
        return rng.lognormal(mean=0.0, sigma=1.0, size=n)
    if which == 2:
        return rng.uniform(-2.0, 2.0, size=n)
    if which == 3:
        return rng.integers(0, 10, size=n).astype(float)
    return rng.normal(1.0, 2.0, size=n)


def _standardize(x: np.ndarray) -> np.ndarray:
    sd = np.std(x)
    return (x - np.mean(x)) / (sd if sd > 0 else 1.0)


def make_credit_data(
    n_rows: int = 20000,
    n_informative: int = 5,
    n_noise: int = 15,
    n_constant: int = 0,
    base_rate: float = 0.25,
    signal_scale: float = 1.8,
    drift: float = 0.25,
    seed: int = 1,
    start_date: str = START_DATE,
    end_date: str = END_DATE,
    drift_start: str = DRIFT_START,
) -> tuple[Dataset, dict]:
    """Generate one seeded sample; returns (dataset, ground-truth info)."""
    rng = np.random.default_rng(seed)
    transforms = _monotone_transforms()

    features = []
    score = np.zeros(n_rows)
    informative = []
    for k in range(n_informative):
        raw = _draw_feature(rng, n_rows, k)
        name = "inf_%02d" % (k + 1)
        informative.append(name)
        features.append(Feature(name, NUMERIC, raw))
        sign = 1.0 if k % 2 == 0 else -1.0
        score += sign * transforms[k % len(transforms)](_standardize(raw))

    noise = []
    for k in range(n_noise):
        raw = _draw_feature(rng, n_rows, k + 2)
        name = "noise_%02d" % (k + 1)
        noise.append(name)
        features.append(Feature(name, NUMERIC, raw))

    constants = []
    for k in range(n_constant):
        name = "const_%02d" % (k + 1)
        constants.append(name)
        features.append(Feature(name, NUMERIC, np.full(n_rows, float(k))))

    # fix the achievable separation, then the base rate via the intercept
    score = _standardize(score) * signal_scale

    day0 = np.datetime64(start_date, "D")
    day1 = np.datetime64(end_date, "D")
    span = int((day1 - day0) / np.timedelta64(1, "D"))
    obs_date = day0 + rng.integers(0, span + 1, size=n_rows).astype("timedelta64[D]")

    late = obs_date > np.datetime64(drift_start, "D")
    effective = score * np.where(late, 1.0 - drift, 1.0)
    intercept = float(np.log(base_rate / (1.0 - base_rate)))
    target = (rng.random(n_rows) < sigmoid(intercept + effective)).astype(np.int64)

    dataset = Dataset(features, target, obs_date)
    info = {
        "informative": informative,
        "noise": noise,
        "constants": constants,
        "seed": seed,
        "drift": drift,
        "drift_start": drift_start,
        "base_rate": base_rate,
    }
    return dataset, info


def schema_for(dataset: Dataset) -> dict:
    """Column-kind declarations matching a generated dataset's CSV."""
    return {f.name: f.kind for f in dataset.features}
