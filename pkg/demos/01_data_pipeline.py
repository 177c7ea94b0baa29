"""From raw rows to modeling-ready splits.

Generates a synthetic credit-application sample, splits it temporally
(train / test / out-of-sample / out-of-time), and shows the cleaning
steps: mean imputation and dummy encoding, both fitted on train only.
"""

import numpy as np

from scorekit.data import (
    CATEGORICAL,
    Dataset,
    DummyEncoder,
    Feature,
    MeanImputer,
    temporal_split,
)
from scorekit.synth import make_credit_data

# a 6000-row sample: 5 informative features, 15 noise, dated Oct'17-Nov'18
dataset, info = make_credit_data(n_rows=6000, seed=7)
print("rows:", dataset.n_rows, "| features:", len(dataset.feature_names),
      "| bad rate: %.3f" % dataset.target.mean())
print("informative features:", ", ".join(info["informative"]))

# knock some holes in one column and add a categorical one, so the
# cleaning steps have something to do
rng = np.random.default_rng(0)
holes = dataset.feature("inf_01").values.copy()
holes[rng.random(len(holes)) < 0.08] = np.nan
segments = np.array(rng.choice(["retail", "online", "broker"], size=dataset.n_rows),
                    dtype=object)
segments[rng.random(dataset.n_rows) < 0.02] = None
features = [f if f.name != "inf_01" else Feature("inf_01", f.kind, holes)
            for f in dataset.features]
features.append(Feature("channel", CATEGORICAL, segments))
dataset = Dataset(features, dataset.target, dataset.obs_date)

# out-of-time = the last three months; the rest splits 70/30 after a 20%
# out-of-sample holdout that plays no part in fitting
splits = temporal_split(dataset, test_fraction=0.3,
                        oot_start="2018-08-31", oot_end="2018-11-30",
                        seed=7, oos_fraction=0.2)
for name, part in splits.parts().items():
    print("%-14s %5d rows, dates %s .. %s" % (
        name, part.n_rows, part.obs_date.min(), part.obs_date.max()))

# fit the cleaners on train, apply everywhere: that is the leakage guard
imputer = MeanImputer().fit(splits.train)
print("imputation mean for inf_01 (from train only): %.4f" % imputer.means_["inf_01"])
parts = {name: imputer.transform(part) for name, part in splits.parts().items()}

encoder = DummyEncoder(["channel"]).fit(parts["train"])
print("channel reference level:", encoder.reference_["channel"],
      "| indicator columns:", ["channel=%s" % l for l in encoder.levels_["channel"]])
train = encoder.transform(parts["train"])
test = encoder.transform(parts["test"])
print("encoded train matrix:", train.matrix().shape,
      "| test matrix:", test.matrix().shape)
print("no missing values left:", not np.isnan(train.matrix()).any())
