"""Opening the black box: four model-agnostic views of one GBM.

Permutation importance says which features matter globally; partial
dependence shows the average shape of each effect; a ceteris paribus
profile answers "what if this applicant's value changed"; and break-down
splits one prediction into additive per-feature contributions. Charts
land in demos/output/.
"""

from pathlib import Path

import numpy as np

from scorekit import charts
from scorekit.data import temporal_split
from scorekit.explain import (
    break_down,
    ceteris_paribus,
    partial_dependence,
    permutation_importance,
)
from scorekit.models import train_gbm, train_logistic
from scorekit.synth import make_credit_data

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

dataset, info = make_credit_data(n_rows=8000, seed=2)
splits = temporal_split(dataset, 0.3, "2018-08-31", "2018-11-30", seed=2)
names = dataset.feature_names
Xtr, ytr = splits.train.matrix(names), splits.train.target
Xte, yte = splits.test.matrix(names), splits.test.target

gbm = train_gbm(Xtr, ytr, n_trees=100, max_depth=3, min_leaf=20, seed=2,
                feature_names=names)
logistic = train_logistic(Xtr, ytr, feature_names=names)

# --- global view 1: permutation importance ---------------------------------
pfi = permutation_importance(gbm, Xte, yte, n_repeats=10, seed=2)
print("top features by mean AUC drop (baseline AUC %.4f):" % pfi.baseline_auc)
for name, drop in pfi.ranking()[:6]:
    marker = "*" if name in info["informative"] else " "
    print("  %s %-10s %.4f" % (marker, name, drop))
print("(* = truly informative in the generator)")
charts.bar_chart_h(pfi.ranking(), out / "pfi_gbm.svg",
                   title="Permutation importance (gbm)",
                   value_label="AUC drop after shuffling")

# --- global view 2: partial dependence, two models overlaid ----------------
feature = pfi.ranking()[0][0]
profiles = {
    "gbm": partial_dependence(gbm, Xte, feature),
    "logistic": partial_dependence(logistic, Xte, feature),
}
charts.line_chart({n: (p.grid, p.mean_prediction) for n, p in profiles.items()},
                  out / ("pdp_%s.svg" % feature),
                  title="Partial dependence: %s" % feature,
                  x_label=feature, y_label="mean predicted PD")
print("\npartial dependence of %s: gbm bends where the logistic stays straight"
      % feature)

# --- local view 1: ceteris paribus for one applicant ------------------------
row = 17
cp = ceteris_paribus(gbm, Xte[row], feature, background=Xte, instance_id=row)
charts.line_chart({"gbm": (cp.grid, cp.prediction)}, out / ("cp_row%d.svg" % row),
                  title="Ceteris paribus: %s (row %d)" % (feature, row),
                  x_label=feature, y_label="predicted PD",
                  markers=[(cp.anchor_value, cp.anchor)])
print("row %d: PD %.4f at %s=%.3f; the what-if curve spans %.4f..%.4f"
      % (row, cp.anchor, feature, cp.anchor_value,
         cp.prediction.min(), cp.prediction.max()))

# --- local view 2: break-down attribution -----------------------------------
rng = np.random.default_rng(2)
background = Xte[rng.choice(len(Xte), size=500, replace=False)]
bd = break_down(gbm, background, Xte[row])
print("\nbreak-down for row %d (intercept %.4f -> prediction %.4f):"
      % (row, bd.intercept, bd.final_prediction))
for name, delta in bd.contributions[:6]:
    print("  %-10s %+.4f" % (name, delta))
check = bd.intercept + sum(d for _, d in bd.contributions)
print("additivity check: %.12f == %.12f" % (check, bd.final_prediction))
charts.waterfall(bd.intercept, bd.contributions, bd.final_prediction,
                 out / ("bd_row%d.svg" % row),
                 title="Break down (gbm, row %d)" % row)
print("\ncharts written to", out)
