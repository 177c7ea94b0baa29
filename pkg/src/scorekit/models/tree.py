"""CART decision trees with exact pre-sorted split search.

One builder serves three objectives:
  - "gini":  classification, leaves hold the class-1 proportion
  - "mse":   regression, leaves hold the mean response
  - "grad":  second-order boosting, leaves hold -G/(H+lambda) and splits
             use the regularized gain with a gamma penalty

The split search is vectorized across all candidate features at once:
sort each column, prefix-sum the targets, and score every boundary
between distinct adjacent values in one shot. Ties go to the first
(lowest feature index, lowest threshold) candidate, which keeps trees
deterministic regardless of thread count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import Predictor


@dataclass
class Node:
    feature: int = -1
    threshold: float = 0.0
    left: "Node | None" = None
    right: "Node | None" = None
    value: float = 0.0
    n_samples: int = 0
    gain: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _boundary_stats(Xn, a, b=None):
    """Sort each column and prefix-sum targets over it.

    Returns (xs, nL, sums_a_left, sums_b_left, total_a, total_b) where row i
    describes the boundary after sorted position i (left size i+1).
    """
    order = np.argsort(Xn, axis=0, kind="stable")
    xs = np.take_along_axis(Xn, order, axis=0)
    ca = np.cumsum(a[order], axis=0)
    cb = np.cumsum(b[order], axis=0) if b is not None else None
    total_a = ca[-1]
    total_b = cb[-1] if cb is not None else None
    return xs, ca[:-1], (None if cb is None else cb[:-1]), total_a, total_b


def _score_two_class(nL, nR, sL, sR):
    # maximizing this equals minimizing weighted child Gini impurity
    return (sL * sL + (nL - sL) * (nL - sL)) / nL + (sR * sR + (nR - sR) * (nR - sR)) / nR


def _score_sse(nL, nR, sL, sR):
    # maximizing this equals minimizing the within-child sum of squares
    return sL * sL / nL + sR * sR / nR


def split_gain_grad(g_left, h_left, g_right, h_right, lam, gamma):
    """Regularized second-order split gain; positive means worth splitting."""
    total_g = g_left + g_right
    total_h = h_left + h_right
    return 0.5 * (
        g_left * g_left / (h_left + lam)
        + g_right * g_right / (h_right + lam)
        - total_g * total_g / (total_h + lam)
    ) - gamma


def leaf_weight_grad(g_sum, h_sum, lam):
    """Optimal leaf score -G/(H + lambda) for the second-order objective."""
    return -g_sum / (h_sum + lam)


def _find_split(Xn, a, b, objective, min_leaf, lam, gamma):
    """Best (feature j within Xn, threshold, gain) or None."""
    m = Xn.shape[0]
    if m < 2 * min_leaf or m < 2:
        return None
    xs, sL_a, sL_b, tot_a, tot_b = _boundary_stats(Xn, a, b)
    nL = np.arange(1, m, dtype=float).reshape(-1, 1)
    nR = m - nL
    valid = xs[:-1] < xs[1:]
    valid &= (nL >= min_leaf) & (nR >= min_leaf)
    if not valid.any():
        return None

    if objective == "gini":
        score = _score_two_class(nL, nR, sL_a, tot_a - sL_a)
        total = float(tot_a[0])
        parent = (total * total + (m - total) * (m - total)) / m
        gain = (score - parent) / m
        floor = 1e-12
    elif objective == "mse":
        score = _score_sse(nL, nR, sL_a, tot_a - sL_a)
        total = float(tot_a[0])
        parent = total * total / m
        gain = (score - parent) / m
        floor = 1e-12 * max(1.0, abs(parent) / m)
    elif objective == "grad":
        gain = split_gain_grad(sL_a, sL_b, tot_a - sL_a, tot_b - sL_b, lam, gamma)
        floor = 0.0
    else:
        raise ValueError("unknown objective %r" % objective)

    gain = np.where(valid, gain, -np.inf)
    flat = int(np.argmax(gain))
    i, j = divmod(flat, Xn.shape[1])
    best_gain = float(gain[i, j])
    if not best_gain > floor:
        return None
    lo, hi = xs[i, j], xs[i + 1, j]
    threshold = (lo + hi) / 2.0
    if threshold >= hi:  # adjacent floats; keep the exact partition
        threshold = lo
    return j, float(threshold), best_gain


def _leaf_value(objective, a, b, lam):
    if objective == "grad":
        return leaf_weight_grad(float(np.sum(a)), float(np.sum(b)), lam)
    return float(np.mean(a))


def grow_tree(
    X,
    a,
    b=None,
    objective: str = "gini",
    max_depth: int | None = None,
    min_leaf: int = 1,
    mtry: int | None = None,
    rng: np.random.Generator | None = None,
    lam: float = 0.0,
    gamma: float = 0.0,
) -> Node:
    """Grow a CART tree greedily. `a` is the target (y, residuals, or
    gradients); `b` is the hessian column for the "grad" objective.

    Built iteratively with an explicit stack so fully grown trees cannot
    hit the interpreter recursion limit.
    """
    X = np.asarray(X, dtype=float)
    a = np.asarray(a, dtype=float)
    if b is not None:
        b = np.asarray(b, dtype=float)
    n, p = X.shape
    use_mtry = mtry is not None and mtry < p
    if use_mtry and rng is None:
        raise ValueError("mtry sampling needs an rng")

    root = Node()
    stack = [(np.arange(n), 0, root)]
    while stack:
        idx, depth, node = stack.pop()
        a_n = a[idx]
        b_n = None if b is None else b[idx]
        node.n_samples = len(idx)
        node.value = _leaf_value(objective, a_n, b_n, lam)
        if max_depth is not None and depth >= max_depth:
            continue
        if objective in ("gini", "mse") and np.ptp(a_n) == 0.0:
            continue  # pure node, zero gain everywhere

        if use_mtry:
            cols = np.sort(rng.choice(p, size=mtry, replace=False))
        else:
            cols = np.arange(p)
        found = _find_split(X[np.ix_(idx, cols)], a_n, b_n, objective, min_leaf, lam, gamma)
        if found is None:
            continue
        j, threshold, gain = found
        node.feature = int(cols[j])
        node.threshold = threshold
        node.gain = gain
        node.left = Node()
        node.right = Node()
        mask = X[idx, node.feature] <= threshold
        stack.append((idx[~mask], depth + 1, node.right))
        stack.append((idx[mask], depth + 1, node.left))
    return root


def predict_tree(root: Node, X) -> np.ndarray:
    """Route every row of X to its leaf value (iterative, vectorized)."""
    X = np.asarray(X, dtype=float)
    out = np.empty(X.shape[0])
    stack = [(root, np.arange(X.shape[0]))]
    while stack:
        node, idx = stack.pop()
        if len(idx) == 0:
            continue
        if node.is_leaf:
            out[idx] = node.value
        else:
            mask = X[idx, node.feature] <= node.threshold
            stack.append((node.left, idx[mask]))
            stack.append((node.right, idx[~mask]))
    return out


def apply_leaves(root: Node, X, fn):
    """Call fn(leaf_node, row_indices) for every leaf X rows land in."""
    X = np.asarray(X, dtype=float)
    stack = [(root, np.arange(X.shape[0]))]
    while stack:
        node, idx = stack.pop()
        if node.is_leaf:
            fn(node, idx)
        else:
            mask = X[idx, node.feature] <= node.threshold
            stack.append((node.left, idx[mask]))
            stack.append((node.right, idx[~mask]))


def accumulate_gains(root: Node, out: np.ndarray):
    """Add each internal node's realized split gain onto out[feature]."""
    stack = [root]
    while stack:
        node = stack.pop()
        if not node.is_leaf:
            out[node.feature] += node.gain
            stack.append(node.left)
            stack.append(node.right)


def tree_to_flat(root: Node) -> list[dict]:
    """Preorder flat encoding with child indices (safe for any depth)."""
    nodes = []
    stack = [(root, None, None)]
    while stack:
        node, parent_pos, side = stack.pop()
        pos = len(nodes)
        rec = {"value": node.value, "n": node.n_samples}
        if not node.is_leaf:
            rec.update(feature=node.feature, threshold=node.threshold, gain=node.gain,
                       left=-1, right=-1)
        nodes.append(rec)
        if parent_pos is not None:
            nodes[parent_pos][side] = pos
        if not node.is_leaf:
            stack.append((node.right, pos, "right"))
            stack.append((node.left, pos, "left"))
    return nodes


def tree_from_flat(nodes: list[dict]) -> Node:
    built = [
        Node(
            feature=rec.get("feature", -1),
            threshold=rec.get("threshold", 0.0),
            value=rec["value"],
            n_samples=rec.get("n", 0),
            gain=rec.get("gain", 0.0),
        )
        for rec in nodes
    ]
    for rec, node in zip(nodes, built):
        if "feature" in rec:
            node.left = built[rec["left"]]
            node.right = built[rec["right"]]
    return built[0]


def count_leaves(root: Node) -> int:
    total = 0
    stack = [root]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            total += 1
        else:
            stack.extend((node.left, node.right))
    return total


class DecisionTree(Predictor):
    """A single classification tree scoring leaf class-1 proportions."""

    model_kind = "tree"

    def __init__(self, root: Node, feature_names, max_depth=None, min_leaf=1,
                 objective="gini"):
        super().__init__(feature_names)
        self.root = root
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.objective = objective

    def predict_proba(self, X) -> np.ndarray:
        return predict_tree(self.root, self._as_matrix(X))


def train_tree(X, y, max_depth=None, min_leaf=1, objective="gini",
               feature_names=None) -> DecisionTree:
    """Greedy best-split CART; stops on depth, min_leaf, or zero gain."""
    X = np.asarray(X, dtype=float)
    if feature_names is None:
        feature_names = ["x%d" % j for j in range(X.shape[1])]
    root = grow_tree(X, np.asarray(y, dtype=float), objective=objective,
                     max_depth=max_depth, min_leaf=min_leaf)
    return DecisionTree(root, feature_names, max_depth=max_depth,
                        min_leaf=min_leaf, objective=objective)
