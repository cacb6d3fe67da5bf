"""Classifiers over embedded coordinates: kNN voting and multiclass kernel
ridge regression (RBF kernel, one-hot targets, argmax decoding).

Both depend on features only through Euclidean distances, so embeddings that
differ by column sign flips produce identical predictions.  All arithmetic
is double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class EmptyTrainingSetError(ValueError):
    """No training samples were provided."""


class SingularSystemError(RuntimeError):
    """The regularized kernel system could not be solved accurately."""


class LengthMismatchError(ValueError):
    """Prediction and truth sequences differ in length."""


@dataclass(frozen=True)
class LabeledPoints:
    """m x k feature rows with one class label per row."""

    features: np.ndarray
    labels: tuple

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = tuple(self.labels)
        if features.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape {features.shape}")
        if features.shape[0] == 0:
            raise EmptyTrainingSetError("no samples")
        if features.shape[0] != len(labels):
            raise LengthMismatchError(
                f"{features.shape[0]} feature rows but {len(labels)} labels"
            )
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        self.features.flags.writeable = False

    @property
    def label_set(self) -> tuple:
        """Distinct labels in sorted order; defines tie-breaking and one-hot order."""
        return tuple(sorted(set(self.labels)))


@dataclass(frozen=True)
class KrrModel:
    """Fitted kernel ridge regressor: alpha solves (K + ridge*I) alpha = Y."""

    train_features: np.ndarray
    dual_coefficients: np.ndarray
    bandwidth: float
    ridge: float
    label_set: tuple

    def __post_init__(self):
        self.train_features.flags.writeable = False
        self.dual_coefficients.flags.writeable = False


def _distances_to(features: np.ndarray, query: np.ndarray) -> np.ndarray:
    query = np.asarray(query, dtype=np.float64).reshape(-1)
    if query.shape[0] != features.shape[1]:
        raise ValueError(
            f"query has dimension {query.shape[0]}, training has {features.shape[1]}"
        )
    diff = features - query
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def knn_predict(train: LabeledPoints, query: Sequence[float], k_c: int = 1):
    """Majority label among the k_c nearest training rows.

    Distance ties break toward the lower training index.  Vote ties go to
    the tied label whose nearest representative is closest, then to label
    order.
    """
    m = train.features.shape[0]
    if not 1 <= k_c <= m:
        raise ValueError(f"k_c={k_c} outside the valid range [1, {m}]")
    dists = _distances_to(train.features, query)
    nearest = np.argsort(dists, kind="stable")[:k_c]

    counts: dict = {}
    closest: dict = {}
    for idx in nearest:
        label = train.labels[idx]
        counts[label] = counts.get(label, 0) + 1
        prev = closest.get(label)
        if prev is None or dists[idx] < prev:
            closest[label] = dists[idx]
    top = max(counts.values())
    order = {label: i for i, label in enumerate(train.label_set)}
    tied = [label for label, c in counts.items() if c == top]
    return min(tied, key=lambda lab: (closest[lab], order[lab]))


def _median_positive(values: np.ndarray) -> float:
    positive = values[values > 0.0]
    if positive.size == 0:
        return 1.0
    return float(np.median(positive))


def krr_fit(
    train: LabeledPoints,
    bandwidth: float | str = "auto",
    ridge: float = 1e-3,
) -> KrrModel:
    """Fit multiclass kernel ridge regression with an RBF kernel.

    K_ij = exp(-|x_i - x_j|^2 / (2 sigma^2)); dual coefficients solve
    (K + ridge*I) alpha = Y with Y one-hot over the sorted label set.
    bandwidth="auto" takes the median of the nonzero pairwise training
    distances (1.0 when all distances are zero).
    """
    if not ridge > 0.0:
        raise ValueError(f"ridge must be positive, got {ridge}")
    x = train.features
    m = x.shape[0]
    diff = x[:, None, :] - x[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    if bandwidth == "auto":
        sigma = _median_positive(dist[np.triu_indices(m, k=1)]) if m > 1 else 1.0
    else:
        sigma = float(bandwidth)
        if not sigma > 0.0:
            raise ValueError(f"bandwidth must be positive, got {sigma}")
    kernel = np.exp(-(dist**2) / (2.0 * sigma**2))

    label_set = train.label_set
    targets = np.zeros((m, len(label_set)))
    column = {label: j for j, label in enumerate(label_set)}
    for i, label in enumerate(train.labels):
        targets[i, column[label]] = 1.0

    system = kernel + ridge * np.eye(m)
    try:
        alpha = np.linalg.solve(system, targets)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"kernel system solve failed: {exc}") from exc
    residual = np.max(np.abs(system @ alpha - targets))
    if residual > 1e-8:
        raise SingularSystemError(f"kernel system residual {residual:.3e} exceeds 1e-8")
    return KrrModel(
        train_features=x.copy(),
        dual_coefficients=alpha,
        bandwidth=sigma,
        ridge=float(ridge),
        label_set=label_set,
    )


def krr_predict(model: KrrModel, query: Sequence[float]):
    """Argmax of kernel scores against all classes; ties go to label order."""
    dists = _distances_to(model.train_features, query)
    weights = np.exp(-(dists**2) / (2.0 * model.bandwidth**2))
    scores = weights @ model.dual_coefficients
    return model.label_set[int(np.argmax(scores))]


def accuracy(predictions: Sequence, truth: Sequence) -> float:
    """Fraction of positions where prediction equals truth."""
    predictions = list(predictions)
    truth = list(truth)
    if len(predictions) != len(truth):
        raise LengthMismatchError(
            f"{len(predictions)} predictions vs {len(truth)} truth labels"
        )
    if len(truth) == 0:
        raise ValueError("need at least one prediction")
    hits = sum(1 for p, t in zip(predictions, truth) if p == t)
    return hits / len(truth)
