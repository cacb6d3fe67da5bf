"""Hypergraph construction from raw feature vectors.

One hyperedge per vertex: the vertex plus its k_h nearest neighbors under
Euclidean distance, ties broken by lower index.  Identical vertex sets
produced by different anchors are kept as separate hyperedges, so the edge
count always equals the vertex count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, KTooLargeError, build_hypergraph

WEIGHTINGS = ("unit", "gaussian")


@dataclass(frozen=True)
class PointCloud:
    """n x D sample matrix (rows are points), Euclidean metric."""

    points: np.ndarray
    metric: str = "euclidean"

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim != 2:
            raise ValueError(f"points must be 2-D (n x D), got shape {points.shape}")
        if points.shape[0] < 3:
            raise ValueError(f"need at least 3 points, got {points.shape[0]}")
        if not np.isfinite(points).all():
            raise ValueError("points contain NaN or Inf")
        if self.metric != "euclidean":
            raise ValueError(f"unsupported metric {self.metric!r}")
        object.__setattr__(self, "points", points)
        self.points.flags.writeable = False

    @property
    def n_points(self) -> int:
        return self.points.shape[0]


def pairwise_distances(pc: PointCloud) -> np.ndarray:
    """Symmetric Euclidean distance matrix with an exactly zero diagonal.

    Uses the plain difference formula per row (no norm-expansion trick) to
    avoid cancellation; (a-b)^2 == (b-a)^2 exactly, so the result is
    exactly symmetric.
    """
    x = pc.points
    n = x.shape[0]
    d = np.empty((n, n))
    for i in range(n):
        diff = x - x[i]
        d[i] = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        d[i, i] = 0.0
    return d


def _mean_member_distance(dist: np.ndarray, members: tuple[int, ...]) -> float:
    sub = dist[np.ix_(members, members)]
    m = len(members)
    return float(np.sum(sub) / (m * (m - 1)))  # each pair appears twice


def knn_hyperedges(
    pc: PointCloud,
    k_h: int = 5,
    weighting: str = "unit",
    sigma: float | str = "auto",
) -> Hypergraph:
    """Build the kNN hypergraph: edge v = {v} plus v's k_h nearest neighbors.

    Weighting "unit" gives weight 1 everywhere.  "gaussian" gives
    exp(-m^2 / sigma^2) with m the mean pairwise distance inside the edge;
    sigma="auto" uses the median of those means (1.0 if that median is 0).
    Duplicate points are fine: distance ties break toward the lower index.
    """
    n = pc.n_points
    if not 1 <= k_h <= n - 1:
        raise KTooLargeError(f"k_h={k_h} outside the valid range [1, {n - 1}]")
    if weighting not in WEIGHTINGS:
        raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")

    dist = pairwise_distances(pc)
    edges = []
    for v in range(n):
        row = dist[v].copy()
        row[v] = np.inf  # the anchor joins its edge regardless
        neighbors = np.argsort(row, kind="stable")[:k_h]
        edges.append(tuple(sorted([v, *(int(u) for u in neighbors)])))

    if weighting == "unit":
        weights = [1.0] * n
    else:
        means = np.array([_mean_member_distance(dist, e) for e in edges])
        if sigma == "auto":
            sigma_val = float(np.median(means))
            if sigma_val == 0.0:
                sigma_val = 1.0
        else:
            sigma_val = float(sigma)
            if not sigma_val > 0.0:
                raise ValueError(f"sigma must be positive, got {sigma_val}")
        raw = np.exp(-(means**2) / sigma_val**2)
        # exp underflow would violate the strictly-positive weight invariant
        weights = list(np.maximum(raw, np.finfo(np.float64).tiny))

    return build_hypergraph(n, edges, weights)
