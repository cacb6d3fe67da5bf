"""Shared fixtures and generators for the test suite."""

import numpy as np
import pytest

from hyperlap import Hypergraph, build_hypergraph


def random_hypergraph(rng, n_max=50, m_max=100, w_max=10.0, blocks=1):
    """Draw a random valid hypergraph.

    Vertices are partitioned into `blocks` groups of size >= 2 and every
    hyperedge stays inside one group, so the instance has at least `blocks`
    connected components (possibly more if a group fragments).  Weights are
    drawn uniformly from (0, w_max].  Every vertex is covered: uncovered
    vertices get a pair edge inside their own group.
    """
    n = int(rng.integers(max(2, 2 * blocks), n_max + 1))
    order = rng.permutation(n)
    sizes = np.full(blocks, 2, dtype=int)
    extra = n - 2 * blocks
    if extra > 0:
        sizes = sizes + rng.multinomial(extra, np.full(blocks, 1.0 / blocks))
    groups = []
    start = 0
    for size in sizes:
        groups.append(order[start:start + int(size)])
        start += int(size)

    m = int(rng.integers(1, m_max + 1))
    edges = []
    for _ in range(m):
        group = groups[int(rng.integers(0, blocks))]
        size = int(rng.integers(2, min(len(group), 6) + 1))
        members = rng.choice(group, size=size, replace=False)
        edges.append([int(v) for v in members])

    covered = set()
    for edge in edges:
        covered.update(edge)
    for group in groups:
        for v in group:
            if int(v) not in covered:
                mate = group[0] if group[0] != v else group[1]
                edges.append([int(v), int(mate)])
                covered.update((int(v), int(mate)))

    weights = [float(w) for w in rng.uniform(1e-6, w_max, size=len(edges))]
    return build_hypergraph(n, edges, weights)


@pytest.fixture
def triangle():
    """Three vertices in one unit-weight hyperedge."""
    return build_hypergraph(3, [[0, 1, 2]])


@pytest.fixture
def disjoint_pairs():
    """Two separate pair edges: components {0,1} and {2,3}."""
    return build_hypergraph(4, [[0, 1], [2, 3]])


@pytest.fixture
def small_weighted():
    """Three vertices, two weighted edges: degrees [2, 5, 3], edge degrees [2, 2]."""
    return build_hypergraph(3, [[0, 1], [1, 2]], [2.0, 3.0])


@pytest.fixture
def figure_hypergraph():
    """A small chain-of-clusters instance: 8 vertices, 3 overlapping edges."""
    return build_hypergraph(8, [[0, 1, 2], [2, 3, 4, 5], [5, 6, 7]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def cluster_points(rng, centers, per_cluster=20, scale=0.1):
    """Gaussian blobs around the given centers, with string labels a, b, c, ..."""
    centers = np.asarray(centers, dtype=np.float64)
    points = []
    labels = []
    for idx, center in enumerate(centers):
        blob = center + scale * rng.standard_normal((per_cluster, centers.shape[1]))
        points.append(blob)
        labels.extend([chr(ord("a") + idx)] * per_cluster)
    return np.vstack(points), labels
