"""The three hypergraph Laplacians.

All three share the mixing matrix S = H W De^-1 H^T (H the incidence matrix,
W the diagonal hyperedge weights, De the diagonal hyperedge degrees):

    combinatorial:  L     = Dv - S
    symmetric:      L_sym = I - Dv^-1/2 S Dv^-1/2
    random walk:    L_rw  = I - Dv^-1 S

Diagonal inverses are applied as row/column scalings, never as explicit
matrix inversions.  L and L_sym are symmetric positive semidefinite; L_rw is
similar to L_sym via Dv^+-1/2 and shares its spectrum, so eigen work on L_rw
is routed through L_sym (see hyperlap.spectral).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, degrees, incidence_dense

COMBINATORIAL = "combinatorial"
SYMMETRIC = "symmetric"
RANDOM_WALK = "random_walk"
VARIANTS = (COMBINATORIAL, SYMMETRIC, RANDOM_WALK)


@dataclass(frozen=True)
class LaplacianMatrix:
    """A dense n x n Laplacian tagged with its variant.

    vertex_degrees is retained so similarity transforms between the symmetric
    and random-walk forms need no recomputation.
    """

    variant: str
    matrix: np.ndarray
    vertex_degrees: np.ndarray

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown Laplacian variant {self.variant!r}")
        self.matrix.flags.writeable = False
        self.vertex_degrees.flags.writeable = False


def _mixing_matrix(g: Hypergraph) -> tuple[np.ndarray, np.ndarray]:
    """Return (S, dv) with S = H W De^-1 H^T via per-column scaling of H."""
    h = incidence_dense(g)
    deg = degrees(g)
    col_scale = np.asarray(g.weights) / deg.hyperedge_degrees
    s = (h * col_scale) @ h.T
    return s, deg.vertex_degrees


def combinatorial_laplacian(g: Hypergraph) -> LaplacianMatrix:
    """L = Dv - H W De^-1 H^T (symmetric PSD, nullspace contains the ones vector)."""
    s, dv = _mixing_matrix(g)
    lap = np.diag(dv) - s
    return LaplacianMatrix(variant=COMBINATORIAL, matrix=lap, vertex_degrees=dv)


def symmetric_laplacian(g: Hypergraph) -> LaplacianMatrix:
    """L_sym = I - Dv^-1/2 H W De^-1 H^T Dv^-1/2 (symmetric, spectrum in [0, 1])."""
    s, dv = _mixing_matrix(g)
    inv_sqrt = 1.0 / np.sqrt(dv)
    lap = np.eye(g.n_vertices) - s * inv_sqrt[:, None] * inv_sqrt[None, :]
    return LaplacianMatrix(variant=SYMMETRIC, matrix=lap, vertex_degrees=dv)


def random_walk_laplacian(g: Hypergraph) -> LaplacianMatrix:
    """L_rw = I - Dv^-1 H W De^-1 H^T (I - L_rw is row-stochastic)."""
    s, dv = _mixing_matrix(g)
    lap = np.eye(g.n_vertices) - s / dv[:, None]
    return LaplacianMatrix(variant=RANDOM_WALK, matrix=lap, vertex_degrees=dv)


_BUILDERS = {
    COMBINATORIAL: combinatorial_laplacian,
    SYMMETRIC: symmetric_laplacian,
    RANDOM_WALK: random_walk_laplacian,
}


def laplacian(g: Hypergraph, variant: str) -> LaplacianMatrix:
    """Build the Laplacian of the requested variant."""
    try:
        builder = _BUILDERS[variant]
    except KeyError:
        raise ValueError(
            f"unknown Laplacian variant {variant!r}, expected one of {VARIANTS}"
        ) from None
    return builder(g)
