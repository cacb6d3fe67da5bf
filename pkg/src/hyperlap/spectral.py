"""Dense symmetric eigendecomposition and the hypergraph Laplacian eigenmaps.

The eigensolver is a cyclic Jacobi iteration: robust at the matrix sizes this
package targets (a few hundred vertices), with a deterministic sign
convention so embeddings are bit-reproducible.  Matrices larger than
_JACOBI_MAX_N are routed to LAPACK (numpy.linalg.eigh), which meets the same
contracts and is checked by the same tests.

All three eigenmap variants sort eigenvalues ascending and take eigenvector
columns 2..k+1, skipping the leading trivial eigenvector.  The random-walk
variant never decomposes its non-symmetric matrix directly: its eigenvectors
are recovered from the symmetric variant through the exact similarity
transform u = Dv^-1/2 w, then column-normalized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, KTooLargeError
from .laplacian import (
    COMBINATORIAL,
    SYMMETRIC,
    VARIANTS,
    combinatorial_laplacian,
    symmetric_laplacian,
)

# Eigenvalues below this magnitude count as zero (component detection).
ZERO_EIGENVALUE_TOL = 1e-8

_JACOBI_MAX_N = 512
_JACOBI_MAX_SWEEPS = 100
_JACOBI_REL_TOL = 1e-12

AUTO_RULES = ("components", "gap-diff", "gap-ratio")


class NotSymmetricError(ValueError):
    """Input matrix is not symmetric within tolerance."""


class NoConvergenceError(RuntimeError):
    """Jacobi iteration failed to converge within the sweep cap."""


class DegenerateSpectrumError(ValueError):
    """A k-selection rule has no admissible candidate."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues with matched unit-norm eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        self.eigenvalues.flags.writeable = False
        self.eigenvectors.flags.writeable = False


@dataclass(frozen=True)
class Embedding:
    """n x k embedded coordinates from one Laplacian variant."""

    coordinates: np.ndarray
    variant: str
    k: int

    def __post_init__(self):
        n, k = self.coordinates.shape
        if not 1 <= self.k <= n - 1 or k != self.k:
            raise ValueError(f"bad embedding shape {self.coordinates.shape} for k={self.k}")
        self.coordinates.flags.writeable = False


def _offdiag_sq(a: np.ndarray) -> float:
    # summed directly, not as ||A||_F^2 minus the diagonal mass: that
    # subtraction cancels catastrophically once the matrix is nearly diagonal
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.sum(off * off))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations on a symmetric matrix, in place on a copy.

    Converges when the off-diagonal Frobenius mass drops below
    _JACOBI_REL_TOL times the (rotation-invariant) Frobenius norm of the
    input.  Quadratic convergence makes the 100-sweep cap generous.
    """
    n = a.shape[0]
    v = np.eye(n)
    tol_sq = (_JACOBI_REL_TOL * np.linalg.norm(a)) ** 2
    for _ in range(_JACOBI_MAX_SWEEPS):
        if _offdiag_sq(a) <= tol_sq:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + 100.0 * abs(apq) == abs(h):
                    t = apq / h  # tiny-angle regime; avoids overflow in h/apq
                else:
                    tau = h / (2.0 * apq)
                    t = np.copysign(1.0, tau) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    else:
        if _offdiag_sq(a) > tol_sq:
            raise NoConvergenceError(
                f"Jacobi iteration did not converge in {_JACOBI_MAX_SWEEPS} sweeps"
            )
    return np.diag(a).copy(), v


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Make each column's largest-magnitude entry positive (first index wins ties)."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        lead = np.argmax(np.abs(out[:, j]))
        if out[lead, j] < 0.0:
            out[:, j] = -out[:, j]
    return out


def eig_symmetric(a: np.ndarray) -> SpectralDecomposition:
    """Full eigendecomposition of a dense symmetric matrix.

    Eigenvalues ascend; ties keep solver output order (stable sort).
    Deterministic: identical input gives bit-identical output.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > 1 and np.max(np.abs(a - a.T)) > 1e-8:
        raise NotSymmetricError("matrix is not symmetric within 1e-8")
    sym = (a + a.T) / 2.0
    if sym.shape[0] <= _JACOBI_MAX_N:
        values, vectors = _jacobi(sym)
    else:
        values, vectors = np.linalg.eigh(sym)
    order = np.argsort(values, kind="stable")
    return SpectralDecomposition(
        eigenvalues=values[order],
        eigenvectors=_fix_signs(vectors[:, order]),
    )


def select_k_components(d: SpectralDecomposition) -> int:
    """Count of near-zero eigenvalues, i.e. connected components of a Laplacian.

    Returns 0 when no eigenvalue is within ZERO_EIGENVALUE_TOL of zero; the
    caller must fall back to another rule in that degenerate case.
    """
    return int(np.sum(np.abs(d.eigenvalues) < ZERO_EIGENVALUE_TOL))


def select_k_eigengap(d: SpectralDecomposition, criterion: str = "difference") -> int:
    """Dimension k in [1, n-2] with the largest eigengap above position k+1.

    With 1-based eigenvalue indexing, maximizes lambda_{k+2} - lambda_{k+1}
    (criterion "difference") or lambda_{k+2} / lambda_{k+1} ("ratio").  Ties
    break toward the smallest k.  Ratio candidates with lambda_{k+1} = 0 are
    inadmissible; if every candidate is, the spectrum is degenerate.
    """
    ev = d.eigenvalues
    n = ev.shape[0]
    if n < 3:
        raise ValueError(f"eigengap selection needs n >= 3, got n={n}")
    lower = ev[1:-1]  # lambda_{k+1} for k = 1..n-2
    upper = ev[2:]  # lambda_{k+2}
    if criterion == "difference":
        scores = upper - lower
    elif criterion == "ratio":
        # |lambda| below the zero tolerance is round-off for an exact zero;
        # dividing by it would hand the argmax to numerical noise
        admissible = np.abs(lower) >= ZERO_EIGENVALUE_TOL
        if not admissible.any():
            raise DegenerateSpectrumError(
                "ratio criterion undefined: lambda_{k+1} = 0 for every candidate k"
            )
        scores = np.full(n - 2, -np.inf)
        scores[admissible] = upper[admissible] / lower[admissible]
    else:
        raise ValueError(f"criterion must be 'difference' or 'ratio', got {criterion!r}")
    return int(np.argmax(scores)) + 1


def eigenmap_basis(g: Hypergraph, variant: str) -> tuple[SpectralDecomposition, np.ndarray]:
    """Decomposition and full eigenvector basis for one Laplacian variant.

    Returns (d, basis) where basis column i is the variant's eigenvector for
    eigenvalue d.eigenvalues[i].  For the random-walk variant, d is the
    decomposition of the symmetric Laplacian (identical spectrum) and basis
    holds the similarity-transformed, column-normalized vectors.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown Laplacian variant {variant!r}, expected one of {VARIANTS}")
    if variant == COMBINATORIAL:
        d = eig_symmetric(combinatorial_laplacian(g).matrix)
        return d, d.eigenvectors
    lap = symmetric_laplacian(g)
    d = eig_symmetric(lap.matrix)
    if variant == SYMMETRIC:
        return d, d.eigenvectors
    basis = d.eigenvectors / np.sqrt(lap.vertex_degrees)[:, None]
    basis = basis / np.linalg.norm(basis, axis=0)
    return d, basis


def embedding_from_basis(
    d: SpectralDecomposition, basis: np.ndarray, variant: str, k: int | str
) -> Embedding:
    """Slice an eigenmap basis into an Embedding, resolving k first.

    Lets callers that reuse one decomposition across several dimensions skip
    recomputing it (see eigenmap for the k semantics).
    """
    n = basis.shape[0]
    if isinstance(k, str):
        if k == "components":
            dim = select_k_components(d)
            if dim < 1:
                raise DegenerateSpectrumError(
                    "component rule found no near-zero eigenvalue; pass an explicit k"
                )
        elif k == "gap-diff":
            dim = select_k_eigengap(d, "difference")
        elif k == "gap-ratio":
            dim = select_k_eigengap(d, "ratio")
        else:
            raise ValueError(f"unknown dimension rule {k!r}, expected one of {AUTO_RULES}")
        if dim > n - 1:
            raise KTooLargeError(f"rule {k!r} selected k={dim}, but only {n - 1} "
                                 "non-trivial eigenvectors exist")
    else:
        dim = int(k)
        if not 1 <= dim <= n - 2:
            raise KTooLargeError(f"k={dim} outside the valid range [1, {n - 2}]")
    coords = basis[:, 1 : dim + 1].copy()
    return Embedding(coordinates=coords, variant=variant, k=dim)


def eigenmap(g: Hypergraph, variant: str, k: int | str) -> Embedding:
    """Embed the hypergraph's vertices into k spectral coordinates.

    k is an explicit dimension in [1, n-2] or one of the AUTO_RULES:
    "components" (count of near-zero eigenvalues), "gap-diff" / "gap-ratio"
    (largest eigengap by difference / ratio).  Columns are eigenvectors
    v_2..v_{k+1} in ascending-eigenvalue order; v_1 is always skipped.
    """
    d, basis = eigenmap_basis(g, variant)
    return embedding_from_basis(d, basis, variant, k)


def embedding_to_csv(e: Embedding) -> str:
    """Headerless CSV, one vertex per row, shortest round-trip float format."""
    lines = []
    for row in e.coordinates:
        lines.append(",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"
