"""Dataset ingestion and the transductive evaluation pipeline.

The pipeline per grid cell: build ONE kNN hypergraph over all samples (train
and test jointly; there is no out-of-sample extension), eigenmap it to the
requested dimension, fit the classifier on the embedded training rows, score
the embedded test rows.  Test labels enter only at the scoring step.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
from dataclasses import dataclass

import numpy as np

from .classify import LabeledPoints, accuracy, knn_predict, krr_fit, krr_predict
from .construction import PointCloud, knn_hyperedges
from .laplacian import VARIANTS
from .spectral import eigenmap_basis, embedding_from_basis

CLASSIFIERS = ("knn", "krr")
NORMALIZATIONS = ("none", "unit", "zscore")

_VARIANT_TITLES = {
    "combinatorial": "Combinatorial Laplacian Eigenmaps",
    "random_walk": "Random walk Laplacian Eigenmaps",
    "symmetric": "Symmetric normalized Laplacian Eigenmaps",
}
_CLASSIFIER_TITLES = {
    "knn": "k nearest neighbor method",
    "krr": "kernel ridge regression method",
}


class EmptyFileError(ValueError):
    """The input CSV contains no data rows."""


class MalformedRowError(ValueError):
    """A CSV row failed to parse; the message carries the line number."""


class InconsistentWidthError(ValueError):
    """A CSV row has a different number of feature fields than the first row."""


class InsufficientClassSizeError(ValueError):
    """A class has too few samples for the requested train/test split."""


@dataclass(frozen=True)
class LabeledDataset:
    """n samples with labels and (once assigned) a per-index train/test split."""

    samples: np.ndarray
    labels: tuple
    split: tuple | None = None
    split_seed: int | None = None
    train_per_class: int | None = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        labels = tuple(self.labels)
        if samples.ndim != 2:
            raise ValueError(f"samples must be 2-D, got shape {samples.shape}")
        if samples.shape[0] != len(labels):
            raise ValueError(f"{samples.shape[0]} samples but {len(labels)} labels")
        if self.split is not None:
            split = tuple(self.split)
            if len(split) != len(labels):
                raise ValueError("split length does not match sample count")
            bad = set(split) - {"train", "test"}
            if bad:
                raise ValueError(f"split contains invalid markers {bad}")
            train_classes = {l for l, s in zip(labels, split) if s == "train"}
            test_classes = {l for l, s in zip(labels, split) if s == "test"}
            if not test_classes <= train_classes:
                raise ValueError(
                    f"classes {test_classes - train_classes} appear only in the test split"
                )
            object.__setattr__(self, "split", split)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "labels", labels)
        self.samples.flags.writeable = False

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def train_indices(self) -> np.ndarray:
        self._require_split()
        return np.array([i for i, s in enumerate(self.split) if s == "train"])

    @property
    def test_indices(self) -> np.ndarray:
        self._require_split()
        return np.array([i for i, s in enumerate(self.split) if s == "test"])

    def _require_split(self):
        if self.split is None:
            raise ValueError("dataset has no train/test split assigned")


@dataclass(frozen=True)
class ExperimentReport:
    """One row per grid configuration plus run metadata.

    Serialization is deterministic: identical inputs give byte-identical
    JSON (sorted keys, fixed layout, no timestamps).
    """

    metadata: dict
    rows: tuple

    def to_json(self) -> str:
        doc = {"metadata": self.metadata, "rows": list(self.rows)}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_markdown(self) -> str:
        entries = []
        for row in self.rows:
            if row["error"] is None:
                value = f"{row['accuracy']:.4f}"
            else:
                value = f"error: {row['error']}"
            entries.append((row["label"], value))
        name_w = max(len("Method"), *(len(n) for n, _ in entries))
        val_w = max(len("Accuracy"), *(len(v) for _, v in entries))
        lines = [
            f"| {'Method'.ljust(name_w)} | {'Accuracy'.ljust(val_w)} |",
            f"| {'-' * name_w} | {'-' * val_w} |",
        ]
        for name, value in entries:
            lines.append(f"| {name.ljust(name_w)} | {value.ljust(val_w)} |")
        return "\n".join(lines) + "\n"


def flatten_image(img: np.ndarray) -> np.ndarray:
    """Row-major flattening of an H x W matrix into a length H*W vector."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"expected a 2-D image, got shape {img.shape}")
    return img.reshape(-1)


def load_csv(path_or_file) -> LabeledDataset:
    """Read a label-first CSV: one label field then D numeric fields per row."""
    if hasattr(path_or_file, "read"):
        return _parse_csv(path_or_file)
    with open(path_or_file, newline="") as fh:
        return _parse_csv(fh)


def _parse_csv(fh) -> LabeledDataset:
    labels = []
    rows = []
    width = None
    for lineno, record in enumerate(csv.reader(fh), start=1):
        if not record:
            continue
        if len(record) < 2:
            raise MalformedRowError(f"line {lineno}: need a label plus features")
        if width is None:
            width = len(record) - 1
        elif len(record) - 1 != width:
            raise InconsistentWidthError(
                f"line {lineno}: expected {width} features, found {len(record) - 1}"
            )
        try:
            rows.append([float(x) for x in record[1:]])
        except ValueError as exc:
            raise MalformedRowError(f"line {lineno}: {exc}") from None
        labels.append(record[0].strip())
    if not rows:
        raise EmptyFileError("no data rows")
    return LabeledDataset(samples=np.array(rows), labels=tuple(labels))


def loads_csv(text: str) -> LabeledDataset:
    return _parse_csv(io.StringIO(text))


def stratified_split(ds: LabeledDataset, train_per_class: int, seed: int) -> LabeledDataset:
    """Mark exactly train_per_class samples per class as train (seeded shuffle)."""
    if train_per_class < 1:
        raise ValueError(f"train_per_class must be >= 1, got {train_per_class}")
    classes = sorted(set(ds.labels))
    by_class = {c: [i for i, l in enumerate(ds.labels) if l == c] for c in classes}
    for c in classes:
        if len(by_class[c]) < train_per_class + 1:
            raise InsufficientClassSizeError(
                f"class {c!r} has {len(by_class[c])} samples, "
                f"need >= {train_per_class + 1}"
            )
    rng = np.random.default_rng(seed)
    assignment = ["test"] * ds.n_samples
    for c in classes:
        idx = by_class[c]
        perm = rng.permutation(len(idx))
        for p in perm[:train_per_class]:
            assignment[idx[p]] = "train"
    return LabeledDataset(
        samples=ds.samples,
        labels=ds.labels,
        split=tuple(assignment),
        split_seed=int(seed),
        train_per_class=int(train_per_class),
    )


def normalize_features(x: np.ndarray, mode: str = "none") -> np.ndarray:
    """Optional preprocessing: per-row unit norm or per-column z-scoring."""
    x = np.asarray(x, dtype=np.float64)
    if mode == "none":
        return x.copy()
    if mode == "unit":
        norms = np.linalg.norm(x, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        return x / norms
    if mode == "zscore":
        std = x.std(axis=0)
        std[std == 0.0] = 1.0
        return (x - x.mean(axis=0)) / std
    raise ValueError(f"normalize must be one of {NORMALIZATIONS}, got {mode!r}")


def run_experiment(
    ds: LabeledDataset,
    variants=VARIANTS,
    dims=(20, 30, 40),
    classifiers=("knn",),
    *,
    knn_k: int = 1,
    ridge: float = 1e-3,
    bandwidth: float | str = "auto",
    k_h: int = 5,
    weighting: str = "unit",
    sigma: float | str = "auto",
    normalize: str = "none",
) -> ExperimentReport:
    """Run the variant x dimension x classifier grid on a split dataset.

    Rows come out in grid order.  A failing cell records an error marker and
    the grid continues.  Each row carries the Laplacian spectrum and a
    SHA-256 of the embedding bytes, which pins down both determinism and the
    fact that embeddings ignore labels.
    """
    ds._require_split()
    for v in variants:
        if v not in VARIANTS:
            raise ValueError(f"unknown Laplacian variant {v!r}")
    for c in classifiers:
        if c not in CLASSIFIERS:
            raise ValueError(f"unknown classifier {c!r}")

    features = normalize_features(ds.samples, normalize)
    graph = knn_hyperedges(PointCloud(features), k_h=k_h, weighting=weighting, sigma=sigma)

    train_idx = ds.train_indices
    test_idx = ds.test_indices
    train_labels = tuple(ds.labels[i] for i in train_idx)
    test_labels = tuple(ds.labels[i] for i in test_idx)

    basis_cache: dict = {}

    def variant_basis(variant):
        if variant not in basis_cache:
            basis_cache[variant] = eigenmap_basis(graph, variant)
        return basis_cache[variant]

    rows = []
    for variant, dim, clf in itertools.product(variants, dims, classifiers):
        if clf == "knn":
            hyper = {"knn_k": int(knn_k)}
        else:
            hyper = {
                "ridge": float(ridge),
                "bandwidth": bandwidth if bandwidth == "auto" else float(bandwidth),
            }
        row = {
            "laplacian": variant,
            "dim": int(dim),
            "classifier": clf,
            "hyperparameters": hyper,
            "label": f"{_VARIANT_TITLES[variant]} (d={dim}) + {_CLASSIFIER_TITLES[clf]}",
            "accuracy": None,
            "spectrum": None,
            "embedding_sha256": None,
            "error": None,
        }
        try:
            decomp, basis = variant_basis(variant)
            emb = embedding_from_basis(decomp, basis, variant, int(dim))
            coords = emb.coordinates
            train_pts = LabeledPoints(coords[train_idx], train_labels)
            if clf == "knn":
                preds = [knn_predict(train_pts, coords[i], knn_k) for i in test_idx]
            else:
                model = krr_fit(train_pts, bandwidth=bandwidth, ridge=ridge)
                preds = [krr_predict(model, coords[i]) for i in test_idx]
            row["accuracy"] = round(accuracy(preds, test_labels), 4)
            row["spectrum"] = [float(x) for x in decomp.eigenvalues]
            row["embedding_sha256"] = hashlib.sha256(coords.tobytes()).hexdigest()
        except (ValueError, RuntimeError) as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)

    metadata = {
        "seed": ds.split_seed,
        "train_per_class": ds.train_per_class,
        "n_samples": int(ds.n_samples),
        "n_train": int(train_idx.size),
        "n_test": int(test_idx.size),
        "knn_hyperedge": int(k_h),
        "edge_weight": weighting,
        "sigma": sigma if sigma == "auto" else float(sigma),
        "normalize": normalize,
        "classes": [str(c) for c in sorted(set(ds.labels))],
    }
    return ExperimentReport(metadata=metadata, rows=tuple(rows))
