"""Sample representation: identity (linear) or kernel vector against anchors.

In kernel mode a sample ``x`` is represented by its kernel evaluations
``[K(a_1, x), ..., K(a_N, x)]`` against the ``N`` training anchors, so the
downstream predictor dimension becomes ``N`` instead of ``D`` (and the ridge
identity in the trainer becomes ``N x N``).  Everything here is a pure
function of immutable inputs.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist

__all__ = [
    "KernelSpec",
    "Representation",
    "kernel_eval",
    "gram",
    "represent",
    "represent_matrix",
    "median_bandwidth",
    "linear_representation",
    "kernel_representation",
]

KERNEL_KINDS = ("linear", "rbf")


@dataclass(frozen=True)
class KernelSpec:
    """A kernel function: ``linear`` (dot product) or ``rbf`` with a bandwidth."""

    kind: str
    bandwidth: float | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}; expected one of {KERNEL_KINDS}")
        if self.kind == "rbf":
            if self.bandwidth is None or self.bandwidth <= 0:
                raise ValueError(f"rbf kernel needs bandwidth > 0, got {self.bandwidth}")


@dataclass(frozen=True)
class Representation:
    """How samples are fed to predictors: raw features or kernel vectors.

    ``anchors`` (the training feature matrix) and ``kernel`` are required in
    kernel mode and ignored in linear mode.
    """

    mode: str
    anchors: np.ndarray | None = None
    kernel: KernelSpec | None = None

    def __post_init__(self):
        if self.mode not in ("linear", "kernel"):
            raise ValueError(f"unknown representation mode {self.mode!r}")
        if self.mode == "kernel":
            if self.anchors is None or np.size(self.anchors) == 0:
                raise ValueError("kernel mode requires non-empty anchors")
            if self.kernel is None:
                raise ValueError("kernel mode requires a KernelSpec")
            anchors = np.ascontiguousarray(self.anchors, dtype=np.float64)
            anchors.setflags(write=False)
            object.__setattr__(self, "anchors", anchors)

    def output_dim(self, input_dim: int) -> int:
        """Length of represented vectors (D in linear mode, N anchors in kernel mode)."""
        return input_dim if self.mode == "linear" else self.anchors.shape[0]


def linear_representation() -> Representation:
    return Representation(mode="linear")


def kernel_representation(anchors: np.ndarray, kernel: KernelSpec) -> Representation:
    return Representation(mode="kernel", anchors=anchors, kernel=kernel)


def kernel_eval(spec: KernelSpec, x, z) -> float:
    """Evaluate ``K(x, z)`` for a single pair of equal-length vectors."""
    x = np.asarray(x, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if x.shape != z.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {z.shape}")
    if spec.kind == "linear":
        return float(x @ z)
    sq = float(np.sum((x - z) ** 2))
    return float(np.exp(-sq / (2.0 * spec.bandwidth**2)))


def gram(spec: KernelSpec, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Kernel matrix ``K[i, j] = K(rows[i], cols[j])`` for two sample matrices."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
    cols = np.atleast_2d(np.asarray(cols, dtype=np.float64))
    if rows.shape[1] != cols.shape[1]:
        raise ValueError(f"dimension mismatch: {rows.shape[1]} vs {cols.shape[1]}")
    if spec.kind == "linear":
        return rows @ cols.T
    sq = cdist(rows, cols, metric="sqeuclidean")
    return np.exp(-sq / (2.0 * spec.bandwidth**2))


def represent(x, rep: Representation) -> np.ndarray:
    """Represent one sample: identity in linear mode, kernel vector in kernel mode."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-D sample, got shape {x.shape}")
    if rep.mode == "linear":
        return x
    if x.shape[0] != rep.anchors.shape[1]:
        raise ValueError(
            f"sample dimension {x.shape[0]} does not match anchor dimension {rep.anchors.shape[1]}"
        )
    return gram(rep.kernel, rep.anchors, x[None, :])[:, 0]


def represent_matrix(X: np.ndarray, rep: Representation) -> np.ndarray:
    """Represent many samples at once; returns an ``n x D'`` matrix."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if rep.mode == "linear":
        return X
    if X.shape[1] != rep.anchors.shape[1]:
        raise ValueError(
            f"sample dimension {X.shape[1]} does not match anchor dimension {rep.anchors.shape[1]}"
        )
    return gram(rep.kernel, X, rep.anchors)


def median_bandwidth(features: np.ndarray) -> float:
    """Median pairwise Euclidean distance over all sample pairs (1.0 if degenerate).

    The bandwidth heuristic used when no explicit rbf bandwidth is given.
    """
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    if features.shape[0] < 2:
        raise ValueError("median bandwidth needs at least 2 samples")
    med = float(np.median(pdist(features)))
    return med if med > 0 else 1.0
