"""Correntropy-maximizing one-vs-all trainer (alternating auxiliary/ridge updates).

Training alternates two closed-form steps for ``T`` rounds, starting from
uniform auxiliary weights:

* the weight update (``m_step``) solves, for every class, a weighted ridge
  regression of the +-1 indicator targets on the represented samples, with
  per-sample weights supplied by the auxiliary matrix;
* the auxiliary update (``e_step``) sets each auxiliary entry to the
  negative Gaussian similarity of the current residual, so samples whose
  indicator is badly predicted (e.g. mislabeled ones) get their influence
  suppressed in the next round.

With a fixed kernel width the sequence of objective values is
non-decreasing: the auxiliary update is the exact maximizer of the
conjugate-augmented objective, provided the ridge term handed to the
weight update is rescaled by ``2 sigma^2`` (the conjugate maximizer is
``-g_sigma(r) / (2 sigma^2)``; keeping the auxiliary matrix itself as
``-g_sigma(r)`` and moving the ``2 sigma^2`` onto the ridge term is the
equivalent formulation used here).  The very first weight update sees the
uniform auxiliary matrix and uses the plain ridge parameter, which makes
it coincide with the closed-form square-loss baseline.

Training is deterministic and single-threaded; the per-class ridge solves
are independent and run sequentially so results never depend on scheduling.
Trained models are immutable and safe to share across threads.
"""

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .correntropy import SigmaPolicy, g_sigma, objective, sigma_heuristic
from .dataset import Dataset, label_indicator
from .kernels import (
    KernelSpec,
    Representation,
    linear_representation,
    represent,
    represent_matrix,
)

__all__ = [
    "DegenerateClassError",
    "Model",
    "TrainConfig",
    "TraceRecord",
    "TrainTrace",
    "e_step",
    "m_step",
    "train",
    "predict_scores",
    "predict_label",
    "score_matrix",
    "predict_labels",
    "evaluate_objective",
    "save_model",
    "load_model",
]

# L x N auxiliary matrix; entries are -g_sigma(residual), i.e. in [-1, 0).
AuxMatrix = np.ndarray

DEGENERATE_WEIGHT_SUM = 1e-12


class DegenerateClassError(RuntimeError):
    """Raised when every auxiliary weight of one class underflows to zero."""

    def __init__(self, class_index: int):
        self.class_index = class_index
        super().__init__(
            f"class {class_index}: all auxiliary weights are numerically zero; "
            f"cannot solve the weighted ridge step"
        )


@dataclass(frozen=True)
class Model:
    """A trained one-vs-all predictor bundle.

    ``weights`` is ``L x D'`` (``D' = D`` linear, ``D' = N`` anchors in
    kernel mode) and ``biases`` has length ``L``; class ``l`` scores a
    represented sample ``z`` as ``weights[l - 1] @ z + biases[l - 1]``.
    """

    weights: np.ndarray
    biases: np.ndarray
    representation: Representation
    sigma_final: float
    class_map: tuple[str, ...]

    def __post_init__(self):
        weights = np.ascontiguousarray(self.weights, dtype=np.float64)
        biases = np.asarray(self.biases, dtype=np.float64)
        if weights.ndim != 2 or biases.shape != (weights.shape[0],):
            raise ValueError(
                f"inconsistent parameter shapes: weights {weights.shape}, biases {biases.shape}"
            )
        if not (np.all(np.isfinite(weights)) and np.all(np.isfinite(biases))):
            raise ValueError("model parameters must be finite")
        weights.setflags(write=False)
        biases.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "biases", biases)
        object.__setattr__(self, "class_map", tuple(self.class_map))

    @property
    def num_classes(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class TrainConfig:
    """Trainer settings.

    ``alpha`` is the regularization tradeoff, ``max_iters`` the round count
    ``T``, and ``tol`` stops early once the largest absolute parameter
    change in a round falls below it.  ``trace=True`` records per-round
    (objective, sigma, max parameter change).
    """

    alpha: float = 0.01
    max_iters: int = 20
    tol: float = 1e-6
    sigma_policy: SigmaPolicy = field(default_factory=SigmaPolicy.adaptive)
    representation: Representation = field(default_factory=linear_representation)
    trace: bool = False

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.tol < 0:
            raise ValueError(f"tol must be >= 0, got {self.tol}")


@dataclass(frozen=True)
class TraceRecord:
    objective: float
    sigma: float
    max_param_change: float


@dataclass(frozen=True)
class TrainTrace:
    """Per-iteration training records (empty unless tracing was enabled)."""

    records: tuple[TraceRecord, ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    @property
    def objectives(self) -> list[float]:
        return [r.objective for r in self.records]


def e_step(scores: np.ndarray, indicator: np.ndarray, sigma: float) -> AuxMatrix:
    """Auxiliary update: entrywise ``-g_sigma(scores - indicator)``.

    Entries lie in [-1, 0); an entry is exactly -1 where the residual is 0,
    and approaches 0 for large residuals (the sample is down-weighted).
    """
    scores = np.asarray(scores, dtype=np.float64)
    indicator = np.asarray(indicator, dtype=np.float64)
    if scores.shape != indicator.shape:
        raise ValueError(f"shape mismatch: {scores.shape} vs {indicator.shape}")
    return -g_sigma(scores - indicator, sigma)


def m_step(aux: AuxMatrix, represented: np.ndarray, indicator: np.ndarray, alpha: float):
    """Per-class weighted ridge solve given auxiliary weights.

    For every class ``l``, with ``u_i^2 = -aux[l, i] / N``, returns the
    unique stationary point of

        ``sum_i u_i^2 (w @ x_i + b - y_i)^2 + alpha ||w||^2``

    over represented columns ``x_i`` and indicator targets ``y_i``.
    Centering uses the ``u^2``-weighted means of samples and targets, which
    is what makes the bias gradient vanish exactly.  With ``alpha > 0`` the
    system is symmetric positive definite and solved by Cholesky; with
    ``alpha = 0`` a least-squares solve is used instead (no definiteness
    guarantee).

    Parameters
    ----------
    aux : ndarray of shape (L, N)
        Auxiliary matrix with entries in [-1, 0).
    represented : ndarray of shape (D', N)
        Represented training samples, one column per sample.
    indicator : ndarray of shape (L, N)
        +-1 indicator targets.
    alpha : float
        Ridge parameter (>= 0).

    Returns
    -------
    (weights, biases) : ndarrays of shapes (L, D') and (L,)

    Raises
    ------
    DegenerateClassError
        If a class's auxiliary weights sum below 1e-12 (every sample
        down-weighted to numerical zero).
    """
    aux = np.asarray(aux, dtype=np.float64)
    represented = np.asarray(represented, dtype=np.float64)
    indicator = np.asarray(indicator, dtype=np.float64)
    num_classes, n = indicator.shape
    if aux.shape != indicator.shape:
        raise ValueError(f"aux shape {aux.shape} does not match indicator shape {indicator.shape}")
    if represented.shape[1] != n:
        raise ValueError(f"represented has {represented.shape[1]} columns, expected {n}")
    dim = represented.shape[0]
    eye = np.eye(dim)

    weights = np.empty((num_classes, dim))
    biases = np.empty(num_classes)
    for l in range(num_classes):
        u_sq = -aux[l] / n
        u = np.sqrt(u_sq)
        if u.sum() < DEGENERATE_WEIGHT_SUM:
            raise DegenerateClassError(l + 1)
        total = u_sq.sum()
        x_mean = represented @ u_sq / total
        y_mean = indicator[l] @ u_sq / total
        centered = represented - x_mean[:, None]
        system = (centered * u_sq) @ centered.T
        rhs = (centered * u_sq) @ (indicator[l] - y_mean)
        if alpha > 0:
            w = cho_solve(cho_factor(system + alpha * eye, lower=True), rhs)
        else:
            w, *_ = np.linalg.lstsq(system, rhs, rcond=None)
        weights[l] = w
        biases[l] = y_mean - w @ x_mean
    return weights, biases


def train(ds: Dataset, cfg: TrainConfig) -> tuple[Model, TrainTrace]:
    """Run the alternating trainer on ``ds`` and return (model, trace).

    Each round does the weight update first (using the auxiliary matrix
    from the previous round; the initial matrix is all -1, i.e. uniform
    weights) and the auxiliary update second.  Under the adaptive sigma
    policy the kernel width is recomputed from the current residuals
    immediately before each auxiliary update.  Stops after ``max_iters``
    rounds or as soon as the largest absolute parameter change in a round
    drops below ``tol``.
    """
    rep = cfg.representation
    represented = represent_matrix(ds.features, rep).T  # D' x N
    indicator = label_indicator(ds.labels, ds.num_classes)
    n = ds.n_samples

    policy = cfg.sigma_policy
    sigma = policy.sigma if policy.mode == "fixed" else None
    aux = -np.ones((ds.num_classes, n))
    ridge = cfg.alpha  # plain on the uniform first round, 2 sigma^2 alpha afterwards
    prev_w = np.zeros((ds.num_classes, represented.shape[0]))
    prev_b = np.zeros(ds.num_classes)
    records = []

    for _ in range(cfg.max_iters):
        weights, biases = m_step(aux, represented, indicator, ridge)
        if not (np.all(np.isfinite(weights)) and np.all(np.isfinite(biases))):
            raise FloatingPointError(
                "non-finite parameters in the weight update; "
                "alpha is likely too small for near-singular data"
            )
        scores = weights @ represented + biases[:, None]
        if policy.mode == "adaptive":
            sigma = sigma_heuristic(scores, indicator, policy.floor)
        aux = e_step(scores, indicator, sigma)
        ridge = 2.0 * sigma * sigma * cfg.alpha
        delta = max(
            float(np.max(np.abs(weights - prev_w))), float(np.max(np.abs(biases - prev_b)))
        )
        if cfg.trace:
            value = objective(scores, indicator, weights, sigma, cfg.alpha)
            if not np.isfinite(value):
                raise FloatingPointError("non-finite training objective")
            records.append(TraceRecord(value, sigma, delta))
        prev_w, prev_b = weights, biases
        if delta < cfg.tol:
            break

    model = Model(
        weights=prev_w,
        biases=prev_b,
        representation=rep,
        sigma_final=float(sigma),
        class_map=ds.label_names,
    )
    return model, TrainTrace(tuple(records))


def predict_scores(model: Model, x) -> np.ndarray:
    """Per-class scores for one sample: ``w_l @ represent(x) + b_l``."""
    z = represent(x, model.representation)
    if z.shape[0] != model.weights.shape[1]:
        raise ValueError(
            f"represented dimension {z.shape[0]} does not match model dimension "
            f"{model.weights.shape[1]}"
        )
    return model.weights @ z + model.biases


def predict_label(model: Model, x) -> int:
    """Class index with the highest score; ties go to the smallest index."""
    return int(np.argmax(predict_scores(model, x))) + 1


def score_matrix(model: Model, X) -> np.ndarray:
    """Batch scores, shape ``(n, L)``."""
    Z = represent_matrix(X, model.representation)
    if Z.shape[1] != model.weights.shape[1]:
        raise ValueError(
            f"represented dimension {Z.shape[1]} does not match model dimension "
            f"{model.weights.shape[1]}"
        )
    return Z @ model.weights.T + model.biases


def predict_labels(model: Model, X) -> np.ndarray:
    """Batch argmax predictions, class indices in ``1..L``."""
    return np.argmax(score_matrix(model, X), axis=1) + 1


def evaluate_objective(model: Model, ds: Dataset, sigma: float, alpha: float) -> float:
    """Regularized correntropy objective of ``model`` on ``ds``."""
    scores = score_matrix(model, ds.features).T
    indicator = label_indicator(ds.labels, model.num_classes)
    return objective(scores, indicator, model.weights, sigma, alpha)


def save_model(model: Model, path) -> None:
    """Write a model to a self-describing JSON file.

    Floats round-trip exactly through their shortest decimal repr, so a
    loaded model reproduces predictions bit-identically on the same
    platform.
    """
    rep = model.representation
    payload = {
        "format": "correntia-model",
        "version": 1,
        "mode": rep.mode,
        "kernel": None
        if rep.kernel is None
        else {"kind": rep.kernel.kind, "bandwidth": rep.kernel.bandwidth},
        "anchors": None if rep.anchors is None else rep.anchors.tolist(),
        "weights": model.weights.tolist(),
        "biases": model.biases.tolist(),
        "sigma_final": model.sigma_final,
        "class_map": list(model.class_map),
    }
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def load_model(path) -> Model:
    """Load a model written by :func:`save_model`."""
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    if payload.get("format") != "correntia-model":
        raise ValueError(f"{path}: not a correntia model file")
    kernel = payload["kernel"]
    spec = None if kernel is None else KernelSpec(kernel["kind"], kernel["bandwidth"])
    anchors = payload["anchors"]
    rep = Representation(
        mode=payload["mode"],
        anchors=None if anchors is None else np.array(anchors, dtype=np.float64),
        kernel=spec,
    )
    return Model(
        weights=np.array(payload["weights"], dtype=np.float64),
        biases=np.array(payload["biases"], dtype=np.float64),
        representation=rep,
        sigma_final=float(payload["sigma_final"]),
        class_map=tuple(payload["class_map"]),
    )
