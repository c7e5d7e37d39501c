"""One-vs-all baselines with classical losses: square, hinge, logistic.

Each trainer fits the same per-class +-1 indicator targets on the same
representation pipeline and returns the shared :class:`~correntia.regmaxcem.Model`
type, so the baselines are drop-in comparands for prediction and
evaluation.  All optimization is full-batch and deterministic (no
stochastic sampling), keeping experiments reproducible without any seed
interplay.  The 0-1 loss appears only as the accuracy metric, never as a
training objective.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .dataset import Dataset, label_indicator
from .kernels import Representation, represent_matrix
from .regmaxcem import Model, m_step

__all__ = ["BaselineConfig", "train_square", "train_hinge", "train_logistic"]

LOSSES = ("square", "hinge", "logistic")


@dataclass(frozen=True)
class BaselineConfig:
    """Settings for the baseline trainers.

    ``step_size`` seeds the hinge schedule (``step_size / sqrt(t)``) and the
    logistic line search; ``tol`` is the logistic gradient-norm stop.  Both
    are ignored by the closed-form square loss.
    """

    loss: str
    alpha: float = 0.01
    max_iters: int = 500
    step_size: float = 1.0
    tol: float = 1e-8

    def __post_init__(self):
        if self.loss not in LOSSES:
            raise ValueError(f"unknown loss {self.loss!r}; expected one of {LOSSES}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.loss in ("hinge", "logistic") and self.step_size <= 0:
            raise ValueError(f"step_size must be > 0, got {self.step_size}")
        if self.tol < 0:
            raise ValueError(f"tol must be >= 0, got {self.tol}")


def _assemble(weights, biases, rep, ds) -> Model:
    return Model(
        weights=weights,
        biases=biases,
        representation=rep,
        sigma_final=1.0,  # baselines have no kernel width; placeholder metadata
        class_map=ds.label_names,
    )


def train_square(ds: Dataset, rep: Representation, alpha: float) -> Model:
    """Closed-form per-class ridge regression onto +-1 indicator targets.

    Minimizes ``mean((scores - indicator)^2) + (alpha / L) sum_l ||w_l||^2``
    exactly; identical to one uniform-weight step of the correntropy
    trainer with the same alpha.
    """
    represented = represent_matrix(ds.features, rep).T
    indicator = label_indicator(ds.labels, ds.num_classes)
    uniform = -np.ones_like(indicator)
    weights, biases = m_step(uniform, represented, indicator, alpha)
    return _assemble(weights, biases, rep, ds)


def _hinge_value(margins_comp, w, n, alpha):
    # margins_comp = 1 - y * f; per-class objective (full objective times L)
    return float(np.sum(np.maximum(margins_comp, 0.0))) / n + alpha * float(w @ w)


def train_hinge(ds: Dataset, rep: Representation, cfg: BaselineConfig) -> Model:
    """Deterministic full-batch subgradient descent on the hinge loss.

    Minimizes ``mean(max(0, 1 - scores * indicator)) + (alpha / L) sum ||w_l||^2``
    with step schedule ``step_size / sqrt(t)``, capped at ``max_iters``, and
    returns the iterate with the best objective seen (the zero start is a
    candidate, so the result never scores worse than the zero model).  At a
    kink (margin exactly 1) the subgradient contribution is taken as 0.
    """
    if cfg.loss != "hinge":
        raise ValueError(f"config loss is {cfg.loss!r}, expected 'hinge'")
    represented = represent_matrix(ds.features, rep)  # n x D'
    indicator = label_indicator(ds.labels, ds.num_classes)
    n, dim = represented.shape
    alpha = cfg.alpha

    weights = np.empty((ds.num_classes, dim))
    biases = np.empty(ds.num_classes)
    for l in range(ds.num_classes):
        y = indicator[l]
        w = np.zeros(dim)
        b = 0.0
        margins_comp = 1.0 - y * (represented @ w + b)
        best = _hinge_value(margins_comp, w, n, alpha)
        best_w, best_b = w.copy(), b
        for t in range(1, cfg.max_iters + 1):
            active = margins_comp > 0.0
            grad_w = -(y[active] @ represented[active]) / n + 2.0 * alpha * w
            grad_b = -float(np.sum(y[active])) / n
            step = cfg.step_size / np.sqrt(t)
            w = w - step * grad_w
            b = b - step * grad_b
            with np.errstate(over="ignore", invalid="ignore"):
                margins_comp = 1.0 - y * (represented @ w + b)
                value = _hinge_value(margins_comp, w, n, alpha)
            if not np.isfinite(value):
                raise FloatingPointError(
                    f"class {l + 1}: hinge objective became non-finite (step size too large?)"
                )
            if value < best:
                best, best_w, best_b = value, w.copy(), b
        weights[l] = best_w
        biases[l] = best_b
    return _assemble(weights, biases, rep, ds)


def train_logistic(ds: Dataset, rep: Representation, cfg: BaselineConfig) -> Model:
    """Full-batch gradient descent with backtracking on the logistic loss.

    Minimizes ``mean(log(1 + exp(-scores * indicator))) + (alpha / L) sum ||w_l||^2``.
    The loss is evaluated through log-sum-exp and the negative-margin
    sigmoid through ``expit``, so large scores stay stable.  Armijo
    backtracking guarantees a monotone loss; iteration stops once the
    gradient norm falls below ``tol * (1 + |loss|)``.
    """
    if cfg.loss != "logistic":
        raise ValueError(f"config loss is {cfg.loss!r}, expected 'logistic'")
    represented = represent_matrix(ds.features, rep)
    indicator = label_indicator(ds.labels, ds.num_classes)
    n, dim = represented.shape
    alpha = cfg.alpha

    def value(y, w, b):
        z = y * (represented @ w + b)
        v = float(np.sum(np.logaddexp(0.0, -z))) / n + alpha * float(w @ w)
        if not np.isfinite(v):
            raise FloatingPointError("non-finite logistic loss")
        return v

    weights = np.empty((ds.num_classes, dim))
    biases = np.empty(ds.num_classes)
    for l in range(ds.num_classes):
        y = indicator[l]
        w = np.zeros(dim)
        b = 0.0
        current = value(y, w, b)
        step = cfg.step_size
        for _ in range(cfg.max_iters):
            s = expit(-(y * (represented @ w + b)))  # sigmoid of negative margin
            grad_w = -((y * s) @ represented) / n + 2.0 * alpha * w
            grad_b = -float(np.sum(y * s)) / n
            grad_sq = float(grad_w @ grad_w) + grad_b * grad_b
            if np.sqrt(grad_sq) <= cfg.tol * (1.0 + abs(current)):
                break
            step = min(step * 2.0, 1e8)  # warm-started, then backtracked
            while True:
                w_new = w - step * grad_w
                b_new = b - step * grad_b
                trial = value(y, w_new, b_new)
                if trial <= current - 1e-4 * step * grad_sq:
                    break
                step *= 0.5
                if step < 1e-20:
                    break
            if trial >= current:
                break  # no descent direction progress left at float precision
            w, b, current = w_new, b_new, trial
        weights[l] = w
        biases[l] = b
    return _assemble(weights, biases, rep, ds)
