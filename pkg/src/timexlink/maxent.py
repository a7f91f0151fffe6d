"""Multinomial maximum-entropy classifier over categorical features.

Features are ``(name, value)`` string pairs; each ``name=value`` string paired
with a label owns one weight.  Every label also has an unpenalized bias weight,
so a model without informative features reproduces the label prior.  Training
maximizes the L2-penalized conditional log-likelihood by batch gradient ascent
with a backtracking (Armijo) line search.
"""

from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass, field
from typing import IO, Optional, Sequence, Union

import numpy as np
from scipy import sparse
from scipy.special import logsumexp

log = logging.getLogger(__name__)

BIAS = "__bias__"
FORMAT_VERSION = "1"
# convergence also needs |gradient| <= GRADIENT_TOL * (1 + n_examples)
GRADIENT_TOL = 1e-5

FeatureVector = Sequence[tuple[str, str]]


class ModelFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TrainingConfig:
    max_iterations: int = 200
    convergence_tol: float = 1e-6
    l2_sigma2: float = 1.0

    def __post_init__(self):
        if self.max_iterations < 1 or self.convergence_tol <= 0 or self.l2_sigma2 <= 0:
            raise ValueError(f"invalid training config {self}")


@dataclass
class MaxEntModel:
    labels: tuple[str, ...]
    weights: dict[tuple[str, str], float]
    schema_version: str = ""
    sigma2: float = 1.0
    # objective after each iteration (index 0 = zero weights); not serialized
    history: tuple[float, ...] = field(default=(), compare=False, repr=False)
    _table: dict = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        if not self.labels or len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be non-empty and unique")
        for (feat, label), w in self.weights.items():
            if label not in self.labels:
                raise ValueError(f"weight for unknown label {label!r}")
            if not math.isfinite(w):
                raise ValueError(f"non-finite weight for {feat!r}/{label!r}")

    @property
    def table(self) -> dict[str, np.ndarray]:
        """feature string -> weight row aligned with ``labels``."""
        if self._table is None:
            pos = {l: i for i, l in enumerate(self.labels)}
            table = {}
            for (feat, label), w in self.weights.items():
                row = table.setdefault(feat, np.zeros(len(self.labels)))
                row[pos[label]] = w
            self._table = table
        return self._table


def feature_key(name: str, value: str) -> str:
    return f"{name}={value}"


def _keys(vector: FeatureVector) -> list[str]:
    return [feature_key(n, v) for n, v in vector]


# -- objective ------------------------------------------------------------------

def design(data: Sequence[tuple[FeatureVector, str]]):
    """Index features and labels (first-appearance order) and build the
    sparse indicator matrix and label indices."""
    labels, label_pos = [], {}
    feats, feat_pos = [], {}
    rows, cols = [], []
    y = np.empty(len(data), dtype=np.intp)
    for i, (vector, label) in enumerate(data):
        if label not in label_pos:
            label_pos[label] = len(labels)
            labels.append(label)
        y[i] = label_pos[label]
        for key in dict.fromkeys(_keys(vector)):
            if key not in feat_pos:
                feat_pos[key] = len(feats)
                feats.append(key)
            rows.append(i)
            cols.append(feat_pos[key])
    X = sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(data), len(feats)))
    return X, y, feats, labels


def log_probs(W: np.ndarray, b: np.ndarray, X) -> np.ndarray:
    scores = X @ W + b
    return scores - logsumexp(scores, axis=1, keepdims=True)


def objective(W: np.ndarray, b: np.ndarray, X, y: np.ndarray, sigma2: float) -> float:
    """Penalized conditional log-likelihood (bias weights are not penalized)."""
    lp = log_probs(W, b, X)
    return float(lp[np.arange(len(y)), y].sum() - (W * W).sum() / (2.0 * sigma2))


def gradient(W: np.ndarray, b: np.ndarray, X, y: np.ndarray, sigma2: float):
    """Gradient of :func:`objective` w.r.t. ``(W, b)``: observed minus expected counts."""
    resid = -np.exp(log_probs(W, b, X))
    resid[np.arange(len(y)), y] += 1.0
    gW = np.asarray(X.T @ resid) - W / sigma2
    return gW, resid.sum(axis=0)


# -- training -------------------------------------------------------------------

def complete_blocks(data: Sequence[tuple[FeatureVector, str]], feats: Sequence[str]) -> list[np.ndarray]:
    """Column groups of feature names that take exactly one value in every row.

    Such a group's columns sum to the all-ones column, i.e. to the bias.
    """
    pos = {k: i for i, k in enumerate(feats)}
    cols, seen_in = {}, {}
    for i, (vector, _) in enumerate(data):
        per_row = {}
        for name, value in dict.fromkeys(vector):
            per_row[name] = per_row.get(name, 0) + 1
            cols.setdefault(name, set()).add(pos[feature_key(name, value)])
        for name, k in per_row.items():
            seen_in.setdefault(name, []).append(k)
    taken, blocks = set(), []
    for name, ks in seen_in.items():
        c = cols[name]
        if len(ks) == len(data) and all(k == 1 for k in ks) and not c & taken:
            taken |= c
            blocks.append(np.array(sorted(c)))
    return blocks


def _project(gW: np.ndarray, blocks) -> np.ndarray:
    gW = gW.copy()
    for c in blocks:
        gW[c] -= gW[c].mean(axis=0)
    return gW


def _ascend(X, y, n_labels, config: TrainingConfig, blocks=()):
    # For a complete block the bias gradient equals the block's summed weight
    # gradient plus sum(W_block)/sigma2, so at the optimum each block's weights
    # sum to zero per label.  Ascending inside that subspace (starting from
    # W = 0) loses nothing and removes the flat bias-vs-block directions that
    # otherwise stall plain gradient ascent.
    n = X.shape[0]
    W = np.zeros((X.shape[1], n_labels))
    b = np.zeros(n_labels)
    s2 = config.l2_sigma2
    f = objective(W, b, X, y, s2)
    gW, gb = gradient(W, b, X, y, s2)
    gW = _project(gW, blocks)
    history = [f]
    step = 1.0 / (0.5 * max(n, 1) + 1.0 / s2)
    gtol = GRADIENT_TOL * (1 + n)
    converged = False
    for it in range(config.max_iterations):
        gsq = float((gW * gW).sum() + (gb * gb).sum())
        if gsq == 0.0:
            converged = True
            break
        t = step
        for _ in range(60):
            W_new, b_new = W + t * gW, b + t * gb
            f_new = objective(W_new, b_new, X, y, s2)
            if f_new >= f + 1e-4 * t * gsq:
                break
            t *= 0.5
        else:
            log.debug("line search stalled at iteration %d", it)
            break
        gW_new, gb_new = gradient(W_new, b_new, X, y, s2)
        gW_new = _project(gW_new, blocks)
        # Barzilai-Borwein guess for the next trial step; Armijo keeps ascent.
        sW, sb = W_new - W, b_new - b
        dW, db = gW_new - gW, gb_new - gb
        curv = -float((sW * dW).sum() + (sb * db).sum())
        W, b, gW, gb = W_new, b_new, gW_new, gb_new
        change = f_new - f
        f = f_new
        history.append(f)
        step = float((sW * sW).sum() + (sb * sb).sum()) / curv if curv > 0 else 2 * t
        if change / max(abs(f), 1.0) < config.convergence_tol:
            gnorm = math.sqrt(float((gW * gW).sum() + (gb * gb).sum()))
            if gnorm <= gtol:
                converged = True
                break
    if not converged:
        gnorm = math.sqrt(float((gW * gW).sum() + (gb * gb).sum()))
        log.warning("stopped after %d iterations without converging (gradient norm %.3g)",
                    len(history) - 1, gnorm)
    return W, b, history


def train(data: Sequence[tuple[FeatureVector, str]], config: TrainingConfig = TrainingConfig(),
          schema_version: str = "") -> MaxEntModel:
    """Fit a model; weights start at zero and training is deterministic."""
    data = list(data)
    if not data:
        raise ValueError("cannot train on empty data")
    X, y, feats, labels = design(data)
    if len(labels) == 1:
        log.warning("only one label (%s) in training data; model is degenerate", labels[0])
        return MaxEntModel(tuple(labels), {}, schema_version, config.l2_sigma2, (0.0,))
    W, b, history = _ascend(X, y, len(labels), config, complete_blocks(data, feats))
    weights = {}
    for j, label in enumerate(labels):
        weights[(BIAS, label)] = float(b[j])
    for i, feat in enumerate(feats):
        for j, label in enumerate(labels):
            weights[(feat, label)] = float(W[i, j])
    return MaxEntModel(tuple(labels), weights, schema_version, config.l2_sigma2, tuple(history))


# -- prediction -------------------------------------------------------------------

def scores(model: MaxEntModel, vector: FeatureVector) -> np.ndarray:
    table = model.table
    total = np.zeros(len(model.labels))
    if BIAS in table:
        total = total + table[BIAS]
    for key in _keys(vector):
        row = table.get(key)
        if row is not None:
            total = total + row
    return total


def predict_distribution(model: MaxEntModel, vector: FeatureVector) -> dict[str, float]:
    s = scores(model, vector)
    p = np.exp(s - logsumexp(s))
    return dict(zip(model.labels, p.tolist()))


def predict(model: MaxEntModel, vector: FeatureVector) -> str:
    """Most probable label; ties go to the earliest label in ``model.labels``."""
    s = scores(model, vector)
    return model.labels[int(np.argmax(s))]


# -- persistence ------------------------------------------------------------------

def save_model(model: MaxEntModel, stream: Optional[IO[str]] = None) -> bytes:
    """Write the model as UTF-8 text; returns the bytes as well."""
    for part in (model.schema_version, *model.labels):
        if any(c in part for c in "\t\n,"):
            raise ValueError(f"cannot serialize {part!r}: contains tab, comma or newline")
    lines = ["\t".join(["#maxent", f"format={FORMAT_VERSION}", f"schema={model.schema_version}",
                        f"sigma2={model.sigma2!r}", "labels=" + ",".join(model.labels)])]
    for (feat, label), w in model.weights.items():
        if "\t" in feat or "\n" in feat:
            raise ValueError(f"cannot serialize feature {feat!r}")
        lines.append(f"{feat}\t{label}\t{w:.17g}")
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text.encode("utf-8")


def load_model(stream: Union[IO, bytes, str], schema_version: Optional[str] = None) -> MaxEntModel:
    if isinstance(stream, bytes):
        try:
            stream = stream.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ModelFormatError(f"model is not UTF-8: {e}") from None
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    header = stream.readline().rstrip("\n").split("\t")
    if not header or header[0] != "#maxent":
        raise ModelFormatError("missing #maxent header")
    meta = {}
    for item in header[1:]:
        key, sep, val = item.partition("=")
        if not sep:
            raise ModelFormatError(f"bad header field {item!r}")
        meta[key] = val
    if meta.get("format") != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format {meta.get('format')!r}")
    if schema_version is not None and meta.get("schema") != schema_version:
        raise ModelFormatError(
            f"model feature schema {meta.get('schema')!r} does not match {schema_version!r}")
    try:
        sigma2 = float(meta["sigma2"])
        labels = tuple(meta["labels"].split(","))
    except (KeyError, ValueError) as e:
        raise ModelFormatError(f"bad header: {e}") from None
    weights = {}
    for lineno, line in enumerate(stream, 2):
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ModelFormatError(f"line {lineno}: expected feature<TAB>label<TAB>weight")
        try:
            w = float(parts[2])
        except ValueError:
            raise ModelFormatError(f"line {lineno}: bad weight {parts[2]!r}") from None
        weights[(parts[0], parts[1])] = w
    try:
        return MaxEntModel(labels, weights, meta.get("schema", ""), sigma2)
    except ValueError as e:
        raise ModelFormatError(str(e)) from None
