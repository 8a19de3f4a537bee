"""A graph convolutional network in plain numpy, gradients by hand.

Architecture: L rounds of H <- relu(A_hat @ H @ W), an attention readout
(softmax over nodes of a learned scoring vector, then a weighted sum of
node embeddings), and a dense layer to one sigmoid output per planner,
trained with binary cross-entropy on the timeout labels.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .config import TrainConfig
from .errors import DimensionMismatch, FormatError
from .io import PreparedGraph


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _bce_from_logits(logits: np.ndarray, y: np.ndarray) -> float:
    """Mean over outputs of y*softplus(-o) + (1-y)*softplus(o); stable."""
    return float(np.mean(y * np.logaddexp(0.0, -logits)
                         + (1.0 - y) * np.logaddexp(0.0, logits)))


def _glorot(rng: np.random.Generator, fan_in: int,
            fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


@dataclass
class _Cache:
    """Per-graph forward intermediates needed by the backward pass."""

    inputs: list[np.ndarray]     # M_l = A_hat @ H_l, one per layer
    pre_act: list[np.ndarray]    # Z_l = M_l @ W_l
    embeddings: np.ndarray       # H_L after the last relu
    attention: np.ndarray        # alpha over nodes
    pooled: np.ndarray           # z = H_L^T alpha
    logits: np.ndarray
    probabilities: np.ndarray


class GCN:
    """Parameters live in ``params``; all methods are pure numpy."""

    def __init__(self, feature_dim: int, n_outputs: int,
                 config: TrainConfig | None = None,
                 rng: np.random.Generator | None = None):
        self.config = config or TrainConfig()
        self.feature_dim = feature_dim
        self.n_outputs = n_outputs
        rng = rng or np.random.default_rng(self.config.seed)
        hidden = self.config.hidden
        self.params: dict[str, np.ndarray] = {}
        width = feature_dim
        for layer in range(self.config.layers):
            self.params[f"w{layer}"] = _glorot(rng, width, hidden)
            width = hidden
        self.params["attn"] = _glorot(rng, hidden, 1)[:, 0]
        self.params["w_out"] = _glorot(rng, hidden, n_outputs)
        self.params["b_out"] = np.zeros(n_outputs)

    # -- forward ----------------------------------------------------------

    def _forward(self, graph: PreparedGraph) -> _Cache:
        if graph.feature_dim != self.feature_dim:
            raise DimensionMismatch(
                f"graph {graph.name!r} has {graph.feature_dim} feature "
                f"columns; the first layer expects {self.feature_dim}")
        h = graph.features
        inputs, pre_act = [], []
        for layer in range(self.config.layers):
            m = graph.propagation @ h
            z = m @ self.params[f"w{layer}"]
            inputs.append(m)
            pre_act.append(z)
            h = np.maximum(z, 0.0)
        scores = h @ self.params["attn"]
        scores = scores - scores.max()
        exp = np.exp(scores)
        alpha = exp / exp.sum()
        pooled = h.T @ alpha
        logits = pooled @ self.params["w_out"] + self.params["b_out"]
        return _Cache(inputs, pre_act, h, alpha, pooled, logits,
                      _sigmoid(logits))

    def predict(self, graph: PreparedGraph) -> np.ndarray:
        """Timeout probability per planner, shape (n_outputs,)."""
        return self._forward(graph).probabilities

    def attention_weights(self, graph: PreparedGraph) -> np.ndarray:
        """The readout weights over nodes: nonnegative, summing to one."""
        return self._forward(graph).attention

    # -- loss and gradients -------------------------------------------------

    def loss(self, graphs: list[PreparedGraph], labels: np.ndarray) -> float:
        total = 0.0
        for graph, y in zip(graphs, labels):
            total += _bce_from_logits(self._forward(graph).logits, y)
        return total / len(graphs)

    def loss_and_grads(self, graphs: list[PreparedGraph],
                       labels: np.ndarray
                       ) -> tuple[float, dict[str, np.ndarray]]:
        if not graphs:
            raise FormatError("cannot take a step on an empty batch")
        grads = {k: np.zeros_like(v) for k, v in self.params.items()}
        total = 0.0
        scale = 1.0 / len(graphs)
        for graph, y in zip(graphs, labels):
            cache = self._forward(graph)
            total += _bce_from_logits(cache.logits, y)
            self._backward(graph, cache, y, scale, grads)
        return total * scale, grads

    def _backward(self, graph: PreparedGraph, cache: _Cache, y: np.ndarray,
                  scale: float, grads: dict[str, np.ndarray]) -> None:
        d_logits = (cache.probabilities - y) * (scale / self.n_outputs)
        grads["w_out"] += np.outer(cache.pooled, d_logits)
        grads["b_out"] += d_logits
        d_pooled = self.params["w_out"] @ d_logits

        h = cache.embeddings
        alpha = cache.attention
        d_alpha = h @ d_pooled
        d_scores = alpha * (d_alpha - float(alpha @ d_alpha))
        grads["attn"] += h.T @ d_scores
        d_h = np.outer(alpha, d_pooled) + np.outer(d_scores,
                                                   self.params["attn"])

        for layer in reversed(range(self.config.layers)):
            d_z = d_h * (cache.pre_act[layer] > 0.0)
            grads[f"w{layer}"] += cache.inputs[layer].T @ d_z
            if layer:
                d_m = d_z @ self.params[f"w{layer}"].T
                d_h = graph.propagation.T @ d_m

    # -- persistence ---------------------------------------------------------

    def save(self, path: str | Path) -> None:
        meta = json.dumps({
            "feature_dim": self.feature_dim,
            "n_outputs": self.n_outputs,
            "config": asdict(self.config),
        })
        np.savez(path, _meta=np.array(meta), **self.params)

    @classmethod
    def load(cls, path: str | Path) -> "GCN":
        with np.load(path) as data:
            try:
                meta = json.loads(str(data["_meta"]))
            except KeyError:
                raise FormatError(f"{path}: not a saved model") from None
            model = cls(meta["feature_dim"], meta["n_outputs"],
                        TrainConfig(**meta["config"]))
            for key in model.params:
                model.params[key] = data[key]
        return model
