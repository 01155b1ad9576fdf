"""The three GNN architectures and their analytic gradients.

All models share the same skeleton: architecture-specific node embeddings
followed by a linear per-node regression head. Gradients are hand-derived
vector-Jacobian products, verified against central finite differences in the
test suite.

GCN layer        ReLU(A_hat @ H @ W + b), A_hat the symmetric-normalized
                 adjacency with self-loops.
GraphSAGE layer  per node v: m_v = mean of (sampled) neighbor rows, zero for
                 isolated nodes; ReLU(concat(h_v, m_v) @ W + b). Training
                 samples up to `fanout` neighbors; evaluation always uses the
                 full neighborhood so eval forwards are deterministic.
GGNN step        GRU-style gating over summed neighbor messages:
                     a  = A @ h @ W_msg + b_msg
                     z  = sigmoid(a @ W_z + h @ U_z)
                     r  = sigmoid(a @ W_r + h @ U_r)
                     c  = tanh(a @ W_h + (r * h) @ U_h)
                     h' = (1 - z) * h + z * c
                 with gate weights shared across the recurrent steps and the
                 raw binary adjacency (sum aggregation) as message operator.

Dropout is inverted (survivors scaled by 1/(1-rate)) and applied to hidden
activations in train mode only: after each GCN/SAGE layer, and once on the
final GGNN state before the head.

Checkpoints are a single JSON document with the spec echo and base64-encoded
row-major little-endian float64 parameter buffers, so save/load round-trips
are bit-exact.
"""

import base64
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ShapeError, StateError, ValidationError
from .graph import (
    NeighborTable,
    NormalizedAdjacency,
    RoadGraph,
    build_adjacency,
    sample_neighbors,
    symmetric_normalize,
)
from .linalg import Matrix, Parameter, as_matrix, glorot_uniform
from .rng import Rng

# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class GcnConfig:
    num_layers: int
    hidden_dim: int
    dropout_rate: float = 0.0

    def __post_init__(self):
        if self.num_layers < 1:
            raise ValidationError(f"num_layers must be >= 1, got {self.num_layers}")
        if self.hidden_dim < 1:
            raise ValidationError(f"hidden_dim must be >= 1, got {self.hidden_dim}")
        if not (0.0 <= self.dropout_rate < 1.0):
            raise ValidationError(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")


@dataclass(frozen=True)
class SageConfig:
    num_layers: int
    hidden_dim: int
    fanouts: tuple[int, ...]
    aggregator: str = "mean"

    def __post_init__(self):
        object.__setattr__(self, "fanouts", tuple(int(f) for f in self.fanouts))
        if self.num_layers < 1:
            raise ValidationError(f"num_layers must be >= 1, got {self.num_layers}")
        if self.hidden_dim < 1:
            raise ValidationError(f"hidden_dim must be >= 1, got {self.hidden_dim}")
        if len(self.fanouts) != self.num_layers:
            raise ValidationError(
                f"need one fanout per layer: {len(self.fanouts)} fanouts "
                f"for {self.num_layers} layers"
            )
        if any(f < 1 for f in self.fanouts):
            raise ValidationError(f"fanouts must be positive, got {self.fanouts}")
        if self.aggregator != "mean":
            raise ValidationError(f"unsupported aggregator {self.aggregator!r}")


@dataclass(frozen=True)
class GgnnConfig:
    num_steps: int
    hidden_dim: int

    def __post_init__(self):
        if self.num_steps < 1:
            raise ValidationError(f"num_steps must be >= 1, got {self.num_steps}")
        if self.hidden_dim < 1:
            raise ValidationError(f"hidden_dim must be >= 1, got {self.hidden_dim}")


ArchConfig = GcnConfig | SageConfig | GgnnConfig

ARCH_NAMES = {GcnConfig: "gcn", SageConfig: "sage", GgnnConfig: "ggnn"}


@dataclass(frozen=True)
class ModelSpec:
    arch: ArchConfig
    input_dim: int

    def __post_init__(self):
        if self.input_dim < 1:
            raise ValidationError(f"input_dim must be >= 1, got {self.input_dim}")

    @property
    def arch_name(self) -> str:
        return ARCH_NAMES[type(self.arch)]


class ModelParams:
    """Ordered collection of uniquely named Parameters."""

    def __init__(self, parameters=()):
        self._by_name: dict[str, Parameter] = {}
        for p in parameters:
            self.add(p)

    def add(self, p: Parameter) -> Parameter:
        if p.name in self._by_name:
            raise ValidationError(f"duplicate parameter name {p.name!r}")
        self._by_name[p.name] = p
        return p

    def __getitem__(self, name: str) -> Parameter:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    def names(self) -> list[str]:
        return list(self._by_name)

    def zero_grads(self) -> None:
        for p in self:
            p.zero_grad()

    def copy(self) -> "ModelParams":
        return ModelParams(
            Parameter(p.name, p.value.copy(), p.grad.copy()) for p in self
        )


@dataclass(frozen=True)
class GraphInputs:
    """Everything the forward passes need, precomputed once per graph."""

    graph: RoadGraph
    adjacency: Matrix
    norm_adjacency: NormalizedAdjacency
    neighbors: NeighborTable

    @classmethod
    def from_graph(cls, g: RoadGraph) -> "GraphInputs":
        a = build_adjacency(g)
        return cls(g, a, symmetric_normalize(a), NeighborTable.from_graph(g))


# ---------------------------------------------------------------------------
# layer ops (stateless; the cached variants feed Model.backward)


def _adj_matrix(adj) -> Matrix:
    return adj.matrix if isinstance(adj, NormalizedAdjacency) else as_matrix(adj)


def _check_layer_shapes(op: str, adj: Matrix, h: Matrix, w: Matrix, b: Matrix,
                        w_rows: int) -> None:
    n = h.shape[0]
    if adj.shape != (n, n):
        raise ShapeError(f"{op}: adjacency {adj.shape} does not match {n} nodes")
    if w.shape[0] != w_rows:
        raise ShapeError(f"{op}: weight {w.shape} does not accept {w_rows} inputs")
    if b.shape != (1, w.shape[1]):
        raise ShapeError(f"{op}: bias {b.shape} must be (1, {w.shape[1]})")


def _gcn_layer(adj_m: Matrix, h: Matrix, w: Matrix, b: Matrix, apply_relu: bool):
    propagated = adj_m @ h
    z = propagated @ w + b
    if apply_relu:
        mask = z > 0.0
        return np.where(mask, z, 0.0), (adj_m, propagated, w, mask)
    return z, (adj_m, propagated, w, None)


def _gcn_layer_backward(d_out: Matrix, cache):
    adj_m, propagated, w, mask = cache
    dz = d_out * mask if mask is not None else d_out
    db = dz.sum(axis=0, keepdims=True)
    dw = propagated.T @ dz
    dh = adj_m.T @ (dz @ w.T)
    return dh, dw, db


def gcn_layer_forward(adj, h, w, b, apply_relu: bool = True) -> Matrix:
    adj_m, h, w, b = _adj_matrix(adj), as_matrix(h), as_matrix(w), as_matrix(b)
    _check_layer_shapes("gcn_layer_forward", adj_m, h, w, b, h.shape[1])
    return _gcn_layer(adj_m, h, w, b, apply_relu)[0]


def mean_aggregation_matrix(table: NeighborTable, fanout: int, rng: Rng) -> Matrix:
    """Row v averages the sampled neighborhood of v; zero row if isolated.

    Nodes are visited in ascending order and only nodes with degree > fanout
    consume rng draws.
    """
    n = table.num_nodes
    s = np.zeros((n, n))
    for v in range(n):
        picked = sample_neighbors(table, v, fanout, rng)
        if picked:
            s[v, picked] = 1.0 / len(picked)
    return s


def full_mean_aggregation_matrix(table: NeighborTable) -> Matrix:
    n = table.num_nodes
    s = np.zeros((n, n))
    for v in range(n):
        nbrs = table.neighbors[v]
        if nbrs:
            s[v, list(nbrs)] = 1.0 / len(nbrs)
    return s


def _sage_layer(s: Matrix, h: Matrix, w: Matrix, b: Matrix, apply_relu: bool):
    aggregated = s @ h
    combined = np.hstack([h, aggregated])
    z = combined @ w + b
    if apply_relu:
        mask = z > 0.0
        return np.where(mask, z, 0.0), (s, combined, w, mask, h.shape[1])
    return z, (s, combined, w, None, h.shape[1])


def _sage_layer_backward(d_out: Matrix, cache):
    s, combined, w, mask, d_in = cache
    dz = d_out * mask if mask is not None else d_out
    db = dz.sum(axis=0, keepdims=True)
    dw = combined.T @ dz
    dc = dz @ w.T
    dh = dc[:, :d_in] + s.T @ dc[:, d_in:]
    return dh, dw, db


def sage_layer_forward(table: NeighborTable, h, w, b, fanout: int, rng: Rng,
                       apply_relu: bool = True) -> Matrix:
    h, w, b = as_matrix(h), as_matrix(w), as_matrix(b)
    if h.shape[0] != table.num_nodes:
        raise ShapeError(
            f"sage_layer_forward: {h.shape[0]} feature rows for "
            f"{table.num_nodes} nodes"
        )
    if w.shape[0] != 2 * h.shape[1]:
        raise ShapeError(
            f"sage_layer_forward: weight {w.shape} does not accept "
            f"concat width {2 * h.shape[1]}"
        )
    if b.shape != (1, w.shape[1]):
        raise ShapeError(f"sage_layer_forward: bias {b.shape} must be (1, {w.shape[1]})")
    s = mean_aggregation_matrix(table, fanout, rng)
    return _sage_layer(s, h, w, b, apply_relu)[0]


@dataclass
class GgnnGates:
    """Weights of one (shared) gated update step; all square except the bias."""

    w_msg: Matrix
    b_msg: Matrix
    w_z: Matrix
    u_z: Matrix
    w_r: Matrix
    u_r: Matrix
    w_h: Matrix
    u_h: Matrix


def _stable_sigmoid(x: Matrix) -> Matrix:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _ggnn_step(adj: Matrix, h: Matrix, g: GgnnGates):
    messages = adj @ h
    a = messages @ g.w_msg + g.b_msg
    z = _stable_sigmoid(a @ g.w_z + h @ g.u_z)
    r = _stable_sigmoid(a @ g.w_r + h @ g.u_r)
    gated = r * h
    c = np.tanh(a @ g.w_h + gated @ g.u_h)
    h_next = (1.0 - z) * h + z * c
    return h_next, (adj, h, messages, a, z, r, gated, c)


def _ggnn_step_backward(d_next: Matrix, cache, g: GgnnGates):
    adj, h, messages, a, z, r, gated, c = cache
    dz = d_next * (c - h)
    dc = d_next * z
    dh = d_next * (1.0 - z)

    d_pre_c = dc * (1.0 - c * c)
    dw_h = a.T @ d_pre_c
    du_h = gated.T @ d_pre_c
    da = d_pre_c @ g.w_h.T
    d_gated = d_pre_c @ g.u_h.T
    dr = d_gated * h
    dh += d_gated * r

    d_pre_r = dr * r * (1.0 - r)
    dw_r = a.T @ d_pre_r
    du_r = h.T @ d_pre_r
    da += d_pre_r @ g.w_r.T
    dh += d_pre_r @ g.u_r.T

    d_pre_z = dz * z * (1.0 - z)
    dw_z = a.T @ d_pre_z
    du_z = h.T @ d_pre_z
    da += d_pre_z @ g.w_z.T
    dh += d_pre_z @ g.u_z.T

    db_msg = da.sum(axis=0, keepdims=True)
    dw_msg = messages.T @ da
    dh += adj.T @ (da @ g.w_msg.T)

    grads = {
        "w_msg": dw_msg, "b_msg": db_msg,
        "w_z": dw_z, "u_z": du_z,
        "w_r": dw_r, "u_r": du_r,
        "w_h": dw_h, "u_h": du_h,
    }
    return dh, grads


def ggnn_step(adj, h, gates: GgnnGates) -> Matrix:
    adj, h = as_matrix(adj), as_matrix(h)
    d = h.shape[1]
    if adj.shape != (h.shape[0], h.shape[0]):
        raise ShapeError(f"ggnn_step: adjacency {adj.shape} for {h.shape[0]} nodes")
    for name in ("w_msg", "w_z", "u_z", "w_r", "u_r", "w_h", "u_h"):
        m = getattr(gates, name)
        if m.shape != (d, d):
            raise ShapeError(f"ggnn_step: gate {name} has shape {m.shape}, need ({d}, {d})")
    if gates.b_msg.shape != (1, d):
        raise ShapeError(f"ggnn_step: b_msg has shape {gates.b_msg.shape}, need (1, {d})")
    return _ggnn_step(adj, h, gates)[0]


def _dropout_scale(shape, rate: float, rng: Rng) -> Matrix:
    keep = rng.random_matrix(*shape) >= rate
    return keep.astype(np.float64) / (1.0 - rate)


def apply_dropout(h, rate: float, rng: Rng | None, mode: str) -> Matrix:
    """Inverted dropout; identity in eval mode and for rate 0 (no rng draws)."""
    h = as_matrix(h)
    if rate >= 1.0 or rate < 0.0:
        raise ValidationError(f"dropout rate must be in [0, 1), got {rate}")
    if mode == "eval" or rate == 0.0:
        return h
    if mode != "train":
        raise ValidationError(f"mode must be 'train' or 'eval', got {mode!r}")
    return h * _dropout_scale(h.shape, rate, rng)


# ---------------------------------------------------------------------------
# the model


class Model:
    """One architecture instance: spec, parameters, and prediction scaling.

    Eval-mode forward is pure; train-mode forward records the cache that
    backward() consumes. backward() accumulates into Parameter.grad, so
    calling it twice doubles the gradients.
    """

    def __init__(self, spec: ModelSpec, params: ModelParams,
                 dropout_rate: float = 0.0,
                 target_scale: tuple[float, float] = (0.0, 1.0)):
        self.spec = spec
        self.params = params
        self.dropout_rate = float(dropout_rate)
        self.target_scale = (float(target_scale[0]), float(target_scale[1]))
        self._cache = None

    # forward -------------------------------------------------------------

    def forward(self, gi: GraphInputs, x, mode: str = "eval",
                rng: Rng | None = None) -> Matrix:
        """Per-node predictions as an (N, 1) column, in network units."""
        x = as_matrix(x)
        if mode not in ("train", "eval"):
            raise ValidationError(f"mode must be 'train' or 'eval', got {mode!r}")
        if x.shape != (gi.graph.num_nodes, self.spec.input_dim):
            raise ShapeError(
                f"input {x.shape} does not match ({gi.graph.num_nodes}, "
                f"{self.spec.input_dim})"
            )
        train = mode == "train"
        if train and self._needs_rng() and rng is None:
            raise ValidationError("train-mode forward needs an rng")

        arch = self.spec.arch
        if isinstance(arch, GcnConfig):
            h, layer_caches = self._gcn_embed(gi, x, train, rng)
        elif isinstance(arch, SageConfig):
            h, layer_caches = self._sage_embed(gi, x, train, rng)
        else:
            h, layer_caches = self._ggnn_embed(gi, x, train, rng)

        pred = h @ self.params["w_head"].value + self.params["b_head"].value
        if train:
            self._cache = (layer_caches, h)
        return pred

    def _needs_rng(self) -> bool:
        return self.dropout_rate > 0.0 or isinstance(self.spec.arch, SageConfig)

    def _hidden_dropout(self, h, train, rng, caches):
        if train and self.dropout_rate > 0.0:
            scale = _dropout_scale(h.shape, self.dropout_rate, rng)
            caches.append(("dropout", scale))
            return h * scale
        return h

    def _gcn_embed(self, gi, x, train, rng):
        adj_m = gi.norm_adjacency.matrix
        caches: list = []
        h = x
        for layer in range(self.spec.arch.num_layers):
            w = self.params[f"w{layer}"].value
            b = self.params[f"b{layer}"].value
            h, cache = _gcn_layer(adj_m, h, w, b, apply_relu=True)
            caches.append((f"gcn{layer}", cache))
            h = self._hidden_dropout(h, train, rng, caches)
        return h, caches

    def _sage_embed(self, gi, x, train, rng):
        caches: list = []
        h = x
        for layer in range(self.spec.arch.num_layers):
            if train:
                s = mean_aggregation_matrix(
                    gi.neighbors, self.spec.arch.fanouts[layer], rng
                )
            else:
                s = full_mean_aggregation_matrix(gi.neighbors)
            w = self.params[f"w{layer}"].value
            b = self.params[f"b{layer}"].value
            h, cache = _sage_layer(s, h, w, b, apply_relu=True)
            caches.append((f"sage{layer}", cache))
            h = self._hidden_dropout(h, train, rng, caches)
        return h, caches

    def _ggnn_gates(self) -> GgnnGates:
        p = self.params
        return GgnnGates(
            p["w_msg"].value, p["b_msg"].value,
            p["w_z"].value, p["u_z"].value,
            p["w_r"].value, p["u_r"].value,
            p["w_h"].value, p["u_h"].value,
        )

    def _ggnn_embed(self, gi, x, train, rng):
        caches: list = [("proj", x)]
        h = x @ self.params["w_in"].value + self.params["b_in"].value
        gates = self._ggnn_gates()
        for _ in range(self.spec.arch.num_steps):
            h, cache = _ggnn_step(gi.adjacency, h, gates)
            caches.append(("ggnn", cache))
        h = self._hidden_dropout(h, train, rng, caches)
        return h, caches

    # backward ------------------------------------------------------------

    def backward(self, d_pred) -> None:
        """Accumulate dLoss/dParam given dLoss/dPred from a train forward."""
        if self._cache is None:
            raise StateError("backward called without a train-mode forward")
        d_pred = as_matrix(d_pred)
        layer_caches, h_final = self._cache
        if d_pred.shape != (h_final.shape[0], 1):
            raise ShapeError(
                f"d_pred {d_pred.shape} must be ({h_final.shape[0]}, 1)"
            )

        w_head = self.params["w_head"]
        w_head.grad += h_final.T @ d_pred
        self.params["b_head"].grad += d_pred.sum(axis=0, keepdims=True)
        dh = d_pred @ w_head.value.T

        gates = self._ggnn_gates() if isinstance(self.spec.arch, GgnnConfig) else None
        for kind, cache in reversed(layer_caches):
            if kind == "dropout":
                dh = dh * cache
            elif kind.startswith("gcn"):
                layer = kind[3:]
                dh, dw, db = _gcn_layer_backward(dh, cache)
                self.params[f"w{layer}"].grad += dw
                self.params[f"b{layer}"].grad += db
            elif kind.startswith("sage"):
                layer = kind[4:]
                dh, dw, db = _sage_layer_backward(dh, cache)
                self.params[f"w{layer}"].grad += dw
                self.params[f"b{layer}"].grad += db
            elif kind == "ggnn":
                dh, grads = _ggnn_step_backward(dh, cache, gates)
                for name, g in grads.items():
                    self.params[name].grad += g
            elif kind == "proj":
                x = cache
                self.params["w_in"].grad += x.T @ dh
                self.params["b_in"].grad += dh.sum(axis=0, keepdims=True)

    # prediction ----------------------------------------------------------

    def predict(self, gi: GraphInputs, x) -> Matrix:
        """Eval forward mapped back to data units via the target scale."""
        mean, std = self.target_scale
        return self.forward(gi, x, mode="eval") * std + mean


# ---------------------------------------------------------------------------
# construction


def effective_dropout_rate(arch: ArchConfig, train_dropout: float) -> float:
    """GCN carries its own dropout hyperparameter; the other architectures
    take the training-protocol rate."""
    if isinstance(arch, GcnConfig):
        return arch.dropout_rate
    return train_dropout


def init_params(spec: ModelSpec, rng: Rng) -> ModelParams:
    """Glorot-uniform weights, zero biases; creation order fixes the rng
    stream, so (spec, seed) pins every initial value."""
    params = ModelParams()
    arch = spec.arch
    if isinstance(arch, (GcnConfig, SageConfig)):
        d_in = spec.input_dim
        for layer in range(arch.num_layers):
            w_rows = 2 * d_in if isinstance(arch, SageConfig) else d_in
            params.add(Parameter(f"w{layer}", glorot_uniform(w_rows, arch.hidden_dim, rng)))
            params.add(Parameter(f"b{layer}", np.zeros((1, arch.hidden_dim))))
            d_in = arch.hidden_dim
        head_in = arch.hidden_dim
    else:
        d = arch.hidden_dim
        params.add(Parameter("w_in", glorot_uniform(spec.input_dim, d, rng)))
        params.add(Parameter("b_in", np.zeros((1, d))))
        params.add(Parameter("w_msg", glorot_uniform(d, d, rng)))
        params.add(Parameter("b_msg", np.zeros((1, d))))
        for name in ("w_z", "u_z", "w_r", "u_r", "w_h", "u_h"):
            params.add(Parameter(name, glorot_uniform(d, d, rng)))
        head_in = d
    params.add(Parameter("w_head", glorot_uniform(head_in, 1, rng)))
    params.add(Parameter("b_head", np.zeros((1, 1))))
    return params


def build_model(spec: ModelSpec, rng: Rng, train_dropout: float = 0.0,
                target_scale: tuple[float, float] = (0.0, 1.0)) -> Model:
    return Model(
        spec,
        init_params(spec, rng),
        dropout_rate=effective_dropout_rate(spec.arch, train_dropout),
        target_scale=target_scale,
    )


# ---------------------------------------------------------------------------
# checkpoints

CHECKPOINT_FORMAT = "trafficgnn-checkpoint-v1"


def _encode_array(a: np.ndarray) -> str:
    return base64.b64encode(np.ascontiguousarray(a, dtype="<f8").tobytes()).decode("ascii")


def _decode_array(text: str, shape) -> np.ndarray:
    raw = base64.b64decode(text.encode("ascii"))
    a = np.frombuffer(raw, dtype="<f8").astype(np.float64).reshape(shape)
    return np.ascontiguousarray(a)


def _arch_to_dict(arch: ArchConfig) -> dict:
    if isinstance(arch, GcnConfig):
        return {"num_layers": arch.num_layers, "hidden_dim": arch.hidden_dim,
                "dropout_rate": arch.dropout_rate}
    if isinstance(arch, SageConfig):
        return {"num_layers": arch.num_layers, "hidden_dim": arch.hidden_dim,
                "fanouts": list(arch.fanouts), "aggregator": arch.aggregator}
    return {"num_steps": arch.num_steps, "hidden_dim": arch.hidden_dim}


def _arch_from_dict(name: str, doc: dict) -> ArchConfig:
    if name == "gcn":
        return GcnConfig(doc["num_layers"], doc["hidden_dim"], doc.get("dropout_rate", 0.0))
    if name == "sage":
        return SageConfig(doc["num_layers"], doc["hidden_dim"], tuple(doc["fanouts"]),
                          doc.get("aggregator", "mean"))
    if name == "ggnn":
        return GgnnConfig(doc["num_steps"], doc["hidden_dim"])
    raise ValidationError(f"unknown architecture {name!r}")


def checkpoint_to_json(model: Model, run_config: dict | None = None) -> str:
    doc = {
        "format": CHECKPOINT_FORMAT,
        "spec": {
            "arch": model.spec.arch_name,
            "config": _arch_to_dict(model.spec.arch),
            "input_dim": model.spec.input_dim,
        },
        "dropout_rate": model.dropout_rate,
        "target_scale": {"mean": model.target_scale[0], "std": model.target_scale[1]},
        "parameters": [
            {"name": p.name, "shape": list(p.value.shape), "data": _encode_array(p.value)}
            for p in model.params
        ],
        "encoding": "base64 row-major little-endian float64",
    }
    if run_config is not None:
        doc["run_config"] = run_config
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def checkpoint_from_json(text: str) -> Model:
    doc = json.loads(text)
    if doc.get("format") != CHECKPOINT_FORMAT:
        raise ValidationError(f"not a {CHECKPOINT_FORMAT} document")
    spec = ModelSpec(
        _arch_from_dict(doc["spec"]["arch"], doc["spec"]["config"]),
        doc["spec"]["input_dim"],
    )
    params = ModelParams(
        Parameter(entry["name"], _decode_array(entry["data"], entry["shape"]))
        for entry in doc["parameters"]
    )
    scale = (doc["target_scale"]["mean"], doc["target_scale"]["std"])
    return Model(spec, params, dropout_rate=doc.get("dropout_rate", 0.0),
                 target_scale=scale)


def save_checkpoint(model: Model, path, run_config: dict | None = None) -> None:
    Path(path).write_text(checkpoint_to_json(model, run_config))


def load_checkpoint(path) -> Model:
    return checkpoint_from_json(Path(path).read_text())
