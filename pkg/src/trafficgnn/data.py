"""Traffic datasets: synthetic generation, file ingestion, windowing, splits.

A dataset is a static road graph plus per-node time series of three channels
(density, speed, occupancy) and a per-node target series (density). The same
two-file layout is used for generated and user-supplied data:

  graph JSON      see graph module
  features CSV    header ``t,node,density,speed,occupancy``; `t` and `node`
                  are 0-based integers, one row per (t, node) pair, any row
                  order. Floats are written with repr so reloading is
                  bit-exact.

The synthetic generator evolves a latent density field by neighbor-mean
diffusion plus a per-node-phased daily sinusoid, and emits noisy observations
of it:

    latent_{t+1} = (1 - alpha) * latent_t + alpha * nbr_mean(latent_t)
                   + amplitude * sin(2*pi*t/period + phase_v),  clipped at 0

    density   = max(latent + eps, 0)            eps   ~ N(0, noise_std)
    speed     = max(s_max*(1 - latent/d_max) + eps_s, 0)
    occupancy = clip(latent/d_max + eps_o, 0, 1)

Noise perturbs the observations, not the recurrence, so total latent density
is conserved by pure diffusion and a no-dynamics configuration stays constant
over time.
"""

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .graph import RoadGraph, build_adjacency, graph_to_json, read_graph_json, write_graph_json
from .linalg import Matrix
from .rng import Rng

CHANNELS = ("density", "speed", "occupancy")
CSV_HEADER = ("t", "node") + CHANNELS

# observation model scales
DENSITY_MAX = 100.0
SPEED_MAX = 60.0
DENSITY_INIT_RANGE = (30.0, 70.0)


@dataclass
class TrafficDataset:
    graph: RoadGraph
    features: np.ndarray  # (T, N, F)
    targets: np.ndarray  # (T, N)
    channel_names: tuple[str, ...] = CHANNELS

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.targets = np.asarray(self.targets, dtype=np.float64)
        t, n, f = self.features.shape
        if t < 2:
            raise ValidationError(f"need at least 2 timesteps, got {t}")
        if n != self.graph.num_nodes:
            raise ValidationError(
                f"features cover {n} nodes but the graph has {self.graph.num_nodes}"
            )
        if self.targets.shape != (t, n):
            raise ValidationError(
                f"targets shape {self.targets.shape} != ({t}, {n})"
            )
        if len(self.channel_names) != f:
            raise ValidationError(
                f"{len(self.channel_names)} channel names for {f} channels"
            )
        if not np.all(np.isfinite(self.features)) or not np.all(np.isfinite(self.targets)):
            raise ValidationError("features and targets must be finite")
        if np.any(self.targets < 0.0):
            raise ValidationError("targets (densities) must be nonnegative")

    @property
    def num_timesteps(self) -> int:
        return self.features.shape[0]

    @property
    def num_channels(self) -> int:
        return self.features.shape[2]


@dataclass(frozen=True)
class WindowedSample:
    """input[v, w*F + c] = channel c of node v at (window start + w);
    target = density one step past the window."""

    input: Matrix  # (N, W*F)
    target: Matrix  # (N, 1)


@dataclass(frozen=True)
class SplitSpec:
    train_frac: float = 0.70
    val_frac: float = 0.15
    test_frac: float = 0.15

    def __post_init__(self):
        total = self.train_frac + self.val_frac + self.test_frac
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"split fractions sum to {total}, need 1.0")
        if min(self.train_frac, self.val_frac, self.test_frac) <= 0.0:
            raise ValidationError("every split fraction must be positive")


@dataclass(frozen=True)
class SyntheticConfig:
    num_nodes: int
    num_timesteps: int
    topology: str = "grid"  # "grid" | "random_geometric"
    diffusion_rate: float = 0.3
    daily_period: int = 24
    daily_amplitude: float = 3.0
    noise_std: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.num_nodes < 1:
            raise ValidationError(f"num_nodes must be >= 1, got {self.num_nodes}")
        if self.num_timesteps < 2:
            raise ValidationError(f"num_timesteps must be >= 2, got {self.num_timesteps}")
        if self.topology not in ("grid", "random_geometric"):
            raise ValidationError(f"unknown topology {self.topology!r}")
        if not (0.0 <= self.diffusion_rate < 1.0):
            raise ValidationError(
                f"diffusion_rate must be in [0, 1), got {self.diffusion_rate}"
            )
        if self.daily_period < 2:
            raise ValidationError(f"daily_period must be >= 2, got {self.daily_period}")
        if self.daily_amplitude < 0.0:
            raise ValidationError(f"daily_amplitude must be >= 0, got {self.daily_amplitude}")
        if self.noise_std < 0.0:
            raise ValidationError(f"noise_std must be >= 0, got {self.noise_std}")


# ---------------------------------------------------------------------------
# synthetic generation


def grid_graph(num_nodes: int) -> RoadGraph:
    """rows x cols lattice with rows the largest divisor <= sqrt(N)."""
    rows = 1
    for r in range(1, int(math.isqrt(num_nodes)) + 1):
        if num_nodes % r == 0:
            rows = r
    cols = num_nodes // rows
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return RoadGraph(num_nodes, tuple(edges))


def random_geometric_graph(num_nodes: int, rng: Rng) -> RoadGraph:
    """Uniform points in the unit square, edges below the connectivity radius
    sqrt(2 ln N / (pi N))."""
    pts = rng.random_matrix(num_nodes, 2)
    radius = math.sqrt(2.0 * math.log(max(num_nodes, 2)) / (math.pi * num_nodes))
    edges = []
    for u in range(num_nodes):
        for v in range(u + 1, num_nodes):
            if np.hypot(*(pts[u] - pts[v])) < radius:
                edges.append((u, v))
    return RoadGraph(num_nodes, tuple(edges))


def neighbor_mean_operator(graph: RoadGraph) -> Matrix:
    """Row-stochastic neighbor averaging; isolated nodes keep their own value."""
    a = build_adjacency(graph)
    deg = a.sum(axis=1)
    op = np.zeros_like(a)
    for v in range(graph.num_nodes):
        if deg[v] > 0:
            op[v] = a[v] / deg[v]
        else:
            op[v, v] = 1.0
    return op


def diffusion_step(nbr_mean_op: Matrix, density: np.ndarray, alpha: float,
                   forcing: np.ndarray | float = 0.0) -> np.ndarray:
    """One latent update: blend toward the neighbor mean, add forcing, clip at 0."""
    nxt = (1.0 - alpha) * density + alpha * (nbr_mean_op @ density) + forcing
    return np.maximum(nxt, 0.0)


def generate_synthetic(cfg: SyntheticConfig) -> TrafficDataset:
    """Deterministic given cfg.seed; the draw order is topology, phases,
    initial density, then the three observation-noise blocks."""
    rng = Rng(cfg.seed)
    if cfg.topology == "grid":
        graph = grid_graph(cfg.num_nodes)
    else:
        graph = random_geometric_graph(cfg.num_nodes, rng)

    n, t_total = cfg.num_nodes, cfg.num_timesteps
    phases = rng.uniform_matrix(1, n, 0.0, 2.0 * math.pi)[0]
    latent = np.empty((t_total, n))
    latent[0] = rng.uniform_matrix(1, n, *DENSITY_INIT_RANGE)[0]
    op = neighbor_mean_operator(graph)
    for t in range(t_total - 1):
        forcing = cfg.daily_amplitude * np.sin(
            2.0 * math.pi * t / cfg.daily_period + phases
        )
        latent[t + 1] = diffusion_step(op, latent[t], cfg.diffusion_rate, forcing)

    density = np.maximum(latent + rng.normal_matrix(t_total, n, cfg.noise_std), 0.0)
    speed = np.maximum(
        SPEED_MAX * (1.0 - latent / DENSITY_MAX)
        + rng.normal_matrix(t_total, n, cfg.noise_std),
        0.0,
    )
    occupancy = np.clip(
        latent / DENSITY_MAX + rng.normal_matrix(t_total, n, cfg.noise_std / DENSITY_MAX),
        0.0,
        1.0,
    )
    features = np.stack([density, speed, occupancy], axis=2)
    return TrafficDataset(graph, features, density.copy())


# ---------------------------------------------------------------------------
# file I/O


def features_to_csv(ds: TrafficDataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    t_total, n, _ = ds.features.shape
    for t in range(t_total):
        for v in range(n):
            writer.writerow(
                [t, v] + [repr(float(x)) for x in ds.features[t, v]]
            )
    return buf.getvalue()


def write_dataset(ds: TrafficDataset, graph_path, features_path) -> None:
    write_graph_json(ds.graph, graph_path)
    Path(features_path).write_text(features_to_csv(ds))


def dataset_fingerprint_bytes(ds: TrafficDataset) -> bytes:
    """Canonical byte serialization used for content hashing."""
    return graph_to_json(ds.graph).encode() + b"\n" + features_to_csv(ds).encode()


def load_dataset(graph_path, features_path) -> TrafficDataset:
    """Rows may arrive in any order; every (t, node) cell must be present
    exactly once."""
    graph = read_graph_json(graph_path)
    text = Path(features_path).read_text()
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError(f"{features_path}: empty features file") from None
    if tuple(header) != CSV_HEADER:
        raise ValidationError(
            f"{features_path}: header {header!r} != {list(CSV_HEADER)!r}"
        )
    rows: dict[tuple[int, int], tuple[float, float, float]] = {}
    n = graph.num_nodes
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 5:
            raise ValidationError(f"{features_path}:{lineno}: expected 5 fields, got {len(row)}")
        try:
            t, v = int(row[0]), int(row[1])
            vals = tuple(float(x) for x in row[2:])
        except ValueError as e:
            raise ValidationError(f"{features_path}:{lineno}: {e}") from None
        if t < 0 or not (0 <= v < n):
            raise ValidationError(
                f"{features_path}:{lineno}: (t={t}, node={v}) out of range for {n} nodes"
            )
        if not all(math.isfinite(x) for x in vals):
            raise ValidationError(f"{features_path}:{lineno}: non-finite value")
        if vals[0] < 0.0:
            raise ValidationError(
                f"{features_path}:{lineno}: negative density {vals[0]} at (t={t}, node={v})"
            )
        if (t, v) in rows:
            raise ValidationError(
                f"{features_path}:{lineno}: duplicate row for (t={t}, node={v})"
            )
        rows[(t, v)] = vals
    if not rows:
        raise ValidationError(f"{features_path}: no data rows")
    t_total = max(t for t, _ in rows) + 1
    features = np.empty((t_total, n, len(CHANNELS)))
    for t in range(t_total):
        for v in range(n):
            if (t, v) not in rows:
                raise ValidationError(f"missing row for (t={t}, node={v})")
            features[t, v] = rows[(t, v)]
    return TrafficDataset(graph, features, features[:, :, 0].copy())


# ---------------------------------------------------------------------------
# windowing and splits


def make_windows(ds: TrafficDataset, window: int) -> list[WindowedSample]:
    """Sample k covers timesteps [k, k+window) and targets k+window;
    exactly T - window samples."""
    t_total = ds.num_timesteps
    if not (1 <= window < t_total):
        raise ValidationError(
            f"window must be in [1, {t_total}), got {window}"
        )
    samples = []
    n = ds.graph.num_nodes
    for k in range(t_total - window):
        block = ds.features[k:k + window]  # (W, N, F)
        x = block.transpose(1, 0, 2).reshape(n, -1).copy()
        y = ds.targets[k + window].reshape(n, 1).copy()
        samples.append(WindowedSample(x, y))
    return samples


def split(samples: list[WindowedSample], spec: SplitSpec = SplitSpec()):
    """Chronological, contiguous, non-overlapping:
    floor(train*M) / floor(val*M) / remainder."""
    m = len(samples)
    n_train = math.floor(spec.train_frac * m)
    n_val = math.floor(spec.val_frac * m)
    n_test = m - n_train - n_val
    if min(n_train, n_val, n_test) < 1:
        raise ValidationError(
            f"{m} samples split into {n_train}/{n_val}/{n_test}; "
            "every split must be non-empty"
        )
    return (
        samples[:n_train],
        samples[n_train:n_train + n_val],
        samples[n_train + n_val:],
    )


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class Normalizer:
    """Train-split z-score statistics; channels with (numerically) zero
    variance keep divisor 1. Targets are not transformed by apply(); their
    statistics are carried for the training protocol's use."""

    channel_mean: np.ndarray  # (F,)
    channel_div: np.ndarray  # (F,)
    target_mean: float
    target_std: float
    num_channels: int = field(default=0)

    @property
    def target_scale(self) -> tuple[float, float]:
        return (self.target_mean, self.target_std)


def _safe_div(std: np.ndarray | float, ref: np.ndarray | float):
    tiny = 1e-12 * np.maximum(1.0, np.abs(ref))
    return np.where(std <= tiny, 1.0, std)


def fit_normalizer(train_samples: list[WindowedSample], num_channels: int) -> Normalizer:
    if not train_samples:
        raise ValidationError("cannot fit a normalizer on an empty train split")
    stacked = np.vstack([s.input for s in train_samples])  # (S*N, W*F)
    per_channel = stacked.reshape(-1, num_channels)
    mean = per_channel.mean(axis=0)
    div = _safe_div(per_channel.std(axis=0), mean)
    targets = np.concatenate([s.target.ravel() for s in train_samples])
    t_mean = float(targets.mean())
    t_std = float(_safe_div(targets.std(), t_mean))
    return Normalizer(mean, div, t_mean, t_std, num_channels)


def apply_normalizer(norm: Normalizer, samples: list[WindowedSample]) -> list[WindowedSample]:
    if not samples:
        return []
    width = samples[0].input.shape[1]
    reps = width // norm.num_channels
    mean = np.tile(norm.channel_mean, reps)
    div = np.tile(norm.channel_div, reps)
    return [
        WindowedSample((s.input - mean) / div, s.target) for s in samples
    ]
