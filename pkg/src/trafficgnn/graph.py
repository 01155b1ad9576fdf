"""Road-network graphs: adjacency construction, normalization, neighbor access.

Nodes are locations, undirected edges are road connections. All structures
are immutable after construction. The graph file format is JSON:

    {"num_nodes": <int>, "edges": [[u, v], ...], "node_ids": ["..."] | absent}

with 0-based integer endpoints, no self-loops, and no duplicate undirected
edges.
"""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .linalg import Matrix, as_matrix
from .rng import Rng


@dataclass(frozen=True)
class RoadGraph:
    num_nodes: int
    edges: tuple[tuple[int, int], ...]
    node_ids: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.num_nodes < 1:
            raise ValidationError(f"num_nodes must be >= 1, got {self.num_nodes}")
        object.__setattr__(
            self, "edges", tuple((int(u), int(v)) for u, v in self.edges)
        )
        seen: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if not (0 <= u < self.num_nodes) or not (0 <= v < self.num_nodes):
                raise ValidationError(
                    f"edge ({u}, {v}) has an endpoint outside [0, {self.num_nodes})"
                )
            if u == v:
                raise ValidationError(f"self-loop ({u}, {v}) not allowed")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError(f"duplicate undirected edge ({u}, {v})")
            seen.add(key)
        if self.node_ids is not None:
            object.__setattr__(self, "node_ids", tuple(str(s) for s in self.node_ids))
            if len(self.node_ids) != self.num_nodes:
                raise ValidationError(
                    f"node_ids has {len(self.node_ids)} entries for "
                    f"{self.num_nodes} nodes"
                )


@dataclass(frozen=True)
class NormalizedAdjacency:
    """Symmetric renormalized propagation operator with implicit self-loops."""

    matrix: Matrix


@dataclass(frozen=True)
class NeighborTable:
    """Per-node sorted neighbor lists."""

    neighbors: tuple[tuple[int, ...], ...]

    @classmethod
    def from_graph(cls, g: RoadGraph) -> "NeighborTable":
        lists: list[set[int]] = [set() for _ in range(g.num_nodes)]
        for u, v in g.edges:
            lists[u].add(v)
            lists[v].add(u)
        return cls(tuple(tuple(sorted(s)) for s in lists))

    @property
    def num_nodes(self) -> int:
        return len(self.neighbors)

    def degree(self, node: int) -> int:
        return len(self.neighbors[node])


def build_adjacency(g: RoadGraph) -> Matrix:
    """Binary symmetric adjacency with zero diagonal."""
    a = np.zeros((g.num_nodes, g.num_nodes))
    for u, v in g.edges:
        a[u, v] = 1.0
        a[v, u] = 1.0
    return a


def symmetric_normalize(a) -> NormalizedAdjacency:
    """D^(-1/2) (A + I) D^(-1/2) where D is the degree matrix of A + I."""
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValidationError(f"adjacency must be square, got {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValidationError("adjacency must be symmetric")
    if not np.all((a == 0.0) | (a == 1.0)):
        raise ValidationError("adjacency must be binary")
    if np.any(np.diag(a) != 0.0):
        raise ValidationError("adjacency must have a zero diagonal")
    a_hat = a + np.eye(n)
    d_inv_sqrt = 1.0 / np.sqrt(a_hat.sum(axis=1))
    return NormalizedAdjacency(d_inv_sqrt[:, None] * a_hat * d_inv_sqrt[None, :])


def sample_neighbors(table: NeighborTable, node: int, fanout: int, rng: Rng) -> list[int]:
    """All neighbors when degree <= fanout, else a uniform sample without
    replacement of size fanout. Consumes no rng draws in the first case."""
    if not (0 <= node < table.num_nodes):
        raise IndexError(f"node {node} out of range [0, {table.num_nodes})")
    if fanout < 1:
        raise ValidationError(f"fanout must be >= 1, got {fanout}")
    nbrs = table.neighbors[node]
    if len(nbrs) <= fanout:
        return list(nbrs)
    return rng.sample_without_replacement(nbrs, fanout)


def permute_graph(g: RoadGraph, perm) -> RoadGraph:
    """Relabel node v as perm[v]."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(g.num_nodes)):
        raise ValidationError("perm is not a bijection on node indices")
    edges = tuple((perm[u], perm[v]) for u, v in g.edges)
    node_ids = None
    if g.node_ids is not None:
        ids = [""] * g.num_nodes
        for v, label in enumerate(g.node_ids):
            ids[perm[v]] = label
        node_ids = tuple(ids)
    return RoadGraph(g.num_nodes, edges, node_ids)


def permutation_matrix(perm) -> Matrix:
    """P with P[perm[j], j] = 1, so relabeled adjacency = P A P^T."""
    n = len(perm)
    p = np.zeros((n, n))
    for j, i in enumerate(perm):
        p[i, j] = 1.0
    return p


def graph_to_json(g: RoadGraph) -> str:
    doc: dict = {"num_nodes": g.num_nodes, "edges": [[u, v] for u, v in g.edges]}
    if g.node_ids is not None:
        doc["node_ids"] = list(g.node_ids)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def graph_from_json(text: str) -> RoadGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"graph JSON is malformed: {e}") from e
    if not isinstance(doc, dict) or "num_nodes" not in doc or "edges" not in doc:
        raise ValidationError("graph JSON must have 'num_nodes' and 'edges' fields")
    num_nodes = doc["num_nodes"]
    if not isinstance(num_nodes, int):
        raise ValidationError(f"num_nodes must be an integer, got {num_nodes!r}")
    edges = []
    for e in doc["edges"]:
        if not isinstance(e, list) or len(e) != 2:
            raise ValidationError(f"edge entries must be [u, v] pairs, got {e!r}")
        edges.append((e[0], e[1]))
    return RoadGraph(num_nodes, tuple(edges), doc.get("node_ids"))


def write_graph_json(g: RoadGraph, path) -> None:
    Path(path).write_text(graph_to_json(g))


def read_graph_json(path) -> RoadGraph:
    return graph_from_json(Path(path).read_text())
