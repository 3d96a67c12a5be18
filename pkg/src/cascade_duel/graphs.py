"""Undirected, unweighted graphs: loading, generation, BFS leveling, statistics.

Node ids are remapped to contiguous 0..n-1 on construction; the original
labels are kept so results can be reported in the ids of the source file.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph


class EdgeListParseError(ValueError):
    """A line of an edge-list file could not be parsed."""

    def __init__(self, path, line_number: int, line: str, reason: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {reason}: {line.strip()!r}")


class EmptyGraphError(ValueError):
    """The input contained no usable edges or nodes."""


class Graph:
    """Immutable simple undirected graph with contiguous integer node ids.

    No self-loops, no duplicate edges; adjacency is symmetric by
    construction. Instances are safe to share across threads.
    """

    __slots__ = ("n", "_adj", "_edges", "_orig_ids", "_orig_to_internal",
                 "_degrees", "_csr", "_adj_sets")

    def __init__(self, n: int, edges: list[tuple[int, int]],
                 orig_ids: list[int] | None = None):
        if n <= 0:
            raise EmptyGraphError("graph has no nodes")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        clean = []
        for u, v in edges:
            if u == v:
                continue
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside node range 0..{n - 1}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                continue
            seen.add((u, v))
            clean.append((u, v))
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self._edges = sorted(clean)
        self._adj = [sorted(nbrs) for nbrs in adj]
        self._orig_ids = list(orig_ids) if orig_ids is not None else list(range(n))
        if len(self._orig_ids) != n:
            raise ValueError("orig_ids length does not match node count")
        self._orig_to_internal = {o: i for i, o in enumerate(self._orig_ids)}
        self._degrees = None
        self._csr = None
        self._adj_sets = None
        assert int(sum(len(a) for a in self._adj)) == 2 * len(self._edges)

    @classmethod
    def from_edges(cls, pairs, symmetrize: bool = True) -> "Graph":
        """Build a graph from (u, v) pairs with arbitrary integer labels.

        Labels are remapped to 0..n-1 in sorted order. Self-loops and
        duplicate edges (including reversed duplicates) are dropped; the
        `symmetrize` flag documents that directed input is folded into
        undirected edges, which is the only representation kept.
        """
        pairs = list(pairs)
        labels = sorted({x for uv in pairs for x in uv})
        if not labels:
            raise EmptyGraphError("no nodes in input")
        index = {o: i for i, o in enumerate(labels)}
        edges = [(index[u], index[v]) for u, v in pairs]
        return cls(len(labels), edges, orig_ids=labels)

    # -- basic accessors ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(self._edges)

    def neighbors(self, i: int) -> list[int]:
        return self._adj[i]

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            self._degrees = np.array([len(a) for a in self._adj], dtype=np.int64)
        return self._degrees

    @property
    def avg_degree(self) -> float:
        return 2.0 * self.num_edges / self.n

    def original_id(self, i: int) -> int:
        return self._orig_ids[i]

    def internal_id(self, original: int) -> int:
        return self._orig_to_internal[original]

    @property
    def adjacency_sets(self) -> list[set[int]]:
        if self._adj_sets is None:
            self._adj_sets = [set(a) for a in self._adj]
        return self._adj_sets

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets[u]

    def to_csr(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency in CSR form (cached)."""
        if self._csr is None:
            if self._edges:
                e = np.array(self._edges, dtype=np.int64)
                rows = np.concatenate([e[:, 0], e[:, 1]])
                cols = np.concatenate([e[:, 1], e[:, 0]])
                data = np.ones(rows.shape[0], dtype=np.int64)
            else:
                rows = cols = np.empty(0, dtype=np.int64)
                data = np.empty(0, dtype=np.int64)
            self._csr = sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._csr

    def export_edgelist(self, path) -> None:
        """Write edges as `u v` lines in original ids (SNAP-compatible)."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# nodes {self.n} edges {self.num_edges}\n")
            for u, v in self._edges:
                fh.write(f"{self._orig_ids[u]} {self._orig_ids[v]}\n")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges})"


@dataclass(frozen=True)
class GraphStats:
    nodes: int
    edges: int
    avg_degree: float
    avg_clustering: float
    triangles: int
    diameter: int


@dataclass
class LevelAssignment:
    """BFS hop levels from a root, ignoring a removed node set.

    `level_of[v]` is -1 for unreachable (or removed) nodes. `levels[d]`
    lists the nodes at hop distance d, sorted.
    """

    root: int
    level_of: np.ndarray
    levels: list[list[int]] = field(default_factory=list)

    def level(self, v: int) -> int | None:
        d = int(self.level_of[v])
        return None if d < 0 else d

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def reachable(self) -> list[int]:
        return [v for lev in self.levels for v in lev]


def load_edgelist(path, symmetrize: bool = True) -> Graph:
    """Parse a SNAP-style edge list: `#` comments, two integers per line."""
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise EdgeListParseError(path, lineno, line,
                                         "expected two whitespace-separated fields")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError(path, lineno, line,
                                         "non-integer node id") from None
            if u < 0 or v < 0:
                raise EdgeListParseError(path, lineno, line, "negative node id")
            pairs.append((u, v))
    if not pairs:
        raise EmptyGraphError(f"{path}: no edges found")
    return Graph.from_edges(pairs, symmetrize=symmetrize)


def bfs_levels(g: Graph, root: int, removed=frozenset()) -> LevelAssignment:
    """Hop levels from `root` in the graph with `removed` nodes deleted."""
    if not (0 <= root < g.n):
        raise ValueError(f"root {root} is not a valid node id")
    removed = frozenset(removed)
    if root in removed:
        raise ValueError(f"root {root} is in the removed set")
    level_of = np.full(g.n, -1, dtype=np.int64)
    level_of[root] = 0
    levels = [[root]]
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if level_of[w] < 0 and w not in removed:
                    level_of[w] = len(levels)
                    nxt.append(w)
        if nxt:
            levels.append(sorted(nxt))
        frontier = nxt
    return LevelAssignment(root=root, level_of=level_of, levels=levels)


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted node lists, largest first."""
    ncomp, labels = csgraph.connected_components(g.to_csr(), directed=False)
    comps: list[list[int]] = [[] for _ in range(ncomp)]
    for v, c in enumerate(labels):
        comps[c].append(v)
    return sorted(comps, key=len, reverse=True)


def triangles_per_node(g: Graph) -> np.ndarray:
    """Number of triangles through each node."""
    a = g.to_csr()
    # (A @ A) .* A counts, per node, twice the triangles through it.
    paths2 = (a @ a).multiply(a)
    return np.asarray(paths2.sum(axis=1)).ravel() / 2.0


def local_clustering(g: Graph) -> np.ndarray:
    """Per-node clustering coefficients (0 for nodes of degree < 2)."""
    deg = g.degrees.astype(np.float64)
    possible = deg * (deg - 1) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(possible > 0, triangles_per_node(g) / possible, 0.0)


def compute_stats(g: Graph) -> GraphStats:
    """Triangle count, average local clustering, and exact diameter.

    The diameter is taken over the largest connected component via
    all-sources BFS; clustering follows the convention that nodes of
    degree < 2 contribute 0.
    """
    a = g.to_csr()
    tri_per_node = triangles_per_node(g)
    triangles = int(round(tri_per_node.sum() / 3.0))
    avg_clustering = float(local_clustering(g).mean())

    comp = connected_components(g)[0]
    if len(comp) == g.n:
        sub = a
    else:
        sub = a[np.ix_(np.array(comp), np.array(comp))].tocsr()
    diameter = 0
    chunk = 512
    for start in range(0, len(comp), chunk):
        idx = np.arange(start, min(start + chunk, len(comp)))
        dist = csgraph.shortest_path(sub, method="D", unweighted=True,
                                     directed=False, indices=idx)
        finite = dist[np.isfinite(dist)]
        if finite.size:
            diameter = max(diameter, int(finite.max()))
    return GraphStats(nodes=g.n, edges=g.num_edges, avg_degree=g.avg_degree,
                      avg_clustering=avg_clustering, triangles=triangles,
                      diameter=diameter)


def gen_er(n: int, avg_degree: float, rng_seed: int) -> Graph:
    """G(n, p) with p chosen so the expected average degree hits the target."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not (0 < avg_degree <= n - 1):
        raise ValueError(f"avg_degree must lie in (0, {n - 1}]")
    p = avg_degree / (n - 1)
    rng = np.random.default_rng(rng_seed)
    edges = []
    for u in range(n - 1):
        draws = rng.random(n - 1 - u)
        hits = np.nonzero(draws < p)[0]
        edges.extend((u, u + 1 + int(k)) for k in hits)
    return Graph(n, edges)


def gen_regular(n: int, degree: int, rng_seed: int) -> Graph:
    """Random simple regular graph via stub pairing with retry."""
    if degree >= n:
        raise ValueError("degree must be smaller than n")
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if (n * degree) % 2 != 0:
        raise ValueError(f"n*degree must be even, got n={n} degree={degree}")
    rng = np.random.default_rng(rng_seed)
    if degree == 0:
        return Graph(n, [])

    def suitable(edges, counts):
        if not counts:
            return True
        nodes = sorted(counts)
        for i, s1 in enumerate(nodes):
            for s2 in nodes[i + 1:]:
                if (s1, s2) not in edges:
                    return True
        return False

    def attempt():
        edges: set[tuple[int, int]] = set()
        stubs = list(range(n)) * degree
        while stubs:
            counts: dict[int, int] = {}
            rng.shuffle(stubs)
            it = iter(stubs)
            for s1, s2 in zip(it, it):
                if s1 > s2:
                    s1, s2 = s2, s1
                if s1 != s2 and (s1, s2) not in edges:
                    edges.add((s1, s2))
                else:
                    counts[s1] = counts.get(s1, 0) + 1
                    counts[s2] = counts.get(s2, 0) + 1
            if not suitable(edges, counts):
                return None
            stubs = [v for v, c in counts.items() for _ in range(c)]
        return edges

    edges = attempt()
    while edges is None:
        edges = attempt()
    return Graph(n, sorted(edges))


def spanning_tree(g: Graph, rng_seed: int) -> Graph:
    """BFS spanning tree from a uniformly random root.

    Disconnected inputs are restricted to the largest component (with a
    warning); the returned graph keeps the original node labels.
    """
    comps = connected_components(g)
    comp = comps[0]
    if len(comps) > 1:
        warnings.warn(
            f"graph is disconnected; spanning tree restricted to largest "
            f"component ({len(comp)} of {g.n} nodes)", stacklevel=2)
    rng = np.random.default_rng(rng_seed)
    root = comp[int(rng.integers(len(comp)))]
    la = bfs_levels(g, root)
    in_tree = [False] * g.n
    for v in comp:
        in_tree[v] = True
    remap = {v: i for i, v in enumerate(comp)}
    tree_edges = []
    for d in range(1, len(la.levels)):
        for v in la.levels[d]:
            for w in g.neighbors(v):
                if la.level_of[w] == d - 1:
                    tree_edges.append((remap[w], remap[v]))
                    break
    orig = [g.original_id(v) for v in comp]
    return Graph(len(comp), tree_edges, orig_ids=orig)
