"""Undirected graphs, hop distances, Jordan centers, and network generators.

All distances are hop counts.  Graphs are simple (no self-loops, no parallel
edges) and immutable once built, so they can be shared freely across workers.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

log = logging.getLogger(__name__)

#: Distance value reported for nodes that cannot be reached.
UNREACHABLE = -1


class Network:
    """Simple undirected graph over dense node ids ``0..node_count-1``.

    Adjacency lists are kept sorted so every traversal that walks neighbors
    in list order is deterministic.
    """

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]],
                 labels: Optional[Sequence[int]] = None):
        if node_count < 1:
            raise ValueError("network needs at least one node")
        adj: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u},{v}) outside node range 0..{node_count - 1}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.node_count = node_count
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in adj)
        self.labels = tuple(labels) if labels is not None else None
        self._csr = None
        self._is_tree: Optional[bool] = None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self):
        """Yield each edge once as (u, v) with u < v."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def check_node(self, v: int) -> None:
        if not isinstance(v, (int, np.integer)) or not (0 <= v < self.node_count):
            raise ValueError(f"invalid node id {v!r}")

    def csr(self) -> csr_matrix:
        """CSR adjacency matrix, built lazily and cached."""
        if self._csr is None:
            rows, cols = [], []
            for u, nbrs in enumerate(self.adjacency):
                rows.extend([u] * len(nbrs))
                cols.extend(nbrs)
            data = np.ones(len(rows), dtype=np.int8)
            self._csr = csr_matrix((data, (rows, cols)),
                                   shape=(self.node_count, self.node_count))
        return self._csr

    def is_tree(self) -> bool:
        """True when the graph is connected with exactly n-1 edges."""
        if self._is_tree is None:
            if self.edge_count != self.node_count - 1:
                self._is_tree = False
            else:
                dist = bfs_distances(self, 0)
                self._is_tree = all(d != UNREACHABLE for d in dist)
        return self._is_tree

    def __repr__(self):
        return f"Network(n={self.node_count}, m={self.edge_count})"


@dataclass(eq=False)
class TreeView:
    """Rooted spanning tree of a :class:`Network`.

    ``parent[root] == -1``; nodes not reachable from the root carry
    ``parent == -1`` and ``depth == -1``.  ``order`` lists reachable nodes
    in BFS order (root first), which doubles as a topological order.
    """

    net: Network
    root: int
    parent: list[int]
    depth: list[int]
    order: list[int]
    _children: Optional[list[list[int]]] = field(default=None, repr=False)
    _count_cache: dict = field(default_factory=dict, repr=False)

    @property
    def node_count(self) -> int:
        return self.net.node_count

    def children(self) -> list[list[int]]:
        if self._children is None:
            ch: list[list[int]] = [[] for _ in range(self.node_count)]
            for v in self.order:
                p = self.parent[v]
                if p >= 0:
                    ch[p].append(v)
            for lst in ch:
                lst.sort()
            self._children = ch
        return self._children

    def contains(self, v: int) -> bool:
        return 0 <= v < self.node_count and (v == self.root or self.parent[v] >= 0)

    def edges(self):
        """Yield tree edges as (parent, child)."""
        for v in self.order:
            p = self.parent[v]
            if p >= 0:
                yield (p, v)

    def height(self) -> int:
        return max(self.depth[v] for v in self.order)

    def path_to_root(self, v: int) -> list[int]:
        if not self.contains(v):
            raise ValueError(f"node {v} is not part of the tree")
        path = [v]
        while self.parent[path[-1]] >= 0:
            path.append(self.parent[path[-1]])
        return path


def bfs_distances(net: Network, src: int) -> list[int]:
    """Hop distance from ``src`` to every node (UNREACHABLE where disconnected)."""
    net.check_node(src)
    dist = [UNREACHABLE] * net.node_count
    dist[src] = 0
    queue = deque([src])
    adj = net.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = du
                queue.append(v)
    return dist


def eccentricity(net: Network, v: int, targets: Iterable[int]) -> int:
    """Largest hop distance from ``v`` to any node in ``targets``."""
    targets = list(targets)
    if not targets:
        raise ValueError("empty target set")
    dist = bfs_distances(net, v)
    worst = 0
    for t in targets:
        net.check_node(t)
        if dist[t] == UNREACHABLE:
            raise ValueError(f"target {t} unreachable from {v}")
        if dist[t] > worst:
            worst = dist[t]
    return worst


def _jordan_centers_tree(net: Network, infected: list[int]) -> set[int]:
    # On a tree the minimisers of the eccentricity w.r.t. a node set are the
    # middle node(s) of any longest path between two set members.
    start = infected[0]
    dist = bfs_distances(net, start)
    a = max(infected, key=lambda v: (dist[v], -v))
    parent = [UNREACHABLE] * net.node_count
    dist_a = [UNREACHABLE] * net.node_count
    dist_a[a] = 0
    queue = deque([a])
    adj = net.adjacency
    while queue:
        u = queue.popleft()
        du = dist_a[u] + 1
        for w in adj[u]:
            if dist_a[w] == UNREACHABLE:
                dist_a[w] = du
                parent[w] = u
                queue.append(w)
    b = max(infected, key=lambda v: (dist_a[v], -v))
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    diameter = len(path) - 1
    centers = {path[diameter // 2]}
    if diameter % 2 == 1:
        centers.add(path[(diameter + 1) // 2])
    return centers


def multi_source_distances(net: Network, sources: Sequence[int]) -> np.ndarray:
    """Distance matrix of shape (len(sources), n); np.inf where unreachable."""
    if net.node_count == 1:
        return np.zeros((len(sources), 1))
    return dijkstra(net.csr(), directed=False, unweighted=True,
                    indices=list(sources))


def jordan_centers(net: Network, infected: Iterable[int]) -> set[int]:
    """Nodes of minimum eccentricity with respect to the infected set.

    Scans every node of the graph, so ties are returned in full.  Raises if
    the infected set is empty or not mutually reachable.
    """
    infected = sorted(set(infected))
    if not infected:
        raise ValueError("empty infected set")
    for v in infected:
        net.check_node(v)
    if len(infected) == 1:
        return {infected[0]}
    if net.is_tree():
        return _jordan_centers_tree(net, infected)
    dist = multi_source_distances(net, infected)
    if np.isinf(dist[:, infected]).any():
        raise ValueError("infected nodes are not mutually reachable")
    ecc = dist.max(axis=0)
    best = ecc.min()
    return {int(v) for v in np.flatnonzero(ecc == best)}


def pick_jordan_center(centers: Iterable[int], seed: int) -> int:
    """Seeded uniform choice out of a center tie set."""
    centers = sorted(centers)
    if not centers:
        raise ValueError("empty center set")
    return random.Random(seed).choice(centers)


def bfs_spanning_tree(net: Network, root: int) -> TreeView:
    """BFS tree from ``root``; neighbors explored in ascending id order."""
    net.check_node(root)
    parent = [UNREACHABLE] * net.node_count
    depth = [UNREACHABLE] * net.node_count
    depth[root] = 0
    order = [root]
    queue = deque([root])
    adj = net.adjacency
    while queue:
        u = queue.popleft()
        du = depth[u] + 1
        for v in adj[u]:
            if depth[v] == UNREACHABLE:
                depth[v] = du
                parent[v] = u
                order.append(v)
                queue.append(v)
    return TreeView(net=net, root=root, parent=parent, depth=depth, order=order)


def generate_random_tree(n: int, degrees: Iterable[int], seed: int) -> Network:
    """Random tree grown from a root so node degrees follow ``degrees`` uniformly.

    The root draws its child count straight from the degree set; every other
    node draws a degree and keeps degree-1 children (one slot is taken by its
    parent).  Growth is breadth-first and stops once ``n`` nodes exist, which
    truncates the frontier generation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    degs = sorted(set(int(d) for d in degrees))
    if not degs or degs[0] < 1:
        raise ValueError("degrees must be positive integers")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    count = 1
    queue = deque([0])
    first = True
    while queue and count < n:
        u = queue.popleft()
        want = rng.choice(degs) if first else rng.choice(degs) - 1
        first = False
        for _ in range(want):
            if count >= n:
                break
            edges.append((u, count))
            queue.append(count)
            count += 1
    return Network(n, edges)


def generate_scale_free(n: int, m: int, seed: int) -> Network:
    """Preferential-attachment graph: each new node attaches to ``m`` existing."""
    if not (n > m >= 1):
        raise ValueError("need n > m >= 1")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    targets = list(range(m))
    repeated: list[int] = []
    for source in range(m, n):
        for t in targets:
            edges.append((source, t))
        repeated.extend(targets)
        repeated.extend([source] * m)
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(rng.choice(repeated))
        targets = sorted(chosen)
    return Network(n, edges)


def generate_regular_tree(r: int, depth: int) -> Network:
    """Rooted tree where the root has ``r`` children and every other internal
    node ``r-1``, down to ``depth`` levels.  Node 0 is the root; ids follow
    BFS order, so the result is fully deterministic.
    """
    if r < 2:
        raise ValueError("degree must be >= 2")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    edges = []
    count = 1
    frontier = [0]
    for level in range(depth):
        nxt = []
        kids = r if level == 0 else r - 1
        for u in frontier:
            for _ in range(kids):
                edges.append((u, count))
                nxt.append(count)
                count += 1
        frontier = nxt
    return Network(count, edges)


def load_edge_list(lines: Iterable[str]) -> Network:
    """Parse a whitespace-separated integer edge list ('#' lines ignored).

    Original ids are remapped to 0..n-1 in first-appearance order and kept in
    ``Network.labels``.  Self-loops and duplicate edges are dropped with a
    warning count.
    """
    remap: dict[int, int] = {}
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    self_loops = 0
    duplicates = 0
    any_line = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        any_line = True
        tokens = line.split()
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: expected two integer tokens, got {line!r}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ValueError(f"line {lineno}: expected two integer tokens, got {line!r}") from None
        for x in (a, b):
            if x not in remap:
                remap[x] = len(remap)
        u, v = remap[a], remap[b]
        if u == v:
            self_loops += 1
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)
    if not any_line:
        raise ValueError("empty edge list input")
    if self_loops or duplicates:
        log.warning("edge list: dropped %d self-loop(s) and %d duplicate edge(s)",
                    self_loops, duplicates)
    labels = [0] * len(remap)
    for original, idx in remap.items():
        labels[idx] = original
    return Network(len(remap), edges, labels=labels)


def write_edge_list(net: Network, stream) -> None:
    """Write one `u v` line per edge (original labels when present)."""
    labels = net.labels or range(net.node_count)
    for u, v in net.edges():
        stream.write(f"{labels[u]} {labels[v]}\n")
