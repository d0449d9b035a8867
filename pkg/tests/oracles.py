"""Independent brute-force oracles used to freeze expected test values.

Everything here works on raw adjacency lists and reimplements the math from
scratch (plain BFS, exhaustive enumeration), so the checks stay independent
of the library code paths they validate.
"""

from collections import deque
from fractions import Fraction


def adj_of(net):
    return [list(nbrs) for nbrs in net.adjacency]


def oracle_bfs(adj, src):
    dist = [-1] * len(adj)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def oracle_all_pairs(adj):
    return [oracle_bfs(adj, v) for v in range(len(adj))]


def oracle_eccentricity(adj, v, targets):
    dist = oracle_bfs(adj, v)
    return max(dist[t] for t in targets)


def oracle_jordan(adj, infected):
    """Argmin over all nodes of the max distance to the infected set."""
    infected = list(infected)
    best, centers = None, set()
    for v in range(len(adj)):
        dist = oracle_bfs(adj, v)
        if any(dist[t] < 0 for t in infected):
            continue
        ecc = max(dist[t] for t in infected)
        if best is None or ecc < best:
            best, centers = ecc, {v}
        elif ecc == best:
            centers.add(v)
    return centers


def oracle_ball(adj, src, radius):
    dist = oracle_bfs(adj, src)
    return {v for v, d in enumerate(dist) if 0 <= d <= radius}


def oracle_horizon(bounds_list, t):
    """Largest k whose prefix of reciprocal bounds stays within t."""
    t = Fraction(t)
    k, total = 0, Fraction(0)
    while True:
        b = bounds_list[k] if k < len(bounds_list) else bounds_list[-1]
        total += Fraction(1, 1) / Fraction(b)
        if total > t:
            return k
        k += 1


def enumerate_root_paths(adj, root, length):
    """Every simple path from the root with exactly `length` edges."""
    paths = []

    def walk(path, seen):
        if len(path) - 1 == length:
            paths.append(tuple(path))
            return
        for nxt in adj[path[-1]]:
            if nxt not in seen:
                walk(path + [nxt], seen | {nxt})

    walk([root], {root})
    return paths


def oracle_path_weight(adj, root, path, d_t, d_s):
    """Definitional weight of a root path: per edge (u, w), the number of
    nodes of u's subtree outside w's subtree within u's depth cap."""
    dist_root = oracle_bfs(adj, root)
    # parent structure of the tree rooted at `root`
    parent = [-1] * len(adj)
    for u in range(len(adj)):
        for v in adj[u]:
            if dist_root[v] == dist_root[u] + 1:
                parent[v] = u

    def on_root_path(v, x):
        while v != -1:
            if v == x:
                return True
            v = parent[v]
        return False

    total = 0
    for idx in range(len(path) - 1):
        u, w = path[idx], path[idx + 1]
        m = dist_root[u]
        h = d_t - 2 * d_s + m if m <= d_s else d_t - m
        count = 0
        for v in range(len(adj)):
            if dist_root[v] < 0:
                continue
            if on_root_path(v, u) and not on_root_path(v, w):
                if dist_root[v] - dist_root[u] <= h:
                    count += 1
        total += count
    return total


def oracle_dis_members(adj, root, path, d_t, d_s):
    """Infected set implied by the depth caps along a dominant path."""
    dist_root = oracle_bfs(adj, root)
    parent = [-1] * len(adj)
    for u in range(len(adj)):
        for v in adj[u]:
            if dist_root[v] == dist_root[u] + 1:
                parent[v] = u
    on_path = set(path)
    members = set(path)
    for v in range(len(adj)):
        if dist_root[v] < 0 or v in on_path:
            continue
        # climb to the last path node on v's root path
        x = v
        while x not in on_path:
            x = parent[x]
            if x == -1:
                break
        if x == -1:
            continue
        m = dist_root[x]
        if m >= d_t:
            continue
        cap = d_t - 2 * d_s + m if m <= d_s else d_t - m
        if dist_root[v] - m <= cap:
            members.add(v)
    return members
