"""Planner for the source's dominant infection strategy.

Given per-depth rate bounds, a horizon and a requested safety margin, the
planner picks a maximal-weight root path, drives it at full rate, and slows
the off-path subtrees so the spread's Jordan center lands exactly at the
requested distance from the source while infecting as many nodes as possible.

Membership of every node in the infected set is decided combinatorially by
per-subtree depth caps; the emitted edge rates are exact rationals chosen so
that simulation reproduces those caps bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import TreeView
from .spread import (InfectionStrategy, RateBounds, RationalLike, _frac,
                     horizon_hops, max_rate_strategy)


def max_safety_margin(bounds: RateBounds, t: RationalLike) -> int:
    """Largest margin any strategy can achieve by time ``t``: half the reach."""
    return horizon_hops(bounds, t) // 2


@dataclass(frozen=True)
class DominantPath:
    """A maximal-weight root path; weight is the sum of its edge weights."""
    nodes: tuple[int, ...]
    weight: int

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


@dataclass(eq=False)
class DisPlan:
    """A fully-resolved dominant infection strategy.

    Per off-path subtree index ``m`` (the path node it hangs off):
    ``caps[m]`` is the exact infected depth, ``t_grid[m]`` the path node's
    infection time, and for ``m <= d_s`` also the average rate ``lam[m]``,
    the index set ``a_sets[m]`` of edges slowed below their bound, and the
    common slowdown ``deltas[m]`` solved numerically for reporting (the
    emitted rates themselves stay rational).
    """

    tree: TreeView
    bounds: RateBounds
    t: Fraction
    d_s: int
    d_t: int
    path: Optional[DominantPath]
    caps: tuple[int, ...]
    t_grid: tuple[Fraction, ...]
    lam: tuple[Optional[Fraction], ...]
    a_sets: tuple[Optional[tuple[int, ...]], ...]
    deltas: tuple[float, ...]
    strategy: InfectionStrategy
    size: int

    @property
    def weight(self) -> int:
        """Path weight; for the zero-margin plan the (path-independent) value."""
        return self.path.weight if self.path is not None else self.size - 1


def _subtree_counts(tree: TreeView, max_depth: int) -> list[list[int]]:
    """counts[v][j] = number of nodes in v's subtree within j hops of v."""
    cached = tree._count_cache.get("counts")
    if cached is not None and cached[0] >= max_depth:
        return cached[1]
    D = max_depth
    counts: list[Optional[list[int]]] = [None] * tree.node_count
    children = tree.children()
    for v in reversed(tree.order):
        ch = children[v]
        if not ch:
            counts[v] = [1] * (D + 1)
            continue
        rows = [counts[c] for c in ch]
        row = [1] * (D + 1)
        for j in range(1, D + 1):
            row[j] = 1 + sum(r[j - 1] for r in rows)
        counts[v] = row
    tree._count_cache["counts"] = (D, counts)
    return counts


def _depth_cap(d_t: int, d_s: int, m: int) -> int:
    return d_t - 2 * d_s + m if m <= d_s else d_t - m


def find_dominant_path(tree: TreeView, bounds: RateBounds, t: RationalLike,
                       d_s: int) -> DominantPath:
    """Maximal-weight root path of length exactly ``horizon_hops(t)``.

    The weight of edge (u, w) counts the nodes of u's subtree, minus w's,
    within u's depth cap; ties are broken toward the lexicographically
    smallest node sequence.  Raises when no root path is long enough.
    """
    t = _frac(t)
    d_t = horizon_hops(bounds, t)
    if not 0 <= d_s <= d_t // 2:
        raise ValueError(f"safety margin {d_s} infeasible: largest achievable "
                         f"margin at this horizon is {d_t // 2}")
    root = tree.root
    if d_t == 0:
        return DominantPath(nodes=(root,), weight=0)
    if tree.height() < d_t:
        raise ValueError(
            f"no root path of length {d_t}: source eccentricity "
            f"{tree.height()} is smaller than the spread horizon")
    counts = _subtree_counts(tree, d_t)
    children = tree.children()
    depth = tree.depth
    value: list[Optional[int]] = [None] * tree.node_count
    nxt: list[int] = [-1] * tree.node_count
    for v in reversed(tree.order):
        m = depth[v]
        if m == d_t:
            value[v] = 0
        elif m < d_t:
            h = _depth_cap(d_t, d_s, m)
            base = counts[v][h]
            best = None
            for c in children[v]:
                if value[c] is None:
                    continue
                w = base - (counts[c][h - 1] if h >= 1 else 0)
                cand = w + value[c]
                if best is None or cand > best:
                    best = cand
                    nxt[v] = c
            value[v] = best
    if value[root] is None:
        raise ValueError(f"no root path of length {d_t} from the source")
    nodes = [root]
    while len(nodes) <= d_t:
        nodes.append(nxt[nodes[-1]])
    return DominantPath(nodes=tuple(nodes), weight=value[root])


def solve_delta(bounds: RateBounds, m: int, h_m: int, lam_m: RationalLike,
                t: RationalLike, t_m: RationalLike) -> float:
    """Common slowdown delta applied to the off-path edges faster than ``lam_m``.

    Solves sum over the slowed edges of 1/(bound - delta) = remaining time
    budget by bisection to an absolute tolerance of 1e-12.  The left side is
    increasing in delta, so the root is unique.
    """
    lam_m, t, t_m = _frac(lam_m), _frac(t), _frac(t_m)
    slowed = [j for j in range(h_m) if bounds.at(m + j) > lam_m]
    if not slowed:
        return 0.0
    budget = t - t_m
    for j in range(h_m):
        if j not in slowed:
            budget -= 1 / bounds.at(m + j)
    if budget <= 0:
        raise RuntimeError("inconsistent plan: non-positive time budget for "
                           "the slowed off-path edges")
    caps = [float(bounds.at(m + j)) for j in slowed]
    target = float(budget)

    def lhs(delta: float) -> float:
        return sum(1.0 / (c - delta) for c in caps)

    lo, hi = 0.0, min(caps)
    if lhs(lo) >= target:
        return 0.0
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2
        if lhs(mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _off_path_rates(bounds: RateBounds, m: int, h_m: int, t: Fraction,
                    t_m: Fraction) -> list[Fraction]:
    """Exact per-depth rates making the off-path subtree reach depth ``h_m``
    at exactly the horizon.

    Harmonic water-filling: edges share one common rate except where the
    depth bound is lower, in which case the edge is pinned at its bound and
    the remaining budget is redistributed.  With homogeneous bounds this
    collapses to the single average rate.
    """
    if h_m == 0:
        return []
    budget = t - t_m
    active = list(range(h_m))
    rates: list[Optional[Fraction]] = [None] * h_m
    assert budget >= sum(1 / bounds.at(m + j) for j in active), \
        "depth cap exceeds what the bounds allow"
    while active:
        common = Fraction(len(active)) / budget
        capped = [j for j in active if bounds.at(m + j) < common]
        if not capped:
            for j in active:
                rates[j] = common
            return rates  # type: ignore[return-value]
        for j in capped:
            rates[j] = bounds.at(m + j)
            budget -= 1 / bounds.at(m + j)
        active = [j for j in active if j not in capped]
    raise RuntimeError("inconsistent plan: rate budget left after pinning "
                       "every off-path edge at its bound")


def build_dis(tree: TreeView, bounds: RateBounds, t: RationalLike,
              d_s: int) -> DisPlan:
    """Construct the maximum infection strategy with safety margin ``d_s``.

    A zero margin pins every edge at its bound (the fastest spread).  For
    d_s >= 1 the dominant path runs at full rate and the subtree hanging off
    its m-th node is infected to depth exactly ``caps[m]``: slowed to
    d_t - 2*d_s + m close to the source, free-running (depth d_t - m)
    beyond.  The emitted rates land the deepest slowed nodes at exactly the
    horizon, so simulation reproduces the depth caps without any rounding.
    """
    t = _frac(t)
    if t < 0:
        raise ValueError("time must be >= 0")
    if not isinstance(d_s, int) or d_s < 0:
        raise ValueError("safety margin must be a non-negative integer")
    d_t = horizon_hops(bounds, t)
    ds_max = d_t // 2
    if d_s > ds_max:
        raise ValueError(f"safety margin {d_s} infeasible: largest achievable "
                         f"margin at this horizon is {ds_max}")
    counts = _subtree_counts(tree, d_t)
    t_grid = tuple(bounds.time_to_depth(m) for m in range(d_t))
    caps = tuple(_depth_cap(d_t, d_s, m) for m in range(d_t))

    if d_s == 0:
        lam: list[Optional[Fraction]] = [None] * d_t
        a_sets: list[Optional[tuple[int, ...]]] = [None] * d_t
        deltas = [0.0] * d_t
        if d_t > 0:
            lam[0] = Fraction(d_t) / t
            a_sets[0] = tuple(j for j in range(d_t) if bounds.at(j) > lam[0])
        strategy = max_rate_strategy(tree, bounds)
        size = counts[tree.root][d_t]
        return DisPlan(tree=tree, bounds=bounds, t=t, d_s=0, d_t=d_t,
                       path=None, caps=caps, t_grid=t_grid, lam=tuple(lam),
                       a_sets=tuple(a_sets), deltas=tuple(deltas),
                       strategy=strategy, size=size)

    path = find_dominant_path(tree, bounds, t, d_s)
    depth = tree.depth
    children = tree.children()
    rates = {(p, c): bounds.at(depth[p]) for (p, c) in tree.edges()}
    lam = [None] * d_t
    a_sets = [None] * d_t
    deltas = [0.0] * d_t
    for m in range(d_s + 1):
        u_m = path.nodes[m]
        on_path_child = path.nodes[m + 1]
        h_m = caps[m]
        lam[m] = Fraction(h_m) / (t - t_grid[m])
        a_sets[m] = tuple(j for j in range(h_m) if bounds.at(m + j) > lam[m])
        deltas[m] = solve_delta(bounds, m, h_m, lam[m], t, t_grid[m])
        off = _off_path_rates(bounds, m, h_m, t, t_grid[m])
        if h_m == 0:
            for c in children[u_m]:
                if c != on_path_child:
                    rates[(u_m, c)] = Fraction(0)
            continue
        # assign per-depth rates through the off-path subtree, down to the
        # edges entering depth h_m; anything deeper keeps its (harmless) bound
        frontier = [c for c in children[u_m] if c != on_path_child]
        for c in frontier:
            rates[(u_m, c)] = off[0]
        for j in range(1, h_m):
            nxt = []
            for v in frontier:
                for c in children[v]:
                    rates[(v, c)] = off[j]
                    nxt.append(c)
            frontier = nxt
            if not frontier:
                break
    strategy = InfectionStrategy(net=tree.net, tree=tree, source=tree.root,
                                 rates=rates)
    size = 1 + path.weight
    return DisPlan(tree=tree, bounds=bounds, t=t, d_s=d_s, d_t=d_t, path=path,
                   caps=caps, t_grid=t_grid, lam=tuple(lam),
                   a_sets=tuple(a_sets), deltas=tuple(deltas),
                   strategy=strategy, size=size)


def dis_size(plan: DisPlan) -> int:
    """Infected-node count of the plan, from the combinatorial depth caps.

    Equals 1 + path weight: the caps partition the infected set into the
    path plus one capped subtree per path node.  (Summing subtree sizes over
    the path as written in closed form counts each path node inside its own
    subtree, an offset constant in the path choice; the argmax is unaffected
    and this function always reports the true cardinality.)
    """
    return plan.size


def _plan_size(tree: TreeView, bounds: RateBounds, d_s: int, d_t: int) -> int:
    """Infected count of the margin-d_s plan at grid horizon index ``d_t``."""
    counts = _subtree_counts(tree, max(d_t, 1))
    if d_s == 0:
        return counts[tree.root][d_t]
    path = find_dominant_path(tree, bounds, bounds.time_to_depth(d_t), d_s)
    return 1 + path.weight


def binary_search_tobs(tree: TreeView, bounds: RateBounds, d_s: int,
                       n_obs: int) -> tuple[Fraction, DisPlan]:
    """Smallest grid time at which the margin-``d_s`` plan infects ``n_obs``.

    The infected count is a step function jumping only at the full-rate
    arrival times t_m, so the search runs over the integer grid index.  The
    returned time is minimal: its predecessor grid time infects fewer than
    ``n_obs`` nodes.
    """
    if n_obs <= 1:
        raise ValueError("observation threshold must exceed 1")
    if d_s < 0:
        raise ValueError("safety margin must be >= 0")
    reach = tree.height()
    counts = _subtree_counts(tree, reach)
    ball = counts[tree.root]
    if ball[reach] < n_obs:
        raise ValueError(f"network too small: only {ball[reach]} nodes "
                         f"reachable, observation threshold is {n_obs}")
    kstar = next(k for k in range(reach + 1) if ball[k] >= n_obs)
    lo = max(kstar, 2 * d_s, 1)
    hi = min(kstar + 2 * d_s, reach)
    cache: dict[int, int] = {}

    def size_at(m: int) -> int:
        if m not in cache:
            cache[m] = _plan_size(tree, bounds, d_s, m)
        return cache[m]

    if lo > hi or size_at(hi) < n_obs:
        raise ValueError(f"network too small to infect {n_obs} nodes at "
                         f"safety margin {d_s}")
    if size_at(lo) >= n_obs:
        ans = lo
    else:
        x, y = lo, hi
        while y - x > 1:
            mid = (x + y) // 2
            if size_at(mid) < n_obs:
                x = mid
            else:
                y = mid
        ans = y
    if ans - 1 >= max(2 * d_s, 1):
        assert size_at(ans - 1) < n_obs, "binary search returned a non-minimal time"
    t_obs = bounds.time_to_depth(ans)
    return t_obs, build_dis(tree, bounds, t_obs, d_s)


def regular_tree_counts(r: int, t: int, d_s: int) -> tuple[int, int]:
    """Closed-form infected counts on an infinite r-regular tree, unit bounds.

    Returns (fastest-spread count, margin-d_s count) at integer horizon t.
    """
    if r <= 2:
        raise ValueError("degree must exceed 2")
    if t < 0:
        raise ValueError("horizon must be >= 0")
    if not 0 <= d_s <= t // 2:
        raise ValueError(f"safety margin {d_s} out of range [0, {t // 2}]")
    fastest = (r * (r - 1) ** t - 2) // (r - 2)
    dis = (r * (r - 1) ** (t - d_s) - 2) // (r - 2)
    return fastest, dis
