"""Rate-bounded deterministic infection dynamics on a rooted tree.

Every rate and every infection time is an exact :class:`fractions.Fraction`,
so set membership at a time horizon never depends on floating-point
rounding.  A rate of exactly zero is allowed as an explicit "never infect"
marker on an edge.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Union

from .graph import Network, TreeView, bfs_distances, jordan_centers

RationalLike = Union[Fraction, int, str]


def _frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RateBounds:
    """Per-depth maximum infection rates.

    ``at(m)`` is the bound for edges whose endpoint closer to the source sits
    ``m`` hops away; beyond the given sequence the last bound repeats.
    """

    def __init__(self, bounds):
        vals = tuple(_frac(b) for b in bounds)
        if not vals:
            raise ValueError("need at least one rate bound")
        if any(b <= 0 for b in vals):
            raise ValueError("rate bounds must be positive")
        self.bounds = vals
        self._prefix = [Fraction(0)]  # _prefix[m] == time to infect depth m at full speed

    def at(self, m: int) -> Fraction:
        if m < 0:
            raise ValueError("depth must be >= 0")
        return self.bounds[m] if m < len(self.bounds) else self.bounds[-1]

    def time_to_depth(self, m: int) -> Fraction:
        """Earliest possible infection time of a node ``m`` hops out."""
        while len(self._prefix) <= m:
            k = len(self._prefix) - 1
            self._prefix.append(self._prefix[-1] + 1 / self.at(k))
        return self._prefix[m]

    def __repr__(self):
        return f"RateBounds({[str(b) for b in self.bounds]})"


def horizon_hops(bounds: RateBounds, t: RationalLike) -> int:
    """Maximum number of hops the infection can travel in time ``t``."""
    t = _frac(t)
    if t < 0:
        raise ValueError("time must be >= 0")
    k = 0
    while bounds.time_to_depth(k + 1) <= t:
        k += 1
    return k


@dataclass(eq=False)
class InfectionStrategy:
    """A rate for every edge of a rooted tree, keyed as (parent, child).

    Rates are exact rationals; 0 marks an edge the infection never crosses.
    """

    net: Network
    tree: TreeView
    source: int
    rates: dict[tuple[int, int], Fraction]

    def __post_init__(self):
        if self.source != self.tree.root:
            raise ValueError("strategy source must be the tree root")
        for edge in self.tree.edges():
            if edge not in self.rates:
                raise ValueError(f"tree edge {edge} has no rate entry")
        for edge, rate in self.rates.items():
            if rate < 0:
                raise ValueError(f"negative rate on edge {edge}")

    def check_bounds(self, bounds: RateBounds) -> None:
        depth = self.tree.depth
        for (u, v), rate in self.rates.items():
            if rate > bounds.at(depth[u]):
                raise ValueError(
                    f"rate {rate} on edge ({u},{v}) exceeds depth-{depth[u]} "
                    f"bound {bounds.at(depth[u])}")


def max_rate_strategy(tree: TreeView, bounds: RateBounds) -> InfectionStrategy:
    """Strategy that drives every edge at its depth bound (the fastest spread)."""
    depth = tree.depth
    rates = {(p, c): bounds.at(depth[p]) for (p, c) in tree.edges()}
    return InfectionStrategy(net=tree.net, tree=tree, source=tree.root, rates=rates)


def path_infection_time(strategy: InfectionStrategy, u: int) -> Optional[Fraction]:
    """Infection time of ``u``: sum of reciprocal rates along the root path.

    Returns None when some edge on the path is marked uninfectable.
    """
    tree = strategy.tree
    if not tree.contains(u):
        raise ValueError(f"node {u} is not in the tree")
    total = Fraction(0)
    v = u
    while v != tree.root:
        p = tree.parent[v]
        rate = strategy.rates[(p, v)]
        if rate == 0:
            return None
        total += 1 / rate
        v = p
    return total


@dataclass(eq=False)
class InfectionOutcome:
    """Snapshot of a simulated spread at a time horizon.

    ``times[v]`` is the exact infection time of ``v`` (None when never
    infected); ``infected`` is everything with time <= t.  Jordan centers and
    the safety margin are computed on the host network's metric, lazily.
    """

    net: Network
    source: int
    t: Fraction
    times: list[Optional[Fraction]]
    infected: frozenset[int]
    infection_edges: tuple[tuple[int, int], ...]

    @cached_property
    def jordan(self) -> frozenset[int]:
        return frozenset(jordan_centers(self.net, self.infected))

    @cached_property
    def safety_margin(self) -> int:
        dist = bfs_distances(self.net, self.source)
        return min(dist[c] for c in self.jordan)

    @property
    def size(self) -> int:
        return len(self.infected)


def simulate(strategy: InfectionStrategy, t: RationalLike,
             bounds: RateBounds) -> InfectionOutcome:
    """Run the spread to horizon ``t`` and collect the outcome.

    Validates the strategy against ``bounds`` first.  Membership uses exact
    rational comparison, so a node whose path time equals ``t`` is infected.
    """
    t = _frac(t)
    if t < 0:
        raise ValueError("time must be >= 0")
    strategy.check_bounds(bounds)
    tree = strategy.tree
    times: list[Optional[Fraction]] = [None] * tree.node_count
    times[tree.root] = Fraction(0)
    for v in tree.order:
        if v == tree.root:
            continue
        p = tree.parent[v]
        if times[p] is None:
            continue
        rate = strategy.rates[(p, v)]
        if rate != 0:
            times[v] = times[p] + 1 / rate
    infected = frozenset(v for v in tree.order
                         if times[v] is not None and times[v] <= t)
    edges = tuple((tree.parent[v], v) for v in tree.order
                  if v != tree.root and v in infected)
    return InfectionOutcome(net=strategy.net, source=strategy.source, t=t,
                            times=times, infected=infected,
                            infection_edges=edges)


# ---------------------------------------------------------------------------
# file formats

STRATEGY_HEADER = ["parent", "child", "rate_num", "rate_den"]
OUTCOME_HEADER = ["node", "time_num", "time_den", "infected"]


def write_strategy_csv(strategy: InfectionStrategy, stream) -> None:
    """One row per infectable edge; zero-rate markers are simply absent."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(STRATEGY_HEADER)
    for (u, v) in strategy.tree.edges():
        rate = strategy.rates[(u, v)]
        if rate > 0:
            writer.writerow([u, v, rate.numerator, rate.denominator])


def read_strategy_csv(tree: TreeView, stream) -> InfectionStrategy:
    """Inverse of :func:`write_strategy_csv`; missing edges become markers."""
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != STRATEGY_HEADER:
        raise ValueError(f"bad strategy header: {header!r}")
    rates = {edge: Fraction(0) for edge in tree.edges()}
    for row in reader:
        if not row:
            continue
        u, v, num, den = int(row[0]), int(row[1]), int(row[2]), int(row[3])
        if (u, v) not in rates:
            raise ValueError(f"({u},{v}) is not a tree edge")
        rates[(u, v)] = Fraction(num, den)
    return InfectionStrategy(net=tree.net, tree=tree, source=tree.root, rates=rates)


def write_outcome_csv(outcome: InfectionOutcome, stream) -> None:
    """Per-node rows; empty time fields stand for an unreachable node."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(OUTCOME_HEADER)
    for v in range(outcome.net.node_count):
        tv = outcome.times[v]
        if tv is None:
            writer.writerow([v, "", "", 0])
        else:
            writer.writerow([v, tv.numerator, tv.denominator,
                             int(v in outcome.infected)])
