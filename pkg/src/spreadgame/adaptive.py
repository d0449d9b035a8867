"""Adaptive-diffusion baseline, by its infected-set law.

The baseline hides the source by growing a ball around a virtual center
drawn at the requested distance from the true source; at an even horizon t
the infected set is everything within t/2 hops of that center.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .graph import Network, bfs_distances, jordan_centers


@dataclass(eq=False)
class AdOutcome:
    net: Network
    source: int
    center: int
    d_s: int
    t: int
    infected: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.infected)

    @cached_property
    def achieved_margin(self) -> int:
        """Distance from the true source to the ball's Jordan centers."""
        centers = jordan_centers(self.net, self.infected)
        dist = bfs_distances(self.net, self.source)
        return min(dist[c] for c in centers)


def ad_infect(net: Network, source: int, t: int, d_s: int, seed: int) -> AdOutcome:
    """Infect the t/2-ball around a seeded uniform node at distance ``d_s``."""
    net.check_node(source)
    if t % 2 != 0 or t <= 0:
        raise ValueError("horizon must be a positive even integer")
    if not 1 <= d_s <= t // 2:
        raise ValueError(f"safety margin {d_s} out of range [1, {t // 2}]")
    dist = bfs_distances(net, source)
    candidates = sorted(v for v in range(net.node_count) if dist[v] == d_s)
    if not candidates:
        raise ValueError(f"no node at distance exactly {d_s} from the source")
    center = random.Random(seed).choice(candidates)
    dist_c = bfs_distances(net, center)
    radius = t // 2
    infected = frozenset(v for v in range(net.node_count)
                         if 0 <= dist_c[v] <= radius)
    return AdOutcome(net=net, source=source, center=center, d_s=d_s, t=t,
                     infected=infected)
