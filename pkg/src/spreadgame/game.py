"""Utilities, best responses and equilibria for the hide-and-seek game.

The administrator picks a probe radius around a Jordan center of the
observed spread; the source picks how far to push that center away.  Both
strategy spaces are discrete: probe radii are integers, and the source's
undominated strategies are the maximum infection strategies indexed by their
safety margin.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .dis import DisPlan, build_dis, max_safety_margin
from .graph import Network, TreeView, bfs_distances, jordan_centers
from .spread import InfectionOutcome, RateBounds, simulate


@dataclass(frozen=True)
class GameConfig:
    """Gains and costs for both players, with schedule kinds.

    c_s_kind: 'constant' or 'linear' (cost grows with the probe radius).
    g_a_kind: 'constant' or 'inverse_size' (gain divided by suspect-set size,
    the no-side-information reading).  The probing cost is linear in the
    suspect-set size.
    """

    g_s: float = 1.0
    c_s: float = 0.0
    g_a: float = 0.0
    c_a: float = 1.0
    c_s_kind: str = "constant"
    g_a_kind: str = "constant"
    c_a_kind: str = "linear"

    def __post_init__(self):
        if min(self.g_s, self.c_s, self.g_a, self.c_a) < 0:
            raise ValueError("gains and costs must be >= 0")
        if self.c_s_kind not in ("constant", "linear"):
            raise ValueError(f"unknown c_s_kind {self.c_s_kind!r}")
        if self.g_a_kind not in ("constant", "inverse_size"):
            raise ValueError(f"unknown g_a_kind {self.g_a_kind!r}")
        if self.c_a_kind != "linear":
            raise ValueError(f"unknown c_a_kind {self.c_a_kind!r}")

    def source_cost(self, d_a: int) -> float:
        return self.c_s * (1 + d_a) if self.c_s_kind == "linear" else self.c_s

    def admin_gain(self, d_a: int, suspect_size: int) -> float:
        if self.g_a_kind == "inverse_size":
            return self.g_a / suspect_size if suspect_size else 0.0
        return self.g_a

    def admin_cost(self, suspect_size: int) -> float:
        return self.c_a * suspect_size

    def save(self, stream) -> None:
        for key in ("g_s", "c_s", "g_a", "c_a", "c_s_kind", "g_a_kind", "c_a_kind"):
            stream.write(f"{key}={getattr(self, key)}\n")

    @classmethod
    def load(cls, stream) -> "GameConfig":
        kwargs = {}
        for lineno, raw in enumerate(stream, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key.endswith("_kind"):
                kwargs[key] = value
            else:
                kwargs[key] = float(value)
        return cls(**kwargs)


def suspect_set(net: Network, infected: Iterable[int], center: int, d_a: int,
                jordan: Optional[Iterable[int]] = None) -> frozenset[int]:
    """Infected nodes within ``d_a`` hops of the chosen Jordan center."""
    if d_a < 0:
        raise ValueError("probe radius must be >= 0")
    infected = frozenset(infected)
    centers = frozenset(jordan) if jordan is not None else jordan_centers(net, infected)
    if center not in centers:
        raise ValueError(f"{center} is not a Jordan center of the infected set")
    dist = bfs_distances(net, center)
    return frozenset(v for v in infected if 0 <= dist[v] <= d_a)


def _suspect_size_profile(net: Network, infected: frozenset[int],
                          center: int) -> list[int]:
    """|suspect set| for every radius 0..ecc(center, infected)."""
    dist = bfs_distances(net, center)
    radii = [dist[v] for v in infected]
    ecc = max(radii)
    histogram = [0] * (ecc + 1)
    for r in radii:
        histogram[r] += 1
    sizes = []
    running = 0
    for r in range(ecc + 1):
        running += histogram[r]
        sizes.append(running)
    return sizes


def default_center(outcome: InfectionOutcome) -> int:
    """Deterministic center pick: the smallest-id Jordan center."""
    return min(outcome.jordan)


def admin_utility(cfg: GameConfig, d_a: int, outcome: InfectionOutcome,
                  center: Optional[int] = None) -> float:
    """Probe cost plus the identification gain when the radius covers the source."""
    if center is None:
        center = default_center(outcome)
    suspects = suspect_set(outcome.net, outcome.infected, center, d_a,
                           jordan=outcome.jordan)
    utility = -cfg.admin_cost(len(suspects))
    if d_a >= outcome.safety_margin:
        utility += cfg.admin_gain(d_a, len(suspects))
    return utility


def source_utility(cfg: GameConfig, d_a: int, outcome: InfectionOutcome) -> float:
    """Per-node reward minus the identification penalty."""
    utility = cfg.g_s * outcome.size
    if d_a >= outcome.safety_margin:
        utility -= cfg.source_cost(d_a)
    return utility


def best_response_admin(cfg: GameConfig, outcome: InfectionOutcome,
                        center: Optional[int] = None) -> list[int]:
    """Argmax set of probe radii over 0..ecc(center, infected)."""
    if center is None:
        center = default_center(outcome)
    sizes = _suspect_size_profile(outcome.net, outcome.infected, center)
    d_s = outcome.safety_margin
    best: list[int] = []
    best_u = None
    for d_a, size in enumerate(sizes):
        u = -cfg.admin_cost(size)
        if d_a >= d_s:
            u += cfg.admin_gain(d_a, size)
        if best_u is None or u > best_u:
            best, best_u = [d_a], u
        elif u == best_u:
            best.append(d_a)
    return best


def _source_choice(cfg: GameConfig, d_a: int, size_fast: int,
                   size_evade: int) -> list[int]:
    """Margins preferred between full speed (0) and just-out-of-reach (d_a+1)."""
    cost = cfg.source_cost(d_a)
    gap = cfg.g_s * (size_fast - size_evade)
    if cost < gap:
        return [0]
    if cost > gap:
        return [d_a + 1]
    return [0, d_a + 1]


def best_response_source(cfg: GameConfig, d_a: int, tree: TreeView,
                         bounds: RateBounds, t_obs) -> list[int]:
    """Best-response safety margins against probe radius ``d_a``.

    Either spread at full speed (margin 0, identified) or sit one hop past
    the probe radius; any radius at or beyond the largest feasible margin
    leaves full speed as the only undominated choice.
    """
    if d_a < 0:
        raise ValueError("probe radius must be >= 0")
    ds_max = max_safety_margin(bounds, t_obs)
    if d_a >= ds_max:
        return [0]
    size_fast = build_dis(tree, bounds, t_obs, 0).size
    size_evade = build_dis(tree, bounds, t_obs, d_a + 1).size
    return _source_choice(cfg, d_a, size_fast, size_evade)


@dataclass(eq=False)
class EquilibriumReport:
    """Equilibria found by the closed-form conditions, cross-checked by an
    exhaustive unilateral-deviation test over the discrete strategy grids."""

    equilibria: list[tuple[int, str]]
    conditions: dict[str, float]
    deviation_equilibria: list[tuple[int, int]]
    sum_utility_argmax: list[tuple[int, int]]
    sum_utility_ok: bool
    sizes: dict[int, int]
    rows: list[dict] = field(default_factory=list)

    REPORT_HEADER = ["d_a", "d_s", "u_a", "u_s", "is_br_a", "is_br_s", "is_nash"]

    def to_csv(self, stream) -> None:
        writer = csv.DictWriter(stream, fieldnames=self.REPORT_HEADER,
                                lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)

    def summary(self) -> str:
        lines = []
        if self.equilibria:
            for d_a, label in self.equilibria:
                lines.append(f"nash equilibrium: probe radius {d_a}, "
                             f"source strategy {label}")
        else:
            lines.append("no pure-strategy nash equilibrium")
        lines.append("conditions: " + ", ".join(
            f"{k}={v:g}" for k, v in self.conditions.items()))
        lines.append("sum-utility argmax: " + ", ".join(
            f"(d_a={a}, margin={s})" for a, s in self.sum_utility_argmax))
        return "\n".join(lines)


def find_nash(cfg: GameConfig, tree: TreeView, bounds: RateBounds,
              t_obs) -> EquilibriumReport:
    """Evaluate the equilibrium conditions and the full deviation grid.

    Candidate profiles pair a probe radius with a maximum infection strategy;
    the only possible equilibria put the administrator at radius 0 with the
    source at margin 0 or margin 1.
    """
    ds_max = max_safety_margin(bounds, t_obs)
    if ds_max < 1:
        raise ValueError("horizon too short: largest feasible margin is 0")
    plans: dict[int, DisPlan] = {}
    outcomes: dict[int, InfectionOutcome] = {}
    for d_s in range(ds_max + 1):
        plans[d_s] = build_dis(tree, bounds, t_obs, d_s)
        outcomes[d_s] = simulate(plans[d_s].strategy, plans[d_s].t, bounds)
    sizes = {d_s: plans[d_s].size for d_s in plans}

    n0, n1 = sizes[0], sizes[1]
    gap = cfg.g_s * (n0 - n1)
    cs0 = cfg.source_cost(0)
    out1 = outcomes[1]
    center1 = default_center(out1)
    sp = _suspect_size_profile(out1.net, out1.infected, center1)
    sp1 = sp[1] if len(sp) > 1 else sp[0]
    cost_step = cfg.admin_cost(sp1) - cfg.admin_cost(sp[0])
    ga1 = cfg.admin_gain(1, sp1)

    equilibria: list[tuple[int, str]] = []
    if cs0 <= gap:
        equilibria.append((0, "L0"))
    if cs0 >= gap and ga1 <= cost_step:
        equilibria.append((0, "L1"))

    # exhaustive unilateral-deviation test over the (d_a, margin) grid
    grid = range(ds_max + 1)
    u_a = {(d_a, d_s): admin_utility(cfg, d_a, outcomes[d_s])
           for d_a in grid for d_s in grid}
    u_s = {(d_a, d_s): source_utility(cfg, d_a, outcomes[d_s])
           for d_a in grid for d_s in grid}
    rows = []
    deviation_eq = []
    for d_a in grid:
        for d_s in grid:
            br_a = all(u_a[(d_a, d_s)] >= u_a[(alt, d_s)] for alt in grid)
            br_s = all(u_s[(d_a, d_s)] >= u_s[(d_a, alt)] for alt in grid)
            if br_a and br_s:
                deviation_eq.append((d_a, d_s))
            rows.append({"d_a": d_a, "d_s": d_s,
                         "u_a": u_a[(d_a, d_s)], "u_s": u_s[(d_a, d_s)],
                         "is_br_a": int(br_a), "is_br_s": int(br_s),
                         "is_nash": int(br_a and br_s)})

    total = {(d_a, d_s): u_a[(d_a, d_s)] + u_s[(d_a, d_s)]
             for d_a in grid for d_s in grid}
    best_total = max(total.values())
    argmax = sorted(k for k, v in total.items() if v == best_total)
    sum_ok = all(profile in ((0, 0), (0, 1)) for profile in argmax)

    conditions = {"c_s(0)": cs0, "g_s*(n0-n1)": gap, "g_a(1)": ga1,
                  "c_a(V_sp(1))-c_a(V_sp(0))": cost_step}
    return EquilibriumReport(equilibria=equilibria, conditions=conditions,
                             deviation_equilibria=deviation_eq,
                             sum_utility_argmax=argmax, sum_utility_ok=sum_ok,
                             sizes=sizes, rows=rows)
