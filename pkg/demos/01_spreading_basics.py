"""Walk through the core objects: a network, rate bounds, full-speed spread,
and the Jordan-center view of who looks like the source afterwards."""

from fractions import Fraction

from spreadgame import (RateBounds, bfs_spanning_tree, generate_random_tree,
                        horizon_hops, max_rate_strategy, simulate)

net = generate_random_tree(2000, {2, 3}, seed=42)
tree = bfs_spanning_tree(net, 0)
print(f"random tree: {net.node_count} nodes, height {tree.height()} from node 0")

bounds = RateBounds([1, Fraction(1, 2)])  # depth-0 edges twice as fast
for t in (2, 4, Fraction(13, 2)):
    reach = horizon_hops(bounds, t)
    out = simulate(max_rate_strategy(tree, bounds), t, bounds)
    print(f"t={t}: spread reaches {reach} hops, infects {out.size} nodes, "
          f"centers {sorted(out.jordan)}, source-to-center distance "
          f"{out.safety_margin}")

print("\nfull-speed spreading is a ball around the source, so the Jordan")
print("center sits on top of it: the source is trivially identified.")
