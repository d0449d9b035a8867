"""Both players' best responses and the equilibria of the game: the
administrator picks a probe radius, the source picks a safety margin."""

from spreadgame import (GameConfig, RateBounds, best_response_admin,
                        best_response_source, bfs_spanning_tree, build_dis,
                        find_nash, generate_random_tree, simulate)

bounds = RateBounds([1])
net = generate_random_tree(2500, {2, 3}, seed=77)
tree = bfs_spanning_tree(net, 0)
t_obs = 8

sizes = {d: build_dis(tree, bounds, t_obs, d).size for d in range(5)}
print("infected counts by margin:", sizes)
gap = sizes[0] - sizes[1]

print("\nsource's view (gain 1 per node):")
for c_s in (0, gap - 5, gap + 5):
    cfg = GameConfig(g_s=1, c_s=float(c_s))
    picks = {d_a: best_response_source(cfg, d_a, tree, bounds, t_obs)
             for d_a in (0, 2, 4)}
    print(f"  cost {c_s:4d}: best margins per probe radius {picks}")

print("\nadministrator's view against a margin-2 spread:")
out = simulate(build_dis(tree, bounds, t_obs, 2).strategy, t_obs, bounds)
for g_a in (1, 20, 500):
    cfg = GameConfig(g_a=float(g_a), c_a=1)
    print(f"  gain {g_a:4d}: best probe radii {best_response_admin(cfg, out)}")

print("\nequilibria under three cost regimes:")
for c_s, g_a in ((0.0, 1.0), (gap + 30.0, 1.0), (gap + 30.0, 10_000.0)):
    report = find_nash(GameConfig(g_s=1, c_s=c_s, g_a=g_a, c_a=1),
                       tree, bounds, t_obs)
    print(f"  c_s={c_s:7.1f} g_a={g_a:8.1f}: {report.equilibria or 'none'}")

print("\nWhen an equilibrium exists the administrator always sits at radius")
print("0 (the bare Jordan-center estimate); what varies is whether the")
print("source bothers to hide one hop or spreads at full speed.")
