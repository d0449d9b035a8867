import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spreadgame import Network, bfs_spanning_tree, generate_random_tree


def path_network(n):
    return Network(n, [(i, i + 1) for i in range(n - 1)])


def star_network(leaves):
    return Network(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


@pytest.fixture
def path5():
    return path_network(5)


@pytest.fixture
def small_trees():
    """A spread of random {1,2,3}-ish trees up to ~30 nodes."""
    trees = []
    for seed in range(20):
        n = 3 + (seed * 7) % 28
        trees.append(generate_random_tree(n, {2, 3}, seed))
    return trees


def rooted(net, root=0):
    return bfs_spanning_tree(net, root)
