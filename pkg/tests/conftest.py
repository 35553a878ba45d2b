import pytest

from treeradon import build_tree

# Fixture trees used throughout. Edge ids are list positions.
#
# TRIPOD: center o, tips x, y, z, three unit edges.
#   0: (o,x)  1: (o,y)  2: (o,z)
#
# STAR3: hub c, spokes a, b, d at distance 1, two rays at each spoke tip.
#   0: (c,a)  1: (c,b)  2: (c,d)
#   3,4: rays at a   5,6: rays at b   7,8: rays at d


@pytest.fixture
def tripod():
    return build_tree({
        "vertices": ["o", "x", "y", "z"],
        "edges": [("o", "x", 1), ("o", "y", 1), ("o", "z", 1)],
    })


@pytest.fixture
def star3():
    return build_tree({
        "vertices": ["c", "a", "b", "d"],
        "edges": [
            ("c", "a", 1), ("c", "b", 1), ("c", "d", 1),
            ("a", None, "inf"), ("a", None, "inf"),
            ("b", None, "inf"), ("b", None, "inf"),
            ("d", None, "inf"), ("d", None, "inf"),
        ],
    })
