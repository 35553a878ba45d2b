"""Tree construction, validation, metric queries."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from treeradon import (
    SuiteConfig,
    TreePoint,
    TreeStructureError,
    PointLocationError,
    build_tree,
    gen_point,
    gen_tree,
    is_geodesically_complete,
)


class TestBuildTree:
    def test_tripod_valid(self, tripod):
        assert set(tripod.leaves) == {"x", "y", "z"}
        assert not tripod.geodesically_complete
        assert tripod.valency_profile == {"o": 3, "x": 1, "y": 1, "z": 1}

    def test_star3_valid(self, star3):
        assert star3.geodesically_complete
        assert set(star3.valency_profile.values()) == {3}
        assert star3.leaves == ()

    def test_valency_two_rejected(self):
        with pytest.raises(TreeStructureError, match="valency-2"):
            build_tree({
                "vertices": ["a", "m", "b", "t1", "t2", "t3", "t4"],
                "edges": [
                    ("a", "m", 1), ("m", "b", 1),
                    ("a", "t1", 1), ("a", "t2", 1),
                    ("b", "t3", 1), ("b", "t4", 1),
                ],
            })

    def test_cycle_rejected(self):
        with pytest.raises(TreeStructureError, match="cycle"):
            build_tree({
                "vertices": ["a", "b", "c"],
                "edges": [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)],
            })

    def test_disconnected_rejected(self):
        with pytest.raises(TreeStructureError, match="disconnected"):
            build_tree({
                "vertices": ["a", "b", "c", "d"],
                "edges": [("a", "b", 1), ("c", "d", 1)],
            })

    def test_nonpositive_length_rejected(self):
        with pytest.raises(TreeStructureError, match="nonpositive"):
            build_tree({"vertices": ["a", "b"], "edges": [("a", "b", 0)]})

    def test_finite_length_ray_rejected(self):
        with pytest.raises(TreeStructureError, match="ray"):
            build_tree({"vertices": ["a"], "edges": [("a", None, 3)]})

    def test_infinite_two_endpoint_edge_rejected(self):
        with pytest.raises(TreeStructureError, match="infinite"):
            build_tree({"vertices": ["a", "b"], "edges": [("a", "b", "inf")]})

    def test_isolated_vertex_rejected(self):
        with pytest.raises(TreeStructureError):
            build_tree({"vertices": ["a"], "edges": []})

    def test_dict_edge_form(self):
        tree = build_tree({
            "vertices": ["a", "b"],
            "edges": [{"u": "a", "v": "b", "len": "3/2"}],
        })
        assert tree.edges[0].length == F(3, 2)


class TestCompleteness:
    def test_tripod_incomplete(self, tripod):
        assert not is_geodesically_complete(tripod)

    def test_star3_complete(self, star3):
        assert is_geodesically_complete(star3)

    def test_single_vertex_three_rays(self):
        tree = build_tree({
            "vertices": ["o"],
            "edges": [("o", None, "inf")] * 3,
        })
        assert is_geodesically_complete(tree)


class TestPoints:
    def test_offset_zero_canonicalizes_to_vertex(self, tripod):
        assert tripod.point(0, 0) == tripod.vertex_point("o")

    def test_full_offset_canonicalizes_to_far_vertex(self, tripod):
        assert tripod.point(0, 1) == tripod.vertex_point("x")

    def test_interior_point(self, tripod):
        p = tripod.point(0, F(1, 3))
        assert not p.is_vertex and p.edge == 0 and p.offset == F(1, 3)

    def test_offset_bounds(self, tripod):
        with pytest.raises(PointLocationError):
            tripod.point(0, F(3, 2))
        with pytest.raises(PointLocationError):
            tripod.point(0, -1)

    def test_ray_offsets_unbounded(self, star3):
        p = star3.point(3, 100)
        assert p.offset == 100

    def test_unknown_vertex(self, tripod):
        with pytest.raises(PointLocationError):
            tripod.vertex_point("nope")

    def test_canonical_point_revalidates(self, tripod):
        raw = TreePoint(edge=1, offset=F(1, 1))
        assert tripod.canonical_point(raw) == tripod.vertex_point("y")


class TestDistance:
    def test_tip_to_tip(self, tripod):
        assert tripod.distance(tripod.vertex_point("x"), tripod.vertex_point("y")) == 2

    def test_interior_through_center(self, tripod):
        p = tripod.point(0, F(3, 10))
        q = tripod.point(1, F(1, 2))
        assert tripod.distance(p, q) == F(4, 5)

    def test_identity(self, tripod):
        p = tripod.point(2, F(2, 7))
        assert tripod.distance(p, p) == 0

    def test_same_edge(self, tripod):
        p = tripod.point(0, F(1, 5))
        q = tripod.point(0, F(4, 5))
        assert tripod.distance(p, q) == F(3, 5)

    def test_ray_points(self, star3):
        p = star3.point(3, 2)       # 2 beyond a
        q = star3.point(7, F(1, 2))  # 1/2 beyond d
        assert star3.distance(p, q) == 2 + 1 + 1 + F(1, 2)


@st.composite
def tree_and_points(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    cfg = SuiteConfig(seed=seed, max_vertices=7, max_denominator=9)
    tree = gen_tree(cfg, rng.choice(("finite", "complete")), rng)
    points = [gen_point(tree, rng, 9) for _ in range(3)]
    return tree, points


@given(tree_and_points())
@settings(max_examples=60, deadline=None)
def test_metric_axioms(data):
    tree, (p, q, r) = data
    assert tree.distance(p, q) == tree.distance(q, p)
    assert tree.distance(p, p) == 0
    if tree.distance(p, q) == 0:
        assert p == q
    assert tree.distance(p, r) <= tree.distance(p, q) + tree.distance(q, r)
