"""Trees, exact distances, geodesics, projections, perpendiculars.

Builds a small leafless tree (a hub with three unit spokes, two infinite
rays at each spoke tip), walks through the basic geometry, and finishes
with the comparison-triangle inequality that makes trees "thinner than
Euclidean".
"""

from fractions import Fraction as F

from treeradon import (
    build_tree,
    check_cat0_triangle,
    geodesic_through_flag,
    midpoint,
    path,
    perpendicular,
    points_aligned,
)

star = build_tree({
    "vertices": ["c", "a", "b", "d"],
    "edges": [
        ("c", "a", 1), ("c", "b", 1), ("c", "d", 1),
        ("a", None, "inf"), ("a", None, "inf"),
        ("b", None, "inf"), ("b", None, "inf"),
        ("d", None, "inf"), ("d", None, "inf"),
    ],
})

print("valency profile:", star.valency_profile)
print("geodesically complete (no leaves):", star.geodesically_complete)

a, b, c, d = (star.vertex_point(v) for v in "abcd")
p = star.point(0, F(1, 3))        # a third of the way from c toward a
q = star.point(7, F(5, 2))        # 5/2 out along the first ray at d

print("\ndistances are exact rationals:")
print("  d(a, b)     =", star.distance(a, b))
print("  d(p, q)     =", star.distance(p, q))
print("  midpoint(a, d) =", midpoint(star, a, d))

seg = path(star, p, q)
print("\nthe path from p to q traverses edges", list(seg.edges),
      "through joints", list(seg.joints))
print("its length equals the distance:", seg.length == star.distance(p, q))

# A complete geodesic through the flag (c, {edge c-a, edge c-b}): origin at
# c, positive direction into the smaller edge id (toward a).
flag = star.flag("c", 0, 1)
line = geodesic_through_flag(star, flag)
print("\ncomplete geodesic through the flag:", list(line.edges))
print("coordinate of a:", line.coordinate_of(a), " of b:", line.coordinate_of(b))
print("d projects to:", line.project(d), "(the hub)")

perp = perpendicular(star, flag)
print("perpendicular of the flag: vertices", sorted(perp.vertices),
      "- exactly the points projecting onto c")

print("\ncomparison-triangle inequality (squared, exact):")
res = check_cat0_triangle(star, a, b, d, F(1, 2))
print(f"  non-aligned tips: lhs = {res.lhs}  <  rhs = {res.rhs}  (strict: {res.strict})")
y_between = star.point(0, F(1, 2))
res = check_cat0_triangle(star, a, y_between, c, F(1, 4))
print(f"  aligned triple:   lhs = {res.lhs}  =  rhs = {res.rhs} "
      f"(aligned: {points_aligned(star, a, y_between, c)})")
