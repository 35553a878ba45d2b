"""Exact quadratic optimal transport between measures on a tree.

Squared Wasserstein distances, optimal plans (with the brute-force
cross-check), displacement interpolation, dilation from a Dirac mass, the
extension of such geodesics past their target, and the two-cycle witness
showing why geodesics onto a Dirac inside the support cannot extend.
"""

from fractions import Fraction as F

from treeradon import (
    build_tree,
    check_nonextendable,
    dilate,
    dirac,
    extend_from_dirac,
    interpolate,
    is_cyclically_monotone,
    make_measure,
    optimal_plan,
    w2_squared,
    w2_squared_enumerated,
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
a, b, c, d = (star.vertex_point(v) for v in "abcd")

mu = make_measure(star, [(a, F(1, 2)), (b, F(1, 2))])
nu = make_measure(star, [(b, F(1, 4)), (d, F(3, 4))])

plan = optimal_plan(star, mu, nu)
print("W2^2(mu, nu) =", plan.squared_cost)
print("optimal couplings:")
for src, dst, mass in plan.couplings:
    print(f"  {mass} moves {src} -> {dst}")
print("brute-force enumeration agrees:",
      plan.squared_cost == w2_squared_enumerated(star, mu, nu))
print("cyclically monotone:", is_cyclically_monotone(star, plan, exhaustive=True))

print("\ndisplacement interpolation at t = 1/2:")
print(" ", interpolate(star, plan, F(1, 2)).atoms)

print("\ndilation from the hub toward mu:")
for t in (F(0), F(1, 2), F(1)):
    print(f"  t = {t}:", dilate(star, c, mu, t).atoms)

print("\nextension past the target (atoms continue onto the rays):")
ext = extend_from_dirac(star, c, mu, F(2))
print("  t = 2:", ext.atoms)
base = w2_squared(star, dirac(star, c), mu)
print("  exact scaling: W2^2(mu_0, mu_2) =", w2_squared(star, dirac(star, c), ext),
      "= 4 x", base)

print("\nthe reverse direction cannot extend: moving mu onto the Dirac at b")
witness = check_nonextendable(star, mu, b, epsilon=F(1, 2))
print(f"  continued pair {witness.y_prime} -> {witness.y_continued}")
print(f"  travel cost {witness.continued_cost} > swapped cost {witness.swapped_cost}:",
      witness.violated)
