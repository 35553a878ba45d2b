"""Exact quadratic optimal transport between finitely supported measures.

The solver is a transportation simplex over rationals with Bland's rule
for anti-cycling; distances enter only through their squares, so every
quantity stays an exact Fraction. ``w2_squared_enumerated`` is an
independent oracle that minimizes over all extreme points of the
transportation polytope and is intended for cross-checks at small support.

Displacement interpolation, dilation from a Dirac mass and its extension
past time 1 all move atoms along explicit constant-speed trajectories;
branching choices during extension always take the smallest incident edge
identifier, which makes every output deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CompletenessError, MeasureError, SolverError
from .geodesics import Geodesic, path
from .measures import Measure, dirac, make_measure
from .tree import Tree, TreePoint, point_sort_key

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class TransportPlan:
    """A coupling of two measures with its exact squared cost."""

    source: Measure
    target: Measure
    couplings: tuple[tuple[TreePoint, TreePoint, Fraction], ...]
    squared_cost: Fraction


# ---------------------------------------------------------------------- #
# Exact transportation simplex                                              #
# ---------------------------------------------------------------------- #

def _northwest_corner(supply, demand):
    """Initial basic feasible solution with exactly n+m-1 basis cells."""
    n, m = len(supply), len(demand)
    s = list(supply)
    d = list(demand)
    alloc: dict[tuple[int, int], Fraction] = {}
    basis = []
    i = j = 0
    while True:
        q = min(s[i], d[j])
        alloc[(i, j)] = q
        basis.append((i, j))
        s[i] -= q
        d[j] -= q
        if i == n - 1 and j == m - 1:
            break
        if s[i] == 0 and i < n - 1:
            i += 1
        elif j < m - 1:
            j += 1
        else:
            i += 1
    return alloc, set(basis)


def _potentials(n, m, cost, basis):
    """Dual potentials u, v with u_i + v_j = c_ij on the basis tree."""
    cols_of_row = [[] for _ in range(n)]
    rows_of_col = [[] for _ in range(m)]
    for (i, j) in basis:
        cols_of_row[i].append(j)
        rows_of_col[j].append(i)
    u = [None] * n
    v = [None] * m
    u[0] = _ZERO
    frontier = [("r", 0)]
    while frontier:
        kind, idx = frontier.pop()
        if kind == "r":
            for j in cols_of_row[idx]:
                if v[j] is None:
                    v[j] = cost[idx][j] - u[idx]
                    frontier.append(("c", j))
        else:
            for i in rows_of_col[idx]:
                if u[i] is None:
                    u[i] = cost[i][idx] - v[idx]
                    frontier.append(("r", i))
    if any(x is None for x in u) or any(x is None for x in v):
        raise SolverError("basis does not span the bipartite graph")
    return u, v


def _pivot_cycle(entering, basis, n, m):
    """The unique alternating cycle closed by the entering cell.

    Returns the cycle cells starting at the entering cell; signs alternate
    +, -, +, ... along the returned order.
    """
    i0, j0 = entering
    cols_of_row = {}
    rows_of_col = {}
    for (i, j) in basis:
        cols_of_row.setdefault(i, []).append(j)
        rows_of_col.setdefault(j, []).append(i)
    start = ("r", i0)
    goal = ("c", j0)
    parent = {start: None}
    frontier = [start]
    while frontier and goal not in parent:
        nxt = []
        for node in frontier:
            kind, idx = node
            neighbors = (
                (("c", j) for j in cols_of_row.get(idx, ()))
                if kind == "r"
                else (("r", i) for i in rows_of_col.get(idx, ()))
            )
            for nb in neighbors:
                if nb not in parent:
                    parent[nb] = node
                    nxt.append(nb)
        frontier = nxt
    if goal not in parent:
        raise SolverError("entering cell closes no cycle; basis is broken")
    nodes = [goal]
    while nodes[-1] != start:
        nodes.append(parent[nodes[-1]])
    nodes.reverse()
    cells_on_path = []
    for a, b in zip(nodes, nodes[1:]):
        (ka, ia), (kb, ib) = a, b
        cells_on_path.append((ia, ib) if ka == "r" else (ib, ia))
    return [entering] + list(reversed(cells_on_path))


def _transportation_simplex(supply, demand, cost):
    """Exact min-cost allocation for equal total supply and demand.

    Bland's rule: the entering cell is the first (row-major) with negative
    reduced cost; the leaving cell is the lexicographically smallest among
    the minimum-allocation cells on the minus side of the pivot cycle.
    """
    n, m = len(supply), len(demand)
    alloc, basis = _northwest_corner(supply, demand)
    max_pivots = 1000 + 100 * n * m
    for _ in range(max_pivots):
        u, v = _potentials(n, m, cost, basis)
        entering = None
        for i in range(n):
            for j in range(m):
                if (i, j) not in basis and cost[i][j] - u[i] - v[j] < 0:
                    entering = (i, j)
                    break
            if entering is not None:
                break
        if entering is None:
            return {cell: q for cell, q in alloc.items() if q > 0}
        cycle = _pivot_cycle(entering, basis, n, m)
        minus = cycle[1::2]
        theta = min(alloc[c] for c in minus)
        leaving = min(c for c in minus if alloc[c] == theta)
        for idx, cell in enumerate(cycle):
            delta = theta if idx % 2 == 0 else -theta
            alloc[cell] = alloc.get(cell, _ZERO) + delta
        basis.remove(leaving)
        basis.add(entering)
        del alloc[leaving]
    raise SolverError("pivot limit exceeded")


def _cost_matrix(tree, sources, targets):
    matrix = []
    for p, _ in sources:
        row = []
        for q, _ in targets:
            d = tree.distance(p, q)
            row.append(d * d)
        matrix.append(row)
    return matrix


def optimal_plan(tree: Tree, mu: Measure, nu: Measure) -> TransportPlan:
    """An optimal coupling for the squared-distance cost.

    From (or to) a Dirac mass the plan is the unique coupling; identical
    measures pair each atom with itself. Everything else goes through the
    exact transportation simplex.
    """
    if mu.atoms == nu.atoms:
        couplings = tuple((p, p, m) for p, m in mu.atoms)
        return TransportPlan(mu, nu, couplings, _ZERO)
    if len(mu) == 1:
        x, _ = mu.atoms[0]
        couplings = tuple((x, q, m) for q, m in nu.atoms)
    elif len(nu) == 1:
        y, _ = nu.atoms[0]
        couplings = tuple((p, y, m) for p, m in mu.atoms)
    else:
        cost = _cost_matrix(tree, mu.atoms, nu.atoms)
        alloc = _transportation_simplex(
            [m for _, m in mu.atoms], [m for _, m in nu.atoms], cost
        )
        couplings = tuple(
            (mu.atoms[i][0], nu.atoms[j][0], q)
            for (i, j), q in sorted(alloc.items())
        )
    total = _ZERO
    for p, q, mass in couplings:
        d = tree.distance(p, q)
        total += mass * d * d
    _check_marginals(mu, nu, couplings)
    return TransportPlan(mu, nu, couplings, total)


def _check_marginals(mu, nu, couplings):
    left: dict[TreePoint, Fraction] = {}
    right: dict[TreePoint, Fraction] = {}
    for p, q, mass in couplings:
        left[p] = left.get(p, _ZERO) + mass
        right[q] = right.get(q, _ZERO) + mass
    if left != dict(mu.atoms) or right != dict(nu.atoms):
        raise SolverError("plan marginals do not match the measures")


def w2_squared(tree: Tree, mu: Measure, nu: Measure) -> Fraction:
    """The exact squared Wasserstein-2 distance.

    The unsquared distance is irrational in general; comparisons should be
    made through squares (see ``w2_triangle_holds`` in the verify module).
    """
    return optimal_plan(tree, mu, nu).squared_cost


def w2_squared_enumerated(tree: Tree, mu: Measure, nu: Measure) -> Fraction:
    """Brute-force oracle: minimum cost over all extreme points of the
    transportation polytope, found by enumerating saturating allocation
    orders with memoization. Exponential; supports of size > 6 are refused.
    """
    if len(mu) > 6 or len(nu) > 6:
        raise ValueError("enumeration oracle is limited to small supports")
    cost = _cost_matrix(tree, mu.atoms, nu.atoms)
    supplies = tuple(m for _, m in mu.atoms)
    demands = tuple(m for _, m in nu.atoms)
    memo: dict = {}

    def best(s, d):
        if all(x == 0 for x in s):
            return _ZERO
        key = (s, d)
        cached = memo.get(key)
        if cached is not None:
            return cached
        result = None
        for i, si in enumerate(s):
            if si == 0:
                continue
            for j, dj in enumerate(d):
                if dj == 0:
                    continue
                q = min(si, dj)
                ns = s[:i] + (si - q,) + s[i + 1:]
                nd = d[:j] + (dj - q,) + d[j + 1:]
                candidate = q * cost[i][j] + best(ns, nd)
                if result is None or candidate < result:
                    result = candidate
        memo[key] = result
        return result

    return best(supplies, demands)


# ---------------------------------------------------------------------- #
# Constant-speed trajectories                                               #
# ---------------------------------------------------------------------- #

class _Trajectory:
    """Constant-speed motion from ``src`` through ``dst``, continued past
    ``dst`` on demand.

    Speed is d(src, dst) per unit time, so ``position(1) == dst``.
    Continuation follows the smallest-edge-id rule at branch vertices;
    with ``bounce=True`` a leaf reverses the direction instead of failing,
    which keeps the walk constant-speed in trees with leaves.
    """

    def __init__(self, tree: Tree, src: TreePoint, dst: TreePoint, bounce: bool = False):
        self.tree = tree
        self.src = tree.canonical_point(src)
        self.dst = tree.canonical_point(dst)
        self.bounce = bounce
        if self.src == self.dst:
            self.segment = None
            self.unit = _ZERO
        else:
            self.segment = path(tree, self.src, self.dst)
            self.unit = self.segment.length
        self._extension: list[tuple[Fraction, Fraction | None, int, Fraction, int]] = []
        self._covered = _ZERO
        self._cursor = None

    def position(self, t) -> TreePoint:
        t = Fraction(t)
        if t < 0:
            raise ValueError(f"negative time {t}")
        if self.unit == 0:
            return self.src
        s = t * self.unit
        if s <= self.unit:
            return self.segment.point_at(s)
        extra = s - self.unit
        while not self._covers(extra):
            if not self._grow():
                raise CompletenessError(
                    "trajectory hits a leaf; the tree is not geodesically complete"
                )
        for arc_from, arc_to, eid, offset0, sign in self._extension:
            if arc_to is None or extra <= arc_to:
                return self.tree.point(eid, offset0 + sign * (extra - arc_from))
        raise SolverError("trajectory bookkeeping failure")  # pragma: no cover

    def _covers(self, extra: Fraction) -> bool:
        if not self._extension:
            return False
        return self._extension[-1][1] is None or self._covered >= extra

    def _grow(self) -> bool:
        """Materialize one more extension segment; False when blocked."""
        if self._cursor is None:
            self._cursor = self.segment.exit_cursor()
        state = self._cursor
        if state[0] == "vertex":
            _, vertex, via = state
            nxt = next(
                (eid for eid in self.tree.incident_edges(vertex) if eid != via), None
            )
            if nxt is None:
                if not self.bounce:
                    return False
                nxt = via
            rec = self.tree.edge(nxt)
            offset0 = rec.endpoint_offset(vertex)
            sign = 1 if offset0 == 0 else -1
        else:
            _, eid, offset0, sign = state
            rec = self.tree.edge(eid)
        if sign == 1:
            capacity = None if rec.length is None else rec.length - offset0
        else:
            capacity = offset0
        arc_from = self._covered
        if capacity is None:
            self._extension.append((arc_from, None, rec.id, offset0, sign))
            self._cursor = ("blocked",)
            return True
        arc_to = arc_from + capacity
        self._extension.append((arc_from, arc_to, rec.id, offset0, sign))
        self._covered = arc_to
        landing = rec.u if sign == -1 else rec.v
        self._cursor = ("vertex", landing, rec.id)
        return True


def _move_atoms(tree, couplings, t, bounce=False) -> Measure:
    merged: dict[TreePoint, Fraction] = {}
    for src, dst, mass in couplings:
        spot = _Trajectory(tree, src, dst, bounce=bounce).position(t)
        merged[spot] = merged.get(spot, _ZERO) + mass
    ordered = tuple(sorted(merged.items(), key=lambda item: point_sort_key(item[0])))
    return Measure(ordered)


def interpolate(tree: Tree, plan: TransportPlan, t) -> Measure:
    """Displacement interpolation: each coupled mass slides a fraction ``t``
    along its path. ``t`` must lie in [0, 1]."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"interpolation parameter {t} outside [0, 1]")
    return _move_atoms(tree, plan.couplings, t)


def dilate(tree: Tree, x: TreePoint, mu: Measure, t) -> Measure:
    """The point on the Wasserstein geodesic from the Dirac at ``x`` to
    ``mu`` at parameter ``t`` in [0, 1]."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"dilation parameter {t} outside [0, 1]")
    plan = optimal_plan(tree, dirac(tree, x), mu)
    return _move_atoms(tree, plan.couplings, t)


def extend_from_dirac(tree: Tree, x: TreePoint, mu: Measure, t) -> Measure:
    """Continue the geodesic issued from the Dirac at ``x`` to any time
    ``t ≥ 0``: for t ≤ 1 this is the dilation; beyond 1 each atom keeps
    moving past its target along the deterministic extension."""
    t = Fraction(t)
    if t < 0:
        raise ValueError(f"negative time {t}")
    if t > 1 and not tree.geodesically_complete:
        raise CompletenessError("extension beyond the target needs a leafless tree")
    plan = optimal_plan(tree, dirac(tree, x), mu)
    return _move_atoms(tree, plan.couplings, t)


class WassersteinGeodesic:
    """A measure-valued geodesic: a plan plus per-coupling trajectories.

    Evaluation at times s, t inside the interval satisfies
    W²(μ_s, μ_t) = (t−s)²·W²(μ_0, μ_1) exactly.
    """

    def __init__(self, tree: Tree, plan: TransportPlan, horizon=_ONE):
        horizon = Fraction(horizon)
        if horizon <= 0:
            raise ValueError("horizon must be positive")
        if horizon > 1 and not tree.geodesically_complete:
            raise CompletenessError("extension beyond time 1 needs a leafless tree")
        self.tree = tree
        self.plan = plan
        self.interval = (_ZERO, horizon)
        self._trajectories = tuple(
            (_Trajectory(tree, src, dst), mass) for src, dst, mass in plan.couplings
        )

    @classmethod
    def from_plan(cls, tree: Tree, plan: TransportPlan) -> "WassersteinGeodesic":
        return cls(tree, plan, _ONE)

    @classmethod
    def from_dirac(cls, tree: Tree, x: TreePoint, mu: Measure, horizon=_ONE):
        plan = optimal_plan(tree, dirac(tree, x), mu)
        return cls(tree, plan, horizon)

    def at(self, t) -> Measure:
        t = Fraction(t)
        lo, hi = self.interval
        if not lo <= t <= hi:
            raise ValueError(f"time {t} outside parameter interval [{lo}, {hi}]")
        merged: dict[TreePoint, Fraction] = {}
        for trajectory, mass in self._trajectories:
            spot = trajectory.position(t)
            merged[spot] = merged.get(spot, _ZERO) + mass
        ordered = tuple(sorted(merged.items(), key=lambda item: point_sort_key(item[0])))
        return Measure(ordered)


# ---------------------------------------------------------------------- #
# Optimality certificates                                                   #
# ---------------------------------------------------------------------- #

@dataclass(frozen=True)
class CycleViolation:
    """A cycle of coupled pairs whose shifted cost beats the plan's cost.

    Falsy, so ``is_cyclically_monotone`` reads naturally in conditions.
    """

    pairs: tuple[tuple[TreePoint, TreePoint], ...]
    base_cost: Fraction
    shifted_cost: Fraction

    def __bool__(self) -> bool:
        return False


def is_cyclically_monotone(tree: Tree, plan: TransportPlan, max_cycle_len: int = 2,
                           exhaustive: bool = False):
    """Check all cycles of support pairs up to ``max_cycle_len``.

    Returns True when no cycle improves, else a :class:`CycleViolation`
    witness. ``exhaustive=True`` checks every cycle length but refuses
    supports larger than 8.
    """
    pairs = [(p, q) for p, q, _ in plan.couplings]
    n = len(pairs)
    if exhaustive:
        if n > 8:
            raise ValueError("exhaustive mode is bounded to supports of size 8")
        top = n
    else:
        top = min(max_cycle_len, n)

    def d2(a, b):
        d = tree.distance(a, b)
        return d * d

    own = [d2(p, q) for p, q in pairs]
    for length in range(2, top + 1):
        for combo in itertools.combinations(range(n), length):
            base = sum(own[k] for k in combo)
            first = combo[0]
            for rest in itertools.permutations(combo[1:]):
                order = (first,) + rest
                shifted = sum(
                    d2(pairs[order[k]][0], pairs[order[(k + 1) % length]][1])
                    for k in range(length)
                )
                if shifted < base:
                    return CycleViolation(
                        tuple(pairs[k] for k in order), base, shifted
                    )
    return True


@dataclass(frozen=True)
class NonextendabilityWitness:
    """The two-cycle certificate that a geodesic toward a Dirac inside the
    support cannot continue past time 1.

    ``continued_cost`` is the travel cost of the continued pair,
    ((1+ε)·d(y′, y))²; ``swapped_cost`` is d²(y′, y) + d²(y, y″). Any
    constant-speed continuation has d(y, y″) ≤ ε·d(y′, y), so the strict
    convexity (1+ε)² > 1+ε² makes the violation unavoidable for ε > 0.
    """

    y_prime: TreePoint
    y: TreePoint
    y_continued: TreePoint
    epsilon: Fraction
    continued_cost: Fraction
    swapped_cost: Fraction

    @property
    def violated(self) -> bool:
        return self.continued_cost > self.swapped_cost

    @property
    def cycle(self):
        return ((self.y_prime, self.y_continued), (self.y, self.y))


def check_nonextendable(tree: Tree, mu0: Measure, y: TreePoint, epsilon=_ONE,
                        proposed_continuation: TreePoint | None = None) -> NonextendabilityWitness:
    """Witness that the geodesic from ``mu0`` to the Dirac at ``y`` (a
    support point) admits no extension past time 1.

    The stationary atom at ``y`` pairs with itself; a moving atom ``y′``
    continued to time 1+ε lands at ``y″``. Swapping targets in that
    two-cycle is strictly cheaper than the continued transport whenever
    ε > 0. By default ``y″`` follows the deterministic smallest-edge-id
    continuation (reversing at leaves); a caller may propose any ``y″``
    reachable at constant speed instead.
    """
    y = tree.canonical_point(y)
    if mu0.is_dirac:
        raise MeasureError("the measure is a Dirac mass; its geodesics do extend")
    if mu0.mass_at(y) == 0:
        raise MeasureError(f"{y!r} is not in the support of the measure")
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise ValueError(f"negative extension {epsilon}")

    y_prime = next(
        p for p in sorted(mu0.support, key=point_sort_key) if p != y
    )
    d = tree.distance(y_prime, y)
    if proposed_continuation is None:
        y2 = _Trajectory(tree, y_prime, y, bounce=True).position(1 + epsilon)
    else:
        y2 = tree.canonical_point(proposed_continuation)
        if tree.distance(y, y2) > epsilon * d:
            raise MeasureError(
                "proposed continuation is not reachable at constant speed"
            )
    travel = (1 + epsilon) * d
    d_tail = tree.distance(y, y2)
    return NonextendabilityWitness(
        y_prime=y_prime,
        y=y,
        y_continued=y2,
        epsilon=epsilon,
        continued_cost=travel * travel,
        swapped_cost=d * d + d_tail * d_tail,
    )
