"""Geodesics on metric trees: paths, projections, perpendiculars, and the
CAT(0) comparison.

A :class:`Geodesic` is an injective path described by the edges it
traverses with the junction vertices between them. A ``start``/``end`` of
None means the path escapes to infinity along a ray, so the same class
covers finite segments, maximal geodesics in trees with leaves, and
complete geodesics in leafless trees. Each geodesic carries an arc-length
coordinate system (an origin point and an orientation given by edge
order); for geodesics built through a flag the origin is the flag vertex
and the positive direction heads into the smaller edge identifier.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import CompletenessError, GeodesicError, PointLocationError
from .tree import Flag, Subtree, Tree, TreePoint, VertexId

_ZERO = Fraction(0)


class Geodesic:
    """An injective path with an exact arc-length coordinate system.

    Coordinates increase from ``start`` toward ``end``; the ``origin``
    point has coordinate 0. Instances are immutable and safe to share.
    """

    __slots__ = (
        "tree", "edges", "joints", "start", "end", "origin",
        "_edge_index", "_joint_raw", "_joint_raw_map",
        "_start_raw", "_end_raw", "_origin_raw", "_single_dir",
    )

    def __init__(self, tree: Tree, edges, joints, start, end, origin=None) -> None:
        self.tree = tree
        self.edges = tuple(edges)
        self.joints = tuple(joints)
        if not self.edges:
            raise GeodesicError("a geodesic traverses at least one edge")
        if len(self.joints) != len(self.edges) - 1:
            raise GeodesicError("junction count must be edge count minus one")
        if len(set(self.edges)) != len(self.edges):
            raise GeodesicError("a geodesic cannot traverse an edge twice")
        if len(set(self.joints)) != len(self.joints):
            raise GeodesicError("a geodesic cannot revisit a vertex")
        for i, j in enumerate(self.joints):
            left = tree.edge(self.edges[i])
            right = tree.edge(self.edges[i + 1])
            if j not in left.endpoints() or j not in right.endpoints():
                raise GeodesicError(
                    f"junction {j!r} does not join edges {left.id} and {right.id}"
                )

        self.start = tree.canonical_point(start) if start is not None else None
        self.end = tree.canonical_point(end) if end is not None else None
        if self.start is None and not tree.edge(self.edges[0]).is_ray:
            raise GeodesicError("an infinite end requires a ray edge")
        if self.end is None and not tree.edge(self.edges[-1]).is_ray:
            raise GeodesicError("an infinite end requires a ray edge")

        # Raw arc-length coordinates, anchored at the first junction (or at
        # the start point for single-edge segments). Interior edges of a
        # multi-edge geodesic are traversed in full, hence finite.
        self._edge_index = {eid: i for i, eid in enumerate(self.edges)}
        if self.joints:
            raw = [_ZERO]
            for i in range(1, len(self.joints)):
                length = tree.edge(self.edges[i]).length
                if length is None:
                    raise GeodesicError("an interior edge of a geodesic cannot be a ray")
                raw.append(raw[-1] + length)
            self._joint_raw = raw
            self._joint_raw_map = dict(zip(self.joints, raw))
            self._single_dir = 0
            if self.start is None:
                self._start_raw = None
            else:
                o = self._offset_on(self.start, self.edges[0])
                oj = tree.edge(self.edges[0]).endpoint_offset(self.joints[0])
                self._start_raw = -abs(o - oj)
            if self.end is None:
                self._end_raw = None
            else:
                o = self._offset_on(self.end, self.edges[-1])
                oj = tree.edge(self.edges[-1]).endpoint_offset(self.joints[-1])
                self._end_raw = raw[-1] + abs(o - oj)
        else:
            if self.start is None or self.end is None:
                raise GeodesicError("a single-edge geodesic needs both endpoints")
            self._joint_raw = []
            self._joint_raw_map = {}
            o_start = self._offset_on(self.start, self.edges[0])
            o_end = self._offset_on(self.end, self.edges[0])
            self._single_dir = -1 if o_end < o_start else 1
            self._start_raw = _ZERO
            self._end_raw = abs(o_end - o_start)

        if origin is None:
            origin = self.start if self.start is not None else TreePoint(vertex=self.joints[0])
        self.origin = tree.canonical_point(origin)
        origin_raw = self._raw_of(self.origin)
        if origin_raw is None:
            raise GeodesicError("origin must lie on the geodesic")
        self._origin_raw = origin_raw

    # ------------------------------------------------------------------ #

    def _offset_on(self, point: TreePoint, edge_id: int) -> Fraction:
        """Offset of a point in the coordinate of a specific edge it lies on."""
        rec = self.tree.edge(edge_id)
        if point.is_vertex:
            return rec.endpoint_offset(point.vertex)
        if point.edge != edge_id:
            raise GeodesicError(f"point {point!r} is not on edge {edge_id}")
        return point.offset

    def _raw_of(self, point: TreePoint):
        """Raw coordinate of a canonical point, or None when off the geodesic."""
        if point.is_vertex:
            v = point.vertex
            raw = self._joint_raw_map.get(v)
            if raw is not None:
                return raw
            if self.start is not None and self.start.is_vertex and self.start.vertex == v:
                return self._start_raw
            if self.end is not None and self.end.is_vertex and self.end.vertex == v:
                return self._end_raw
            return None
        i = self._edge_index.get(point.edge)
        if i is None:
            return None
        if not self.joints:
            raw = self._single_dir * (point.offset - self._offset_on(self.start, self.edges[0]))
        elif i == 0:
            oj = self.tree.edge(self.edges[0]).endpoint_offset(self.joints[0])
            raw = -abs(point.offset - oj)
        else:
            oj = self.tree.edge(self.edges[i]).endpoint_offset(self.joints[i - 1])
            raw = self._joint_raw[i - 1] + abs(point.offset - oj)
        if self._start_raw is not None and raw < self._start_raw:
            return None
        if self._end_raw is not None and raw > self._end_raw:
            return None
        return raw

    # ------------------------------------------------------------------ #
    # Public geometry                                                      #
    # ------------------------------------------------------------------ #

    @property
    def length(self) -> Fraction | None:
        """Total length, or None when an end is infinite."""
        if self._start_raw is None or self._end_raw is None:
            return None
        return self._end_raw - self._start_raw

    @property
    def is_complete(self) -> bool:
        """Both ends escape to infinity (a full line)."""
        return self.start is None and self.end is None

    @property
    def is_maximal(self) -> bool:
        """No extension exists: each end is infinite or stops at a leaf."""
        for endpoint in (self.start, self.end):
            if endpoint is None:
                continue
            if not endpoint.is_vertex or self.tree.valency(endpoint.vertex) != 1:
                return False
        return True

    def contains(self, point: TreePoint) -> bool:
        return self._raw_of(self.tree.canonical_point(point)) is not None

    def coordinate_of(self, point: TreePoint) -> Fraction:
        raw = self._raw_of(self.tree.canonical_point(point))
        if raw is None:
            raise GeodesicError(f"point {point!r} is not on the geodesic")
        return raw - self._origin_raw

    def point_at(self, coordinate) -> TreePoint:
        """The point with the given arc-length coordinate."""
        raw = Fraction(coordinate) + self._origin_raw
        if self._start_raw is not None and raw < self._start_raw:
            raise GeodesicError(f"coordinate {coordinate} is before the start")
        if self._end_raw is not None and raw > self._end_raw:
            raise GeodesicError(f"coordinate {coordinate} is past the end")
        if not self.joints:
            o_start = self._offset_on(self.start, self.edges[0])
            return self.tree.point(self.edges[0], o_start + self._single_dir * raw)
        t = bisect_left(self._joint_raw, raw)
        if t == 0:
            edge_idx = 0
            junction = self.joints[0]
            dist = self._joint_raw[0] - raw
        else:
            edge_idx = t
            junction = self.joints[t - 1]
            dist = raw - self._joint_raw[t - 1]
        rec = self.tree.edge(self.edges[edge_idx])
        oj = rec.endpoint_offset(junction)
        offset = dist if oj == 0 else oj - dist
        return self.tree.point(rec.id, offset)

    def _projection_candidates(self) -> list[TreePoint]:
        cands = [TreePoint(vertex=j) for j in self.joints]
        if self.start is not None:
            cands.append(self.start)
        if self.end is not None:
            cands.append(self.end)
        return cands

    def project(self, point: TreePoint) -> TreePoint:
        """Nearest point of the geodesic (unique since trees are CAT(0)).

        For a point off the geodesic the nearest point is the branch point
        where the connecting path meets it, which is always a junction
        vertex or a finite endpoint; the minimum over those candidates is
        therefore exact and unique.
        """
        point = self.tree.canonical_point(point)
        if self.contains(point):
            return point
        best = None
        best_d = None
        for cand in self._projection_candidates():
            d = self.tree.distance(point, cand)
            if best_d is None or d < best_d:
                best_d, best = d, cand
        if best is None:
            raise GeodesicError("geodesic has no projection candidates")
        return best

    def exit_cursor(self):
        """Continuation state past the finite end, for constant-speed walks.

        Returns ``("vertex", v, via_edge)`` when the end sits on a vertex,
        else ``("edge", edge_id, offset, sign)`` with the travel direction
        in the edge's own coordinate.
        """
        if self.end is None:
            raise GeodesicError("the geodesic already runs to infinity")
        last = self.edges[-1]
        if self.end.is_vertex:
            return ("vertex", self.end.vertex, last)
        if self.joints:
            oj = self.tree.edge(last).endpoint_offset(self.joints[-1])
            sign = 1 if self.end.offset > oj else -1
        else:
            sign = self._single_dir
        return ("edge", last, self.end.offset, sign)

    # ------------------------------------------------------------------ #

    def __eq__(self, other) -> bool:
        if not isinstance(other, Geodesic):
            return NotImplemented
        return (
            self.tree is other.tree
            and self.edges == other.edges
            and self.joints == other.joints
            and self.start == other.start
            and self.end == other.end
            and self.origin == other.origin
        )

    def __hash__(self) -> int:
        return hash((id(self.tree), self.edges, self.joints, self.start, self.end, self.origin))

    def __repr__(self) -> str:
        ends = f"{self.start!r}..{self.end!r}"
        return f"Geodesic(edges={list(self.edges)}, {ends})"


# ---------------------------------------------------------------------- #
# Paths and midpoints                                                      #
# ---------------------------------------------------------------------- #


def path(tree: Tree, p: TreePoint, q: TreePoint) -> Geodesic:
    """The unique injective path from ``p`` to ``q`` as a geodesic segment.

    The origin sits at ``p``, so coordinates run from 0 to the distance.
    """
    p = tree.canonical_point(p)
    q = tree.canonical_point(q)
    if p == q:
        eid = p.edge if not p.is_vertex else tree.incident_edges(p.vertex)[0]
        return Geodesic(tree, [eid], [], p, p)
    if not p.is_vertex and not q.is_vertex and p.edge == q.edge:
        return Geodesic(tree, [p.edge], [], p, q)

    q_anchors = tree._anchors(q)
    best = None
    for a, da in tree._anchors(p).items():
        dist, _ = tree._maps_from(a)
        for b, db in q_anchors.items():
            total = da + dist[b] + db
            if best is None or total < best[0]:
                best = (total, a, b)
    _, a, b = best

    _, parents = tree._maps_from(a)
    chain_vertices = [b]
    chain_edges = []
    w = b
    while w != a:
        pv, pe = parents[w]
        chain_edges.append(pe)
        chain_vertices.append(pv)
        w = pv
    chain_vertices.reverse()
    chain_edges.reverse()

    # Junctions are every chain vertex that is not itself the start or end.
    edges = list(chain_edges)
    lo, hi = 0, len(chain_vertices)
    if p.is_vertex:
        start = tree.vertex_point(a)
        lo = 1
    else:
        edges.insert(0, p.edge)
        start = p
    if q.is_vertex:
        end = tree.vertex_point(b)
        hi -= 1
    else:
        edges.append(q.edge)
        end = q
    return Geodesic(tree, edges, chain_vertices[lo:hi], start, end)


def midpoint(tree: Tree, p: TreePoint, q: TreePoint) -> TreePoint:
    """The point halfway along the path from ``p`` to ``q``."""
    segment = path(tree, p, q)
    return segment.point_at(segment.length / 2)


def project(tree: Tree, geodesic: Geodesic, point: TreePoint) -> TreePoint:
    if geodesic.tree is not tree:
        raise GeodesicError("geodesic belongs to a different tree")
    return geodesic.project(point)


# ---------------------------------------------------------------------- #
# Flags, perpendiculars, deterministic complete geodesics                   #
# ---------------------------------------------------------------------- #


def perpendicular(tree: Tree, flag: Flag) -> Subtree:
    """The flag vertex together with the components avoiding both flag edges.

    This is the level set of the projection onto any geodesic running
    through the flag: exactly the points that project onto the flag vertex.
    """
    flag = tree.validate_flag(flag)
    banned = flag.edge_pair
    vertices = {flag.vertex}
    edges = set()
    stack = [flag.vertex]
    while stack:
        w = stack.pop()
        for eid in tree.incident_edges(w):
            if w == flag.vertex and eid in banned:
                continue
            if eid in edges:
                continue
            edges.add(eid)
            other = tree.edge(eid).other_end(w)
            if other is not None and other not in vertices:
                vertices.add(other)
                stack.append(other)
    return Subtree(root=flag.vertex, vertices=frozenset(vertices), edges=frozenset(edges))


def _walk_to_infinity(tree: Tree, origin: VertexId, first_edge: int):
    """Follow ``first_edge`` out of ``origin``, then repeatedly the
    smallest-id incident edge, until entering a ray or hitting a leaf.

    Returns ``(edges, joints, terminal)`` where ``terminal`` is the leaf
    vertex reached, or None when the walk escapes along a ray.
    """
    edges = [first_edge]
    joints = []
    via = first_edge
    current = tree.edge(first_edge).other_end(origin)
    while current is not None:
        nxt = next((eid for eid in tree.incident_edges(current) if eid != via), None)
        if nxt is None:
            return edges, joints, current
        joints.append(current)
        edges.append(nxt)
        via = nxt
        current = tree.edge(nxt).other_end(current)
    return edges, joints, None


def geodesic_through_flag(tree: Tree, flag: Flag) -> Geodesic:
    """The deterministic complete geodesic through a flag.

    The origin is the flag vertex; the positive direction heads into the
    smaller of the two flag edges, and every branching choice takes the
    smallest incident edge id.
    """
    flag = tree.validate_flag(flag)
    if not tree.geodesically_complete:
        raise CompletenessError("complete geodesics need a tree without leaves")
    pos_edge, neg_edge = flag.edges
    pos_edges, pos_joints, _ = _walk_to_infinity(tree, flag.vertex, pos_edge)
    neg_edges, neg_joints, _ = _walk_to_infinity(tree, flag.vertex, neg_edge)
    edges = list(reversed(neg_edges)) + pos_edges
    joints = list(reversed(neg_joints)) + [flag.vertex] + pos_joints
    return Geodesic(tree, edges, joints, None, None, origin=tree.vertex_point(flag.vertex))


def geodesic_through_edge(tree: Tree, edge_id: int) -> Geodesic:
    """A deterministic maximal geodesic traversing the whole given edge.

    The origin is the edge's designated endpoint ``u`` and the positive
    direction runs into the edge; continuations take smallest edge ids.
    """
    rec = tree.edge(edge_id)
    pos_edges, pos_joints, pos_term = _walk_to_infinity(tree, rec.u, edge_id)
    others = [eid for eid in tree.incident_edges(rec.u) if eid != edge_id]
    if others:
        neg_edges, neg_joints, neg_term = _walk_to_infinity(tree, rec.u, others[0])
        edges = list(reversed(neg_edges)) + pos_edges
        joints = list(reversed(neg_joints)) + [rec.u] + pos_joints
        start = None if neg_term is None else tree.vertex_point(neg_term)
    else:
        edges = pos_edges
        joints = pos_joints
        start = tree.vertex_point(rec.u)
    end = None if pos_term is None else tree.vertex_point(pos_term)
    return Geodesic(tree, edges, joints, start, end, origin=tree.vertex_point(rec.u))


# ---------------------------------------------------------------------- #
# Triangle comparison                                                       #
# ---------------------------------------------------------------------- #


def points_aligned(tree: Tree, x: TreePoint, y: TreePoint, z: TreePoint) -> bool:
    """True iff the three points lie on a common geodesic.

    In a tree that happens exactly when one of them lies between the other
    two, i.e. one triangle inequality is an equality.
    """
    dxy = tree.distance(x, y)
    dyz = tree.distance(y, z)
    dxz = tree.distance(x, z)
    return dxy + dyz == dxz or dxy + dxz == dyz or dxz + dyz == dxy


@dataclass(frozen=True)
class Cat0Comparison:
    """Both sides of the quadratic comparison-triangle inequality at one t."""

    t: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def strict(self) -> bool:
        return self.lhs < self.rhs


def check_cat0_triangle(tree: Tree, x: TreePoint, y: TreePoint, z: TreePoint, t) -> Cat0Comparison:
    """Compare d²(y, γ_t) against the Euclidean comparison bound.

    ``γ`` is the geodesic from x to z and ``γ_t`` the point a fraction t of
    the way along it. The right-hand side is
    ``(1−t)·d²(y,x) + t·d²(y,z) − t(1−t)·ℓ(γ)²``; in a metric tree the
    inequality lhs ≤ rhs always holds, with equality exactly when the three
    points are aligned or t is an endpoint of [0, 1].
    """
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise PointLocationError(f"interpolation parameter {t} outside [0, 1]")
    segment = path(tree, x, z)
    ell = segment.length
    gamma_t = segment.point_at(t * ell)
    d_y_gamma = tree.distance(y, gamma_t)
    dyx = tree.distance(y, x)
    dyz = tree.distance(y, z)
    lhs = d_y_gamma * d_y_gamma
    rhs = (1 - t) * dyx * dyx + t * dyz * dyz - t * (1 - t) * ell * ell
    return Cat0Comparison(t=t, lhs=lhs, rhs=rhs)
