"""The perpendicular Radon transform on trees and its exact inversion.

The combinatorial transform sums a vertex function over the perpendicular
of each flag; with k(x) the valency, the closed form

    h(x) = 1/(k(x)-1) · Σ_{ef∋x} Rh(x, ef)  -  (k(x)-2)/2 · Σ_y h(y)

recovers the function exactly whenever every valency is at least 3. The
measure-level transform is the family of projections onto complete
geodesics; ``reconstruct_measure`` recovers a finitely supported measure
from those projections by reading interior atoms directly (interior level
sets are singletons) and inverting the vertex part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Mapping

from .errors import (
    CompletenessError,
    MeasureError,
    OracleInconsistencyError,
    PointLocationError,
    RadonError,
)
from .geodesics import Geodesic, geodesic_through_edge, geodesic_through_flag, perpendicular
from .measures import Measure, RadonSample, make_measure, pushforward_projection
from .rationals import parse_rational
from .tree import Flag, Tree, TreePoint, VertexId

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class VertexFunction:
    """A finitely supported rational function on the vertices.

    Zero values are dropped at construction, so equality means equality as
    functions. ``value`` returns 0 for vertices without an entry.
    """

    values: Mapping[VertexId, Fraction]

    @property
    def total(self) -> Fraction:
        return sum(self.values.values(), _ZERO)

    def value(self, vertex: VertexId) -> Fraction:
        return self.values.get(vertex, _ZERO)


def vertex_function(tree: Tree, values: Mapping) -> VertexFunction:
    """Build a vertex function, validating keys against the tree."""
    cleaned: dict[VertexId, Fraction] = {}
    for vertex, raw in values.items():
        if not tree.has_vertex(vertex):
            raise PointLocationError(f"unknown vertex {vertex!r}")
        value = parse_rational(raw)
        if value != 0:
            cleaned[vertex] = value
    return VertexFunction(cleaned)


@dataclass(frozen=True)
class FlagTable:
    """Values of the combinatorial transform, one per flag."""

    values: Mapping[Flag, Fraction]

    def value(self, flag: Flag) -> Fraction:
        try:
            return self.values[flag]
        except KeyError:
            raise RadonError(f"flag table has no entry for {flag!r}") from None

    def __len__(self) -> int:
        return len(self.values)


def enumerate_flags(tree: Tree) -> list[Flag]:
    """All flags, vertex by vertex; a valency-k vertex contributes C(k,2)."""
    flags = []
    for v in tree.vertices:
        for e, f in combinations(tree.incident_edges(v), 2):
            flags.append(Flag(v, frozenset((e, f))))
    return flags


def _branch_sums(tree: Tree, h: VertexFunction) -> dict[tuple[VertexId, int], Fraction]:
    """For every (vertex, incident edge): the sum of h over the component of
    the tree minus that vertex reached through the edge.

    One rooted subtree-sum pass gives all of them in O(V + E).
    """
    root = tree.vertices[0]
    order: list[tuple[VertexId, int | None]] = []
    seen = {root}
    stack: list[tuple[VertexId, int | None]] = [(root, None)]
    while stack:
        vertex, via = stack.pop()
        order.append((vertex, via))
        for eid in tree.incident_edges(vertex):
            rec = tree.edge(eid)
            if rec.is_ray or eid == via:
                continue
            other = rec.other_end(vertex)
            if other not in seen:
                seen.add(other)
                stack.append((other, eid))

    subtree = {v: h.value(v) for v in tree.vertices}
    for vertex, via in reversed(order):
        if via is not None:
            parent = tree.edge(via).other_end(vertex)
            subtree[parent] += subtree[vertex]

    total = h.total
    sums: dict[tuple[VertexId, int], Fraction] = {}
    for vertex, via in order:
        for eid in tree.incident_edges(vertex):
            rec = tree.edge(eid)
            if rec.is_ray:
                sums[(vertex, eid)] = _ZERO
            elif eid == via:
                sums[(vertex, eid)] = total - subtree[vertex]
            else:
                child = rec.other_end(vertex)
                sums[(vertex, eid)] = subtree[child]
    return sums


def radon_forward(tree: Tree, h: VertexFunction) -> FlagTable:
    """The combinatorial transform: per flag, the sum of h over the
    perpendicular's vertices.

    The perpendicular of (x, {e, f}) is everything except the two branches
    through e and f, so its vertex sum is Σh minus the two branch sums.
    """
    sums = _branch_sums(tree, h)
    total = h.total
    table: dict[Flag, Fraction] = {}
    for x in tree.vertices:
        incident = tree.incident_edges(x)
        if len(incident) < 2:
            continue
        for e, f in combinations(incident, 2):
            table[Flag(x, frozenset((e, f)))] = total - sums[(x, e)] - sums[(x, f)]
    return FlagTable(table)


@dataclass(frozen=True)
class DoubleCountIdentity:
    """Both sides of the flag-sum identity at one vertex.

    Summing Rh over the C(k,2) flags at x counts every other vertex once
    per flag avoiding its branch, C(k-1,2) times, and x itself C(k,2)
    times; hence lhs = C(k-1,2)·Σh + (k-1)·h(x).
    """

    vertex: VertexId
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def double_count_check(tree: Tree, h: VertexFunction, x: VertexId,
                       table: FlagTable | None = None) -> DoubleCountIdentity:
    """Evaluate the double-counting identity at ``x``; both sides are
    computed independently (flag sums vs. the closed form)."""
    k = tree.valency(x)
    if k < 2:
        raise RadonError(f"vertex {x!r} has valency {k}; no flags exist there")
    if table is None:
        table = radon_forward(tree, h)
    lhs = _ZERO
    for e, f in combinations(tree.incident_edges(x), 2):
        lhs += table.value(Flag(x, frozenset((e, f))))
    rhs = comb(k - 1, 2) * h.total + (k - 1) * h.value(x)
    return DoubleCountIdentity(vertex=x, lhs=lhs, rhs=rhs)


def radon_invert(tree: Tree, table: FlagTable, total) -> VertexFunction:
    """Recover the vertex function from its flag table and its total sum.

    Requires every valency ≥ 3 (equivalently: no leaves, given that
    valency 2 is banned); the table must cover every flag.
    """
    total = parse_rational(total)
    for v in tree.vertices:
        if tree.valency(v) < 3:
            raise RadonError(
                f"inversion needs valency >= 3 everywhere; vertex {v!r} has {tree.valency(v)}"
            )
    values: dict[VertexId, Fraction] = {}
    for x in tree.vertices:
        k = tree.valency(x)
        flag_sum = _ZERO
        for e, f in combinations(tree.incident_edges(x), 2):
            flag_sum += table.value(Flag(x, frozenset((e, f))))
        hx = flag_sum / (k - 1) - Fraction(k - 2, 2) * total
        if hx != 0:
            values[x] = hx
    return VertexFunction(values)


# ---------------------------------------------------------------------- #
# Measure-level transform                                                   #
# ---------------------------------------------------------------------- #

def radon_measure(tree: Tree, mu: Measure, geodesic: Geodesic) -> RadonSample:
    """One slice of the measure transform: the projection onto a geodesic."""
    return pushforward_projection(tree, geodesic, mu)


def radon_oracle(tree: Tree, mu: Measure) -> Callable[[Geodesic], RadonSample]:
    """Hide a known measure behind its transform, for reconstruction runs."""

    def oracle(geodesic: Geodesic) -> RadonSample:
        return pushforward_projection(tree, geodesic, mu)

    return oracle


def flag_mass(tree: Tree, mu: Measure, flag: Flag) -> Fraction:
    """The measure of the flag's perpendicular, read off the transform.

    It is the atom of the projection onto the geodesic through the flag at
    the flag vertex (coordinate 0 by the origin convention).
    """
    geodesic = geodesic_through_flag(tree, flag)
    sample = pushforward_projection(tree, geodesic, mu)
    return sample.mass_at(_ZERO)


# ---------------------------------------------------------------------- #
# Reconstruction                                                            #
# ---------------------------------------------------------------------- #

@dataclass(frozen=True)
class EdgeRead:
    """Provenance of one interior read: the atoms seen inside an edge."""

    edge: int
    atoms: tuple[tuple[Fraction, Fraction], ...]  # (offset, mass)


@dataclass(frozen=True)
class FlagRow:
    """Provenance of one flag query during reconstruction."""

    flag: Flag
    raw_mass: Fraction
    interior_subtracted: Fraction
    vertex_value: Fraction


@dataclass(frozen=True)
class ReconstructionResult:
    measure: Measure
    interior_atoms: tuple[tuple[TreePoint, Fraction], ...]
    interior_total: Fraction
    vertex_part: VertexFunction
    edge_reads: tuple[EdgeRead, ...]
    flag_rows: tuple[FlagRow, ...]


def reconstruct_measure(tree: Tree, oracle: Callable[[Geodesic], RadonSample],
                        candidate_skeleton: Iterable[int] | None = None) -> ReconstructionResult:
    """Recover a finitely supported measure from its projection oracle.

    Step 1 queries one deterministic geodesic through every skeleton edge
    and reads interior atoms verbatim (interior level sets are single
    points). Step 2 queries the geodesic through every flag, subtracts the
    known interior mass inside each perpendicular, and inverts the
    remaining vertex table with total 1 minus the interior mass.

    Interior sightings are cross-checked across every queried geodesic;
    disagreement, mass outside the skeleton, or a vertex table that is not
    a genuine transform of a nonnegative function all raise
    :class:`OracleInconsistencyError`.
    """
    if not tree.geodesically_complete:
        raise CompletenessError("reconstruction needs a tree without leaves")
    if candidate_skeleton is None:
        skeleton = list(range(len(tree.edges)))
    else:
        skeleton = sorted(set(candidate_skeleton))
        for eid in skeleton:
            tree.edge(eid)

    skeleton_set = set(skeleton)
    interior: dict[tuple[int, Fraction], Fraction] = {}

    def record_interior(point: TreePoint, mass: Fraction) -> None:
        if point.edge not in skeleton_set:
            raise OracleInconsistencyError(
                f"interior mass on edge {point.edge} outside the candidate skeleton"
            )
        key = (point.edge, point.offset)
        known = interior.get(key)
        if known is None:
            interior[key] = mass
        elif known != mass:
            raise OracleInconsistencyError(
                f"masses disagree across geodesics through edge {point.edge}: "
                f"{known} vs {mass} at offset {point.offset}"
            )

    def scan_interior(geodesic: Geodesic, sample: RadonSample) -> None:
        for coord, mass in sample.atoms:
            spot = geodesic.point_at(coord)
            if not spot.is_vertex:
                record_interior(spot, mass)

    edge_reads = []
    for eid in skeleton:
        geodesic = geodesic_through_edge(tree, eid)
        sample = oracle(geodesic)
        scan_interior(geodesic, sample)
        own = tuple(
            (offset, mass)
            for (edge, offset), mass in sorted(interior.items())
            if edge == eid
        )
        edge_reads.append(EdgeRead(edge=eid, atoms=own))

    flag_rows = []
    table: dict[Flag, Fraction] = {}
    for flag in enumerate_flags(tree):
        geodesic = geodesic_through_flag(tree, flag)
        sample = oracle(geodesic)
        scan_interior(geodesic, sample)
        raw = sample.mass_at(_ZERO)
        perp = perpendicular(tree, flag)
        inside = sum(
            (mass for (edge, offset), mass in interior.items()
             if perp.contains(TreePoint(edge=edge, offset=offset))),
            _ZERO,
        )
        value = raw - inside
        table[flag] = value
        flag_rows.append(FlagRow(flag=flag, raw_mass=raw,
                                 interior_subtracted=inside, vertex_value=value))

    interior_total = sum(interior.values(), _ZERO)
    vertex_part = radon_invert(tree, FlagTable(table), _ONE - interior_total)

    for vertex, value in vertex_part.values.items():
        if value < 0:
            raise OracleInconsistencyError(
                f"inverted vertex mass at {vertex!r} is negative ({value})"
            )
    if radon_forward(tree, vertex_part).values != table:
        raise OracleInconsistencyError(
            "flag table is not a transform of any vertex function with the "
            "implied total; oracle data is inconsistent"
        )

    atoms = [(tree.vertex_point(v), m) for v, m in vertex_part.values.items()]
    atoms.extend(
        (TreePoint(edge=edge, offset=offset), mass)
        for (edge, offset), mass in interior.items()
    )
    try:
        measure = make_measure(tree, atoms)
    except MeasureError as exc:
        raise OracleInconsistencyError(f"reconstructed masses are not a probability: {exc}") from exc

    interior_atoms = tuple(
        sorted(
            ((TreePoint(edge=edge, offset=offset), mass)
             for (edge, offset), mass in interior.items()),
            key=lambda item: (item[0].edge, item[0].offset),
        )
    )
    return ReconstructionResult(
        measure=measure,
        interior_atoms=interior_atoms,
        interior_total=interior_total,
        vertex_part=vertex_part,
        edge_reads=tuple(edge_reads),
        flag_rows=tuple(flag_rows),
    )
