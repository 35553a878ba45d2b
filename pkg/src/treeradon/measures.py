"""Finitely supported probability measures on a tree and their projections.

Measures are canonical: duplicate locations merge at construction and
atoms are stored in a fixed order, so value equality is geometric
equality. Masses are positive rationals summing exactly to one, which
makes membership in the quadratic Wasserstein space automatic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GeodesicError, MeasureError
from .geodesics import Geodesic
from .rationals import parse_rational
from .tree import Tree, TreePoint, point_sort_key

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Measure:
    """A finitely supported probability measure: ``((location, mass), ...)``."""

    atoms: tuple[tuple[TreePoint, Fraction], ...]

    @property
    def total_mass(self) -> Fraction:
        return sum((m for _, m in self.atoms), _ZERO)

    @property
    def support(self) -> tuple[TreePoint, ...]:
        return tuple(p for p, _ in self.atoms)

    @property
    def is_dirac(self) -> bool:
        return len(self.atoms) == 1

    def mass_at(self, point: TreePoint) -> Fraction:
        for p, m in self.atoms:
            if p == point:
                return m
        return _ZERO

    def __len__(self) -> int:
        return len(self.atoms)


def make_measure(tree: Tree, atoms) -> Measure:
    """Canonicalize, merge duplicate locations, and validate a measure.

    ``atoms`` is an iterable of ``(point, mass)`` with positive rational
    masses summing exactly to one.
    """
    merged: dict[TreePoint, Fraction] = {}
    for point, raw_mass in atoms:
        point = tree.canonical_point(point)
        mass = parse_rational(raw_mass)
        if mass <= 0:
            raise MeasureError(f"nonpositive mass {mass} at {point!r}")
        merged[point] = merged.get(point, _ZERO) + mass
    if not merged:
        raise MeasureError("a measure needs at least one atom")
    total = sum(merged.values())
    if total != _ONE:
        raise MeasureError(f"masses sum to {total}, not 1")
    ordered = tuple(sorted(merged.items(), key=lambda item: point_sort_key(item[0])))
    return Measure(ordered)


def dirac(tree: Tree, point: TreePoint) -> Measure:
    """The unit mass at a single point."""
    return Measure(((tree.canonical_point(point), _ONE),))


@dataclass(frozen=True)
class RadonSample:
    """A 1-D pushforward along one geodesic: ``((coordinate, mass), ...)``.

    Coordinates live in the geodesic's own arc-length system.
    """

    geodesic: Geodesic
    atoms: tuple[tuple[Fraction, Fraction], ...]

    @property
    def total_mass(self) -> Fraction:
        return sum((m for _, m in self.atoms), _ZERO)

    def mass_at(self, coordinate: Fraction) -> Fraction:
        for c, m in self.atoms:
            if c == coordinate:
                return m
        return _ZERO

    def to_measure(self, tree: Tree) -> Measure:
        """Place the sample back on the tree as atoms on the geodesic."""
        return make_measure(
            tree, ((self.geodesic.point_at(c), m) for c, m in self.atoms)
        )


def pushforward_projection(tree: Tree, geodesic: Geodesic, measure: Measure) -> RadonSample:
    """Project a measure onto a geodesic: each atom moves to its nearest
    point, masses at equal coordinates merge.

    The geodesic must be maximal (complete in a leafless tree, or ending at
    leaves), since projections onto extendable segments are not part of the
    transform.
    """
    if geodesic.tree is not tree:
        raise GeodesicError("geodesic belongs to a different tree")
    if not geodesic.is_maximal:
        raise GeodesicError("projection target must be a maximal geodesic")
    merged: dict[Fraction, Fraction] = {}
    for point, mass in measure.atoms:
        coord = geodesic.coordinate_of(geodesic.project(point))
        merged[coord] = merged.get(coord, _ZERO) + mass
    return RadonSample(geodesic, tuple(sorted(merged.items())))


def second_moment(tree: Tree, measure: Measure, base: TreePoint) -> Fraction:
    """The exact integral of squared distance to ``base``."""
    base = tree.canonical_point(base)
    total = _ZERO
    for point, mass in measure.atoms:
        d = tree.distance(base, point)
        total += mass * d * d
    return total


def supported_on(measure: Measure, geodesic: Geodesic) -> bool:
    """True iff every atom lies on the geodesic."""
    return all(geodesic.contains(p) for p, _ in measure.atoms)
