"""Lines and projective spaces inside the window Grassmannian.

Three distinct index-0 points are collinear in coordinate space iff their
intersection-of-two sits inside the third with codimension one and the
third sits inside the sum of two with codimension one.  A line is then
the family of ``i``-dimensional subspaces between a fixed bottom and top.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import linalg
from .errors import DistinctnessError, LevelMismatchError, NotAdjacentError, WrongComponentError
from .field import PrimeField
from .linalg import ExactMatrix
from .points import GrassPoint, plucker_vector


@dataclass(frozen=True)
class PencilFamily:
    """All ``W`` with ``bottom <= W <= top`` and ``dim W / bottom = k``."""

    bottom: GrassPoint
    top: GrassPoint
    k: int

    def __post_init__(self):
        if self.bottom.level != self.top.level:
            raise LevelMismatchError("bottom and top live in different windows")
        if not linalg.contains(self.top.basis, self.bottom.basis):
            raise ValueError("bottom is not contained in top")
        if not 0 <= self.k <= self.gap:
            raise ValueError(f"k = {self.k} outside 0..{self.gap}")

    @property
    def level(self) -> int:
        return self.top.level

    @property
    def gap(self) -> int:
        return self.top.dim - self.bottom.dim

    def contains(self, p: GrassPoint) -> bool:
        return (
            p.level == self.level
            and p.dim == self.bottom.dim + self.k
            and linalg.contains(p.basis, self.bottom.basis)
            and linalg.contains(self.top.basis, p.basis)
        )

    def quotient_lift(self) -> ExactMatrix:
        """Rows of ``top`` completing ``bottom`` to a basis of ``top``."""
        f = self.top.field
        n = 2 * self.level
        cur = self.bottom.basis
        extra = []
        for row in self.top.rows:
            cand = ExactMatrix(f, cur.rows + (row,), n)
            if linalg.rank(cand) > cur.nrows:
                cur = cand
                extra.append(row)
        return ExactMatrix(f, tuple(extra), n)

    def point(self, coeffs: Sequence[Sequence]) -> GrassPoint:
        """Point ``bottom + span(coeffs @ lift)`` for a ``k x gap`` coefficient matrix."""
        lift = self.quotient_lift()
        f = self.top.field
        c = ExactMatrix.from_rows(f, coeffs, self.gap)
        rows = self.bottom.rows + (c @ lift).rows
        return GrassPoint(self.level, ExactMatrix(f, rows, 2 * self.level))

    def points(self) -> Iterator[GrassPoint]:
        """Every member over a finite field."""
        f = self.top.field
        if not isinstance(f, PrimeField):
            raise TypeError("enumeration needs a finite field; use point() over Q")
        for c in linalg.enumerate_subspaces(f, self.gap, self.k):
            yield self.point(c.rows)


def _check_points(points: Sequence[GrassPoint]) -> None:
    lvl = points[0].level
    for p in points:
        if p.level != lvl:
            raise LevelMismatchError("points live in different windows")
        if p.field != points[0].field:
            raise LevelMismatchError("points live over different fields")
        if p.dim != p.level:
            raise WrongComponentError("points must have dimension equal to the level")
    for a, b in itertools.combinations(points, 2):
        if a == b:
            raise DistinctnessError("points must be pairwise distinct")


def _meet(points: Iterable[GrassPoint]) -> ExactMatrix:
    it = iter(points)
    acc = next(it).basis
    for p in it:
        acc = linalg.subspace_intersect(acc, p.basis)
    return acc


def _join(points: Iterable[GrassPoint]) -> ExactMatrix:
    it = iter(points)
    acc = next(it).basis
    for p in it:
        acc = linalg.subspace_sum(acc, p.basis)
    return acc


def collinear_geometric(p1: GrassPoint, p2: GrassPoint, p3: GrassPoint) -> bool:
    """``p1 & p2 <= p3 <= p1 + p2`` with both inclusions of codimension one."""
    _check_points([p1, p2, p3])
    i = p1.level
    low = linalg.subspace_intersect(p1.basis, p2.basis)
    high = linalg.subspace_sum(p1.basis, p2.basis)
    return (
        low.nrows == i - 1
        and high.nrows == i + 1
        and linalg.contains(p3.basis, low)
        and linalg.contains(high, p3.basis)
    )


def coordinate_rank(points: Sequence[GrassPoint]) -> int:
    f = points[0].field
    rows = tuple(tuple(plucker_vector(p).dense()) for p in points)
    return linalg.rank(ExactMatrix(f, rows, len(rows[0])))


def collinear_plucker(p1: GrassPoint, p2: GrassPoint, p3: GrassPoint) -> bool:
    """The three coordinate vectors span at most a plane."""
    _check_points([p1, p2, p3])
    return coordinate_rank([p1, p2, p3]) <= 2


def are_adjacent(p1: GrassPoint, p2: GrassPoint) -> bool:
    return p1 != p2 and linalg.subspace_intersect(p1.basis, p2.basis).nrows == p1.level - 1


def pencil(p1: GrassPoint, p2: GrassPoint) -> PencilFamily:
    """The line through two adjacent points."""
    _check_points([p1, p2])
    low = linalg.subspace_intersect(p1.basis, p2.basis)
    if low.nrows != p1.level - 1:
        raise NotAdjacentError(
            f"the intersection has dimension {low.nrows}, a line needs {p1.level - 1}"
        )
    high = linalg.subspace_sum(p1.basis, p2.basis)
    return PencilFamily(GrassPoint(p1.level, low), GrassPoint(p1.level, high), 1)


def pencil_points(f: PencilFamily, parameters: Iterable[Sequence] | None = None) -> list[GrassPoint]:
    """All points over a finite field, or one point per ``[lam : mu]`` in ``parameters``."""
    if parameters is None:
        return list(f.points())
    return [f.point([list(par)]) for par in parameters]


class ReferenceStatus(enum.Enum):
    OK = "ok"
    RANK_DEGENERATE = "rank-degenerate"
    DIMENSION_MISMATCH = "dimension-mismatch"


def reference_status(points: Sequence[GrassPoint]) -> ReferenceStatus:
    """Check the reference condition on coordinates, then the dimension condition."""
    if len(points) < 3:
        raise ValueError("a reference needs at least 3 points")
    _check_points(points)
    n = len(points) - 2
    if coordinate_rank(points) != n + 1:
        return ReferenceStatus.RANK_DEGENERATE
    for sub in itertools.combinations(points, n + 1):
        if coordinate_rank(sub) != n + 1:
            return ReferenceStatus.RANK_DEGENERATE
    if _join(points).nrows - _meet(points).nrows != n + 1:
        return ReferenceStatus.DIMENSION_MISMATCH
    return ReferenceStatus.OK


def reference_space(points: Sequence[GrassPoint]) -> PencilFamily | None:
    """The family ``Grass^k(sum / meet)`` spanned by a reference, or ``None``.

    Use :func:`reference_status` to tell the two failure modes apart.
    """
    if reference_status(points) is not ReferenceStatus.OK:
        return None
    lvl = points[0].level
    low = _meet(points)
    high = _join(points)
    return PencilFamily(GrassPoint(lvl, low), GrassPoint(lvl, high), lvl - low.nrows)


def family_in_span(f: PencilFamily, generators: Sequence[GrassPoint]) -> bool:
    """Whether every member's coordinates lie in the span of the generators' coordinates."""
    fld = f.top.field
    base = tuple(tuple(plucker_vector(p).dense()) for p in generators)
    width = len(base[0])
    r0 = linalg.rank(ExactMatrix(fld, base, width))
    for p in f.points():
        row = tuple(plucker_vector(p).dense())
        if linalg.rank(ExactMatrix(fld, base + (row,), width)) != r0:
            return False
    return True
