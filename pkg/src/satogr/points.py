"""Window points of the Grassmannian and their Pluecker coordinates.

A :class:`GrassPoint` of level ``i`` is a subspace ``W`` of the window
``k^{2i}`` with basis ``e_{-i}, ..., e_{i-1}`` (column ``c`` carries the
exponent ``c - i``).  It stands for the subspace ``W + z^i k[[z]]`` of
k((z)); enlarging the window adds ``e_i, ..., e_{j-1}`` to ``W`` and
leaves that subspace unchanged.

Coordinates follow the minor-on-columns convention: ``X_S(W)`` is the
``i x i`` minor of the basis on the columns of ``S``, so the coordinate
subspace spanned by ``{e_s : s in S}`` has its only nonzero coordinate at
``S``.  The section labelled by ``S`` in the complement-subspace picture
is, up to sign, the coordinate at the complement of ``S``; see
:func:`chart_membership`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import linalg
from .errors import LevelMismatchError, RankDeficientError, WrongComponentError
from .field import QQ, Field, PrimeField
from .linalg import ExactMatrix
from .maya import IndexSet, complement, enumerate_level, index_set, level_positions


@dataclass(frozen=True)
class GrassPoint:
    """Subspace of the level-``level`` window, stored by its canonical basis.

    The basis is reduced to row echelon form at construction and must have
    full row rank, so ``==`` is equality of subspaces.
    """

    level: int
    basis: ExactMatrix

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        if self.basis.ncols != 2 * self.level:
            raise LevelMismatchError(
                f"level {self.level} needs {2 * self.level} columns, got {self.basis.ncols}"
            )
        red, r, _ = linalg.rref(self.basis)
        if r != self.basis.nrows:
            raise RankDeficientError(f"basis has rank {r} but {self.basis.nrows} rows")
        object.__setattr__(self, "basis", red)

    @classmethod
    def from_rows(cls, level: int, field: Field, rows: Iterable[Iterable]) -> GrassPoint:
        rows = [list(r) for r in rows]
        return cls(level, ExactMatrix.from_rows(field, rows, None if rows else 2 * level))

    @classmethod
    def spanned_by(cls, level: int, field: Field, vectors: Mapping[int, object] | Iterable) -> GrassPoint:
        """Point spanned by sparse vectors given as ``{exponent: coefficient}`` dicts."""
        rows = []
        for vec in vectors:
            row = [field.zero] * (2 * level)
            for a, c in dict(vec).items():
                col = a + level
                if not 0 <= col < 2 * level:
                    raise ValueError(f"exponent {a} outside the level {level} window")
                row[col] = field(c)
            rows.append(row)
        m = ExactMatrix(field, tuple(tuple(r) for r in rows), 2 * level)
        return cls(level, linalg.rowspace(m))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def rows(self) -> tuple:
        return self.basis.rows

    def column(self, exponent: int) -> int:
        return exponent + self.level

    def exponents(self) -> range:
        return range(-self.level, self.level)

    def at_level(self, j: int) -> GrassPoint:
        """Same subspace of k((z)) seen in the level ``j >= level`` window."""
        i = self.level
        if j < i:
            raise LevelMismatchError(f"cannot shrink a level {i} point to level {j}")
        if j == i:
            return self
        f = self.field
        z, o = f.zero, f.one
        pad_left = (z,) * (j - i)
        rows = [pad_left + row + (z,) * (j - i) for row in self.rows]
        for a in range(i, j):
            rows.append(tuple(o if c == a + j else z for c in range(2 * j)))
        return GrassPoint(j, ExactMatrix(f, tuple(rows), 2 * j))

    def __str__(self):
        body = "; ".join("(" + ", ".join(str(x) for x in row) + ")" for row in self.rows)
        return f"GrassPoint(level={self.level}, {self.field}, [{body}])"


@dataclass(frozen=True, eq=False)
class PluckerVector:
    """Nonzero Pluecker coordinates of a level-``level`` point.

    ``coords`` maps index sets to nonzero scalars; missing sets are zero.
    Two vectors describe the same projective point iff
    :meth:`is_proportional` holds.
    """

    level: int
    field: Field
    coords: Mapping[IndexSet, object]

    def __post_init__(self):
        clean = {}
        for t, v in self.coords.items():
            if t.level != self.level:
                raise LevelMismatchError(f"coordinate {t} is not of level {self.level}")
            v = self.field(v)
            if v:
                clean[t] = v
        if not clean:
            raise ValueError("a Pluecker vector needs a nonzero coordinate")
        pos = level_positions(self.level)
        object.__setattr__(self, "coords", dict(sorted(clean.items(), key=lambda kv: pos[kv[0]])))

    @classmethod
    def from_dense(cls, level: int, field: Field, values) -> PluckerVector:
        sets = enumerate_level(level)
        if len(values) != len(sets):
            raise ValueError(f"level {level} has {len(sets)} coordinates, got {len(values)}")
        return cls(level, field, {t: v for t, v in zip(sets, values)})

    def __getitem__(self, t: IndexSet):
        return self.coords.get(t, self.field.zero)

    def __len__(self):
        return len(self.coords)

    def support(self) -> list[IndexSet]:
        return list(self.coords)

    def dense(self) -> list:
        z = self.field.zero
        return [self.coords.get(t, z) for t in enumerate_level(self.level)]

    def scale(self, c) -> PluckerVector:
        c = self.field(c)
        if not c:
            raise ValueError("scaling by zero")
        return PluckerVector(self.level, self.field, {t: c * v for t, v in self.coords.items()})

    def normalized(self) -> PluckerVector:
        """Representative whose first nonzero coordinate (in canonical order) is 1."""
        lead = next(iter(self.coords.values()))
        return self.scale(self.field.one / lead)

    def is_proportional(self, other: PluckerVector) -> bool:
        if self.level != other.level or self.field != other.field:
            return False
        if self.coords.keys() != other.coords.keys():
            return False
        return self.normalized().coords == other.normalized().coords

    def integral(self) -> list[int]:
        """Dense primitive integer representative (rational field only)."""
        if self.field != QQ:
            raise TypeError("integral representatives exist over Q only")
        vals = self.dense()
        lcm = 1
        for x in vals:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ints = [int(x * lcm) for x in vals]
        g = 0
        for x in ints:
            g = math.gcd(g, x)
        return [x // g for x in ints]

    def __eq__(self, other):
        if not isinstance(other, PluckerVector):
            return NotImplemented
        return self.level == other.level and self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.level, frozenset(self.coords.items())))

    def __str__(self):
        body = ", ".join(f"{t}: {v}" for t, v in self.coords.items())
        return f"PluckerVector(level={self.level}, {self.field}, {{{body}}})"


def columns_of(t: IndexSet) -> tuple[int, ...]:
    return tuple(x + t.level for x in t.elements)


def plucker_vector(p: GrassPoint) -> PluckerVector:
    """All ``i x i`` minors of the basis of an index-0 point."""
    if p.dim != p.level:
        raise WrongComponentError(
            f"Pluecker coordinates need dim W = level ({p.level}); this point has dim {p.dim}"
        )
    sets = enumerate_level(p.level)
    minors = linalg.maximal_minors(p.basis, [columns_of(t) for t in sets])
    return PluckerVector(p.level, p.field, {t: v for t, v in zip(sets, minors) if v})


def from_maya(t: IndexSet, field: Field = QQ) -> GrassPoint:
    """Coordinate subspace spanned by ``e_s`` for ``s`` in ``t``."""
    i = t.level
    z, o = field.zero, field.one
    rows = tuple(tuple(o if c == s + i else z for c in range(2 * i)) for s in t.elements)
    return GrassPoint(i, ExactMatrix(field, rows, 2 * i))


def vacuum(level: int, field: Field = QQ) -> GrassPoint:
    """Window image of ``k[[z]]``: span of ``e_0, ..., e_{level-1}``."""
    return from_maya(index_set(level, tuple(range(level))), field)


def index_of(p: GrassPoint) -> int:
    """``dim(W & E+) - (i - dim pr_{E-}(W))``: the index of the represented subspace.

    ``E+`` is spanned by the nonnegative exponents of the window and ``E-``
    by the negative ones.  The value is ``dim W - level``.
    """
    i = p.level
    if p.dim == 0:
        return -i
    neg = p.basis.columns(range(0, i))
    proj_rank = linalg.rank(neg)
    # W & E+ is the kernel of the projection to E-.
    meet = p.dim - proj_rank
    return meet - (i - proj_rank)


def chart_membership(p: GrassPoint, t: IndexSet) -> bool:
    """Whether ``W`` and ``span{e_s : s in t}`` are complementary in the window.

    This is the big-cell condition ``L + A = V`` with ``L & A = 0`` for the
    coordinate complement ``A`` labelled by ``t``.  It holds exactly when the
    coordinate at the complement of ``t`` is nonzero.
    """
    if t.level != p.level:
        raise LevelMismatchError(f"chart of level {t.level} for a level {p.level} point")
    if p.dim != p.level:
        return False
    i = p.level
    f = p.field
    z, o = f.zero, f.one
    units = tuple(tuple(o if c == s + i else z for c in range(2 * i)) for s in t.elements)
    stacked = ExactMatrix(f, p.rows + units, 2 * i)
    return linalg.rank(stacked) == 2 * i


def charts_of(p: GrassPoint) -> list[IndexSet]:
    """Every chart label ``t`` with ``chart_membership(p, t)``."""
    return [t for t in enumerate_level(p.level) if chart_membership(p, t)]


def embed_level(p: GrassPoint, j: int) -> GrassPoint:
    """Re-express an index-0 point of level ``i`` in the level ``j > i`` window.

    The new basis is the old one in the middle columns plus the unit
    vectors ``e_i, ..., e_{j-1}``.
    """
    if j <= p.level:
        raise LevelMismatchError(f"target level {j} must exceed {p.level}")
    return p.at_level(j)


def lower_level(p: GrassPoint, j: int) -> GrassPoint | None:
    """The same subspace in the smaller level ``j`` window, or ``None`` if it does not fit.

    It fits when ``W`` contains ``e_j, ..., e_{i-1}`` and has no component
    below ``e_{-j}``.
    """
    i = p.level
    if j > i:
        raise LevelMismatchError(f"level {j} is not below {i}")
    if j == i:
        return p
    if any(any(row[:i - j]) for row in p.rows):
        return None
    f = p.field
    z, o = f.zero, f.one
    tail = tuple(tuple(o if c == a + i else z for c in range(2 * i)) for a in range(j, i))
    if not linalg.contains(p.basis, ExactMatrix(f, tail, 2 * i)):
        return None
    # Quotient by e_j..e_{i-1}: drop those columns and the outer ones.
    rows = tuple(row[i - j:i + j] for row in p.rows)
    m = linalg.rowspace(ExactMatrix(f, rows, 2 * j))
    return GrassPoint(j, m)


def complement_coordinate(v: PluckerVector, t: IndexSet):
    return v[complement(t)]


# -- sampling and enumeration ---------------------------------------------------

def random_rational(rng: random.Random, bound: int = 3, max_den: int = 1) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_point(
    field: Field,
    level: int,
    rng: random.Random,
    dim: int | None = None,
    bound: int = 3,
    max_den: int = 1,
) -> GrassPoint:
    """Random point with entries drawn uniformly (small integers or fractions over Q).

    Rank-deficient draws are rejected and redrawn.
    """
    d = level if dim is None else dim
    n = 2 * level
    while True:
        if isinstance(field, PrimeField):
            rows = [[field(rng.randrange(field.p)) for _ in range(n)] for _ in range(d)]
        else:
            rows = [[random_rational(rng, bound, max_den) for _ in range(n)] for _ in range(d)]
        m = ExactMatrix(field, tuple(tuple(r) for r in rows), n)
        if linalg.rank(m) == d:
            return GrassPoint(level, m)


def random_chart_point(field: Field, level: int, rng: random.Random, bound: int = 3) -> GrassPoint:
    """Random point in a random chart: identity on random columns, small entries elsewhere."""
    n = 2 * level
    cols = sorted(rng.sample(range(n), level))
    rows = []
    for r, pc in enumerate(cols):
        row = []
        for c in range(n):
            if c in cols:
                row.append(field(1 if c == pc else 0))
            elif isinstance(field, PrimeField):
                row.append(field(rng.randrange(field.p)))
            else:
                row.append(field(rng.randint(-bound, bound)))
        rows.append(row)
    return GrassPoint(level, ExactMatrix(field, tuple(tuple(r) for r in rows), n))


def enumerate_points(field: PrimeField, level: int, dim: int | None = None) -> Iterator[GrassPoint]:
    """Every point of the level window over a finite field, ``dim`` defaulting to ``level``."""
    d = level if dim is None else dim
    for m in linalg.enumerate_subspaces(field, 2 * level, d):
        yield GrassPoint(level, m)
