"""Finitely presented invertible operators on k((z)) and their action on windows.

Matrices use the column convention: column ``c`` of an operator ``g`` holds
the coefficients of ``g(e_c)``, so entry ``(r, c)`` is the coefficient of
``e_r`` in ``g(e_c)``.  A point with basis rows ``B`` goes to ``B G^T``.

Two kinds are supported:

* :class:`MulOperator` multiplies by a Laurent polynomial ``u`` with
  lowest exponent ``m``; ``u`` is a unit of k((z)).
* :class:`BandOperator` agrees with the identity except on finitely many
  stored columns, whose entries lie within ``bandwidth`` of the diagonal.

``act`` enlarges the window so the result is exact; the level it used is
the ``level`` of the returned point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Mapping

from . import linalg
from .errors import NotInvertibleError, WindowOverflowError, WrongComponentError
from .field import Field, PrimeField
from .laurent import LaurentVector
from .linalg import ExactMatrix
from .maya import enumerate_level
from .points import GrassPoint, PluckerVector, columns_of
from .restriction import pushforward_coords


def _level_for(exponents) -> int:
    """Smallest level whose window ``[-i, i-1]`` holds every exponent."""
    lvl = 1
    for a in exponents:
        lvl = max(lvl, -a, a + 1)
    return lvl


@dataclass(frozen=True)
class MulOperator:
    unit: LaurentVector

    def __post_init__(self):
        if not self.unit:
            raise NotInvertibleError("multiplication by zero is not invertible")

    @classmethod
    def monomial(cls, field: Field, m: int, c=1) -> MulOperator:
        return cls(LaurentVector.e(field, m, c))

    @classmethod
    def scalar(cls, field: Field, c) -> MulOperator:
        return cls(LaurentVector.e(field, 0, c))

    @property
    def field(self) -> Field:
        return self.unit.field

    @property
    def order(self) -> int:
        return self.unit.order

    def overflow(self) -> int:
        return abs(self.order)

    def target_level(self, i: int) -> int:
        return i + self.overflow()

    def image(self, vec: LaurentVector) -> LaurentVector:
        return self.unit * vec

    def window_matrix(self, level: int) -> ExactMatrix:
        """Induced map on ``z^{-level} k[[z]] / z^{level} k[[z]]`` (order 0 only)."""
        if self.order != 0:
            raise WrongComponentError("only order-0 units preserve a window")
        f = self.field
        n = 2 * level
        u = self.unit.as_dict()
        rows = tuple(
            tuple(f(u.get(r - c, 0)) for c in range(n)) for r in range(n)
        )
        return ExactMatrix(f, rows, n)

    def inverse(self, precision: int) -> MulOperator:
        """Inverse series truncated after ``precision`` terms past the leading one."""
        f = self.field
        m = self.order
        u = {a - m: c for a, c in self.unit.support}
        lead_inv = f.one / u[0]
        w = {0: lead_inv}
        for n in range(1, precision + 1):
            acc = f.zero
            for k in range(1, n + 1):
                if k in u and (n - k) in w:
                    acc = acc + u[k] * w[n - k]
            w[n] = -acc * lead_inv
        return MulOperator(LaurentVector.from_dict(f, {n - m: c for n, c in w.items()}))

    def compose(self, other: MulOperator) -> MulOperator:
        return MulOperator(self.unit * other.unit)

    def __str__(self):
        return f"mul({self.unit})"


@dataclass(frozen=True)
class BandOperator:
    """Identity outside the stored columns; ``entries[(r, c)]`` is the coefficient of ``e_r`` in ``g(e_c)``.

    Each stored column is given in full.  Invertibility is checked when the
    operator is applied or inverted, so singular presentations can still be
    inspected with :func:`is_glC`.
    """

    field: Field
    entries: Mapping = dc_field(default_factory=dict)
    bandwidth: int = 0
    columns: frozenset = frozenset()

    def __post_init__(self):
        clean = {}
        cols = set(self.columns)
        for (r, c), v in self.entries.items():
            r, c = int(r), int(c)
            cols.add(c)
            v = self.field(v)
            if v:
                clean[(r, c)] = v
        wide = [rc for rc in clean if abs(rc[0] - rc[1]) > self.bandwidth]
        if wide:
            raise ValueError(f"entries {sorted(wide)} lie outside bandwidth {self.bandwidth}")
        object.__setattr__(self, "entries", dict(sorted(clean.items())))
        object.__setattr__(self, "columns", frozenset(cols))

    @classmethod
    def from_block(cls, field: Field, exponents, block, bandwidth: int | None = None) -> BandOperator:
        """Operator whose square ``block`` acts on ``exponents`` (``block[r][c]`` for ``g(e_c)``)."""
        exps = list(exponents)
        entries = {
            (exps[r], exps[c]): block[r][c] for r in range(len(exps)) for c in range(len(exps))
        }
        if bandwidth is None:
            bandwidth = max((abs(a - b) for a in exps for b in exps), default=0)
        return cls(field, entries, bandwidth, frozenset(exps))

    @classmethod
    def identity(cls, field: Field) -> BandOperator:
        return cls(field, {}, 0)

    @classmethod
    def diagonal(cls, field: Field, scales: Mapping[int, object]) -> BandOperator:
        return cls(field, {(a, a): c for a, c in scales.items()}, 0, frozenset(scales))

    def support_level(self) -> int:
        """Smallest window holding every stored column and entry."""
        return _level_for(list(self.columns) + [e for rc in self.entries for e in rc])

    def overflow(self) -> int:
        return self.bandwidth

    def target_level(self, i: int) -> int:
        lvl = i + self.bandwidth
        return max(lvl, self.support_level())

    def image(self, vec: LaurentVector) -> LaurentVector:
        f = self.field
        out: dict[int, object] = {}
        for c, x in vec.support:
            if c in self.columns:
                for (r, cc), v in self.entries.items():
                    if cc == c:
                        out[r] = out.get(r, f.zero) + x * v
            else:
                out[c] = out.get(c, f.zero) + x
        return LaurentVector.from_dict(f, out)

    def window_matrix(self, level: int) -> ExactMatrix:
        need = self.support_level()
        if level < need:
            raise WindowOverflowError(f"operator needs level {need}, got {level}", need)
        f = self.field
        n = 2 * level
        rows = [[f.zero] * n for _ in range(n)]
        for c in range(n):
            if c - level not in self.columns:
                rows[c][c] = f.one
        for (r, c), v in self.entries.items():
            rows[r + level][c + level] = v
        return ExactMatrix(f, tuple(tuple(r) for r in rows), n)

    def is_invertible(self) -> bool:
        lvl = self.support_level()
        return linalg.rank(self.window_matrix(lvl)) == 2 * lvl

    def inverse(self) -> BandOperator:
        lvl = self.support_level()
        g = self.window_matrix(lvl)
        try:
            h = linalg.inverse(g)
        except NotInvertibleError:
            raise NotInvertibleError("the stored block is singular") from None
        return _from_window(self.field, h, lvl)

    def compose(self, other: BandOperator) -> BandOperator:
        """``self`` after ``other``."""
        lvl = max(self.support_level(), other.support_level())
        return _from_window(self.field, self.window_matrix(lvl) @ other.window_matrix(lvl), lvl)

    def __str__(self):
        body = ", ".join(f"[{r},{c}]: {v}" for (r, c), v in self.entries.items())
        return f"band(b={self.bandwidth}, {{{body}}})"


def _from_window(f: Field, m: ExactMatrix, level: int) -> BandOperator:
    n = 2 * level
    entries = {}
    cols = set()
    for c in range(n):
        col = [m.rows[r][c] for r in range(n)]
        if any(col[r] != (f.one if r == c else f.zero) for r in range(n)):
            cols.add(c - level)
            for r in range(n):
                if col[r]:
                    entries[(r - level, c - level)] = col[r]
    bw = max((abs(r - c) for r, c in entries), default=0)
    return BandOperator(f, entries, bw, frozenset(cols))


WindowOperator = MulOperator | BandOperator


def _check_field(g, p) -> None:
    if g.field != p.field:
        from .errors import FieldMismatchError

        raise FieldMismatchError(f"operator over {g.field} acting on a point over {p.field}")


def act(g: WindowOperator, p: GrassPoint, level: int | None = None) -> GrassPoint:
    """``g(L)`` for the subspace ``L`` represented by ``p``.

    The result lives at ``g.target_level(p.level)`` unless ``level`` asks
    for a larger window; a smaller one raises :class:`WindowOverflowError`.
    """
    _check_field(g, p)
    need = g.target_level(p.level)
    target = need if level is None else level
    if target < need:
        raise WindowOverflowError(f"acting needs level {need}, got {target}", need)
    q = p.at_level(target)
    f = p.field
    n = 2 * target
    if isinstance(g, BandOperator):
        if not g.is_invertible():
            raise NotInvertibleError("the stored block is singular")
        rows = q.basis @ g.window_matrix(target).T
        return GrassPoint(target, linalg.rowspace(rows))
    m = g.order
    out = []
    for row in q.rows:
        vec = LaurentVector.from_dict(f, {c - target: x for c, x in enumerate(row)})
        img = g.image(vec)
        lo = img.order if img else 0
        if img and lo < -target:
            raise WindowOverflowError(f"image reaches z^{lo}", max(-lo, target))
        img = img.truncate(-target, target)
        r = [f.zero] * n
        for a, x in img.support:
            r[a + target] = x
        out.append(tuple(r))
    # Multiplication carries z^target k[[z]] onto z^(target+m) k[[z]].
    for a in range(target + m, target):
        out.append(tuple(f.one if c == a + target else f.zero for c in range(n)))
    m_rows = ExactMatrix(f, tuple(out), n)
    return GrassPoint(target, linalg.rowspace(m_rows))


def compound_action(gm: ExactMatrix, v: PluckerVector) -> PluckerVector:
    """``v'[T] = sum_S det(G[T, S]) v[S]`` for a window matrix ``G`` at ``v.level``."""
    i = v.level
    sets = enumerate_level(i)
    src = [(columns_of(s), x) for s, x in v.coords.items()]
    f = v.field
    out = {}
    for t in sets:
        rt = columns_of(t)
        sub_rows = gm.select_rows(rt)
        dets = linalg.maximal_minors(sub_rows, [cols for cols, _ in src])
        acc = f.zero
        for dval, (_, x) in zip(dets, src):
            if dval:
                acc = acc + dval * x
        if acc:
            out[t] = acc
    return PluckerVector(i, f, out)


def act_on_plucker(g: WindowOperator, v: PluckerVector, level: int | None = None) -> PluckerVector:
    """Coordinate action through the compound matrix, after pushing ``v`` to the action level."""
    if g.field != v.field:
        from .errors import FieldMismatchError

        raise FieldMismatchError(f"operator over {g.field} acting on a vector over {v.field}")
    if isinstance(g, MulOperator) and g.order != 0:
        raise WrongComponentError(
            f"a unit of order {g.order} moves points off the index-0 component"
        )
    need = g.target_level(v.level)
    target = need if level is None else level
    if target < need:
        raise WindowOverflowError(f"acting needs level {need}, got {target}", need)
    w = pushforward_coords(v, target)
    if isinstance(g, BandOperator) and not g.is_invertible():
        raise NotInvertibleError("the stored block is singular")
    return compound_action(g.window_matrix(target), w)


def is_glC(g: WindowOperator) -> bool:
    """Every column vanishes below some row ``n(j)`` and has an invertible entry there.

    For multiplication ``n(j) = j + m``.  For a banded operator the identity
    columns qualify and each stored column qualifies iff it is nonzero.
    """
    if isinstance(g, MulOperator):
        return True
    nonzero = {c for (_, c) in g.entries}
    return all(c in nonzero for c in g.columns)


def leading_rows(g: WindowOperator, cols) -> dict[int, int]:
    """``n(j)`` for each requested column ``j`` (missing when the column is zero)."""
    out = {}
    for c in cols:
        img = g.image(LaurentVector.e(g.field, c))
        if img:
            out[c] = img.order
    return out


def random_band(field: Field, level: int, rng: random.Random, bandwidth: int = 1, size: int = 3,
                bound: int = 2) -> BandOperator:
    """Random invertible banded operator whose stored columns sit in the level window."""
    while True:
        start = rng.randint(-level, level - size) if size <= 2 * level else -level
        exps = list(range(start, start + min(size, 2 * level)))
        block = []
        for r in exps:
            row = []
            for c in exps:
                if abs(r - c) > bandwidth:
                    row.append(0)
                elif isinstance(field, PrimeField):
                    row.append(rng.randrange(field.p))
                else:
                    row.append(rng.randint(-bound, bound))
            block.append(row)
        g = BandOperator.from_block(field, exps, block, bandwidth)
        if is_glC(g) and g.is_invertible():
            return g


def random_unit(field: Field, m: int, rng: random.Random, length: int = 3, bound: int = 2) -> MulOperator:
    """Random Laurent polynomial unit of order ``m``."""
    coeffs = {m: rng.choice([c for c in range(-bound, bound + 1) if c]) if not isinstance(field, PrimeField)
              else rng.randrange(1, field.p)}
    for a in range(m + 1, m + length):
        coeffs[a] = rng.randint(-bound, bound) if not isinstance(field, PrimeField) else rng.randrange(field.p)
    return MulOperator(LaurentVector.from_dict(field, coeffs))


__all__ = [
    "MulOperator",
    "BandOperator",
    "WindowOperator",
    "act",
    "act_on_plucker",
    "compound_action",
    "is_glC",
    "leading_rows",
    "random_band",
    "random_unit",
]
