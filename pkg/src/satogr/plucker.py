"""Quadratic Pluecker relations at a window level, their evaluation, and chart inversion.

For index sets ``S, S'`` of level ``i`` and a position ``k`` the exchange
relation is

    X_S X_S' - sum_l X_{S_l} X_{S'_l}

where ``S_l`` puts ``s'_l`` in place of ``s_k`` and ``S'_l`` puts ``s_k`` in
place of ``s'_l``.  Unsorted labels are resolved by :func:`sign_normalize`
and labels with a repeat vanish.  Coefficients stay integers so one
generated set serves every field.
"""

from __future__ import annotations

import heapq
import itertools
import json
import math
import os
import re
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from . import linalg
from ._backend import kernels
from .errors import LevelMismatchError, NotDecomposableError, NotInChartError
from .field import PrimeField
from .linalg import ExactMatrix
from .maya import IndexSet, enumerate_level, index_set, level_positions, sign_normalize
from .points import GrassPoint, PluckerVector


@dataclass(frozen=True)
class QuadraticRelation:
    """Canonical quadric ``sum c * X_left * X_right``.

    Terms are ``(left, right, c)`` with ``left <= right``, sorted, merged,
    nonzero, with positive leading coefficient and coprime coefficients.
    Ordering of relations compares their term tuples.
    """

    terms: tuple
    level: int

    @classmethod
    def from_terms(cls, level: int, raw: Iterable[tuple[int, IndexSet, IndexSet]]) -> QuadraticRelation | None:
        """Canonicalize ``(c, a, b)`` triples; ``None`` if they cancel."""
        acc: dict[tuple[IndexSet, IndexSet], int] = {}
        for c, a, b in raw:
            if a.level != level or b.level != level:
                raise LevelMismatchError(f"term {a}*{b} is not of level {level}")
            key = (a, b) if a.elements <= b.elements else (b, a)
            acc[key] = acc.get(key, 0) + int(c)
        items = sorted((k[0].elements, k[1].elements, v) for k, v in acc.items() if v)
        if not items:
            return None
        g = 0
        for *_, v in items:
            g = math.gcd(g, v)
        if items[0][2] < 0:
            g = -g
        terms = tuple(
            (index_set(level, l), index_set(level, r), v // g) for l, r, v in items
        )
        return cls(terms, level)

    def key(self) -> tuple:
        return tuple((l.elements, r.elements, c) for l, r, c in self.terms)

    def __lt__(self, other):
        return (self.level, self.key()) < (other.level, other.key())

    def variables(self) -> set[IndexSet]:
        return {t for l, r, _ in self.terms for t in (l, r)}

    def to_text(self) -> str:
        out = []
        for n, (l, r, c) in enumerate(self.terms):
            mag = abs(c)
            body = f"X{l}*X{r}" if mag == 1 else f"{mag}*X{l}*X{r}"
            if n == 0:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __str__(self):
        return self.to_text()

    def to_json(self) -> list[dict]:
        return [{"c": c, "l": list(l.elements), "r": list(r.elements)} for l, r, c in self.terms]

    @classmethod
    def from_json(cls, level: int, data: Sequence[dict]) -> QuadraticRelation | None:
        return cls.from_terms(
            level,
            ((d["c"], index_set(level, tuple(d["l"])), index_set(level, tuple(d["r"]))) for d in data),
        )

    @classmethod
    def parse(cls, text: str) -> QuadraticRelation | None:
        """Read the text form back (level taken from the first label)."""
        pat = re.compile(r"([+-])?\s*(?:(\d+)\*)?X\[([^\]]*)\]\*X\[([^\]]*)\]")
        raw = []
        level = None
        pos = 0
        for m in pat.finditer(text):
            if text[pos:m.start()].strip():
                raise ValueError(f"unexpected text {text[pos:m.start()]!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            mag = int(m.group(2)) if m.group(2) else 1
            l = tuple(int(x) for x in m.group(3).split(","))
            r = tuple(int(x) for x in m.group(4).split(","))
            level = len(l) if level is None else level
            raw.append((sign * mag, index_set(level, l), index_set(level, r)))
        if text[pos:].strip() or level is None:
            raise ValueError(f"not a relation: {text!r}")
        return cls.from_terms(level, raw)


def generate_relation(S: IndexSet, Sp: IndexSet, k: int) -> QuadraticRelation | None:
    """The exchange relation at position ``k``; ``None`` when it cancels."""
    i = S.level
    if Sp.level != i:
        raise LevelMismatchError(f"levels {S.level} and {Sp.level} differ")
    if not 0 <= k < i:
        raise ValueError(f"position {k} outside 0..{i - 1}")
    s, sp = S.elements, Sp.elements
    raw = [(1, S, Sp)]
    for l in range(i):
        a, sa = sign_normalize(s[:k] + (sp[l],) + s[k + 1:], i)
        if a is None:
            continue
        b, sb = sign_normalize(sp[:l] + (s[k],) + sp[l + 1:], i)
        if b is None:
            continue
        raw.append((-sa * sb, a, b))
    return QuadraticRelation.from_terms(i, raw)


def iter_relations(i: int) -> Iterator[QuadraticRelation]:
    """Every non-vanishing generator in triple order, duplicates included."""
    sets = enumerate_level(i)
    for S in sets:
        for Sp in sets:
            for k in range(i):
                r = generate_relation(S, Sp, k)
                if r is not None:
                    yield r


@lru_cache(maxsize=8)
def generate_all(i: int) -> tuple[QuadraticRelation, ...]:
    """Deduplicated generators of level ``i`` in canonical order."""
    if i < 1:
        raise ValueError(f"level must be positive, got {i}")
    return tuple(sorted(set(iter_relations(i)), key=QuadraticRelation.key))


def stream_relations(i: int, out: IO[str], chunk_size: int = 200_000, tmpdir: str | None = None) -> int:
    """Write the deduplicated generators as NDJSON in canonical order.

    Memory stays bounded by ``chunk_size``: sorted runs are spilled to
    temporary files and merged.  Returns the number of relations written.
    """
    runs = []
    try:
        buf: set[QuadraticRelation] = set()
        for r in iter_relations(i):
            buf.add(r)
            if len(buf) >= chunk_size:
                runs.append(_spill(buf, tmpdir))
                buf = set()
        if buf:
            runs.append(_spill(buf, tmpdir))
        readers = [open(path, encoding="utf-8") for path in runs]
        try:
            count = 0
            prev = None
            for line in heapq.merge(*readers, key=_line_key):
                if line == prev:
                    continue
                prev = line
                out.write(line)
                count += 1
            return count
        finally:
            for fh in readers:
                fh.close()
    finally:
        for path in runs:
            os.unlink(path)


def _line_key(line: str):
    return tuple((tuple(t["l"]), tuple(t["r"]), t["c"]) for t in json.loads(line))


def _spill(buf: set[QuadraticRelation], tmpdir: str | None) -> str:
    fd, path = tempfile.mkstemp(prefix="relations-", suffix=".ndjson", dir=tmpdir)
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        for r in sorted(buf, key=QuadraticRelation.key):
            fh.write(json.dumps(r.to_json(), separators=(",", ":")) + "\n")
    return path


# -- evaluation ---------------------------------------------------------------

def evaluate(r: QuadraticRelation, v: PluckerVector):
    if r.level != v.level:
        raise LevelMismatchError(f"level {r.level} relation on a level {v.level} vector")
    f = v.field
    total = f.zero
    for l, rr, c in r.terms:
        x, y = v[l], v[rr]
        if x and y:
            total = total + f(c) * x * y
    return total


@dataclass(frozen=True)
class CompiledRelations:
    """Flat arrays for the quadric kernel: ``coef``, ``left``, ``right``, ``offsets``."""

    level: int
    coef: np.ndarray
    left: np.ndarray
    right: np.ndarray
    offsets: np.ndarray
    abs_weight: int

    def __len__(self):
        return len(self.offsets) - 1


@lru_cache(maxsize=8)
def compiled(i: int) -> CompiledRelations:
    pos = level_positions(i)
    coef, left, right, offsets = [], [], [], [0]
    weight = 0
    for r in generate_all(i):
        w = 0
        for l, rr, c in r.terms:
            coef.append(c)
            left.append(pos[l])
            right.append(pos[rr])
            w += abs(c)
        weight = max(weight, w)
        offsets.append(len(coef))
    arr = lambda xs: np.asarray(xs, dtype=np.int64)  # noqa: E731
    return CompiledRelations(i, arr(coef), arr(left), arr(right), arr(offsets), weight)


def residuals(v: PluckerVector) -> list:
    """Value of every canonical generator at ``v``, in canonical order."""
    rels = compiled(v.level)
    if len(rels) == 0:
        return []
    f = v.field
    if isinstance(f, PrimeField):
        vals = np.asarray([int(x) for x in v.dense()], dtype=np.int64)
        out = kernels.eval_quadrics(rels.coef, rels.left, rels.right, rels.offsets, vals, f.p)
        return [f(int(x)) for x in out]
    ints = v.integral()
    big = max(abs(x) for x in ints)
    if big * big * rels.abs_weight < 2**62:
        vals = np.asarray(ints, dtype=np.int64)
        out = kernels.eval_quadrics(rels.coef, rels.left, rels.right, rels.offsets, vals, 0)
        return [Fraction(int(x)) for x in out]
    return [Fraction(x) for x in _eval_bigint(rels, ints)]


def _eval_bigint(rels: CompiledRelations, ints: list[int]) -> list[int]:
    coef, left, right, off = (a.tolist() for a in (rels.coef, rels.left, rels.right, rels.offsets))
    return [
        sum(coef[t] * ints[left[t]] * ints[right[t]] for t in range(off[n], off[n + 1]))
        for n in range(len(off) - 1)
    ]


def satisfies_all(v: PluckerVector) -> bool:
    """Whether every level generator vanishes at ``v``.

    Over Q the vector is first scaled to a primitive integer vector, which
    does not change the zero pattern of the homogeneous quadrics.
    """
    return not any(residuals(v))


def failing_relations(v: PluckerVector) -> list[QuadraticRelation]:
    return [r for r, x in zip(generate_all(v.level), residuals(v)) if x]


# -- span and evaluation oracles ---------------------------------------------

def monomials(i: int) -> list[tuple[int, int]]:
    """Degree-2 monomials in the level coordinates as position pairs ``a <= b``."""
    n = len(enumerate_level(i))
    return list(itertools.combinations_with_replacement(range(n), 2))


def relation_rows(rels: Iterable[QuadraticRelation]) -> list[dict[tuple[int, int], int]]:
    rows = []
    for r in rels:
        pos = level_positions(r.level)
        rows.append({(pos[l], pos[rr]): c for l, rr, c in r.terms})
    return rows


def sparse_rank(rows: Iterable[dict]) -> int:
    """Exact rank over Q of sparse rows ``{column: value}``."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                lead = row[col]
                pivots[col] = {k: v / lead for k, v in row.items()}
                rank += 1
                break
            f = row[col]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def span_dimension(i: int) -> int:
    """Dimension over Q of the span of the level ``i`` generators in degree-2 forms."""
    return sparse_rank(relation_rows(generate_all(i)))


def pushed_relation(r: QuadraticRelation, j: int) -> QuadraticRelation:
    """Relabel every index set of ``r`` through the level ``j`` padding."""
    from .maya import between_levels

    out = QuadraticRelation.from_terms(
        j, ((c, between_levels(l, j), between_levels(rr, j)) for l, rr, c in r.terms)
    )
    assert out is not None
    return out


def in_relation_span(rels: Sequence[QuadraticRelation], level: int) -> bool:
    """Whether every relation in ``rels`` lies in the span of the level generators."""
    base = relation_rows(generate_all(level))
    r0 = sparse_rank(base)
    return sparse_rank(base + relation_rows(rels)) == r0


def evaluation_matrix(points: Sequence[GrassPoint]) -> list[list[int]]:
    """Rows of all degree-2 monomials evaluated at integer coordinate vectors."""
    from .points import plucker_vector

    mons = None
    rows = []
    for p in points:
        v = plucker_vector(p).integral()
        if mons is None:
            mons = monomials(p.level)
        rows.append([v[a] * v[b] for a, b in mons])
    return rows


def evaluation_rank(points: Sequence[GrassPoint]) -> int:
    return linalg.bareiss_rank(evaluation_matrix(points))


# -- chart inversion ----------------------------------------------------------

def chart_basis(v: PluckerVector, t: IndexSet) -> ExactMatrix:
    """Basis with an identity block on the columns of ``t``.

    Row ``s`` has entry ``sign * v[t with s -> b] / v[t]`` at column ``b``
    outside ``t``.
    """
    i = v.level
    if t.level != i:
        raise LevelMismatchError(f"chart of level {t.level} for a level {i} vector")
    pivot = v[t]
    if not pivot:
        raise NotInChartError(f"coordinate {t} vanishes")
    f = v.field
    inv = f.one / pivot
    tset = set(t.elements)
    rows = []
    for k, s in enumerate(t.elements):
        row = []
        for b in range(-i, i):
            if b in tset:
                row.append(f.one if b == s else f.zero)
                continue
            label, sign = sign_normalize(t.elements[:k] + (b,) + t.elements[k + 1:], i)
            row.append(f(sign) * v[label] * inv)
        rows.append(tuple(row))
    return ExactMatrix(f, tuple(rows), 2 * i)


def chart_reconstruct(v: PluckerVector, t: IndexSet) -> GrassPoint:
    """Point whose coordinate vector is proportional to ``v``, read off the chart ``t``."""
    if t.level != v.level:
        raise LevelMismatchError(f"chart of level {t.level} for a level {v.level} vector")
    if not v[t]:
        raise NotInChartError(f"coordinate {t} vanishes")
    if not satisfies_all(v):
        raise NotDecomposableError("the vector violates a Pluecker relation")
    return GrassPoint(v.level, chart_basis(v, t))


def decomposable_vectors(field: PrimeField, i: int) -> Iterator[PluckerVector]:
    """Normalized nonzero vectors of the level satisfying every generator."""
    n = len(enumerate_level(i))
    q = field.p
    for tail in itertools.product(range(q), repeat=n):
        if not any(tail):
            continue
        lead = next(x for x in tail if x)
        if lead != 1:
            continue
        v = PluckerVector.from_dense(i, field, list(tail))
        if satisfies_all(v):
            yield v


__all__ = [
    "QuadraticRelation",
    "generate_relation",
    "iter_relations",
    "generate_all",
    "stream_relations",
    "evaluate",
    "residuals",
    "satisfies_all",
    "failing_relations",
    "span_dimension",
    "sparse_rank",
    "pushed_relation",
    "in_relation_span",
    "evaluation_matrix",
    "evaluation_rank",
    "chart_basis",
    "chart_reconstruct",
    "decomposable_vectors",
]
