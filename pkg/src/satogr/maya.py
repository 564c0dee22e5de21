"""Maya diagrams and their level-i truncations.

A Maya diagram is a strictly increasing integer sequence that eventually
runs through all large integers.  It is stored by two finite sets: the
negative integers it contains (``J``) and the nonnegative integers it
misses (``K``).  The charge ``|J| - |K|`` is zero for the diagrams that
label coordinates on the index-0 component.

:class:`IndexSet` is the truncated object: ``i`` integers
``-i <= s_0 < ... < s_{i-1} <= i-1``.  Its lexicographic order is the
coordinate order used for every dense vector and every serialized form.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ChargeError, LevelMismatchError


@dataclass(frozen=True)
class MayaDiagram:
    J: frozenset = frozenset()
    K: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(int(x) for x in self.J))
        object.__setattr__(self, "K", frozenset(int(x) for x in self.K))
        if any(x >= 0 for x in self.J):
            raise ValueError(f"included negatives must be < 0: {sorted(self.J)}")
        if any(x < 0 for x in self.K):
            raise ValueError(f"excluded nonnegatives must be >= 0: {sorted(self.K)}")

    @classmethod
    def vacuum(cls) -> MayaDiagram:
        return cls()

    @classmethod
    def from_prefix(cls, prefix: Sequence[int], start: int) -> MayaDiagram:
        """The set ``prefix | {start, start + 1, ...}``."""
        elems = set(int(x) for x in prefix)
        J = {x for x in elems if x < 0} | set(range(start, 0))
        K = {x for x in range(0, max(start, 0)) if x not in elems}
        return cls(frozenset(J), frozenset(K))

    @property
    def charge(self) -> int:
        return len(self.J) - len(self.K)

    def __contains__(self, n: int) -> bool:
        return n in self.J if n < 0 else n not in self.K

    def stable_from(self) -> int:
        """Smallest ``i0`` with ``{i0, i0 + 1, ...}`` contained in the diagram."""
        start = max(self.K) + 1 if self.K else 0
        while start - 1 in self:
            start -= 1
        return start

    def terms(self, n: int) -> list[int]:
        """The first ``n`` elements ``s_0 < s_1 < ... < s_{n-1}``."""
        out = sorted(self.J)[:n]
        x = 0
        while len(out) < n:
            if x not in self.K:
                out.append(x)
            x += 1
        return out

    def issubset(self, other: MayaDiagram) -> bool:
        return self.J <= other.J and other.K <= self.K

    def __le__(self, other: MayaDiagram) -> bool:
        return self.issubset(other)

    def __str__(self):
        head = sorted(self.J) + [x for x in range(max(self.K, default=-1) + 2) if x not in self.K]
        return "{" + ",".join(map(str, head)) + ",...}"


@dataclass(frozen=True, order=True, slots=True)
class IndexSet:
    """``level`` strictly increasing integers in ``[-level, level - 1]``."""

    level: int
    elements: tuple

    def __post_init__(self):
        els = tuple(int(x) for x in self.elements)
        object.__setattr__(self, "elements", els)
        i = self.level
        if i < 1:
            raise ValueError(f"level must be positive, got {i}")
        if len(els) != i:
            raise ValueError(f"level {i} index set needs {i} elements, got {list(els)}")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError(f"elements must be strictly increasing: {list(els)}")
        if els[0] < -i or els[-1] > i - 1:
            raise ValueError(f"elements {list(els)} leave the window [{-i}, {i - 1}]")

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "[" + ",".join(map(str, self.elements)) + "]"

    def __repr__(self):
        return f"IndexSet({self})"

    @classmethod
    def parse(cls, text: str, level: int | None = None) -> IndexSet:
        m = re.fullmatch(r"\s*\[\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\]\s*", text)
        if m is None:
            raise ValueError(f"not an index set literal: {text!r}")
        els = tuple(int(x) for x in m.group(1).split(",")) if m.group(1) else ()
        return cls(len(els) if level is None else level, els)


@functools.lru_cache(maxsize=None)
def index_set(level: int, elements: tuple) -> IndexSet:
    """Interned constructor for hot loops."""
    return IndexSet(level, elements)


def charge(s: MayaDiagram) -> int:
    return s.charge


def truncate(s: MayaDiagram, i: int) -> IndexSet | None:
    """First ``i`` terms of ``s`` if ``s_0 >= -i`` and ``s_j = j`` for ``j >= i``."""
    if s.charge != 0:
        raise ChargeError(f"truncation needs charge 0, got {s.charge}")
    if any(k >= i for k in s.K):
        return None
    if s.J and min(s.J) < -i:
        return None
    elems = sorted(s.J) + [x for x in range(i) if x not in s.K]
    return index_set(i, tuple(elems))


def pad(t: IndexSet) -> MayaDiagram:
    """The section ``{s_0, ..., s_{i-1}} -> {s_0, ..., s_{i-1}, i, i+1, ...}``."""
    J = frozenset(x for x in t.elements if x < 0)
    K = frozenset(x for x in range(t.level) if x not in t.elements)
    return MayaDiagram(J, K)


@functools.lru_cache(maxsize=None)
def enumerate_level(i: int) -> tuple[IndexSet, ...]:
    """All ``C(2i, i)`` index sets of level ``i`` in lexicographic order."""
    if i < 1:
        raise ValueError(f"level must be positive, got {i}")
    return tuple(index_set(i, c) for c in itertools.combinations(range(-i, i), i))


@functools.lru_cache(maxsize=None)
def level_positions(i: int) -> dict[IndexSet, int]:
    """Position of every level-``i`` index set in the canonical order."""
    return {t: n for n, t in enumerate(enumerate_level(i))}


def between_levels(t: IndexSet, j: int) -> IndexSet:
    """Push ``t`` up to level ``j >= t.level``: append ``i, ..., j-1``."""
    i = t.level
    if j < i:
        raise LevelMismatchError(f"cannot push level {i} up to level {j}")
    return index_set(j, t.elements + tuple(range(i, j)))


def restrict_level(t: IndexSet, i: int) -> IndexSet | None:
    """``truncate(pad(t), i)`` for ``i <= t.level``."""
    if i > t.level:
        raise LevelMismatchError(f"cannot restrict level {t.level} to level {i}")
    return truncate(pad(t), i)


def complement(t: IndexSet) -> IndexSet:
    """The other ``i`` exponents of the window ``[-i, i-1]``."""
    i = t.level
    present = set(t.elements)
    return index_set(i, tuple(x for x in range(-i, i) if x not in present))


def sort_with_sign(raw: Sequence[int]) -> tuple[tuple, int]:
    """Sorted tuple and the sign of the sorting permutation (0 on a repeat)."""
    vals = list(raw)
    n = len(vals)
    inversions = 0
    for a in range(n):
        va = vals[a]
        for b in range(a + 1, n):
            vb = vals[b]
            if va == vb:
                return (), 0
            if va > vb:
                inversions += 1
    return tuple(sorted(vals)), (-1 if inversions & 1 else 1)


def sign_normalize(raw: Sequence[int], level: int | None = None) -> tuple[IndexSet | None, int]:
    """Resolve an arbitrary list of window exponents to ``(sorted set, sign)``.

    A repeated or out-of-window entry gives ``(None, 0)``: that coordinate is
    identically zero.
    """
    i = len(raw) if level is None else level
    if len(raw) != i or any(x < -i or x > i - 1 for x in raw):
        return None, 0
    elems, sign = sort_with_sign(raw)
    if sign == 0:
        return None, 0
    return index_set(i, elems), sign


def iter_diagrams(max_size: int, bound: int, charge_value: int | None = 0) -> Iterator[MayaDiagram]:
    """Diagrams with ``|J|, |K| <= max_size`` and entries of absolute value ``<= bound``."""
    negs = range(-bound, 0)
    nonnegs = range(0, bound + 1)
    for nj in range(max_size + 1):
        for J in itertools.combinations(negs, nj):
            for nk in range(max_size + 1):
                if charge_value is not None and nj - nk != charge_value:
                    continue
                for K in itertools.combinations(nonnegs, nk):
                    yield MayaDiagram(frozenset(J), frozenset(K))
