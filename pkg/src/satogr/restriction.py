"""Restriction of sections between windows and coordinate transport between levels.

A :class:`WindowPair` records the diagrams of a lattice pair ``N <= M``.
For the standard window pair of level ``i`` the outer diagram is
``{i, i+1, ...}`` and the inner one ``{-i, -i+1, ...}``; a section label
``S`` survives restriction iff it is sandwiched between them, and its
label on the quotient is ``S`` minus the outer diagram.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ChargeError, LevelMismatchError
from .maya import (
    IndexSet,
    MayaDiagram,
    between_levels,
    enumerate_level,
    index_set,
    restrict_level,
)
from .points import GrassPoint, PluckerVector, embed_level, plucker_vector, vacuum


@dataclass(frozen=True)
class WindowPair:
    """Outer diagram contained in the inner one (the lattices run the other way)."""

    outer: MayaDiagram
    inner: MayaDiagram

    def __post_init__(self):
        if not self.outer.issubset(self.inner):
            raise ValueError(f"outer diagram {self.outer} is not contained in {self.inner}")

    @classmethod
    def standard(cls, i: int) -> WindowPair:
        outer = MayaDiagram(frozenset(), frozenset(range(i)))
        inner = MayaDiagram(frozenset(range(-i, 0)), frozenset())
        return cls(outer, inner)

    def quotient_dim(self) -> int:
        return self.inner.charge - self.outer.charge


def _elements_below(s: MayaDiagram, stop: int) -> list[int]:
    lo = min(s.J, default=0)
    return [x for x in range(lo, stop) if x in s]


def restrict_section(s: MayaDiagram, w: WindowPair) -> tuple[int, ...] | None:
    """Label ``S - S(outer)`` of the restricted section, or ``None`` when it vanishes.

    The section survives iff ``S(outer) <= S <= S(inner)``.
    """
    if s.charge != 0:
        raise ChargeError(f"section labels have charge 0, got {s.charge}")
    if not (w.outer.issubset(s) and s.issubset(w.inner)):
        return None
    stop = max(s.stable_from(), w.outer.stable_from())
    return tuple(x for x in _elements_below(s, stop) if x not in w.outer)


def restrict_section_standard(s: MayaDiagram, i: int) -> IndexSet | None:
    out = restrict_section(s, WindowPair.standard(i))
    return None if out is None else index_set(i, out)


def inner_contraction(indices: Sequence[int], dbar: int, start: int = 1, d: int | None = None) -> tuple[int, ...] | None:
    """Contract ``e*_{j_1} ^ ... ^ e*_{j_r}`` with the kernel vectors ``start .. start+dbar-1``.

    Returns the remaining labels when the first ``dbar`` entries are exactly
    the kernel labels, else ``None``.  ``start`` lets a second contraction
    continue on the quotient basis, which begins after the first kernel.
    """
    js = tuple(int(x) for x in indices)
    if dbar < 0:
        raise ValueError(f"kernel size must be nonnegative, got {dbar}")
    if any(a >= b for a, b in zip(js, js[1:])):
        raise ValueError(f"labels must be strictly increasing: {list(js)}")
    if js and js[0] < start:
        raise ValueError(f"labels start at {start}: {list(js)}")
    if d is not None and js and js[-1] > d:
        raise ValueError(f"labels exceed the dimension {d}: {list(js)}")
    if len(js) < dbar:
        return None
    if js[:dbar] != tuple(range(start, start + dbar)):
        return None
    return js[dbar:]


def pushforward_coords(v: PluckerVector, j: int) -> PluckerVector:
    if j < v.level:
        raise LevelMismatchError(f"cannot push level {v.level} down to {j}")
    return PluckerVector(j, v.field, {between_levels(t, j): x for t, x in v.coords.items()})


def pullback_coords(v: PluckerVector, i: int) -> PluckerVector | None:
    """Keep the coordinates whose labels restrict to level ``i``; ``None`` if none do."""
    if i > v.level:
        raise LevelMismatchError(f"cannot pull level {v.level} back to {i}")
    kept = {}
    for t, x in v.coords.items():
        s = restrict_level(t, i)
        if s is not None:
            kept[s] = x
    return PluckerVector(i, v.field, kept) if kept else None


def preimages(t: IndexSet, j: int) -> list[IndexSet]:
    """Level ``j`` labels that pull back onto ``t``."""
    return [s for s in enumerate_level(j) if restrict_level(s, t.level) == t]


def embedding_sign(i: int, j: int, field=None) -> int:
    """The global sign relating embedded coordinates to pushed-forward ones, read off the vacuum."""
    from .field import QQ

    f = QQ if field is None else field
    v0 = plucker_vector(vacuum(i, f))
    v1 = plucker_vector(embed_level(vacuum(i, f), j))
    pushed = pushforward_coords(v0, j)
    t = next(iter(pushed.coords))
    return 1 if v1[t] == pushed[t] else -1


def check_embedding_diagram(p: GrassPoint, j: int) -> bool:
    """Coordinates of the embedded point are the pushed-forward coordinates times the fixed sign."""
    sign = embedding_sign(p.level, j, p.field)
    lhs = plucker_vector(embed_level(p, j))
    rhs = pushforward_coords(plucker_vector(p), j)
    return lhs == (rhs if sign == 1 else rhs.scale(-1))
