"""The residue pairing on windows, perpendicular subspaces and annihilators.

``T(z^a, z^b) = (-1)^b`` when ``a + b = -1`` and zero otherwise.  The
window ``[-i, i-1]`` is closed under ``a -> -1 - a``, so the pairing is
nondegenerate on every window and :func:`perp` never leaves it.

Over GF(2) the pairing is symmetric and the isotropy statements do not
carry over; this module is meant for Q and odd primes.
"""

from __future__ import annotations

from . import linalg
from .field import QQ, Field
from .laurent import LaurentVector
from .linalg import ExactMatrix
from .points import GrassPoint


def _sign(b: int) -> int:
    return -1 if b % 2 else 1


def monomial_pairing(a: int, b: int) -> int:
    return _sign(b) if a + b == -1 else 0


def residue_pairing(f: LaurentVector, g: LaurentVector):
    """Residue at 0 of ``f(z) g(-z) dz``."""
    field = f.field
    total = field.zero
    gd = g.as_dict()
    for a, c in f.support:
        b = -1 - a
        if b in gd:
            total = total + field(_sign(b)) * c * gd[b]
    return total


def gram_matrix(i: int, field: Field = QQ) -> ExactMatrix:
    """Window Gram matrix with entry ``(r, c) = T(e_c, e_r)``.

    Rows and columns follow the exponents ``-i .. i-1``.  At level 1 this
    is ``[[0, -1], [1, 0]]``.
    """
    if i < 1:
        raise ValueError(f"level must be positive, got {i}")
    n = 2 * i
    rows = tuple(
        tuple(field(monomial_pairing(c - i, r - i)) for c in range(n)) for r in range(n)
    )
    return ExactMatrix(field, rows, n)


def pairing_matrix(p: GrassPoint, q: GrassPoint) -> ExactMatrix:
    """Matrix of ``T(w, x)`` for basis vectors ``w`` of ``p`` and ``x`` of ``q``."""
    g = gram_matrix(p.level, p.field)
    return p.basis @ g.T @ q.basis.T


def perp(p: GrassPoint) -> GrassPoint:
    """``{x : T(w, x) = 0 for all w in W}``, of dimension ``2i - dim W``."""
    g = gram_matrix(p.level, p.field)
    if p.dim == 0:
        return GrassPoint(p.level, ExactMatrix.identity(p.field, 2 * p.level))
    return GrassPoint(p.level, linalg.kernel(p.basis @ g.T))


def annihilator(p: GrassPoint) -> GrassPoint:
    """Functionals vanishing on ``W``, written in the dual basis ``e*_{-i} .. e*_{i-1}``."""
    if p.dim == 0:
        return GrassPoint(p.level, ExactMatrix.identity(p.field, 2 * p.level))
    return GrassPoint(p.level, linalg.kernel(p.basis))


def gram_transport(p: GrassPoint) -> GrassPoint:
    """Image of ``p`` under ``x -> T(., x)``, as a subspace of the dual window."""
    g = gram_matrix(p.level, p.field)
    if p.dim == 0:
        return p
    return GrassPoint(p.level, linalg.rowspace(p.basis @ g))


def is_totally_isotropic(p: GrassPoint) -> bool:
    if p.dim == 0:
        return True
    return pairing_matrix(p, p).is_zero()


def is_maximal_isotropic(p: GrassPoint) -> bool:
    """Totally isotropic and equal to its own perpendicular."""
    return is_totally_isotropic(p) and perp(p) == p
