"""Dense exact linear algebra over Q and GF(p).

Subspaces of ``k^n`` are represented by matrices whose rows span them.
Every subspace-valued function returns the canonical basis: the nonzero
rows of the reduced row echelon form, so two subspaces are equal exactly
when their returned matrices are.

Over GF(p) the elimination runs in the selected kernel backend (see
:mod:`satogr._backend`).  Over Q ranks and determinants use fraction-free
Bareiss elimination on integer rows; reduced echelon forms use
:class:`~fractions.Fraction` Gauss-Jordan.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._backend import kernels
from .errors import AmbientMismatchError, FieldMismatchError, NotInvertibleError
from .field import QQ, Field, Fp, PrimeField, field_of


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable row-major matrix with entries in one exact field.

    ``ncols`` is stored separately so that a matrix may have zero rows (the
    basis of the zero subspace still lives in a definite ambient space).
    """

    field: Field
    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable], ncols: int | None = None) -> ExactMatrix:
        conv = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not conv:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(conv[0])
        if any(len(row) != ncols for row in conv):
            raise ValueError("ragged rows")
        return cls(field, conv, ncols)

    @classmethod
    def infer(cls, rows: Sequence[Sequence], ncols: int | None = None) -> ExactMatrix:
        """Build a matrix, deducing the field from the entries.

        Mixed entries (two moduli, or residues next to non-integral
        fractions) raise :class:`~satogr.errors.FieldMismatchError`.
        """
        fields = {f for row in rows for x in row if (f := field_of(x)) is not None}
        if len(fields) > 1:
            raise FieldMismatchError(f"entries from several fields: {sorted(map(str, fields))}")
        field = fields.pop() if fields else QQ
        return cls.from_rows(field, rows, ncols)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> ExactMatrix:
        z = field.zero
        return cls(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> ExactMatrix:
        z, o = field.zero, field.one
        return cls(field, tuple(tuple(o if r == c else z for c in range(n)) for r in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, rc):
        r, c = rc
        return self.rows[r][c]

    def __iter__(self):
        return iter(self.rows)

    def transpose(self) -> ExactMatrix:
        if not self.rows:
            return ExactMatrix(self.field, tuple(() for _ in range(self.ncols)), 0)
        return ExactMatrix(self.field, tuple(zip(*self.rows)), self.nrows)

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def columns(self, cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(self.field, tuple(tuple(row[c] for c in cols) for row in self.rows), len(cols))

    def select_rows(self, idx: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(self.field, tuple(self.rows[r] for r in idx), self.ncols)

    def stack(self, other: ExactMatrix) -> ExactMatrix:
        _check_compatible(self, other)
        return ExactMatrix(self.field, self.rows + other.rows, self.ncols)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} times {other.field}")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().rows
        z = self.field.zero
        out = tuple(tuple(sum((a * b for a, b in zip(row, col)), z) for col in cols) for row in self.rows)
        return ExactMatrix(self.field, out, other.ncols)

    def scale(self, c) -> ExactMatrix:
        c = self.field(c)
        return ExactMatrix(self.field, tuple(tuple(c * x for x in row) for row in self.rows), self.ncols)

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def to_ints(self) -> np.ndarray:
        """Residues as an ``int64`` array (prime fields only)."""
        if not isinstance(self.field, PrimeField):
            raise TypeError("to_ints needs a prime field")
        return np.array([[x.value for x in row] for row in self.rows], dtype=np.int64).reshape(self.shape)

    def tolist(self) -> list[list]:
        return [list(row) for row in self.rows]

    def __str__(self):
        body = "\n".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"<{self.nrows}x{self.ncols} over {self.field}>\n{body}"


def _check_compatible(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} and {b.field}")
    if a.ncols != b.ncols:
        raise AmbientMismatchError(f"ambient dimensions {a.ncols} and {b.ncols} differ")


def _check_entries(m: ExactMatrix) -> None:
    contains = m.field.contains
    for row in m.rows:
        for x in row:
            if not contains(x):
                raise FieldMismatchError(f"entry {x!r} is not in {m.field}")


def _from_ints(field: PrimeField, arr: np.ndarray, ncols: int) -> ExactMatrix:
    p = field.p
    return ExactMatrix(field, tuple(tuple(Fp(v, p) for v in row) for row in arr.tolist()), ncols)


# -- integer helpers (Q path) -------------------------------------------------

def integer_rows(m: ExactMatrix) -> tuple[list[list[int]], list[int]]:
    """Clear denominators row by row; returns the rows and the multipliers."""
    rows, scales = [], []
    for row in m.rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        scales.append(lcm)
        rows.append([int(x * lcm) for x in row])
    return rows, scales


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Works in place on a copy; every division is exact by Sylvester's
    identity, also when columns without a pivot are skipped.
    """
    a = [list(r) for r in rows if any(r)]
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = -1
        for k in range(r, m):
            if a[k][c]:
                piv = k
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        for k in range(r + 1, m):
            rk = a[k]
            f = rk[c]
            if f:
                for j in range(c + 1, n):
                    rk[j] = (pv * rk[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, n):
                    rk[j] = (pv * rk[j]) // prev
            rk[c] = 0
        prev = pv
        r += 1
        if r == m:
            break
    return r


def bareiss_det(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n):
        piv = -1
        for k in range(c, n):
            if a[k][c]:
                piv = k
                break
        if piv < 0:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pr = a[c]
        pv = pr[c]
        for k in range(c + 1, n):
            rk = a[k]
            f = rk[c]
            for j in range(c + 1, n):
                rk[j] = (pv * rk[j] - f * pr[j]) // prev
        prev = pv
    return sign * a[n - 1][n - 1]


def _rref_fraction(rows: list[list[Fraction]], ncols: int) -> list[int]:
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for k in range(r, nrows):
            if rows[k][c]:
                piv = k
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        row = rows[r]
        lead = row[c]
        if lead != 1:
            for j in range(c, ncols):
                row[j] = row[j] / lead
        for k in range(nrows):
            if k != r:
                other = rows[k]
                f = other[c]
                if f:
                    for j in range(c, ncols):
                        other[j] -= f * row[j]
        pivots.append(c)
        r += 1
    return pivots


# -- public operations ----------------------------------------------------------

def rref(m: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    Pivots are the leftmost possible and normalized to 1, so the result only
    depends on the row span.  The returned matrix keeps the input shape
    (zero rows at the bottom).
    """
    _check_entries(m)
    if m.nrows == 0 or m.ncols == 0:
        return m, 0, []
    if isinstance(m.field, PrimeField):
        out, pivots = kernels.rref_modp(m.to_ints(), m.field.p)
        return _from_ints(m.field, out, m.ncols), len(pivots), list(pivots)
    rows = [list(row) for row in m.rows]
    pivots = _rref_fraction(rows, m.ncols)
    return ExactMatrix(m.field, tuple(tuple(row) for row in rows), m.ncols), len(pivots), pivots


def rank(m: ExactMatrix) -> int:
    _check_entries(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if isinstance(m.field, PrimeField):
        return kernels.rank_modp(m.to_ints(), m.field.p)
    rows, _ = integer_rows(m)
    return bareiss_rank(rows)


def det(m: ExactMatrix):
    if m.nrows != m.ncols:
        raise ValueError(f"determinant of a {m.nrows}x{m.ncols} matrix")
    _check_entries(m)
    if isinstance(m.field, PrimeField):
        return Fp(kernels.det_modp(m.to_ints(), m.field.p), m.field.p)
    rows, scales = integer_rows(m)
    return Fraction(bareiss_det(rows), math.prod(scales))


def maximal_minors(m: ExactMatrix, subsets: Sequence[Sequence[int]]) -> list:
    """Determinants of the square submatrices of ``m`` on each column subset."""
    d = m.nrows
    if isinstance(m.field, PrimeField):
        if not subsets:
            return []
        cols = np.array(subsets, dtype=np.int64).reshape(len(subsets), d)
        vals = kernels.minors_modp(m.to_ints(), cols, m.field.p)
        p = m.field.p
        return [Fp(int(v), p) for v in vals]
    rows, scales = integer_rows(m)
    denom = math.prod(scales)
    return [Fraction(bareiss_det([[row[c] for c in s] for row in rows]), denom) for s in subsets]


def rowspace(m: ExactMatrix) -> ExactMatrix:
    """Canonical basis of the row span."""
    red, r, _ = rref(m)
    return ExactMatrix(m.field, red.rows[:r], m.ncols)


def kernel(m: ExactMatrix) -> ExactMatrix:
    """Canonical basis of ``{x : m x = 0}``, one vector per row."""
    n = m.ncols
    red, r, pivots = rref(m)
    field = m.field
    z, o = field.zero, field.one
    pivset = set(pivots)
    vecs = []
    for free in range(n):
        if free in pivset:
            continue
        v = [z] * n
        v[free] = o
        for row_idx, pc in enumerate(pivots):
            v[pc] = -red.rows[row_idx][free]
        vecs.append(v)
    if not vecs:
        return ExactMatrix(field, (), n)
    return rowspace(ExactMatrix(field, tuple(tuple(v) for v in vecs), n))


def subspace_sum(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_compatible(a, b)
    return rowspace(a.stack(b))


def subspace_intersect(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Row span of ``a`` meet row span of ``b``.

    Uses ``span(a) & span(b) = (null(a) + null(b))^perp`` for the standard
    dot product, which holds over every field.
    """
    _check_compatible(a, b)
    na, nb = kernel(a), kernel(b)
    both = na.stack(nb)
    if both.nrows == 0:
        return rowspace(a)
    return kernel(both)


def contains(big: ExactMatrix, small: ExactMatrix) -> bool:
    """Whether the row span of ``small`` lies in that of ``big``."""
    _check_compatible(big, small)
    return rank(big.stack(small)) == rank(big)


def solve_left(basis: ExactMatrix, vec: Sequence) -> list | None:
    """Coefficients ``c`` with ``c @ basis == vec``, or ``None``."""
    aug = basis.transpose()
    aug_rows = [list(r) + [basis.field(x)] for r, x in zip(aug.rows, vec)]
    m = ExactMatrix(basis.field, tuple(tuple(r) for r in aug_rows), basis.nrows + 1)
    red, r, pivots = rref(m)
    if pivots and pivots[-1] == basis.nrows:
        return None
    z = basis.field.zero
    coeffs = [z] * basis.nrows
    for row_idx, pc in enumerate(pivots):
        coeffs[pc] = red.rows[row_idx][-1]
    return coeffs


def inverse(m: ExactMatrix) -> ExactMatrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    ident = ExactMatrix.identity(m.field, n)
    aug = ExactMatrix(m.field, tuple(r + i for r, i in zip(m.rows, ident.rows)), 2 * n)
    red, _, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise NotInvertibleError("singular matrix")
    return ExactMatrix(m.field, tuple(row[n:] for row in red.rows), n)


def enumerate_subspaces(field: PrimeField, n: int, d: int) -> Iterator[ExactMatrix]:
    """Every ``d``-dimensional subspace of ``GF(q)^n`` as its canonical basis.

    Walks pivot patterns in lexicographic order and, inside each, the free
    entries in the order of :func:`itertools.product`.
    """
    if not isinstance(field, PrimeField):
        raise TypeError("subspaces can only be enumerated over a finite field")
    if d == 0:
        yield ExactMatrix(field, (), n)
        return
    elems = field.elements()
    z, o = field.zero, field.one
    for pivots in itertools.combinations(range(n), d):
        pivset = set(pivots)
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset]
        for vals in itertools.product(elems, repeat=len(slots)):
            rows = [[z] * n for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = o
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            yield ExactMatrix(field, tuple(tuple(r) for r in rows), n)


def count_subspaces(q: int, n: int, d: int) -> int:
    """Gaussian binomial ``[n choose d]_q``."""
    num = den = 1
    for k in range(d):
        num *= q ** (n - k) - 1
        den *= q ** (k + 1) - 1
    return num // den
