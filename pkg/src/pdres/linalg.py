"""Dense exact linear algebra over a Field.

Matrices are lists of rows; vectors are lists.  Everything here is
hand-written Gaussian elimination so results are exact in QQ and F_p.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .field import Field

# a large prime used for one-sided modular rank certificates
CERT_PRIME = 2147483647


def rref(rows: Sequence[Sequence], field: Field, ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the pivot column of ``R[i]``.  Pivots are monic.
    """
    p = field.p
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = field.inv(row[c])
        if inv != 1:
            if p:
                row = [(x * inv) % p for x in row]
            else:
                row = [x * inv for x in row]
            m[r] = row
        nz = [j for j in range(c, ncols) if row[j] != 0]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    other = m[i]
                    if p:
                        for j in nz:
                            other[j] = (other[j] - f * row[j]) % p
                    else:
                        for j in nz:
                            other[j] = other[j] - f * row[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence], field: Field, ncols: int | None = None) -> int:
    return len(rref(rows, field, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, field: Field) -> list[list]:
    """Basis of {v : M v = 0}, one vector per free column (free entry 1)."""
    R, pivots = rref(rows, field, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(R, pivots):
            if row[free] != 0:
                v[pc] = field.neg(row[free])
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int, field: Field):
    """A particular solution of M v = rhs with all free variables zero, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, field, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    v = [0] * ncols
    for row, pc in zip(R, pivots):
        v[pc] = row[ncols]
    return v


def row_space_complement(span: Sequence[Sequence], vectors: Sequence[Sequence], ncols: int, field: Field):
    """Vectors spanning a complement of span(span) inside span(span + vectors).

    Each returned vector is reduced against the echelon form of ``span`` and
    the set is itself in reduced echelon form, so the choice is canonical for
    the given column order.
    """
    W, wp = rref(span, field, ncols)
    reduced = []
    for v in vectors:
        v = list(v)
        for row, pc in zip(W, wp):
            f = v[pc]
            if f != 0:
                v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            reduced.append(v)
    if not reduced:
        return []
    R, rp = rref(reduced, field, ncols)
    # clear the span pivots again (row ops among reduced vectors keep them zero)
    return R


def _to_mod(x, p: int) -> int | None:
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            return None
        return x.numerator * pow(x.denominator, -1, p) % p
    return x % p


def rank_lower_bound_mod(rows: Sequence[Sequence], ncols: int, p: int = CERT_PRIME) -> int | None:
    """Rank of an integer/rational matrix reduced mod p.

    This is a lower bound for the rank over QQ.  Returns None if some
    denominator is divisible by p.
    """
    red = []
    for r in rows:
        rr = []
        for x in r:
            y = _to_mod(x, p)
            if y is None:
                return None
            rr.append(y)
        red.append(rr)
    return rank(red, Field(p), ncols)
