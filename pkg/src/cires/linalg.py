"""Exact Gaussian elimination over any field object exposing raw arithmetic.

Matrices are lists of rows of raw field values.  The same routines serve
prime fields, extension fields and the rational function field of
:mod:`cires.generic`.
"""

from __future__ import annotations


def rref(rows, field):
    """Reduced row echelon form.

    Returns ``(basis_rows, pivot_columns)`` where ``basis_rows`` are the
    nonzero rows of the RREF, each with a 1 in its pivot column.
    """
    iz, sub, mul, inv = field.is_zero, field.sub, field.mul, field.inv
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    basis: list[list] = []
    pivots: list[int] = []
    for col in range(ncols):
        piv = next((i for i, r in enumerate(work) if not iz(r[col])), None)
        if piv is None:
            continue
        row = work.pop(piv)
        s = inv(row[col])
        row = [mul(x, s) for x in row]
        for others in (work, basis):
            for i, r in enumerate(others):
                c = r[col]
                if not iz(c):
                    others[i] = [sub(a, mul(c, b)) for a, b in zip(r, row)]
        basis.append(row)
        pivots.append(col)
        work = [r for r in work if any(not iz(x) for x in r)]
        if not work:
            break
    return basis, pivots


def rank(rows, field) -> int:
    """Rank via forward elimination only."""
    iz, sub, mul, inv = field.is_zero, field.sub, field.mul, field.inv
    work = [list(r) for r in rows if any(not iz(x) for x in r)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if not iz(work[i][col])), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        s = inv(work[r][col])
        pr = work[r]
        for i in range(r + 1, len(work)):
            c = work[i][col]
            if not iz(c):
                f = mul(c, s)
                work[i] = [sub(a, mul(f, b)) for a, b in zip(work[i], pr)]
        r += 1
        if r == len(work):
            break
    return r


def reduce_vector(vec, basis, pivots, field):
    """Reduce ``vec`` against RREF rows; the result vanishes on every pivot."""
    iz, sub, mul = field.is_zero, field.sub, field.mul
    vec = list(vec)
    for row, col in zip(basis, pivots):
        c = vec[col]
        if not iz(c):
            vec = [sub(a, mul(c, b)) for a, b in zip(vec, row)]
    return vec


def transpose(rows):
    return [list(c) for c in zip(*rows)]
