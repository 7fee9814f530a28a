"""Exact rank computations over the rationals and prime fields.

Two entry points:

* :func:`rank` for small dense matrices (lists of rows).  Prime fields use
  ordinary Gaussian elimination; the rationals use Bareiss fraction-free
  elimination on an integer scaling of the matrix.
* :func:`sparse_rank` for the graded pieces of a differential, given as an
  iterable of sparse vectors ``{index: value}``.  Vectors are reduced one at
  a time against the pivots found so far.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .fields import Field


def _to_int_rows(matrix) -> list[list[int]]:
    rows = []
    for row in matrix:
        fracs = [Fraction(x) for x in row]
        den = 1
        for f in fracs:
            den = lcm(den, f.denominator)
        rows.append([int(f * den) for f in fracs])
    return rows


def bareiss_rank(matrix) -> int:
    """Rank over Q by fraction-free elimination.

    Every intermediate entry is a minor of the input, so the divisions by the
    previous pivot are exact.
    """
    a = _to_int_rows(matrix)
    if not a:
        return 0
    m, n = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[c]
            for k in range(c + 1, n):
                ai[k] = (p * ai[k] - f * a[r][k]) // prev
            ai[c] = 0
        prev = p
        r += 1
    return r


def _gauss_rank_mod(matrix, p: int) -> int:
    a = [[_mod(x, p) for x in row] for row in matrix]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        pivot_row = [x * inv % p for x in a[r]]
        a[r] = pivot_row
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], pivot_row)]
        r += 1
    return r


def _mod(x, p: int) -> int:
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def rank(matrix, field: Field) -> int:
    """Exact rank of a dense matrix given as a list of rows."""
    if field.characteristic == 0:
        return bareiss_rank(matrix)
    return _gauss_rank_mod(matrix, field.characteristic)


def sparse_rank(vectors, field: Field) -> int:
    """Exact rank of the span of sparse vectors ``{index: value}``."""
    if field.characteristic == 0:
        return _sparse_rank_q(vectors)
    return _sparse_rank_mod(vectors, field.characteristic)


def _sparse_rank_mod(vectors, p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for vec in vectors:
        row = {k: v % p for k, v in vec.items() if v % p}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {k: v * inv % p for k, v in row.items()}
                break
            f = row[lead]
            for k, v in prow.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def _sparse_rank_q(vectors) -> int:
    # fraction-free: rows stay integral and primitive
    pivots: dict[int, dict[int, int]] = {}
    for vec in vectors:
        row = _integral(vec)
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = row
                break
            a, b = prow[lead], row[lead]
            new = {}
            for k in row.keys() | prow.keys():
                v = a * row.get(k, 0) - b * prow.get(k, 0)
                if v:
                    new[k] = v
            row = _primitive(new)
    return len(pivots)


def _integral(vec) -> dict[int, int]:
    fracs = {k: Fraction(v) for k, v in vec.items() if v}
    den = 1
    for f in fracs.values():
        den = lcm(den, f.denominator)
    return _primitive({k: int(f * den) for k, f in fracs.items()})


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row
