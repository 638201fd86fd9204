"""Exact linear algebra over the rationals."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from math import gcd, lcm


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    scale = lcm(*(Fraction(v).denominator for v in row)) if row else 1
    ints = [int(Fraction(v) * scale) for v in row]
    g = gcd(*ints)
    return [v // g for v in ints] if g > 1 else ints


def row_echelon(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row reduction to reduced echelon form.

    Rows are cleared of denominators and reduced by their content after each
    elimination step, so every intermediate value is an integer. Returns the
    nonzero rows, each scaled so its pivot is positive, and the pivot columns.
    Pivot rows are not normalised to 1; the caller divides by the pivot.
    """
    work = [_integer_row(r) for r in rows]
    work = [r for r in work if any(r)]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(top, len(work)) if work[i][col]), None)
        if pivot_row is None:
            continue
        work[top], work[pivot_row] = work[pivot_row], work[top]
        prow = work[top]
        if prow[col] < 0:
            prow[:] = [-v for v in prow]
        pv = prow[col]
        for i, r in enumerate(work):
            if i == top or r[col] == 0:
                continue
            f = r[col]
            new = [pv * a - f * b for a, b in zip(r, prow)]
            g = gcd(*new)
            work[i] = [v // g for v in new] if g > 1 else new
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return [r for r in work[:top]], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : rows @ v = 0}`` with integer entries and positive leading term."""
    if ncols is None:
        if not rows:
            raise ValueError("column count required for an empty matrix")
        ncols = len(rows[0])
    echelon, pivots = row_echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in zip(echelon, pivots):
            vec[p] = Fraction(-r[f], r[p])
        basis.append(primitive(vec))
    return basis


def primitive(vec: Sequence[Fraction]) -> list[Fraction]:
    """Scale to coprime integers with the first nonzero entry positive."""
    ints = _integer_row(vec)
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(row_echelon(rows)[1]) if rows else 0


def gram_schmidt(vectors: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Orthogonalize real rational vectors in order, keeping them unnormalized.

    Each output vector is rescaled to primitive integer form.
    """
    out: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for u, n in zip(out, norms):
            proj = sum((a * b for a, b in zip(u, w)), Fraction(0)) / n
            if proj:
                w = [a - proj * b for a, b in zip(w, u)]
        if not any(w):
            raise ValueError("vectors are linearly dependent")
        w = primitive(w)
        out.append(w)
        norms.append(sum((a * a for a in w), Fraction(0)))
    return out
