"""Small exact linear algebra helpers (rank and affine rank)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix of exact numbers (int or Fraction) via Gaussian
    elimination with exact pivots."""
    work = [list(map(Fraction, row)) for row in rows if any(row)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pivot = work[r][col]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][col]:
                factor = work[i][col] / pivot
                row_i = work[i]
                for j in range(col, ncols):
                    if prow[j]:
                        row_i[j] -= factor * prow[j]
        r += 1
        if r == len(work):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Maximum number of affinely independent vectors among the points:
    rank of the differences to the first point, plus one."""
    points = list(points)
    if not points:
        raise ValueError("affine rank of an empty point list is undefined")
    base = points[0]
    diffs = [
        [Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]
    ]
    return rank(diffs) + 1


def incremental_rank_reaches(points, target: int) -> bool:
    """Whether the affine rank of the point stream reaches ``target``;
    stops reading as soon as it does.  The basis is kept in row-echelon form
    keyed by leading column."""
    base = None
    by_lead: dict[int, list[Fraction]] = {}
    count = 0
    for p in points:
        if base is None:
            base = [Fraction(x) for x in p]
            count = 1
            if count >= target:
                return True
            continue
        vec = [Fraction(x) - y for x, y in zip(p, base)]
        while True:
            lead = next((j for j, v in enumerate(vec) if v), None)
            if lead is None:
                break
            brow = by_lead.get(lead)
            if brow is None:
                by_lead[lead] = vec
                count += 1
                break
            factor = vec[lead] / brow[lead]
            for j in range(lead, len(vec)):
                if brow[j]:
                    vec[j] -= factor * brow[j]
        if count >= target:
            return True
    return count >= target
