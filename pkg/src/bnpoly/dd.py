"""Exact double description: extreme rays of a rational polyhedral cone.

Given rows a_1, ..., a_m, computes the lineality space and the extreme rays
of {x : <a_i, x> >= 0 for all i}.  Constraints are inserted one at a time
(lexicographically smallest first by default); while the intermediate cone
still contains lines, each new constraint cuts the lineality space down by
one, after which the classical ray-splitting step applies.

Everything is integer arithmetic: input rows are scaled to primitive integer
vectors and every ray is kept primitive, so there is no rounding and no
floating-point prefiltering anywhere.  Tight-row sets are bitsets (Python
ints); two rays are combined only when adjacent.  Adjacency is decided by
the standard zero-set test (no third extreme ray is tight on the common
tight set), with the rank characterization available as a cross-check.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .errors import BudgetExceededError


class Budget:
    """Wall-clock / intermediate-size budget with typed overflow errors."""

    def __init__(self, max_seconds: float | None = None, max_rays: int | None = None):
        self.max_seconds = max_seconds
        self.max_rays = max_rays
        self._start = time.monotonic()

    def check(self, ray_count: int = 0) -> None:
        if self.max_seconds is not None and time.monotonic() - self._start > self.max_seconds:
            raise BudgetExceededError(
                f"time budget of {self.max_seconds} s exhausted"
            )
        if self.max_rays is not None and ray_count > self.max_rays:
            raise BudgetExceededError(
                f"intermediate ray budget of {self.max_rays} exceeded ({ray_count})"
            )


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, v)
        if g == 1:
            return tuple(vec)
    if g <= 1:
        return tuple(vec)
    return tuple(v // g for v in vec)


def _to_int_rows(rows: Iterable[Sequence]) -> list[tuple[int, ...]]:
    out = []
    for row in rows:
        scale = 1
        for v in row:
            if isinstance(v, Fraction):
                scale = scale * v.denominator // gcd(scale, v.denominator)
        ints = [int(v * scale) if isinstance(v, Fraction) else int(v) * scale for v in row]
        if any(ints):
            out.append(_primitive(ints))
    return out


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b) if x and y)


def extreme_rays(
    rows: Iterable[Sequence],
    dim: int,
    budget: Budget | None = None,
    presort: bool = True,
    adjacency: str = "zeroset",
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Return (rays, lineality_basis) of the cone {x : rows . x >= 0}.

    Rays are primitive integer tuples, sorted; the lineality basis vectors
    are primitive with positive leading entry.  ``adjacency`` selects the
    pair test: "zeroset" (default) or "rank".
    """
    if adjacency not in ("zeroset", "rank"):
        raise ValueError(f"unknown adjacency test {adjacency!r}")
    int_rows = _to_int_rows(rows)
    # Positive multiples coincide after primitive scaling; repeated rows
    # would only burn zero-set bits, so keep one copy of each.
    int_rows = sorted(set(int_rows)) if presort else list(dict.fromkeys(int_rows))

    lineality: list[tuple[int, ...]] = [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    rays: list[list] = []  # [vector, zeroset]
    processed: list[tuple[int, ...]] = []

    for row in int_rows:
        if budget is not None:
            budget.check(len(rays))
        step_bit = 1 << len(processed)

        pivot_idx = None
        for idx, v in enumerate(lineality):
            if _dot(row, v):
                pivot_idx = idx
                break

        if pivot_idx is not None:
            v = lineality.pop(pivot_idx)
            dv = _dot(row, v)
            if dv < 0:
                v = tuple(-x for x in v)
                dv = -dv
            new_lin = []
            for w in lineality:
                dw = _dot(row, w)
                if dw:
                    w = _primitive([dv * wx - dw * vx for wx, vx in zip(w, v)])
                new_lin.append(w)
            lineality = new_lin
            new_rays = []
            for vec, zeros in rays:
                dr = _dot(row, vec)
                if dr:
                    vec = _primitive([dv * x - dr * y for x, y in zip(vec, v)])
                new_rays.append([vec, zeros | step_bit])
            new_rays.append([v, step_bit - 1])
            rays = new_rays
            processed.append(row)
            continue

        plus, zero, minus = [], [], []
        for i, entry in enumerate(rays):
            d = _dot(row, entry[0])
            if d > 0:
                plus.append((i, entry, d))
            elif d < 0:
                minus.append((i, entry, d))
            else:
                zero.append(entry)

        if not minus:
            for entry in zero:
                entry[1] |= step_bit
            processed.append(row)
            continue
        if not plus:
            rays = [[vec, zeros | step_bit] for vec, zeros in zero]
            processed.append(row)
            continue

        needed = dim - len(lineality) - 2  # tight-row count needed for an edge
        zsets = [entry[1] for entry in rays]
        combos = []
        for i, pentry, dp in plus:
            if budget is not None:
                budget.check(len(rays) + len(combos))
            pvec, pzeros = pentry
            for j, qentry, dq in minus:
                common = pzeros & qentry[1]
                if common.bit_count() < needed:
                    continue
                if adjacency == "zeroset":
                    if not _adjacent_zeroset(zsets, i, j, common):
                        continue
                else:
                    if not _adjacent_rank(processed, common, needed):
                        continue
                qvec = qentry[0]
                vec = _primitive([dp * qx - dq * px for px, qx in zip(pvec, qvec)])
                combos.append([vec, common | step_bit])
        rays = (
            [[entry[0], entry[1]] for _, entry, _ in plus]
            + [[vec, zeros | step_bit] for vec, zeros in zero]
            + combos
        )
        processed.append(row)

    ray_vecs = sorted(tuple(vec) for vec, _ in rays)
    lin = [_sign_normalize(v) for v in lineality]
    return ray_vecs, sorted(lin)


def _adjacent_zeroset(zsets, i: int, j: int, common: int) -> bool:
    for idx, zeros in enumerate(zsets):
        if zeros & common == common and idx != i and idx != j:
            return False
    return True


def _adjacent_rank(processed_rows, common: int, needed: int) -> bool:
    tight = [processed_rows[i] for i in _bit_positions(common)]
    return linalg.rank(tight) == needed


def _bit_positions(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _sign_normalize(vec: Sequence[int]) -> tuple[int, ...]:
    for v in vec:
        if v > 0:
            return tuple(vec)
        if v < 0:
            return tuple(-x for x in vec)
    return tuple(vec)
