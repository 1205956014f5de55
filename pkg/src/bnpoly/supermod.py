"""Standardized supermodular set functions and their combinatorics.

A set function is standardized when it vanishes on sets of size <= 1 and
supermodular when every elementary difference

    delta(a, b : Z) = m({a,b} u Z) + m(Z) - m({a} u Z) - m({b} u Z)

is nonnegative.  Such functions form a pointed polyhedral cone; a nonzero
member is extreme when the tight elementary differences pin it down up to
scale.  The module also covers the core polytope (greedy marginal vectors),
the duality transform onto submodular rank-like functions, matroid rank
checks, and the cluster family max(0, |S n C| - k).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .errors import BnPolyError, NotSupermodularError
from .ground import (
    GroundSet,
    SetFunction,
    ZERO,
    bit,
    enumerate_cai,
    iter_bits,
    submasks,
)
from . import linalg


def delta(m: SetFunction, a: int, b: int, Z: int) -> Fraction:
    """Elementary supermodularity difference at nodes a != b and Z disjoint
    from both."""
    if a == b:
        raise BnPolyError("need two distinct nodes")
    ab = bit(a) | bit(b)
    m.gs.check_mask(Z)
    if Z & ab:
        raise BnPolyError("conditioning set overlaps the node pair")
    return m[ab | Z] + m[Z] - m[bit(a) | Z] - m[bit(b) | Z]


def delta_sets(m: SetFunction, A: int, B: int, Z: int) -> Fraction:
    """Set-pair version m(A u B u Z) + m(Z) - m(A u Z) - m(B u Z) for pairwise
    disjoint masks; used only as a cross-check of the elementary form."""
    if A & B or A & Z or B & Z:
        raise BnPolyError("arguments must be pairwise disjoint")
    return m[A | B | Z] + m[Z] - m[A | Z] - m[B | Z]


def elementary_triplets(gs: GroundSet):
    """All (a, b, Z) with a < b and Z disjoint from both."""
    for a in range(gs.n):
        for b in range(a + 1, gs.n):
            rest = gs.full_mask & ~bit(a) & ~bit(b)
            for Z in submasks(rest):
                yield a, b, Z


def is_standardized(m: SetFunction) -> bool:
    return all(mask.bit_count() >= 2 for mask in m.support())


def is_supermodular(m: SetFunction) -> bool:
    """All elementary differences nonnegative."""
    return all(delta(m, a, b, Z) >= 0 for a, b, Z in elementary_triplets(m.gs))


def _require_standardized_supermodular(m: SetFunction) -> None:
    if not is_standardized(m):
        raise NotSupermodularError("set function is not standardized")
    if not is_supermodular(m):
        raise NotSupermodularError("set function is not supermodular")


def is_extreme(m: SetFunction) -> bool:
    """Whether a nonzero standardized supermodular function spans an extreme
    ray of the cone: the space of standardized functions vanishing on all of
    m's tight elementary differences must be one-dimensional."""
    if not m:
        raise NotSupermodularError("the zero function spans no ray")
    _require_standardized_supermodular(m)
    gs = m.gs
    cai = enumerate_cai(gs)
    index = {mask: i for i, mask in enumerate(cai)}
    rows = []
    for a, b, Z in elementary_triplets(gs):
        if delta(m, a, b, Z) == 0:
            row = [0] * len(cai)
            top = bit(a) | bit(b) | Z
            row[index[top]] += 1
            if Z.bit_count() >= 2:
                row[index[Z]] += 1
            if Z:
                row[index[bit(a) | Z]] -= 1
                row[index[bit(b) | Z]] -= 1
            rows.append(row)
    return len(cai) - linalg.rank(rows) == 1


def core_vertices(m: SetFunction) -> list[tuple[Fraction, ...]]:
    """Vertices of the core polytope of a standardized supermodular function:
    the distinct greedy marginal vectors over all node orders, each checked
    against the defining constraints."""
    _require_standardized_supermodular(m)
    gs = m.gs
    seen = set()
    total = m[gs.full_mask]
    for order in permutations(range(gs.n)):
        v = [ZERO] * gs.n
        acc = 0
        for a in order:
            upper = acc | bit(a)
            v[a] = m[upper] - m[acc]
            acc = upper
        seen.add(tuple(v))
    for v in seen:
        if sum(v, ZERO) != total:
            raise BnPolyError("greedy vector misses the total mass")
        for S in range(1, gs.full_mask + 1):
            if sum((v[i] for i in iter_bits(S)), ZERO) < m[S]:
                raise BnPolyError("greedy vector violates a core constraint")
    return sorted(seen)


def duality_transform(m: SetFunction) -> SetFunction:
    """r(T) = m(N) - m(N \\ T); maps standardized supermodular functions onto
    submodular functions with r(empty) = 0 and r(N) = r(N \\ {a}) for all a,
    and is self-inverse on that pair of cones."""
    gs = m.gs
    full = gs.full_mask
    top = m[full]
    values = {}
    for T in range(full + 1):
        v = top - m[full & ~T]
        if v:
            values[T] = v
    return SetFunction(gs, values)


def is_matroid_rank(r: SetFunction, ground: int) -> bool:
    """Rank axioms on the power set of ``ground``: r(empty) = 0, unit
    increments, and submodularity."""
    gs = r.gs
    gs.check_mask(ground)
    for S in submasks(ground):
        if r[S].denominator != 1:
            raise BnPolyError("rank function must be integer-valued")
    if r[0] != 0:
        return False
    for S in submasks(ground):
        for x in iter_bits(ground & ~S):
            step = r[S | bit(x)] - r[S]
            if step < 0 or step > 1:
                return False
    for a in iter_bits(ground):
        for b in iter_bits(ground & ~((bit(a) << 1) - 1)):  # b > a
            rest = ground & ~bit(a) & ~bit(b)
            for Z in submasks(rest):
                if delta(r, a, b, Z) > 0:
                    return False
    return True


def is_connected_matroid(r: SetFunction, ground: int) -> bool:
    """No proper nonempty split S with r(ground) = r(S) + r(ground \\ S)."""
    if not is_matroid_rank(r, ground):
        raise BnPolyError("not a matroid rank function on the given ground set")
    total = r[ground]
    for S in submasks(ground):
        if S == 0 or S == ground:
            continue
        if r[S] + r[ground & ~S] == total:
            return False
    return True


def cluster_supermodular(gs: GroundSet, C: int, k: int) -> SetFunction:
    """The cluster function S -> max(0, |S n C| - k) for |C| >= 2 and
    1 <= k <= |C| - 1; standardized, supermodular and extreme."""
    gs.check_mask(C)
    size = C.bit_count()
    if size < 2:
        raise BnPolyError("cluster needs at least two nodes")
    if not 1 <= k <= size - 1:
        raise BnPolyError(f"level k={k} out of range for a cluster of size {size}")
    values = {}
    for S in range(gs.full_mask + 1):
        excess = (S & C).bit_count() - k
        if excess > 0:
            values[S] = Fraction(excess)
    return SetFunction(gs, values)


def cluster_pairs(gs: GroundSet) -> list[tuple[int, int]]:
    """All (cluster mask, level) pairs, by cluster size, mask, then level."""
    out = []
    for C in gs.subsets(min_size=2):
        out.extend((C, k) for k in range(1, C.bit_count()))
    return out
