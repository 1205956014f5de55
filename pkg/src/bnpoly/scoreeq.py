"""Score-equivalent objectives over family variables.

An objective is score equivalent (SE) when it takes the same value on the
codes of any two Markov equivalent DAGs.  The SE subspace is cut out by the
exchange identities

    obj(b : {a} u Z) + obj(a : Z) = obj(a : {b} u Z) + obj(b : Z)

and is parametrized by vectors m over subsets of size >= 2 through

    obj(a : B) = m({a} u B) - m(B).

This module provides the membership test, both directions of that
parametrization, the translation of an SE objective into characteristic-imset
coordinates, the Moebius pair connecting the two char-space forms, and an
exact-LP decision procedure for whether a set of DAGs is an SE face of the
family-variable polytope.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .dags import Dag, enumerate_dags
from .errors import BnPolyError, NotScoreEquivalentError
from .ground import (
    CharVector,
    FamVector,
    ZERO,
    bit,
    enumerate_cai,
    iter_bits,
    submasks,
)
from .simplex import solve_lp


def is_se_objective(obj: FamVector) -> bool:
    """Check every exchange identity; the empty-parent terms are supplied by
    the extension convention (they read as 0)."""
    gs = obj.gs
    for a in range(gs.n):
        for b in range(a + 1, gs.n):
            rest = gs.full_mask & ~bit(a) & ~bit(b)
            for Z in submasks(rest):
                lhs = obj[(b, bit(a) | Z)] + obj[(a, Z)]
                rhs = obj[(a, bit(b) | Z)] + obj[(b, Z)]
                if lhs != rhs:
                    return False
    return True


def objective_from_setfn(m: CharVector) -> FamVector:
    """The SE objective parametrized by m: obj(a : B) = m({a} u B) - m(B)."""
    gs = m.gs
    coords = {}
    for a in range(gs.n):
        abit = bit(a)
        for B in range(1, gs.full_mask + 1):
            if B & abit:
                continue
            value = m[abit | B] - m[B]
            if value:
                coords[(a, B)] = value
    return FamVector(gs, coords)


def setfn_from_objective(obj: FamVector) -> CharVector:
    """Invert the parametrization by the inductive recipe
    m({a, b}) = obj(b : {a}),  m(D) = obj(b : D \\ {b}) + m(D \\ {b})."""
    if not is_se_objective(obj):
        raise NotScoreEquivalentError("objective violates an exchange identity")
    gs = obj.gs
    values: dict[int, Fraction] = {}

    def value_of(mask: int) -> Fraction:
        if mask.bit_count() < 2:
            return ZERO
        return values.get(mask, ZERO)

    for D in enumerate_cai(gs):  # ascending cardinality
        b = (D & -D).bit_length() - 1
        rest = D & ~bit(b)
        v = obj[(b, rest)] + value_of(rest)
        if v:
            values[D] = v
    return CharVector(gs, values)


def char_objective(obj: FamVector) -> CharVector:
    """Characteristic-imset coordinates z of an SE objective:

        z(T) = sum over nonempty K <= T \\ {b} of (-1)^(|T \\ {b}| - |K|) obj(b : K)

    The value is the same for every choice of b in T; all choices are
    evaluated and compared as a cheap internal soundness check.  The result
    satisfies <obj, x> = <z, char_image(x)> for every family vector x."""
    if not is_se_objective(obj):
        raise NotScoreEquivalentError("objective violates an exchange identity")
    gs = obj.gs
    coords = {}
    for T in enumerate_cai(gs):
        value = None
        for b in iter_bits(T):
            R = T & ~bit(b)
            rsize = R.bit_count()
            total = ZERO
            for K in submasks(R):
                if K:
                    term = obj[(b, K)]
                    if term:
                        total += term if (rsize - K.bit_count()) % 2 == 0 else -term
            if value is None:
                value = total
            elif value != total:
                raise BnPolyError(
                    "char translation depends on the anchor node; objective inconsistent"
                )
        if value:
            coords[T] = value
    return CharVector(gs, coords)


def moebius_down(m: CharVector) -> CharVector:
    """z(T) = sum over L <= T, |L| >= 2 of (-1)^(|T \\ L|) m(L)."""
    gs = m.gs
    coords = {}
    for T in enumerate_cai(gs):
        tsize = T.bit_count()
        total = ZERO
        for L, value in m.items():
            if L & T == L:
                total += value if (tsize - L.bit_count()) % 2 == 0 else -value
        if total:
            coords[T] = total
    return CharVector(gs, coords)


def moebius_up(z: CharVector) -> CharVector:
    """m(S) = sum over T <= S, |T| >= 2 of z(T); inverse of moebius_down."""
    gs = z.gs
    coords = {}
    for S in enumerate_cai(gs):
        total = ZERO
        for T, value in z.items():
            if T & S == T:
                total += value
        if total:
            coords[S] = total
    return CharVector(gs, coords)


def _setfn_row(graph: Dag, cai_order: list[int]) -> list[int]:
    """Coefficients g with <obj_m, fam_G> = <m, g> for the parametrized
    objective: g(S) counts nodes with {a} u pa(a) = S minus nodes with
    pa(a) = S, over subsets of size >= 2."""
    index = {mask: i for i, mask in enumerate(cai_order)}
    row = [0] * len(cai_order)
    for a, B in enumerate(graph.parents):
        if B:
            up = B | bit(a)
            row[index[up]] += 1
            if B.bit_count() >= 2:
                row[index[B]] -= 1
    return row


def is_se_face(
    graphs: Iterable[Dag], all_dags: list[Dag] | None = None
) -> tuple[bool, FamVector | None]:
    """Decide whether the given nonempty set of DAGs is exactly the tight set
    of some valid SE inequality over the family-variable polytope.

    Decided by an exact margin-maximization LP over the parametrizing vector
    m (boxed to |m(S)| <= 1 to prevent unbounded scaling), the shared value u
    and the margin t:  equality on the set, value <= u - t outside, maximize
    t.  The set is an SE face iff the optimum satisfies t > 0; a witness
    objective is returned on success.
    """
    graphs = list(graphs)
    if not graphs:
        raise BnPolyError("need a nonempty set of graphs")
    gs = graphs[0].gs
    if all_dags is None:
        all_dags = enumerate_dags(gs)
    universe = {g.parents for g in all_dags}
    face_keys = set()
    for g in graphs:
        if g.parents not in universe:
            raise BnPolyError("graph set is not a subset of the DAG enumeration")
        face_keys.add(g.parents)

    if len(face_keys) == len(universe):
        # The whole polytope is a face of itself, with the zero SE objective.
        return True, FamVector(gs, {})

    cai_order = enumerate_cai(gs)
    d = len(cai_order)
    # Variables: m_0 .. m_{d-1}, u, t.
    nvars = d + 2
    A_eq, b_eq, A_ub, b_ub = [], [], [], []
    for g in all_dags:
        row = _setfn_row(g, cai_order)
        if g.parents in face_keys:
            A_eq.append([Fraction(v) for v in row] + [Fraction(-1), ZERO])
            b_eq.append(ZERO)
        else:
            A_ub.append([Fraction(v) for v in row] + [Fraction(-1), Fraction(1)])
            b_ub.append(ZERO)
    for i in range(d):  # |m_i| <= 1
        for sign in (1, -1):
            row = [ZERO] * nvars
            row[i] = Fraction(sign)
            A_ub.append(row)
            b_ub.append(Fraction(1))
    row = [ZERO] * nvars  # t >= 0
    row[-1] = Fraction(-1)
    A_ub.append(row)
    b_ub.append(ZERO)

    c = [ZERO] * nvars
    c[-1] = Fraction(1)
    result = solve_lp(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq)
    if result.status != "optimal":
        raise BnPolyError(f"face LP ended with status {result.status}")
    if result.objective <= 0:
        return False, None
    m = CharVector(gs, dict(zip(cai_order, result.x[:d])))
    return True, objective_from_setfn(m)
