"""Exact rational polyhedral computations over the two coordinate spaces.

Polytopes appear either as vertex lists (:class:`VRep`) or as inequality +
equation systems (:class:`HRep`), both convertible through the double
description machinery in :mod:`bnpoly.dd`.  Facet enumeration lifts each
point v to the constraint (1, -v) on candidate inequality vectors (u, c) and
reads the facets off the extreme rays of that cone; vertex enumeration
homogenizes the constraints and scales the rays with positive leading
coordinate back to points.  Linear programs run on the exact simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .dags import enumerate_dags, enumerate_equivalence_classes
from .dd import Budget, extreme_rays
from .encodings import char_bits
from .errors import (
    BnPolyError,
    InfeasibleError,
    InvalidInequalityError,
    UnboundedError,
)
from .ground import (
    CharVector,
    FamVector,
    GroundSet,
    ZERO,
    enumerate_cai,
    enumerate_family_indices,
)
from .ineq import LinearInequality
from .simplex import solve_lp


def ambient_index(gs: GroundSet, space: str) -> list:
    if space == "fam":
        return enumerate_family_indices(gs)
    if space == "char":
        return enumerate_cai(gs)
    raise BnPolyError(f"unknown coordinate space {space!r}")


def vector_to_dense(vec: FamVector | CharVector, index: Sequence) -> tuple:
    return tuple(vec[key] for key in index)


def dense_to_vector(gs: GroundSet, space: str, index: Sequence, values: Sequence):
    cls = FamVector if space == "fam" else CharVector
    return cls(gs, {k: v for k, v in zip(index, values) if v})


@dataclass(frozen=True)
class VRep:
    """Polytope as a list of distinct rational points in fam or char space."""

    space: str
    gs: GroundSet
    points: tuple[tuple, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise BnPolyError("V-representation points must be distinct")
        width = len(ambient_index(self.gs, self.space))
        if any(len(p) != width for p in self.points):
            raise BnPolyError("point width does not match the ambient index family")

    @property
    def index(self) -> list:
        return ambient_index(self.gs, self.space)

    def vectors(self):
        index = self.index
        return [dense_to_vector(self.gs, self.space, index, p) for p in self.points]


@dataclass(frozen=True)
class HRep:
    """Polyhedron as valid inequalities plus affine-hull equations."""

    space: str
    gs: GroundSet
    inequalities: tuple[LinearInequality, ...]
    equations: tuple[tuple, ...] = ()  # (objective vector, rhs) pairs

    def __post_init__(self):
        for ineq in self.inequalities:
            if ineq.space != self.space or ineq.gs != self.gs:
                raise BnPolyError("inequality does not match the H-representation space")


def fvp_vrep(gs: GroundSet) -> VRep:
    """Vertex representation of the family-variable polytope: all DAG codes."""
    index = enumerate_family_indices(gs)
    pos = {key: i for i, key in enumerate(index)}
    points = []
    for g in enumerate_dags(gs):
        row = [0] * len(index)
        for a, B in enumerate(g.parents):
            if B:
                row[pos[(a, B)]] = 1
        points.append(tuple(row))
    return VRep("fam", gs, tuple(points))


def cip_vrep(gs: GroundSet) -> VRep:
    """Vertex representation of the characteristic-imset polytope: one 0/1
    point per Markov equivalence class."""
    cai = enumerate_cai(gs)
    points = []
    seen = set()
    for rep, _ in enumerate_equivalence_classes(gs):
        p = char_bits(rep, cai)
        if p not in seen:
            seen.add(p)
            points.append(p)
    return VRep("char", gs, tuple(points))


def affine_rank(points: Sequence[Sequence]) -> int:
    """Maximum number of affinely independent vectors among the points."""
    return linalg.affine_rank(points)


@dataclass(frozen=True)
class FaceInfo:
    tight_indices: tuple[int, ...]
    dimension: int


def face_of(ineq: LinearInequality, vrep: VRep) -> FaceInfo:
    """Tight points of a valid inequality and the dimension of their affine
    hull (-1 for the empty face); raises if the inequality is violated."""
    if ineq.space != vrep.space or ineq.gs != vrep.gs:
        raise BnPolyError("inequality and V-representation spaces differ")
    dense = vector_to_dense(ineq.objective, vrep.index)
    tight = []
    for i, point in enumerate(vrep.points):
        value = sum((c * x for c, x in zip(dense, point) if c), ZERO)
        if value > ineq.bound:
            raise InvalidInequalityError(
                f"inequality {ineq.label or ineq} violated at point {i}"
            )
        if value == ineq.bound:
            tight.append(i)
    if not tight:
        return FaceInfo((), -1)
    dim = affine_rank([vrep.points[i] for i in tight]) - 1
    return FaceInfo(tuple(tight), dim)


def is_facet(ineq: LinearInequality, vrep: VRep) -> bool:
    """Whether the face cut out by the inequality has dimension dim(P) - 1."""
    info = face_of(ineq, vrep)
    return info.dimension == affine_rank(vrep.points) - 2


def facets_from_vertices(vrep: VRep, budget: Budget | None = None) -> HRep:
    """Irredundant facet list plus affine-hull equations of conv(points).

    Works on the cone of valid inequalities {(u, c) : u - <c, v> >= 0 for
    every point v}: its lineality space gives the affine hull and its
    extreme rays are exactly the facet-defining inequalities (the trivial
    ray 0 <= u is dropped)."""
    dim = len(vrep.index)
    rows = [(Fraction(1),) + tuple(-x for x in p) for p in vrep.points]
    rays, lineality = extreme_rays(rows, dim + 1, budget=budget)
    index = vrep.index
    inequalities = []
    for ray in rays:
        bound, coeffs = ray[0], ray[1:]
        if not any(coeffs):
            continue  # the trivial valid inequality 0 <= u
        obj = dense_to_vector(vrep.gs, vrep.space, index, coeffs)
        inequalities.append(
            LinearInequality(vrep.space, obj, Fraction(bound), label="facet")
        )
    equations = []
    for line in lineality:
        vec = dense_to_vector(vrep.gs, vrep.space, index, line[1:])
        equations.append((vec, Fraction(line[0])))
    inequalities.sort(key=lambda q: q.canonical_key())
    return HRep(vrep.space, vrep.gs, tuple(inequalities), tuple(equations))


def vertices_from_inequalities(
    hrep: HRep, budget: Budget | None = None, allow_unbounded: bool = False
) -> VRep:
    """All vertices of the polyhedron; raises UnboundedError when recession
    directions exist, unless explicitly waived."""
    index = ambient_index(hrep.gs, hrep.space)
    dim = len(index)
    rows = []
    for ineq in hrep.inequalities:
        dense = vector_to_dense(ineq.objective, index)
        rows.append((ineq.bound,) + tuple(-c for c in dense))
    for vec, rhs in hrep.equations:
        dense = vector_to_dense(vec, index)
        rows.append((rhs,) + tuple(-c for c in dense))
        rows.append((-rhs,) + tuple(c for c in dense))
    rows.append((1,) + (0,) * dim)  # homogenization coordinate t >= 0
    rays, lineality = extreme_rays(rows, dim + 1, budget=budget)
    if lineality and not allow_unbounded:
        raise UnboundedError("polyhedron contains lines")
    points = []
    for ray in rays:
        t = ray[0]
        if t > 0:
            points.append(tuple(Fraction(x, t) for x in ray[1:]))
        elif any(ray[1:]) and not allow_unbounded:
            raise UnboundedError("polyhedron has a recession direction")
    points.sort()
    return VRep(hrep.space, hrep.gs, tuple(points))


def lp_maximize(
    objective: FamVector | CharVector, hrep: HRep
) -> tuple[Fraction, FamVector | CharVector]:
    """Exact maximum of <objective, x> over the H-polyhedron, with an argmax
    point.  The simplex validates its dual certificate internally."""
    if objective.space != hrep.space or objective.gs != hrep.gs:
        raise BnPolyError("objective and polyhedron spaces differ")
    index = ambient_index(hrep.gs, hrep.space)
    c = vector_to_dense(objective, index)
    A_ub = [vector_to_dense(q.objective, index) for q in hrep.inequalities]
    b_ub = [q.bound for q in hrep.inequalities]
    A_eq = [vector_to_dense(vec, index) for vec, _ in hrep.equations]
    b_eq = [rhs for _, rhs in hrep.equations]
    result = solve_lp(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq)
    if result.status == "infeasible":
        raise InfeasibleError("polyhedron is empty")
    if result.status == "unbounded":
        raise UnboundedError("objective is unbounded over the polyhedron")
    point = dense_to_vector(hrep.gs, hrep.space, index, result.x)
    return result.objective, point


def hrep_to_matrix_text(hrep: HRep) -> str:
    """Plain textual matrix form: one row per inequality, the objective
    coefficients in canonical index order followed by the bound; any
    affine-hull equations follow after a single '=' line."""
    index = ambient_index(hrep.gs, hrep.space)
    lines = []
    for q in hrep.inequalities:
        dense = vector_to_dense(q.objective, index)
        lines.append(" ".join(str(v) for v in dense) + f" {q.bound}")
    if hrep.equations:
        lines.append("=")
        for vec, rhs in hrep.equations:
            dense = vector_to_dense(vec, index)
            lines.append(" ".join(str(v) for v in dense) + f" {rhs}")
    return "\n".join(lines) + "\n"


def hrep_from_matrix_text(gs: GroundSet, space: str, text: str) -> HRep:
    """Parse the plain matrix form produced by :func:`hrep_to_matrix_text`."""
    index = ambient_index(gs, space)
    width = len(index) + 1
    inequalities, equations = [], []
    in_equations = False
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line == "=":
            in_equations = True
            continue
        parts = line.split()
        if len(parts) != width:
            raise BnPolyError(
                f"matrix line {lineno}: expected {width} entries, got {len(parts)}"
            )
        values = [Fraction(p) for p in parts]
        vec = dense_to_vector(gs, space, index, values[:-1])
        if in_equations:
            equations.append((vec, values[-1]))
        else:
            inequalities.append(LinearInequality(space, vec, values[-1], f"row{lineno}"))
    return HRep(space, gs, tuple(inequalities), tuple(equations))


def centroid(points: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Uniform average of the points."""
    points = list(points)
    if not points:
        raise BnPolyError("centroid of an empty point list is undefined")
    count = len(points)
    width = len(points[0])
    sums = [ZERO] * width
    for p in points:
        for i, x in enumerate(p):
            if x:
                sums[i] += x
    return tuple(Fraction(s, count) for s in sums)


def max_over_vertices(
    objective: FamVector | CharVector, vrep: VRep
) -> tuple[Fraction, int]:
    """Maximum of the objective over a vertex list, with an attaining index."""
    dense = vector_to_dense(objective, vrep.index)
    best, best_i = None, -1
    for i, p in enumerate(vrep.points):
        value = sum((c * x for c, x in zip(dense, p) if c), ZERO)
        if best is None or value > best:
            best, best_i = value, i
    return best, best_i
