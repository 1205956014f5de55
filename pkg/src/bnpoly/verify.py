"""End-to-end verification pipelines for the small-case catalogs, the
optimal-value reductions, and the five-node counterexample.

Each pipeline produces a :class:`VerificationReport` whose expected values
come either from published constants or from independent oracles computed on
the spot (exhaustive enumeration, brute-force maxima, rank computations).
Long-running artifacts (DAG lists, hulls, vertex enumerations) are cached on
disk keyed by a content hash so interrupted runs resume cheaply.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import linalg
from .dags import enumerate_dags, enumerate_equivalence_classes
from .dd import Budget
from .encodings import char_bits, char_from_fam
from .errors import BudgetExceededError
from .ground import (
    CharVector,
    FamVector,
    GroundSet,
    ZERO,
    enumerate_cai,
    enumerate_family_indices,
)
from .ineq import (
    LinearInequality,
    catalog_se_n4,
    catalog_specific_n4,
    cluster_fam,
    counterexample_constants,
    fam_from_char_ineq,
    modified_convexity,
    nonneg_constraints,
)
from .polyhedra import (
    HRep,
    VRep,
    cip_vrep,
    facets_from_vertices,
    fvp_vrep,
    lp_maximize,
    max_over_vertices,
    vector_to_dense,
    vertices_from_inequalities,
)
from .scoreeq import is_se_face, objective_from_setfn
from .supermod import cluster_pairs, is_extreme
from .ground import SetFunction
from .scoreeq import moebius_up, char_objective


# --- reports -------------------------------------------------------------------


@dataclass
class Check:
    description: str
    expected: object
    observed: object
    passed: bool
    skipped: bool = False
    note: str = ""
    source: str = ""  # provenance of the expected value: published | derived

    def to_json(self) -> dict:
        out = {
            "description": self.description,
            "expected": _jsonable(self.expected),
            "observed": _jsonable(self.observed),
            "passed": self.passed,
        }
        if self.source:
            out["source"] = self.source
        if self.skipped:
            out["skipped"] = True
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class VerificationReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    def check(
        self, description: str, expected, observed, note: str = "", source: str = "derived"
    ) -> bool:
        ok = expected == observed
        self.checks.append(
            Check(description, expected, observed, ok, note=note, source=source)
        )
        return ok

    def skip(self, description: str, reason: str) -> None:
        self.checks.append(
            Check(description, None, None, passed=True, skipped=True, note=reason)
        )

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.skipped)

    def to_json(self, include_elapsed: bool = False) -> dict:
        out = {
            "schema": "bnpoly/report/1",
            "pipeline": self.name,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
        if include_elapsed:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out

    def format_table(self, include_elapsed: bool = False) -> str:
        lines = [f"== {self.name} =="]
        for c in self.checks:
            if c.skipped:
                status = "SKIP"
                body = c.note
            else:
                status = "pass" if c.passed else "FAIL"
                body = f"expected {c.expected!r}, observed {c.observed!r}"
                if c.note:
                    body += f"  ({c.note})"
            lines.append(f"[{status}] {c.description}: {body}")
        tail = "PASSED" if self.passed else "FAILED"
        if include_elapsed:
            tail += f" in {self.elapsed:.1f}s"
        lines.append(f"== {self.name}: {tail} ==")
        return "\n".join(lines)


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report
        self.start = time.monotonic()

    def finish(self) -> VerificationReport:
        self.report.elapsed = time.monotonic() - self.start
        return self.report


# --- artifact cache -------------------------------------------------------------


def cache_dir() -> Path:
    root = os.environ.get("BNPOLY_CACHE")
    if root:
        return Path(root)
    return Path.home() / ".cache" / "bnpoly"


def _cached(key: str, builder):
    """JSON-file cache keyed by a content hash of the key string."""
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    path = cache_dir() / f"{digest}.json"
    if path.exists():
        with path.open() as handle:
            return json.load(handle)
    value = builder()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with tmp.open("w") as handle:
        json.dump(value, handle)
    tmp.replace(path)
    return value


# --- shared constructions --------------------------------------------------------


def _fvp_facet_hrep(gs: GroundSet) -> list[LinearInequality]:
    """Non-negativity + modified convexity + all generalized cluster cuts;
    the full facet list of the family-variable polytope for n = 3."""
    rows = nonneg_constraints(gs) + modified_convexity(gs)
    rows += [cluster_fam(gs, C, k) for C, k in cluster_pairs(gs)]
    return rows


def _facet_keyset(inequalities) -> set:
    return {q.canonical_key() for q in inequalities}


def _n4_catalog_fam_rows(se_only: bool) -> list[LinearInequality]:
    """fam-mode translations of the CIP facets not containing the zero
    vertex: the 37 one-vertex facets and, unless ``se_only``, the four
    bound-1 specific facets (which contain neither distinguished vertex)."""
    rows = []
    for entry in catalog_se_n4():
        rows.extend(entry.fam_orbit())
    if not se_only:
        for entry in catalog_specific_n4():
            if entry.char_ineq.bound != 0:
                rows.extend(fam_from_char_ineq(m) for m in entry.char_orbit)
    return rows


# --- pipeline: three nodes --------------------------------------------------------


def verify_n3(budget: Budget | None = None) -> VerificationReport:
    report = VerificationReport("n3")
    timer = _Timer(report)
    gs = GroundSet.alpha(3)

    dags = enumerate_dags(gs)
    report.check("number of DAGs", 25, len(dags), source="published")
    classes = enumerate_equivalence_classes(gs)
    report.check("number of Markov equivalence classes", 11, len(classes), source="published")

    fvp = fvp_vrep(gs)
    hull = facets_from_vertices(fvp, budget=budget)
    report.check("family-variable polytope facet count", 17, len(hull.inequalities), source="published")
    report.check("affine hull equations", 0, len(hull.equations))
    expected = _facet_keyset(_fvp_facet_hrep(gs))
    report.check(
        "facets = 9 non-negativity + 3 convexity + 5 cluster",
        True,
        _facet_keyset(hull.inequalities) == expected,
    )

    cip = cip_vrep(gs)
    chull = facets_from_vertices(cip, budget=budget)
    report.check("characteristic-imset polytope facet count", 13, len(chull.inequalities), source="published")
    cai = enumerate_cai(gs)
    ones = tuple(1 for _ in cai)
    tight_one = sum(
        1
        for q in chull.inequalities
        if sum(c * x for c, x in zip(vector_to_dense(q.objective, cai), ones)) == q.bound
    )
    tight_zero = sum(1 for q in chull.inequalities if q.bound == 0)
    report.check("imset facets tight at the all-ones vertex", 5, tight_one, source="published")
    report.check("imset facets tight at the zero vertex", 8, tight_zero, source="published")

    cluster_rows = [cluster_fam(gs, C, k) for C, k in cluster_pairs(gs)]
    partial = HRep("fam", gs, tuple(nonneg_constraints(gs) + cluster_rows))
    inter = vertices_from_inequalities(partial, budget=budget)
    report.check("cluster + non-negativity polytope vertex count", 28, len(inter.points), source="published")
    completed = HRep("fam", gs, partial.inequalities + tuple(modified_convexity(gs)))
    full = vertices_from_inequalities(completed, budget=budget)
    report.check(
        "adding convexity recovers the DAG codes",
        True,
        set(full.points) == set(fvp.points),
    )
    return timer.finish()


# --- pipeline: four nodes ---------------------------------------------------------


def verify_n4(
    fvp_hull: bool = False,
    fvp_star: bool = False,
    budget: Budget | None = None,
    use_cache: bool = True,
) -> VerificationReport:
    report = VerificationReport("n4")
    timer = _Timer(report)
    gs = GroundSet.alpha(4)

    dags = enumerate_dags(gs)
    report.check("number of DAGs", 543, len(dags), source="published")
    classes = enumerate_equivalence_classes(gs)
    report.check("number of Markov equivalence classes", 185, len(classes), source="published")

    cip = cip_vrep(gs)
    report.check("characteristic-imset polytope vertex count", 185, len(cip.points), source="published")
    chull = facets_from_vertices(cip, budget=budget)
    report.check("characteristic-imset polytope facet count", 154, len(chull.inequalities), source="published")

    cai = enumerate_cai(gs)
    ones = tuple(1 for _ in cai)
    tight_one = [
        q
        for q in chull.inequalities
        if sum(c * x for c, x in zip(vector_to_dense(q.objective, cai), ones)) == q.bound
    ]
    rest = [q for q in chull.inequalities if q not in tight_one]
    report.check("facets containing the all-ones vertex", 37, len(tight_one), source="published")

    se_entries = catalog_se_n4()
    report.check(
        "one-vertex facets match the catalog",
        True,
        _facet_keyset(tight_one)
        == {m.canonical_key() for e in se_entries for m in e.char_orbit},
    )
    report.check(
        "catalog orbit sizes",
        [6, 4, 4, 1, 1, 1, 4, 6, 4, 6],
        [len(e.char_orbit) for e in se_entries],
    )

    spec_entries = catalog_specific_n4()
    report.check("remaining facet count", 117, len(rest), source="published")
    report.check(
        "remaining facets match the specific catalog",
        True,
        _facet_keyset(rest)
        == {m.canonical_key() for e in spec_entries for m in e.char_orbit},
    )
    report.check(
        "specific orbit sizes",
        [6, 4, 1, 4, 6, 4, 1, 4, 6, 1, 12, 6, 12, 3, 4, 12, 12, 12, 3, 4],
        [len(e.char_orbit) for e in spec_entries],
    )

    extreme_flags = []
    for entry in se_entries:
        for member in entry.char_orbit:
            m = SetFunction.from_char(moebius_up(member.objective))
            extreme_flags.append(is_extreme(m))
    report.check("all 37 one-vertex facet set functions extreme", 37, sum(extreme_flags))

    if fvp_hull:
        try:
            if use_cache:
                count = _cached("fvp-facets/n=4/v1", lambda: _fvp4_facet_count(budget))
            else:
                count = _fvp4_facet_count(budget)
            report.check("family-variable polytope facet count", 135, count, source="published")
        except BudgetExceededError as exc:
            report.skip("family-variable polytope facet count", f"budget exhausted: {exc}")
    else:
        report.skip("family-variable polytope facet count", "stretch check disabled")

    if fvp_star:
        try:
            summary = (
                _cached("fvp-star-vertices/n=4/v1", lambda: _fvp_star_summary(budget))
                if use_cache
                else _fvp_star_summary(budget)
            )
            report.check("relaxation vertex count", 1329, summary["total"], source="published")
            report.check("fractional vertices", 786, summary["fractional"], source="published")
            report.check("first published fractional vertex found", True, summary["witness1"])
            report.check("second published fractional vertex found", True, summary["witness2"])
            report.check(
                "third published fractional vertex found",
                True,
                summary["witness3"],
                note=(
                    "the printed third witness satisfies all 69 constraints but its tight"
                    " rows only reach rank 24 of 28, so it lies inside a 4-face; a true"
                    " vertex with identical support and leading coefficient 2/3 exists"
                )
                if not summary["witness3"]
                else "",
            )
        except BudgetExceededError as exc:
            report.skip("relaxation vertex enumeration", f"budget exhausted: {exc}")
    else:
        report.skip("relaxation vertex enumeration", "stretch check disabled")
    return timer.finish()


def _fvp4_facet_count(budget: Budget | None) -> int:
    gs = GroundSet.alpha(4)
    return len(facets_from_vertices(fvp_vrep(gs), budget=budget).inequalities)


def _published_fractional_witnesses(gs: GroundSet) -> list[FamVector]:
    half, third, sixth = Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)
    a, b, c, d = range(4)
    m = gs.mask_of
    w1 = {(a, m("b")): half, (a, m("d")): half, (b, m("ac")): half,
          (c, m("a")): half, (c, m("bd")): half, (d, m("abc")): half}
    w2 = {(a, m("c")): third, (a, m("d")): third, (a, m("bcd")): third,
          (b, m("a")): third, (b, m("acd")): third, (c, m("b")): third,
          (c, m("d")): third, (c, m("ab")): third, (d, m("abc")): third}
    w3 = {(a, m("b")): sixth, (a, m("d")): third, (b, m("c")): third,
          (b, m("acd")): third, (c, m("a")): third, (c, m("d")): third,
          (c, m("abd")): third, (d, m("bc")): third}
    return [FamVector(gs, w) for w in (w1, w2, w3)]


def _fvp_star_summary(budget: Budget | None) -> dict:
    gs = GroundSet.alpha(4)
    rows = nonneg_constraints(gs) + modified_convexity(gs) + _n4_catalog_fam_rows(se_only=True)
    star = vertices_from_inequalities(HRep("fam", gs, tuple(rows)), budget=budget)
    fractional = sum(
        1 for p in star.points if any(Fraction(x).denominator != 1 for x in p)
    )
    fai = enumerate_family_indices(gs)
    points = set(star.points)
    witnesses = [
        tuple(w[key] for key in fai) in points
        for w in _published_fractional_witnesses(gs)
    ]
    return {
        "total": len(star.points),
        "fractional": fractional,
        "witness1": witnesses[0],
        "witness2": witnesses[1],
        "witness3": witnesses[2],
    }


# --- pipeline: optimal-value reductions ---------------------------------------------


def _random_se_objective(gs: GroundSet, rng: random.Random) -> FamVector:
    cai = enumerate_cai(gs)
    m = CharVector(gs, {S: rng.randint(-5, 5) for S in cai})
    return objective_from_setfn(m)


def verify_theorem3(n: int, trials: int, seed: int = 0) -> VerificationReport:
    """Maximizing a score-equivalent objective over the reduced constraint
    polyhedron (imset facets missing the zero vertex, in fam mode, plus
    non-negativity and convexity) matches the brute-force maximum over all
    DAG codes; at n = 4 the variant restricted to the one-vertex facets
    agrees as well."""
    if n not in (3, 4):
        raise ValueError("supported for n in {3, 4}")
    report = VerificationReport(f"theorem3-n{n}")
    timer = _Timer(report)
    gs = GroundSet.alpha(n)
    fvp = fvp_vrep(gs)

    base = nonneg_constraints(gs) + modified_convexity(gs)
    if n == 3:
        reduced = base + [cluster_fam(gs, C, k) for C, k in cluster_pairs(gs)]
        variants = {"reduced polyhedron": HRep("fam", gs, tuple(reduced))}
    else:
        no_zero = base + _n4_catalog_fam_rows(se_only=False)
        se_only = base + _n4_catalog_fam_rows(se_only=True)
        variants = {
            "reduced polyhedron": HRep("fam", gs, tuple(no_zero)),
            "one-vertex-facet polyhedron": HRep("fam", gs, tuple(se_only)),
        }

    rng = random.Random(seed)
    objectives = [_random_se_objective(gs, rng) for _ in range(trials)]
    for name, hrep in variants.items():
        agree = 0
        for obj in objectives:
            brute, _ = max_over_vertices(obj, fvp)
            optimum, _ = lp_maximize(obj, hrep)
            if brute == optimum:
                agree += 1
        report.check(f"{name}: optima agree on {trials} random objectives", trials, agree)

    # Named instances: the zero objective and a two-node cluster objective.
    zero = FamVector(gs, {})
    hrep = next(iter(variants.values()))
    report.check("zero objective optimum", Fraction(0), lp_maximize(zero, hrep)[0])
    cl = cluster_fam(gs, gs.mask_of("ab"), 1)
    report.check(
        "two-node cluster objective optimum",
        Fraction(1),
        lp_maximize(cl.objective, hrep)[0],
    )
    report.check(
        "two-node cluster brute-force maximum",
        Fraction(1),
        max_over_vertices(cl.objective, fvp)[0],
    )
    return timer.finish()


def verify_theorem3_n5() -> VerificationReport:
    """The operational content of the five-node counterexample: with the
    published facet translation included the LP optimum is exactly 16, and
    dropping it lifts the optimum strictly above 16."""
    report = VerificationReport("theorem3-n5")
    timer = _Timer(report)
    gs = GroundSet.alpha(5)
    cx = counterexample_constants()
    clusters = [cluster_fam(gs, C, k) for C, k in cluster_pairs(gs)]
    report.check("generalized cluster inequality count", 49, len(clusters))
    base = nonneg_constraints(gs) + modified_convexity(gs) + clusters

    with_facet = HRep("fam", gs, tuple(base + [cx.fam_ineq]))
    optimum, _ = lp_maximize(cx.objective, with_facet)
    report.check("optimum with the imset-facet translation", Fraction(16), optimum, source="published")

    without = HRep("fam", gs, tuple(base))
    relaxed, _ = lp_maximize(cx.objective, without)
    report.check("dropping it lifts the optimum above 16", True, relaxed > 16)
    return timer.finish()


# --- pipeline: five-node counterexample ----------------------------------------------


def verify_counterexample(budget: Budget | None = None) -> VerificationReport:
    report = VerificationReport("counterexample")
    timer = _Timer(report)
    gs = GroundSet.alpha(5)
    cx = counterexample_constants()
    obj = cx.objective

    # (1) the two published forms of the inequality translate into each other
    translated = fam_from_char_ineq(cx.char_ineq)
    report.check(
        "imset form translates to the published fam form",
        True,
        translated.objective == obj and translated.bound == cx.fam_ineq.bound,
    )
    report.check(
        "fam objective translates back to the imset form",
        True,
        char_objective(obj) == cx.char_ineq.objective,
    )

    dags = enumerate_dags(gs)
    report.check("number of DAGs", 29281, len(dags))

    # (2) validity with exactly 153 tight codes
    values = []
    for g in dags:
        values.append(sum((obj[(a, B)] for a, B in enumerate(g.parents) if B), ZERO))
    report.check("inequality valid over all DAG codes", True, max(values) <= 16)
    tight = [g for g, v in zip(dags, values) if v == 16]
    report.check("tight DAG codes", 153, len(tight), source="published")

    # (3) dimension of the family-variable face
    fai = enumerate_family_indices(gs)
    pos = {key: i for i, key in enumerate(fai)}
    fam_points = []
    for g in tight:
        row = [0] * len(fai)
        for a, B in enumerate(g.parents):
            if B:
                row[pos[(a, B)]] = 1
        fam_points.append(row)
    report.check("family-variable face dimension", 53, linalg.affine_rank(fam_points) - 1, source="published")

    # (4) the characteristic side is a facet
    cai = enumerate_cai(gs)
    chars = sorted({char_bits(g, cai) for g in tight})
    report.check("distinct characteristic imsets on the face", 59, len(chars), source="published")
    report.check("affine rank of those imsets", 26, linalg.affine_rank(chars), source="published")
    report.check(
        "characteristic polytope has dimension 26",
        True,
        linalg.incremental_rank_reaches((char_bits(g, cai) for g in dags), 27),
    )

    # (5) the uniform combination of the tight codes is the published vector
    counts: dict = {}
    for g in tight:
        for a, B in enumerate(g.parents):
            if B:
                counts[(a, B)] = counts.get((a, B), 0) + 1
    centroid_vec = FamVector(
        gs, {key: Fraction(c, len(tight)) for key, c in counts.items()}
    )
    report.check("centroid of tight codes equals published vector", True, centroid_vec == cx.centroid)
    value_at_centroid = sum((obj[k] * v for k, v in cx.centroid.items()), ZERO)
    report.check("objective value at the centroid", Fraction(16), value_at_centroid, source="published")

    # The characteristic image of the centroid is the same average of the 59
    # tight imsets, each with positive weight, so it sits in the relative
    # interior of the imset-side face.
    char_counts: dict = {}
    for g in tight:
        sig = char_bits(g, cai)
        char_counts[sig] = char_counts.get(sig, 0) + 1
    averaged = [
        Fraction(sum(sig[i] * c for sig, c in char_counts.items()), len(tight))
        for i in range(len(cai))
    ]
    image = char_from_fam(cx.centroid)
    report.check(
        "characteristic image of the centroid averages the tight imsets",
        True,
        [image[S] for S in cai] == averaged,
    )
    report.check(
        "that average has full support over the 59 face vertices",
        True,
        len(char_counts) == 59 and min(char_counts.values()) > 0,
    )

    # (6) no modified convexity constraint is tight there
    convexity = modified_convexity(gs)
    conv_values = [q.value_at(cx.centroid) for q in convexity]
    report.check(
        "no convexity constraint tight at the centroid",
        True,
        all(v < 1 for v in conv_values),
    )

    # (7) the scaled point stays feasible for the other constraint families
    checked = convexity + [cluster_fam(gs, C, k) for C, k in cluster_pairs(gs)]
    slacks = []
    for q in checked:
        v = q.value_at(cx.centroid)
        if v >= q.bound:
            slacks = None
            break
        if v > 0:
            slacks.append((q.bound - v) / (2 * v))
    report.check("positive slack at every checked inequality", True, slacks is not None)
    if slacks is None:
        return timer.finish()
    eps = min(slacks)
    report.check("perturbation size is positive", True, eps > 0)
    star = cx.centroid * (1 + eps)
    report.check(
        "scaled point satisfies non-negativity",
        True,
        all(v >= 0 for _, v in star.items()),
    )
    report.check(
        "scaled point strictly satisfies convexity and all 49 cluster cuts",
        True,
        all(q.value_at(star) < q.bound for q in checked),
    )
    star_value = sum((obj[k] * v for k, v in star.items()), ZERO)
    report.check("objective value at the scaled point", (1 + eps) * 16, star_value)
    report.check("scaled value exceeds the true maximum", True, star_value > 16)
    return timer.finish()


# --- pipeline: equivalence-closed faces ------------------------------------------------


def all_faces_by_tight_sets(vrep: VRep, hull: HRep | None = None) -> list[frozenset[int]]:
    """Every nonempty face of conv(points) as a vertex-index set: the whole
    polytope plus the closure of the facet tight-sets under intersection."""
    if hull is None:
        hull = facets_from_vertices(vrep)
    index = vrep.index
    tight_sets = []
    for q in hull.inequalities:
        dense = vector_to_dense(q.objective, index)
        tight = frozenset(
            i
            for i, p in enumerate(vrep.points)
            if sum((c * x for c, x in zip(dense, p) if c), ZERO) == q.bound
        )
        tight_sets.append(tight)
    everything = frozenset(range(len(vrep.points)))
    faces = {everything}
    frontier = [everything]
    while frontier:
        face = frontier.pop()
        for tight in tight_sets:
            smaller = face & tight
            if smaller and smaller not in faces:
                faces.add(smaller)
                frontier.append(smaller)
    return sorted(faces, key=lambda f: (len(f), sorted(f)))


def smallest_face_containing(indices: frozenset[int], vrep: VRep, hull: HRep) -> frozenset[int]:
    """Intersection of all facet tight-sets containing the given vertices;
    the set is a face exactly when this closure adds nothing."""
    index = vrep.index
    face = frozenset(range(len(vrep.points)))
    for q in hull.inequalities:
        dense = vector_to_dense(q.objective, index)
        tight = frozenset(
            i
            for i, p in enumerate(vrep.points)
            if sum((c * x for c, x in zip(dense, p) if c), ZERO) == q.bound
        )
        if indices <= tight:
            face &= tight
    return face


def explore_conjecture(n: int = 3) -> VerificationReport:
    """Enumerate every face of the family-variable polytope, keep those whose
    DAG sets are closed under Markov equivalence, and confirm each one admits
    a score-equivalent defining objective (via the exact-LP face test)."""
    if n != 3:
        raise ValueError("exhaustive face analysis is feasible only for n = 3")
    report = VerificationReport("conjecture-n3")
    timer = _Timer(report)
    gs = GroundSet.alpha(n)
    dags = enumerate_dags(gs)
    fvp = fvp_vrep(gs)
    hull = facets_from_vertices(fvp)
    report.check("facet count", 17, len(hull.inequalities))

    cai = enumerate_cai(gs)
    class_of = {}
    for i, g in enumerate(dags):
        class_of[i] = char_bits(g, cai)
    faces = all_faces_by_tight_sets(fvp, hull)

    closed_faces = []
    for face in faces:
        signatures = {class_of[i] for i in face}
        closure = {i for i in range(len(dags)) if class_of[i] in signatures}
        if closure == set(face):
            closed_faces.append(face)

    violations = []
    for face in closed_faces:
        graphs = [dags[i] for i in face]
        ok, _ = is_se_face(graphs, all_dags=dags)
        if not ok:
            violations.append(sorted(face))
    report.check(
        "equivalence-closed faces that are not SE faces",
        0,
        len(violations),
        note=f"{len(faces)} faces, {len(closed_faces)} closed under Markov equivalence",
    )

    all_pairs = frozenset({(0, 1), (0, 2), (1, 2)})
    full_class = [g for g in dags if g.adjacency_pairs() == all_pairs]
    ok, witness = is_se_face(full_class, all_dags=dags)
    report.check("the class of complete graphs is an SE face", True, ok and witness is not None)
    return timer.finish()
