"""Linear inequality families over the two polytopes, plus the golden data.

All inequalities are kept in the upper-bound standardization <obj, x> <= u.
Available families: non-negativity, modified convexity, generalized cluster
inequalities in both family-variable and characteristic-imset coordinates,
the two four-node facet catalogs (one representative per permutation type,
orbits generated on the fly), and the five-node constants used by the
counterexample pipeline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import permutations
from math import comb, gcd

from .errors import BnPolyError
from .ground import (
    CharVector,
    FamVector,
    GroundSet,
    ZERO,
    as_fraction,
    bit,
    char_from_json,
    fam_from_json,
    iter_bits,
    parse_fam_key,
    parse_subset_key,
    scalar_product,
    submasks,
)


@dataclass(frozen=True)
class LinearInequality:
    """<objective, x> <= bound over family or characteristic coordinates."""

    space: str
    objective: FamVector | CharVector
    bound: Fraction
    label: str = ""

    def __post_init__(self):
        if self.space != self.objective.space:
            raise BnPolyError("inequality space tag does not match its objective")
        object.__setattr__(self, "bound", as_fraction(self.bound))

    @property
    def gs(self) -> GroundSet:
        return self.objective.gs

    def value_at(self, x) -> Fraction:
        return scalar_product(self.objective, x)

    def is_valid_at(self, x) -> bool:
        return self.value_at(x) <= self.bound

    def is_tight_at(self, x) -> bool:
        return self.value_at(x) == self.bound

    def normalized(self) -> "LinearInequality":
        """Scale to integer coefficients with gcd 1 (bound scales along)."""
        if not self.objective:
            return self
        denom_lcm = 1
        for _, v in self.objective.items():
            denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
        num_gcd = 0
        for _, v in self.objective.items():
            num_gcd = gcd(num_gcd, abs(v.numerator * (denom_lcm // v.denominator)))
        factor = Fraction(denom_lcm, num_gcd)
        return LinearInequality(
            self.space, self.objective * factor, self.bound * factor, self.label
        )

    def canonical_key(self):
        norm = self.normalized()
        return (norm.space, tuple(norm.objective.sorted_items()), norm.bound)

    def permuted(self, perm: tuple[int, ...]) -> "LinearInequality":
        """Relabel nodes by the permutation (node i becomes perm[i])."""
        obj = self.objective
        if self.space == "fam":
            coords = {
                (perm[a], _permute_mask(B, perm)): v for (a, B), v in obj.items()
            }
            new_obj = FamVector(obj.gs, coords)
        else:
            new_obj = CharVector(
                obj.gs, {_permute_mask(S, perm): v for S, v in obj.items()}
            )
        return LinearInequality(self.space, new_obj, self.bound, self.label)


def _permute_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= bit(perm[i])
    return out


def orbit(ineq: LinearInequality) -> list[LinearInequality]:
    """All distinct images of the inequality under node relabelings."""
    seen = {}
    for perm in permutations(range(ineq.gs.n)):
        image = ineq.permuted(perm)
        seen.setdefault(image.canonical_key(), image)
    return [seen[key] for key in sorted(seen)]


# --- the basic facet families ------------------------------------------------


def nonneg_constraints(gs: GroundSet) -> list[LinearInequality]:
    """-x(a : B) <= 0 for every family pair; tight at the empty graph."""
    out = []
    for a in range(gs.n):
        for B in range(1, gs.full_mask + 1):
            if not B & bit(a):
                out.append(
                    LinearInequality(
                        "fam",
                        FamVector(gs, {(a, B): -1}),
                        ZERO,
                        label=f"nonneg[{gs.labels[a]}|{gs.letters(B)}]",
                    )
                )
    return out


def modified_convexity(gs: GroundSet) -> list[LinearInequality]:
    """sum over nonempty B of x(a : B) <= 1, one inequality per node;
    facet-defining for n >= 3."""
    out = []
    for a in range(gs.n):
        coords = {
            (a, B): 1 for B in range(1, gs.full_mask + 1) if not B & bit(a)
        }
        out.append(
            LinearInequality(
                "fam", FamVector(gs, coords), Fraction(1), label=f"convexity[{gs.labels[a]}]"
            )
        )
    return out


def _check_cluster(gs: GroundSet, C: int, k: int) -> None:
    gs.check_mask(C)
    if C.bit_count() < 2:
        raise BnPolyError("cluster needs at least two nodes")
    if not 1 <= k <= C.bit_count() - 1:
        raise BnPolyError(f"level k={k} out of range for a cluster of size {C.bit_count()}")


def cluster_fam(gs: GroundSet, C: int, k: int) -> LinearInequality:
    """Generalized cluster inequality in family-variable coordinates:
    sum over a in C, B with |B n C| >= k of x(a : B) <= |C| - k."""
    _check_cluster(gs, C, k)
    coords = {}
    for a in iter_bits(C):
        for B in range(1, gs.full_mask + 1):
            if not B & bit(a) and (B & C).bit_count() >= k:
                coords[(a, B)] = 1
    return LinearInequality(
        "fam",
        FamVector(gs, coords),
        Fraction(C.bit_count() - k),
        label=f"cluster[{gs.letters(C)},{k}]/fam",
    )


def cluster_char(gs: GroundSet, C: int, k: int) -> LinearInequality:
    """The same cut in characteristic-imset coordinates; the coefficient on
    S <= C with |S| >= k + 1 is (-1)^(|S|-k-1) * binom(|S|-2, |S|-k-1) and all
    other coefficients vanish."""
    _check_cluster(gs, C, k)
    coords = {}
    for S in submasks(C):
        s = S.bit_count()
        if s >= k + 1:
            coef = comb(s - 2, s - k - 1)
            coords[S] = coef if (s - k - 1) % 2 == 0 else -coef
    return LinearInequality(
        "char",
        CharVector(gs, coords),
        Fraction(C.bit_count() - k),
        label=f"cluster[{gs.letters(C)},{k}]/char",
    )


def fam_from_char_ineq(ineq: LinearInequality) -> LinearInequality:
    """Translate a characteristic-space inequality into family variables:

        obj(a : B) = sum over nonempty K <= B of z({a} u K)

    so that <z, char_image(x)> = <obj, x> for every family vector x."""
    if ineq.space != "char":
        raise BnPolyError("expected a characteristic-space inequality")
    gs = ineq.gs
    z = ineq.objective
    coords = {}
    for a in range(gs.n):
        abit = bit(a)
        for B in range(1, gs.full_mask + 1):
            if B & abit:
                continue
            total = ZERO
            for K in submasks(B):
                if K:
                    total += z[abit | K]
            if total:
                coords[(a, B)] = total
    return LinearInequality(
        "fam", FamVector(gs, coords), ineq.bound, label=ineq.label + "/fam"
    )


# --- the combinatorial identity behind the char-mode cluster form ------------


def paper_binom(n: int, r: int) -> int:
    """Binomial coefficient with the conventions binom(n, 0) = binom(n, n) = 1
    for any integer n and binom(n, -1) = binom(n, n+1) = 0 for n >= 0."""
    if n >= 0 and 0 <= r <= n:
        return comb(n, r)
    if r == 0 or r == n:
        return 1
    if n >= 0 and (r == -1 or r == n + 1):
        return 0
    raise BnPolyError(f"binomial ({n}, {r}) outside the supported conventions")


def binomial_identity(s: int, k: int, K: int) -> tuple[int, int]:
    """Evaluate both sides of

        sum_{m=0..s} (-1)^m binom(k+s, k+m) binom(m+k-K, m)  =  binom(s+K-1, K-1)

    for s >= 0 and k >= K >= 0, assert they agree, and return the pair."""
    if s < 0 or K < 0 or k < K:
        raise BnPolyError("need s >= 0 and k >= K >= 0")
    lhs = 0
    for m in range(s + 1):
        term = paper_binom(k + s, k + m) * paper_binom(m + k - K, m)
        lhs += term if m % 2 == 0 else -term
    rhs = paper_binom(s + K - 1, K - 1)
    if lhs != rhs:
        raise BnPolyError(f"binomial identity failed at (s={s}, k={k}, K={K})")
    return lhs, rhs


# --- golden catalogs ----------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    type_id: str
    char_ineq: LinearInequality
    fam_ineq: LinearInequality
    char_orbit: tuple[LinearInequality, ...]
    expected_orbit_size: int
    kind: str  # "cluster" | "noncluster" | "specific"
    cluster: tuple[int, int] | None = None  # (cluster mask, level)
    sperner: tuple[int, ...] | None = None  # clutter of subset masks
    certificate: dict | None = None  # conic-combination data, where applicable

    def fam_orbit(self) -> list[LinearInequality]:
        return [fam_from_char_ineq(member) for member in self.char_orbit]


def _load_data(name: str) -> dict:
    with resources.files("bnpoly.data").joinpath(name).open("r") as handle:
        return json.load(handle)


def _build_entry(gs: GroundSet, record: dict, kind_default: str) -> CatalogEntry:
    char_obj = char_from_json(gs, record["char"])
    char_ineq = LinearInequality(
        "char", char_obj, as_fraction(record["bound"]), label=record["type_id"]
    )
    members = orbit(char_ineq)
    if len(members) != record["count"]:
        raise BnPolyError(
            f"catalog type {record['type_id']}: orbit has {len(members)} members, "
            f"expected {record['count']}"
        )
    cluster = None
    kind = record.get("kind", kind_default)
    if "cluster" in record:
        cluster = (gs.mask_of(record["cluster"]["C"]), record["cluster"]["k"])
    sperner = None
    if "sperner" in record:
        sperner = tuple(parse_subset_key(gs, text) for text in record["sperner"])
    return CatalogEntry(
        type_id=record["type_id"],
        char_ineq=char_ineq,
        fam_ineq=fam_from_char_ineq(char_ineq),
        char_orbit=tuple(members),
        expected_orbit_size=record["count"],
        kind=kind,
        cluster=cluster,
        sperner=sperner,
        certificate=record.get("certificate"),
    )


@lru_cache(maxsize=1)
def catalog_se_n4() -> tuple[CatalogEntry, ...]:
    """The 37 four-node facets containing the all-ones vertex, in 10 types
    with orbit sizes 6, 4, 4, 1, 1, 1, 4, 6, 4, 6."""
    data = _load_data("se_facets_n4.json")
    gs = GroundSet.alpha(4)
    entries = tuple(_build_entry(gs, record, "noncluster") for record in data["types"])
    if sum(e.expected_orbit_size for e in entries) != 37:
        raise BnPolyError("SE catalog does not total 37 inequalities")
    return entries


@lru_cache(maxsize=1)
def catalog_specific_n4() -> tuple[CatalogEntry, ...]:
    """The 117 remaining four-node facets, in 20 types; only the last type
    (bound 1) misses the zero vertex."""
    data = _load_data("specific_facets_n4.json")
    gs = GroundSet.alpha(4)
    entries = tuple(_build_entry(gs, record, "specific") for record in data["types"])
    if sum(e.expected_orbit_size for e in entries) != 117:
        raise BnPolyError("specific catalog does not total 117 inequalities")
    return entries


@dataclass(frozen=True)
class CounterexampleConstants:
    char_ineq: LinearInequality  # valid over characteristic imsets, bound 16
    fam_ineq: LinearInequality  # its family-variable translation
    objective: FamVector  # the fam-mode objective of that translation
    centroid: FamVector  # uniform combination of the 153 tight DAG codes


@lru_cache(maxsize=1)
def counterexample_constants() -> CounterexampleConstants:
    """The published five-node constants, hard-coded and cross-checkable."""
    data = _load_data("counterexample_n5.json")
    gs = GroundSet.alpha(5)
    char_ineq = LinearInequality(
        "char",
        char_from_json(gs, data["char"]),
        as_fraction(data["char_bound"]),
        label="five-node-facet/char",
    )
    fam_obj = fam_from_json(gs, data["fam"])
    fam_ineq = LinearInequality(
        "fam", fam_obj, as_fraction(data["fam_bound"]), label="five-node-facet/fam"
    )
    den = data["centroid_denominator"]
    centroid = FamVector(
        gs,
        {
            parse_fam_key(gs, key): Fraction(num, den)
            for key, num in data["centroid_numerators"].items()
        },
    )
    return CounterexampleConstants(char_ineq, fam_ineq, fam_obj, centroid)


# --- LP-format export ---------------------------------------------------------


def _lp_var(gs: GroundSet, a: int, B: int) -> str:
    return f"x_{gs.labels[a]}_{gs.letters(B)}"


def export_lp(
    gs: GroundSet,
    objective: FamVector | None = None,
    clusters: list[tuple[int, int]] | None = None,
    integer: bool = False,
) -> str:
    """CPLEX LP text for the family-variable relaxation: convexity as
    equalities over variables extended with empty parent sets, plus the
    selected generalized cluster cuts in their lower-bound form.  Variable
    bounds 0 <= x <= 1 take care of non-negativity."""
    lines = ["\\ family-variable relaxation", "Maximize"]
    if objective:
        terms = []
        for (a, B), v in objective.sorted_items():
            if v.denominator != 1:
                raise BnPolyError("LP export needs integer objective coefficients")
            sign = "+" if v >= 0 else "-"
            terms.append(f" {sign} {abs(v)} {_lp_var(gs, a, B)}")
        lines.append(" obj:" + "".join(terms))
    else:
        lines.append(f" obj: 0 {_lp_var(gs, 0, 0)}")
    lines.append("Subject To")
    for a in range(gs.n):
        vars_a = [
            _lp_var(gs, a, B) for B in range(gs.full_mask + 1) if not B & bit(a)
        ]
        lines.append(f" conv_{gs.labels[a]}: " + " + ".join(vars_a) + " = 1")
    for C, k in clusters or []:
        _check_cluster(gs, C, k)
        vars_c = [
            _lp_var(gs, a, B)
            for a in iter_bits(C)
            for B in range(gs.full_mask + 1)
            if not B & bit(a) and (B & C).bit_count() < k
        ]
        lines.append(
            f" cluster_{gs.letters(C)}_{k}: " + " + ".join(vars_c) + f" >= {k}"
        )
    lines.append("Bounds")
    for a in range(gs.n):
        for B in range(gs.full_mask + 1):
            if not B & bit(a):
                lines.append(f" 0 <= {_lp_var(gs, a, B)} <= 1")
    if integer:
        lines.append("Binaries")
        for a in range(gs.n):
            for B in range(gs.full_mask + 1):
                if not B & bit(a):
                    lines.append(f" {_lp_var(gs, a, B)}")
    lines.append("End")
    return "\n".join(lines) + "\n"
