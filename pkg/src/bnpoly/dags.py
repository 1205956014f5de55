"""Acyclic directed graphs over a ground set.

A graph is stored as one parent mask per node.  Enumeration walks all parent
maps in lexicographic order and keeps the acyclic ones; Markov equivalence is
available both through the adjacency + immorality characterization and
through breadth-first closure under covered-arc reversals, and the two are
cross-checked in the test suite.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .errors import BnPolyError, IndexFamilyMismatchError
from .ground import GroundSet, bit, iter_bits


class Dag:
    """Immutable acyclic directed graph: one parent mask per node."""

    __slots__ = ("gs", "parents")

    def __init__(self, gs: GroundSet, parents: Sequence[int], check: bool = True):
        parents = tuple(parents)
        if check:
            if len(parents) != gs.n:
                raise BnPolyError("need one parent set per node")
            for a, B in enumerate(parents):
                gs.check_mask(B)
                if B & bit(a):
                    raise BnPolyError(f"node {gs.labels[a]} cannot be its own parent")
            if not _acyclic(parents, gs.full_mask):
                raise BnPolyError("parent map has a directed cycle")
        self.gs = gs
        self.parents = parents

    def parent_mask(self, a: int) -> int:
        return self.parents[a]

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs as (parent, child) index pairs, child-major order."""
        return [(a, b) for b in range(self.gs.n) for a in iter_bits(self.parents[b])]

    def adjacency_pairs(self) -> frozenset[tuple[int, int]]:
        """Unordered adjacent pairs, each as a sorted index tuple."""
        return frozenset(
            (a, b) if a < b else (b, a) for a, b in self.arcs()
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Dag) and self.gs == other.gs and self.parents == other.parents

    def __hash__(self) -> int:
        return hash((self.gs.labels, self.parents))

    def __lt__(self, other) -> bool:
        return self.parents < other.parents

    def __repr__(self) -> str:
        pieces = ", ".join(
            f"{self.gs.labels[a]}<-{{{self.gs.letters(B)}}}" for a, B in enumerate(self.parents)
        )
        return f"Dag({pieces})"

    def to_json(self) -> dict[str, str]:
        return {self.gs.labels[a]: self.gs.letters(B) for a, B in enumerate(self.parents)}

    @classmethod
    def from_json(cls, obj: dict[str, str], gs: GroundSet | None = None) -> "Dag":
        if gs is None:
            gs = GroundSet(obj.keys())
        elif set(obj.keys()) != set(gs.labels):
            raise BnPolyError("graph nodes do not match the ground set")
        parents = [0] * gs.n
        for node, parent_text in obj.items():
            parents[gs.index(node)] = gs.mask_of(parent_text)
        return cls(gs, parents)


def _acyclic(parents: Sequence[int], full_mask: int) -> bool:
    # Kahn's algorithm on masks: repeatedly delete nodes with no remaining parents.
    remaining = full_mask
    progressed = True
    while remaining and progressed:
        progressed = False
        m = remaining
        while m:
            low = m & -m
            m ^= low
            if not parents[low.bit_length() - 1] & remaining:
                remaining ^= low
                progressed = True
    return remaining == 0


def is_acyclic(gs: GroundSet, parents: Sequence[int]) -> bool:
    """Whether the parent map admits a consonant total order."""
    parents = tuple(parents)
    if len(parents) != gs.n:
        raise BnPolyError("need one parent set per node")
    for a, B in enumerate(parents):
        gs.check_mask(B)
        if B & bit(a):
            raise BnPolyError(f"node {gs.labels[a]} cannot be its own parent")
    return _acyclic(parents, gs.full_mask)


_DAG_CACHE: dict[int, tuple[tuple[int, ...], ...]] = {}


def _acyclic_parent_tuples(n: int) -> tuple[tuple[int, ...], ...]:
    cached = _DAG_CACHE.get(n)
    if cached is None:
        full = (1 << n) - 1
        choices = [
            tuple(B for B in range(full + 1) if not B & bit(a)) for a in range(n)
        ]
        cached = tuple(
            pm for pm in product(*choices) if _acyclic(pm, full)
        )
        _DAG_CACHE[n] = cached
    return cached


def enumerate_dags(gs: GroundSet) -> list[Dag]:
    """Every acyclic parent map exactly once, in lexicographic parent-map
    order.  Exhaustive enumeration; intended for n <= 5."""
    return [Dag(gs, pm, check=False) for pm in _acyclic_parent_tuples(gs.n)]


def immoralities(graph: Dag) -> frozenset[tuple[tuple[int, int], int]]:
    """All induced a -> c <- b with a, b non-adjacent, as ((a, b), c) with a < b."""
    adjacent = graph.adjacency_pairs()
    found = set()
    for c in range(graph.gs.n):
        pa = graph.parents[c]
        nodes = list(iter_bits(pa))
        for i, a in enumerate(nodes):
            for b in nodes[i + 1:]:
                if (a, b) not in adjacent:
                    found.add(((a, b), c))
    return frozenset(found)


def markov_equivalent(g: Dag, h: Dag) -> bool:
    """Same adjacencies and same immoralities."""
    if g.gs != h.gs:
        raise IndexFamilyMismatchError("graphs live over different ground sets")
    return g.adjacency_pairs() == h.adjacency_pairs() and immoralities(g) == immoralities(h)


def covered_arc_neighbors(graph: Dag) -> list[Dag]:
    """One graph per covered arc a -> b (pa(b) = {a} u pa(a)), obtained by
    reversing that arc; every output is Markov equivalent to the input."""
    out = []
    for b in range(graph.gs.n):
        for a in iter_bits(graph.parents[b]):
            if graph.parents[b] == graph.parents[a] | bit(a):
                parents = list(graph.parents)
                parents[b] = graph.parents[a]
                parents[a] = graph.parents[a] | bit(b)
                out.append(Dag(graph.gs, parents, check=False))
    return out


def equivalence_class(graph: Dag) -> set[Dag]:
    """Closure of the graph under covered-arc reversals."""
    seen = {graph}
    stack = [graph]
    while stack:
        g = stack.pop()
        for h in covered_arc_neighbors(g):
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return seen


def enumerate_equivalence_classes(gs: GroundSet) -> list[tuple[Dag, int]]:
    """Partition of all DAGs into Markov equivalence classes, each reported
    as (lexicographically least member, class size), in order of the first
    member encountered by :func:`enumerate_dags`."""
    seen: set[tuple[int, ...]] = set()
    classes = []
    for g in enumerate_dags(gs):
        if g.parents in seen:
            continue
        members = equivalence_class(g)
        seen.update(m.parents for m in members)
        rep = min(members)
        classes.append((rep, len(members)))
    return classes


def is_closed_under_equivalence(graphs: Iterable[Dag]) -> bool:
    """Whether the set contains the whole Markov equivalence class of each member."""
    graphs = set(graphs)
    for g in graphs:
        if not equivalence_class(g) <= graphs:
            return False
    return True
