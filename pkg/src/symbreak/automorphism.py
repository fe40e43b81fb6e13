"""Permutation algebra and automorphism search by individualization-refinement.

Permutations are stored sparsely by their non-fixed points. The search
refines the initial coloring, repeatedly individualizes members of the first
non-singleton cell, and compares every discrete leaf against the first one;
candidates that survive the adjacency/color check become generators and feed
orbit pruning of sibling branches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceededError
from .graph import NEG, POS, ColoredGraph, Coloring, individualize, refine


class Permutation:
    """A bijection stored sparsely: only non-fixed points are kept."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: Mapping[int, int] | None = None):
        pruned = {a: b for a, b in (mapping or {}).items() if a != b}
        if set(pruned) != set(pruned.values()):
            raise ValueError("mapping is not a bijection on its support")
        self.mapping = pruned

    @classmethod
    def identity(cls) -> "Permutation":
        return cls()

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]]) -> "Permutation":
        mapping: dict[int, int] = {}
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)([cycle[0]])):
                if a in mapping:
                    raise ValueError(f"element {a} appears in two cycles")
                mapping[a] = b
        return cls(mapping)

    def __call__(self, x: int) -> int:
        return self.mapping.get(x, x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __hash__(self) -> int:
        return hash(frozenset(self.mapping.items()))

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string() or 'identity'})"

    def is_identity(self) -> bool:
        return not self.mapping

    def moved(self) -> list[int]:
        return sorted(self.mapping)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each rotated to start at its smallest element,
        sorted by that element."""
        seen: set[int] = set()
        out = []
        for start in sorted(self.mapping):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.mapping[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.mapping[nxt]
            out.append(tuple(cycle))
        return out

    def is_involution(self) -> bool:
        return all(len(c) == 2 for c in self.cycles())

    def cycle_string(self) -> str:
        return " ".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation s -> p(q(s))."""
    support = set(p.mapping) | set(q.mapping)
    return Permutation({s: p(q(s)) for s in support})


def inverse(p: Permutation) -> Permutation:
    return Permutation({b: a for a, b in p.mapping.items()})


def check_group_axioms(elements: Sequence[Permutation], sample_triples: int = 1000) -> bool:
    """True iff the set contains the identity, is closed under composition,
    contains every inverse, and composition is associative on sampled triples.
    """
    pool = set(elements)
    if Permutation.identity() not in pool:
        return False
    for p in pool:
        if inverse(p) not in pool:
            return False
    for p, q in itertools.product(pool, repeat=2):
        if compose(p, q) not in pool:
            return False
    triples = itertools.product(pool, repeat=3)
    if len(pool) ** 3 > sample_triples:
        cycle = itertools.cycle(pool)
        triples = (
            (next(cycle), next(cycle), next(cycle)) for _ in range(sample_triples)
        )
    for p, q, r in triples:
        if compose(compose(p, q), r) != compose(p, compose(q, r)):
            return False
    return True


def group_closure(generators: Iterable[Permutation], budget: int = 10**4) -> list[Permutation]:
    """All elements generated by the given permutations (BFS over products)."""
    closure = {Permutation.identity()}
    frontier = [Permutation.identity()]
    gens = list(generators)
    while frontier:
        element = frontier.pop()
        for g in gens:
            candidate = compose(g, element)
            if candidate not in closure:
                closure.add(candidate)
                frontier.append(candidate)
                if len(closure) > budget:
                    raise BudgetExceededError(
                        f"group closure exceeds the budget of {budget} elements"
                    )
    return sorted(closure, key=lambda p: sorted(p.mapping.items()))


class UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)


@dataclass
class SearchStats:
    nodes_explored: int = 0
    generators_found: int = 0
    limit_hit: bool = False


@dataclass
class GeneratorSet:
    """Atom-level generators with their vertex-level originals and search stats."""

    generators: list[Permutation] = field(default_factory=list)
    graph_generators: list[Permutation] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def is_graph_automorphism(graph: ColoredGraph, perm: Permutation) -> bool:
    """Edge/color preservation check against the graph's initial coloring."""
    color = graph.initial_coloring.cell_index()
    neighbor = graph.neighbor_sets()
    for v in perm.moved():
        if v not in color or color[v] != color[perm(v)]:
            return False
    for v in range(graph.vertex_count):
        pv = perm(v)
        if {perm(u) for u in graph.adjacency[v]} != neighbor[pv]:
            return False
    return True


def atom_restriction(vertex_perm: Permutation, graph: ColoredGraph) -> Permutation:
    """Read off the induced atom permutation from positive-literal vertices,
    cross-checking the negative-literal images."""
    mapping: dict[int, int] = {}
    for v in vertex_perm.moved():
        origin = graph.origins[v]
        if origin.kind != POS:
            continue
        image = graph.origins[vertex_perm(v)]
        if image.kind != POS:
            raise RuntimeError(f"vertex {v} maps across literal polarity")
        a, b = origin.index, image.index
        neg_image = graph.origins[vertex_perm(graph.neg_vertex(a))]
        if neg_image != (NEG, b):
            raise RuntimeError(
                f"inconsistent literal images for atom {a}: pos -> {b}, neg -> {neg_image}"
            )
        mapping[a] = b
    return Permutation(mapping)


class _SearchDone(Exception):
    pass


def find_generators(
    graph: ColoredGraph, limit: int | None = None, seed: int = 0
) -> GeneratorSet:
    """Individualization-refinement search for color-preserving automorphisms.

    Deterministic: cells are targeted in canonical order and cell members
    explored in ascending vertex order, rotated by `seed`. With a limit, the
    result is a prefix of the unlimited run's generator list. Asymmetric
    graphs yield an empty set.
    """
    result = GeneratorSet()
    if graph.vertex_count == 0:
        return result
    stats = result.stats
    orbits = UnionFind(range(graph.vertex_count))
    seen: set[Permutation] = set()
    first_leaf: list[int] | None = None

    def leaf(coloring: Coloring) -> None:
        nonlocal first_leaf
        sequence = [cell[0] for cell in coloring.cells]
        if first_leaf is None:
            first_leaf = sequence
            return
        perm = Permutation(dict(zip(first_leaf, sequence)))
        if perm.is_identity() or perm in seen:
            return
        if not is_graph_automorphism(graph, perm):
            return
        seen.add(perm)
        result.graph_generators.append(perm)
        result.generators.append(atom_restriction(perm, graph))
        for a, b in perm.mapping.items():
            orbits.union(a, b)
        stats.generators_found += 1
        if limit is not None and stats.generators_found >= limit:
            stats.limit_hit = True
            raise _SearchDone

    def descend(coloring: Coloring) -> None:
        stats.nodes_explored += 1
        target = coloring.first_nonsingleton()
        if target is None:
            leaf(coloring)
            return
        members = list(coloring.cells[target])
        if seed:
            cut = seed % len(members)
            members = members[cut:] + members[:cut]
        explored: list[int] = []
        for v in members:
            if any(orbits.same(v, u) for u in explored):
                continue
            explored.append(v)
            child = refine(graph, individualize(coloring, v), active=(target, target + 1))
            descend(child)

    try:
        descend(refine(graph, graph.initial_coloring))
    except _SearchDone:
        pass
    return result
