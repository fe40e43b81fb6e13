"""Colored-graph encoding of programs and equitable partition refinement.

A program maps to an undirected vertex-colored graph whose color-preserving
automorphisms correspond to program symmetries: two literal vertices per atom
joined by a consistency edge, plus one body and one head connector vertex per
non-minimize rule. Head/body roles and rule shapes are separated by color, so
any automorphism maps rules to rules of the same kind.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import UnsupportedFeatureError
from .program import CARDINALITY, CHOICE, FALSE_ATOM, MINIMIZE, WEIGHT, Program

POS = "pos"
NEG = "neg"
BODY = "body"
HEAD = "head"

_KIND_RANK = {POS: 0, NEG: 1, BODY: 2, HEAD: 3}
_RULE_CODE = {"basic": 1, "cardinality": 2, "choice": 3}


class Origin(NamedTuple):
    kind: str
    index: int  # atom id for pos/neg, rule index for body/head


class Coloring:
    """An ordered partition of graph vertices into color cells."""

    __slots__ = ("cells",)

    def __init__(self, cells: Iterable[Sequence[int]]):
        self.cells = tuple(tuple(c) for c in cells)

    def __eq__(self, other) -> bool:
        return isinstance(other, Coloring) and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"Coloring({list(map(list, self.cells))})"

    def cell_index(self) -> dict[int, int]:
        return {v: i for i, cell in enumerate(self.cells) for v in cell}

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)

    def first_nonsingleton(self) -> int | None:
        for i, cell in enumerate(self.cells):
            if len(cell) > 1:
                return i
        return None

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(c) for c in self.cells}


@dataclass(frozen=True)
class ColoredGraph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    initial_coloring: Coloring
    origins: tuple[Origin, ...]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    def pos_vertex(self, atom: int) -> int:
        return 2 * (atom - 1)

    def neg_vertex(self, atom: int) -> int:
        return 2 * (atom - 1) + 1


def make_graph(
    n: int, edges: Iterable[tuple[int, int]], coloring: Coloring, origins=None
) -> ColoredGraph:
    """Assemble a graph from an edge list; self-loops are rejected."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    if origins is None:
        origins = tuple(Origin(POS, i) for i in range(n))
    return ColoredGraph(
        vertex_count=n,
        adjacency=tuple(tuple(sorted(a)) for a in adj),
        initial_coloring=coloring,
        origins=tuple(origins),
    )


def build_graph(program: Program) -> ColoredGraph:
    """Encode a program as a colored graph.

    Vertices: pos(a)/neg(a) per atom a in 1..max_atom, then a body and a head
    vertex per non-minimize rule. Edges: {pos(a),neg(a)}, body-literal,
    body-head, head-pos(h). Initial colors: one cell for free pos literals,
    one for free neg literals, one per body signature (kind, bound, head
    count, body length), one for heads; the reserved atom and every
    compute-statement atom get singleton cells so no symmetry can move them.
    Minimize statements contribute nothing; weight rules are rejected.
    """
    if program.has_kind(WEIGHT):
        raise UnsupportedFeatureError("weight rules are not supported by the symmetry pipeline")

    n_atoms = program.max_atom
    origins: list[Origin] = []
    for a in range(1, n_atoms + 1):
        origins.append(Origin(POS, a))
        origins.append(Origin(NEG, a))

    def pos(a: int) -> int:
        return 2 * (a - 1)

    def neg(a: int) -> int:
        return 2 * (a - 1) + 1

    edges: list[tuple[int, int]] = [(pos(a), neg(a)) for a in range(1, n_atoms + 1)]
    body_cells: dict[tuple, list[int]] = {}
    head_vertices: list[int] = []

    next_vertex = 2 * n_atoms
    for r_index, rule in enumerate(program.rules):
        if rule.kind == MINIMIZE:
            continue
        body_v = next_vertex
        head_v = next_vertex + 1
        next_vertex += 2
        origins.append(Origin(BODY, r_index))
        origins.append(Origin(HEAD, r_index))
        head_vertices.append(head_v)
        edges.append((body_v, head_v))
        for lit in set(rule.body):
            edges.append((body_v, neg(lit.atom) if lit.negated else pos(lit.atom)))
        for h in set(rule.heads):
            edges.append((head_v, pos(h)))
        sig = (
            _RULE_CODE[rule.kind],
            rule.bound if rule.kind == CARDINALITY else -1,
            len(rule.heads) if rule.kind == CHOICE else -1,
            len(rule.body),
        )
        body_cells.setdefault(sig, []).append(body_v)

    pinned = {FALSE_ATOM} | set(program.compute_true) | set(program.compute_false)
    pinned = {a for a in pinned if 1 <= a <= n_atoms}
    free = [a for a in range(1, n_atoms + 1) if a not in pinned]

    # (kind rank, signature, smallest vertex) gives the canonical cell order
    keyed_cells: list[tuple[tuple, list[int]]] = []
    if free:
        keyed_cells.append(((_KIND_RANK[POS], (0,)), [pos(a) for a in free]))
        keyed_cells.append(((_KIND_RANK[NEG], (0,)), [neg(a) for a in free]))
    for a in sorted(pinned):
        keyed_cells.append(((_KIND_RANK[POS], (1, a)), [pos(a)]))
        keyed_cells.append(((_KIND_RANK[NEG], (1, a)), [neg(a)]))
    for sig in sorted(body_cells):
        keyed_cells.append(((_KIND_RANK[BODY], sig), body_cells[sig]))
    if head_vertices:
        keyed_cells.append(((_KIND_RANK[HEAD], (0,)), head_vertices))

    keyed_cells.sort(key=lambda kc: (kc[0], min(kc[1])))
    coloring = Coloring(sorted(c) for _, c in keyed_cells)
    return make_graph(next_vertex, edges, coloring, origins)


def refine(graph: ColoredGraph, start: Coloring, active: Sequence[int] | None = None) -> Coloring:
    """Coarsest stable refinement of `start`: every result cell is a subset of
    a start cell and any two vertices sharing a cell have equal neighbor
    counts into every result cell.

    `active` seeds the splitter worklist with the given start-cell positions
    (used after individualization, when the rest is already stable); by
    default every cell is a candidate splitter. Fragments of a split cell
    replace it in place, ordered by ascending neighbor count, which keeps the
    cell order canonical and invariant under automorphisms.
    """
    adj = graph.adjacency
    cells: list[list[int] | None] = [sorted(c) for c in start.cells]
    order: list[int] = list(range(len(cells)))
    cell_of: dict[int, int] = {v: i for i, c in enumerate(start.cells) for v in c}

    queue: deque[int] = deque(range(len(cells)) if active is None else active)
    queued = set(queue)

    while queue:
        s = queue.popleft()
        queued.discard(s)
        splitter = cells[s]
        if splitter is None:
            continue
        counts: dict[int, int] = {}
        for v in splitter:
            for u in adj[v]:
                counts[u] = counts.get(u, 0) + 1
        touched = {cell_of[u] for u in counts}
        position = {cid: i for i, cid in enumerate(order)}
        for cid in sorted(touched, key=position.__getitem__):
            members = cells[cid]
            if members is None or len(members) == 1:
                continue
            groups: dict[int, list[int]] = {}
            for v in members:
                groups.setdefault(counts.get(v, 0), []).append(v)
            if len(groups) == 1:
                continue
            fragments = [groups[k] for k in sorted(groups)]
            new_ids = []
            for frag in fragments:
                nid = len(cells)
                cells.append(frag)
                for v in frag:
                    cell_of[v] = nid
                new_ids.append(nid)
            cells[cid] = None
            at = order.index(cid)
            order[at : at + 1] = new_ids
            for nid in new_ids:
                if nid not in queued:
                    queue.append(nid)
                    queued.add(nid)
    return Coloring(tuple(cells[cid]) for cid in order)


def individualize(coloring: Coloring, vertex: int) -> Coloring:
    """Split the vertex off into its own cell, placed just before the rest."""
    cells = []
    found = False
    for cell in coloring.cells:
        if vertex in cell:
            if len(cell) < 2:
                raise ValueError(f"vertex {vertex} is already in a singleton cell")
            cells.append((vertex,))
            cells.append(tuple(v for v in cell if v != vertex))
            found = True
        else:
            cells.append(cell)
    if not found:
        raise ValueError(f"vertex {vertex} not covered by the coloring")
    return Coloring(cells)


def is_equitable(graph: ColoredGraph, coloring: Coloring) -> bool:
    """Direct check of the stable-coloring condition d(u,V_i) = d(v,V_i)."""
    neighbor = graph.neighbor_sets()
    for cell in coloring.cells:
        for target in coloring.cells:
            target_set = set(target)
            degrees = {len(neighbor[v] & target_set) for v in cell}
            if len(degrees) > 1:
                return False
    return True


def to_dimacs(graph: ColoredGraph) -> str:
    """DIMACS-like debug dump: "p edge n m", "e u v" lines (1-based) and
    "c color vertex colorid" comments for cross-checks with external tools."""
    lines = [f"p edge {graph.vertex_count} {graph.edge_count}"]
    for u, nbrs in enumerate(graph.adjacency):
        for v in nbrs:
            if u < v:
                lines.append(f"e {u + 1} {v + 1}")
    cell_of = graph.initial_coloring.cell_index()
    for v in range(graph.vertex_count):
        lines.append(f"c color {v + 1} {cell_of[v]}")
    return "\n".join(lines) + "\n"
