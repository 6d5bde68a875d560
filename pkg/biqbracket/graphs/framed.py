from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from biqbracket.diagram.gauss import OVER_IN, OVER_OUT, UNDER_IN, UNDER_OUT, crossing_arcs, semiarcs
from biqbracket.errors import BracketError

if TYPE_CHECKING:
    import random
    from collections.abc import Mapping, Sequence

    from biqbracket.diagram.gauss import OrientedDiagram

# Half-edge h = 4*vertex + slot; slots 0/2 and 1/3 are the opposite pairs, so the opposite of h is h ^ 2.
SLOTS = {OVER_IN: 0, UNDER_IN: 1, OVER_OUT: 2, UNDER_OUT: 3}

ORIENTED = 0
DISORIENTED = 1
VERTEX = 2

STRAIGHT = {0: 2, 2: 0, 1: 3, 3: 1}
_SMOOTHING_JOINTS = {
    ORIENTED: {0: 3, 3: 0, 1: 2, 2: 1},
    DISORIENTED: {0: 1, 1: 0, 2: 3, 3: 2},
}


class FramedGraph:
    """A 4-valent graph with cross structure plus a count of vertexless circles.

    ``matching[h]`` is the half-edge joined to h by an edge.
    """

    __slots__ = ("free_circles", "matching")

    def __init__(self, matching: Sequence[int], free_circles: int = 0) -> None:
        self.matching = tuple(matching)
        self.free_circles = free_circles

    @property
    def vertex_count(self) -> int:
        return len(self.matching) // 4

    def partner(self, h: int) -> int:
        return self.matching[h]

    def without_circles(self) -> FramedGraph:
        return FramedGraph(self.matching, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FramedGraph):
            return NotImplemented
        return self.matching == other.matching and self.free_circles == other.free_circles

    def __hash__(self) -> int:
        return hash((self.matching, self.free_circles))

    def __repr__(self) -> str:
        return f"FramedGraph(matching={self.matching}, free_circles={self.free_circles})"


def make_graph(matching: Sequence[int], free_circles: int = 0) -> FramedGraph:
    n = len(matching)
    if n % 4:
        msg = f"A framed graph needs 4 half-edges per vertex, got {n}"
        raise BracketError(msg)
    for h, p in enumerate(matching):
        if not 0 <= p < n or p == h or matching[p] != h:
            msg = f"Half-edge {h} is not part of a perfect matching"
            raise BracketError(msg)
    if free_circles < 0:
        msg = "free_circles must be non-negative"
        raise BracketError(msg)
    return FramedGraph(matching, free_circles)


def contract(graph: FramedGraph, joints: Mapping[int, Mapping[int, int]]) -> FramedGraph:
    """Remove the vertices in ``joints``, splicing their half-edges as given by each vertex's slot pairing.

    Surviving vertices are renumbered in order; closed paths running only through removed vertices become
    free circles.
    """
    kept = [v for v in range(graph.vertex_count) if v not in joints]
    index = {v: i for i, v in enumerate(kept)}
    m = graph.matching
    visited: set[int] = set()

    def joint(h: int) -> int:
        v, slot = divmod(h, 4)
        return 4 * v + joints[v][slot]

    matching = [0] * (4 * len(kept))
    for v in kept:
        for slot in range(4):
            h = 4 * v + slot
            cur = m[h]
            while cur // 4 in joints:
                visited.add(cur)
                out = joint(cur)
                visited.add(out)
                cur = m[out]
            matching[4 * index[v] + slot] = 4 * index[cur // 4] + cur % 4

    circles = graph.free_circles
    for v in joints:
        for slot in range(4):
            start = 4 * v + slot
            if start in visited:
                continue
            circles += 1
            cur = start
            while cur not in visited:
                visited.add(cur)
                out = joint(cur)
                visited.add(out)
                cur = m[out]
    return FramedGraph(matching, circles)


def diagram_graph(diagram: OrientedDiagram) -> FramedGraph:
    """The graph obtained by turning every crossing into a vertex; crossing-free components become circles."""
    crossings = crossing_arcs(diagram)
    position = {c.crossing: t for t, c in enumerate(crossings)}
    matching = [0] * (4 * len(crossings))
    circles = 0
    for arc in semiarcs(diagram):
        if arc.tail is None or arc.head is None:
            circles += 1
            continue
        tail = 4 * position[arc.tail[0]] + SLOTS[arc.tail[1]]
        head = 4 * position[arc.head[0]] + SLOTS[arc.head[1]]
        matching[tail] = head
        matching[head] = tail
    return FramedGraph(matching, circles)


def graph_from_state(
    diagram: OrientedDiagram, state: Sequence[int], base: Optional[FramedGraph] = None
) -> FramedGraph:
    """The state graph; ``state[t]`` resolves the t-th crossing of ``crossing_arcs`` as ORIENTED, DISORIENTED or VERTEX."""
    graph = base if base is not None else diagram_graph(diagram)
    if len(state) != graph.vertex_count:
        msg = f"State has {len(state)} entries for {graph.vertex_count} crossings"
        raise BracketError(msg)
    return contract(graph, {t: _SMOOTHING_JOINTS[choice] for t, choice in enumerate(state) if choice != VERTEX})


def random_graph(rng: random.Random, vertices: int, max_circles: int = 1) -> FramedGraph:
    half_edges = list(range(4 * vertices))
    rng.shuffle(half_edges)
    matching = [0] * len(half_edges)
    for a, b in zip(half_edges[::2], half_edges[1::2]):
        matching[a] = b
        matching[b] = a
    return FramedGraph(matching, rng.randint(0, max_circles))
