from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterator

    from biqbracket.graphs.framed import FramedGraph

CODE_FORMAT = "fg1"

Words = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Isomorphism invariant of a framed graph.

    Each connected component is a tuple of unicursal words (cyclic walks that leave every vertex through the half-edge
    opposite the entering one) over vertex labels assigned by first visit, minimized over all traversal choices.
    """

    components: tuple[Words, ...]
    free_circles: int

    @property
    def vertex_count(self) -> int:
        return sum(len(word) for words in self.components for word in words) // 2

    def __str__(self) -> str:
        parts = [
            "".join("(" + " ".join(str(label + 1) for label in word) + ")" for word in words)
            for words in self.components
        ]
        parts.extend("○" for _ in range(self.free_circles))
        if not parts:
            return "∅"
        if not self.components:
            return " + ".join(parts)
        return f"{CODE_FORMAT}:" + " + ".join(parts)


def _walk(matching: tuple[int, ...], entry: int, labels: dict[int, int], visited: set[int]) -> tuple[int, ...]:
    word = []
    e = entry
    while True:
        v = e // 4
        if v not in labels:
            labels[v] = len(labels)
        word.append(labels[v])
        visited.add(e & ~2)
        e = matching[e ^ 2]
        if e == entry:
            return tuple(word)


def _branches(
    matching: tuple[int, ...], entry: int, labels: dict[int, int], visited: set[int], words: Words
) -> Iterator[Words]:
    labels = dict(labels)
    visited = set(visited)
    words = (*words, _walk(matching, entry, labels, visited))
    for v, _ in sorted(labels.items(), key=lambda item: item[1]):
        passage = next((p for p in (4 * v, 4 * v + 1) if p not in visited), None)
        if passage is not None:
            for start in (passage, passage ^ 2):
                yield from _branches(matching, start, labels, visited, words)
            return
    yield words


def _components(graph: FramedGraph) -> list[list[int]]:
    seen: set[int] = set()
    components = []
    for root in range(graph.vertex_count):
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        component = []
        while stack:
            v = stack.pop()
            component.append(v)
            for slot in range(4):
                w = graph.matching[4 * v + slot] // 4
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        components.append(sorted(component))
    return components


@lru_cache(maxsize=65536)
def canonical_code(graph: FramedGraph) -> CanonicalCode:
    codes = []
    for component in _components(graph):
        best = min(
            words
            for v in component
            for entry in range(4 * v, 4 * v + 4)
            for words in _branches(graph.matching, entry, {}, set(), ())
        )
        codes.append(best)
    return CanonicalCode(components=tuple(sorted(codes)), free_circles=graph.free_circles)


def _vertex_symmetries() -> list[tuple[int, int, int, int]]:
    symmetries = []
    for first, second in (((0, 2), (1, 3)), ((1, 3), (0, 2))):
        for a in (first, first[::-1]):
            for b in (second, second[::-1]):
                perm = [0] * 4
                perm[0], perm[2] = a
                perm[1], perm[3] = b
                symmetries.append((perm[0], perm[1], perm[2], perm[3]))
    return symmetries


_SYMMETRIES = _vertex_symmetries()


def isomorphic(first: FramedGraph, second: FramedGraph) -> bool:
    """Backtracking isomorphism test respecting cross structure; an oracle for small graphs."""
    if first.vertex_count != second.vertex_count or first.free_circles != second.free_circles:
        return False
    g, h = first.matching, second.matching

    def place(phi: dict[int, int], used: frozenset[int], u: int, w: int, sym: tuple[int, ...]) -> dict[int, int]:
        extended = dict(phi)
        for slot in range(4):
            extended[4 * u + slot] = 4 * w + sym[slot]
        return extended

    def extend(phi: dict[int, int], used: frozenset[int]) -> bool:
        for a, image in phi.items():
            p, q = g[a], h[image]
            if p in phi:
                if phi[p] != q:
                    return False
                continue
            u, w = p // 4, q // 4
            if w in used:
                return False
            return any(
                extend(place(phi, used, u, w, sym), used | {w}) for sym in _SYMMETRIES if 4 * w + sym[p % 4] == q
            )
        return next_component(phi, used)

    def next_component(phi: dict[int, int], used: frozenset[int]) -> bool:
        root = next((v for v in range(first.vertex_count) if 4 * v not in phi), None)
        if root is None:
            return True
        return any(
            extend(place(phi, used, root, w, sym), used | {w})
            for w in range(second.vertex_count)
            if w not in used
            for sym in _SYMMETRIES
        )

    return next_component({}, frozenset())
