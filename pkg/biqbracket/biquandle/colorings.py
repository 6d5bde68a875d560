from __future__ import annotations

from itertools import product
from typing import TYPE_CHECKING

from pydantic.dataclasses import dataclass

from biqbracket.biquandle.biquandle import crossing_colors, crossing_label
from biqbracket.diagram.gauss import crossing_arcs, semiarc_count
from biqbracket.errors import InvalidColoringError

if TYPE_CHECKING:
    from biqbracket.biquandle.biquandle import Biquandle
    from biqbracket.diagram.gauss import CrossingArcs, OrientedDiagram


@dataclass(frozen=True)
class Coloring:
    """``colors[i]`` is the element on semiarc i."""

    colors: tuple[int, ...]

    def __str__(self) -> str:
        return " ".join(map(str, self.colors))


def _arcs(c: CrossingArcs) -> tuple[int, int, int, int]:
    return c.over_in, c.under_in, c.over_out, c.under_out


def _fits(arcs: tuple[int, int, int, int], quad: tuple[int, int, int, int], assign: list[int]) -> bool:
    seen: dict[int, int] = {}
    for arc, value in zip(arcs, quad):
        if assign[arc] and assign[arc] != value:
            return False
        if seen.setdefault(arc, value) != value:
            return False
    return True


def enumerate_colorings(diagram: OrientedDiagram, b: Biquandle) -> list[Coloring]:
    """All colorings of ``diagram`` by ``b``, sorted lexicographically.

    Branches on the lowest unassigned semiarc and propagates through every crossing whose admissible
    labels become unique.
    """
    crossings = crossing_arcs(diagram)
    n_arcs = semiarc_count(diagram)
    quads = {
        sign: [crossing_colors(b, sign, (x, y)) for x in b.elements for y in b.elements] for sign in (1, -1)
    }
    touching: list[list[int]] = [[] for _ in range(n_arcs)]
    for index, c in enumerate(crossings):
        for arc in set(_arcs(c)):
            touching[arc].append(index)

    assign = [0] * n_arcs
    trail: list[int] = []
    found: list[Coloring] = []

    def propagate(queue: list[int]) -> bool:
        while queue:
            c = crossings[queue.pop()]
            arcs = _arcs(c)
            matches = [quad for quad in quads[c.sign] if _fits(arcs, quad, assign)]
            if not matches:
                return False
            if len(matches) == 1:
                for arc, value in zip(arcs, matches[0]):
                    if not assign[arc]:
                        assign[arc] = value
                        trail.append(arc)
                        queue.extend(touching[arc])
        return True

    def search(start: int) -> None:
        arc = next((a for a in range(start, n_arcs) if not assign[a]), None)
        if arc is None:
            found.append(Coloring(colors=tuple(assign)))
            return
        for value in b.elements:
            mark = len(trail)
            assign[arc] = value
            trail.append(arc)
            if propagate(list(touching[arc])):
                search(arc + 1)
            while len(trail) > mark:
                assign[trail.pop()] = 0

    search(0)
    return sorted(found, key=lambda coloring: coloring.colors)


def brute_force_colorings(diagram: OrientedDiagram, b: Biquandle) -> list[Coloring]:
    """Exhaustive check over all m^arcs assignments."""
    crossings = crossing_arcs(diagram)
    result = []
    for colors in product(b.elements, repeat=semiarc_count(diagram)):
        if all(is_consistent(b, c, colors) for c in crossings):
            result.append(Coloring(colors=colors))
    return result


def is_consistent(b: Biquandle, c: CrossingArcs, colors: tuple[int, ...]) -> bool:
    over_in, under_in, over_out, under_out = (colors[a] for a in _arcs(c))
    label = crossing_label(c.sign, over_in, under_in, over_out, under_out)
    return crossing_colors(b, c.sign, label) == (over_in, under_in, over_out, under_out)


def crossing_labels(diagram: OrientedDiagram, coloring: Coloring, b: Biquandle) -> tuple[tuple[int, int], ...]:
    """The (x, y) label of every crossing, in ``crossing_arcs`` order."""
    if len(coloring.colors) != semiarc_count(diagram) or any(not 1 <= v <= b.m for v in coloring.colors):
        msg = f"Coloring {coloring} does not assign an element of 1..{b.m} to each of {semiarc_count(diagram)} semiarcs"
        raise InvalidColoringError(msg)
    labels = []
    for c in crossing_arcs(diagram):
        if not is_consistent(b, c, coloring.colors):
            msg = f"Coloring {coloring} violates the crossing relation at crossing {c.crossing}"
            raise InvalidColoringError(msg)
        colors = [coloring.colors[a] for a in _arcs(c)]
        labels.append(crossing_label(c.sign, *colors))
    return tuple(labels)
