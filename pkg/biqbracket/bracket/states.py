from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import TYPE_CHECKING, Optional

from biqbracket.biquandle.colorings import crossing_labels
from biqbracket.cli_cmds.console import logger
from biqbracket.diagram.gauss import crossing_arcs
from biqbracket.graphs.framed import DISORIENTED, ORIENTED, VERTEX, diagram_graph, graph_from_state
from biqbracket.graphs.reduction import absorb_circles, normalize
from biqbracket.polyring.variables import LETTERS, make_ring

if TYPE_CHECKING:
    from collections.abc import Sequence

    from sympy.polys.rings import PolyElement

    from biqbracket.biquandle.biquandle import Biquandle
    from biqbracket.biquandle.colorings import Coloring
    from biqbracket.diagram.gauss import OrientedDiagram
    from biqbracket.graphs.canonical import CanonicalCode
    from biqbracket.graphs.framed import FramedGraph
    from biqbracket.polyring.groebner import ProgressCallback

RESOLUTIONS = (ORIENTED, DISORIENTED, VERTEX)


def state_letters(sign: int) -> str:
    """Letters for the oriented smoothing, the disoriented smoothing and the vertex at a crossing of this sign."""
    return "ABC" if sign > 0 else "DEF"


@dataclass(frozen=True)
class RawState:
    monomial: PolyElement
    delta_exponent: int
    graph: FramedGraph


@dataclass(frozen=True)
class StateEntry:
    choices: tuple[int, ...]
    code: CanonicalCode
    graph: FramedGraph
    delta_exponent: int


class StateTable:
    """Every state of a diagram with its normalized graph and δ-power; independent of the coloring."""

    def __init__(
        self, diagram: OrientedDiagram, variant: int, progress: Optional[ProgressCallback] = None
    ) -> None:
        self.diagram = diagram
        self.variant = variant
        self.signs = tuple(c.sign for c in crossing_arcs(diagram))
        base = diagram_graph(diagram)
        entries = []
        total = len(RESOLUTIONS) ** len(self.signs)
        for done, choices in enumerate(product(RESOLUTIONS, repeat=len(self.signs)), start=1):
            form = normalize(graph_from_state(diagram, choices, base), variant)
            entries.append(
                StateEntry(choices=choices, code=form.code, graph=form.graph, delta_exponent=form.delta_exponent)
            )
            if progress is not None and done % 729 == 0:
                progress(done, total)
        self.entries: tuple[StateEntry, ...] = tuple(entries)
        logger.debug(f"{len(entries)} states, {len({e.code for e in entries})} distinct irreducible graphs")

    def __len__(self) -> int:
        return len(self.entries)


def variable_indices(
    diagram: OrientedDiagram, coloring: Coloring, b: Biquandle
) -> list[tuple[int, int, int]]:
    """Ring index of the variable each resolution contributes, per crossing."""
    m = b.m
    indices = []
    for c, (x, y) in zip(crossing_arcs(diagram), crossing_labels(diagram, coloring, b)):
        offset = (x - 1) * m + (y - 1)
        oriented, disoriented, vertex = (LETTERS.index(letter) * m * m + offset for letter in state_letters(c.sign))
        indices.append((oriented, disoriented, vertex))
    return indices


def expand_states(diagram: OrientedDiagram, coloring: Coloring, b: Biquandle) -> list[RawState]:
    """All 3^n states with their monomial, unreduced graph and the δ-power of the circles they drop."""
    ring = make_ring(b.m)
    indices = variable_indices(diagram, coloring, b)
    base = diagram_graph(diagram)
    states = []
    for choices in product(RESOLUTIONS, repeat=len(indices)):
        monom = state_monomial(indices, choices, ring.ngens)
        form = absorb_circles(graph_from_state(diagram, choices, base))
        states.append(RawState(monomial=ring.from_dict({monom: 1}), delta_exponent=form.delta_exponent, graph=form.graph))
    return states


def state_monomial(indices: Sequence[tuple[int, int, int]], choices: Sequence[int], ngens: int) -> tuple[int, ...]:
    monom = [0] * ngens
    for per_crossing, choice in zip(indices, choices):
        monom[per_crossing[choice]] += 1
    return tuple(monom)
