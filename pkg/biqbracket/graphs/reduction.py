from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Optional

from biqbracket.errors import InvalidVariantError
from biqbracket.graphs.canonical import canonical_code
from biqbracket.graphs.framed import STRAIGHT, FramedGraph, contract

if TYPE_CHECKING:
    import random

    from biqbracket.graphs.canonical import CanonicalCode


@dataclass(frozen=True)
class ReductionSite:
    """A decreasing graph move: ``kind`` is "R1" (one vertex with a loop) or "R2" (a bigon on two vertices).

    ``half_edges`` are the loop's two half-edges, or for R2 the bigon half-edges ``(a1, b1, a2, b2)`` with
    ``a1-b1`` and ``a2-b2`` the two edges.
    """

    kind: str
    vertices: tuple[int, ...]
    half_edges: tuple[int, ...]


@dataclass(frozen=True)
class NormalForm:
    graph: FramedGraph
    delta_exponent: int

    @property
    def code(self) -> CanonicalCode:
        return canonical_code(self.graph)


def _check_variant(variant: int) -> None:
    if variant not in (1, 2):
        msg = f"Variant must be 1 or 2, got {variant}"
        raise InvalidVariantError(msg)


def r1_sites(graph: FramedGraph) -> list[ReductionSite]:
    sites = []
    m = graph.matching
    for v in range(graph.vertex_count):
        for slot in range(4):
            h = 4 * v + slot
            p = m[h]
            if h < p and p // 4 == v and p != h ^ 2:
                sites.append(ReductionSite(kind="R1", vertices=(v,), half_edges=(h, p)))
    return sites


def r2_sites(graph: FramedGraph) -> list[ReductionSite]:
    sites = []
    m = graph.matching
    for u in range(graph.vertex_count):
        edges = [(4 * u + slot, m[4 * u + slot]) for slot in range(4)]
        by_neighbour: dict[int, list[tuple[int, int]]] = {}
        for a, b in edges:
            if b // 4 > u:
                by_neighbour.setdefault(b // 4, []).append((a, b))
        for v, joined in sorted(by_neighbour.items()):
            for i, (a1, b1) in enumerate(joined):
                for a2, b2 in joined[i + 1 :]:
                    if a2 != a1 ^ 2 and b2 != b1 ^ 2:
                        sites.append(ReductionSite(kind="R2", vertices=(u, v), half_edges=(a1, b1, a2, b2)))
    return sites


def find_reductions(graph: FramedGraph, variant: int) -> list[ReductionSite]:
    """Decreasing R2 sites, plus R1 sites for variant 2."""
    _check_variant(variant)
    sites = r1_sites(graph) if variant == 2 else []
    return sites + r2_sites(graph)


def apply_reduction(graph: FramedGraph, site: ReductionSite) -> FramedGraph:
    return contract(graph, dict.fromkeys(site.vertices, STRAIGHT))


def is_irreducible(graph: FramedGraph, variant: int) -> bool:
    return not find_reductions(graph, variant)


def irreducibility(graph: FramedGraph) -> tuple[bool, bool]:
    """(1-irreducible, 2-irreducible)."""
    no_r2 = not r2_sites(graph)
    return no_r2, no_r2 and not r1_sites(graph)


def normalize(graph: FramedGraph, variant: int, rng: Optional[random.Random] = None) -> NormalForm:
    """Reduce until irreducible and trade circles for powers of δ.

    A graph with vertices left drops all its circles; a graph of circles only keeps one. ``rng`` picks the
    reduction sites at random instead of the first one found.
    """
    _check_variant(variant)
    if rng is None:
        return _normalize_cached(graph, variant)
    while True:
        sites = find_reductions(graph, variant)
        if not sites:
            break
        graph = apply_reduction(graph, rng.choice(sites))
    return absorb_circles(graph)


@lru_cache(maxsize=65536)
def _normalize_cached(graph: FramedGraph, variant: int) -> NormalForm:
    while True:
        sites = find_reductions(graph, variant)
        if not sites:
            return absorb_circles(graph)
        graph = apply_reduction(graph, sites[0])


def absorb_circles(graph: FramedGraph) -> NormalForm:
    if graph.vertex_count:
        return NormalForm(graph=graph.without_circles(), delta_exponent=graph.free_circles)
    if graph.free_circles == 0:
        return NormalForm(graph=graph, delta_exponent=0)
    return NormalForm(graph=FramedGraph((), 1), delta_exponent=graph.free_circles - 1)
