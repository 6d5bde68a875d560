from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING

from pydantic.dataclasses import dataclass

from biqbracket.diagram.gauss import OrientedDiagram, Passage, component_offsets, make_diagram, semiarc_count
from biqbracket.errors import PatternMismatchError, SiteNotFoundError

if TYPE_CHECKING:
    import random


class MoveKind(str, Enum):
    R1_INSERT = "R1-insert"
    R1_DELETE = "R1-delete"
    R2_INSERT = "R2-insert"
    R2_DELETE = "R2-delete"
    R3 = "R3"


@dataclass(frozen=True)
class MoveSpec:
    """A Reidemeister move and where to apply it.

    ``site`` and ``variant`` by kind:

    - R1-insert: site ``(semiarc,)``; variant ``(over_first, sign)`` with over_first in {0, 1}.
    - R1-delete: site ``(crossing,)``.
    - R2-insert: site ``(over_semiarc, under_semiarc)``; variant ``(first_sign, reversed, under_first)``.
      ``reversed`` makes the under strand meet the two new crossings in the opposite order;
      ``under_first`` only matters when both semiarcs coincide.
    - R2-delete: site ``(p, q)``.
    - R3: site ``(p, q, r)`` where p is crossed by strands X over Y, q by X over Z and r by Y over Z.
    """

    kind: MoveKind
    site: tuple[int, ...]
    variant: tuple[int, ...] = ()

    def __str__(self) -> str:
        variant = f" {self.variant}" if self.variant else ""
        return f"{self.kind.value} at {self.site}{variant}"


def _locate(diagram: OrientedDiagram) -> dict[tuple[int, bool], tuple[int, int]]:
    return {
        (p.crossing, p.over): (c, i) for c, component in enumerate(diagram.components) for i, p in enumerate(component)
    }


def _adjacent(diagram: OrientedDiagram, first: tuple[int, int], second: tuple[int, int]) -> bool:
    """True when ``second`` directly follows ``first`` along the orientation."""
    (c1, i1), (c2, i2) = first, second
    if c1 != c2:
        return False
    k = len(diagram.components[c1])
    return i1 != i2 and (i1 + 1) % k == i2


def _next_id(diagram: OrientedDiagram) -> int:
    ids = diagram.crossing_ids
    return (ids[-1] if ids else 0) + 1


def _insert(diagram: OrientedDiagram, insertions: dict[int, list[Passage]]) -> OrientedDiagram:
    arcs = semiarc_count(diagram)
    for arc in insertions:
        if not 0 <= arc < arcs:
            msg = f"Semiarc {arc} does not exist; the diagram has {arcs} semiarcs"
            raise SiteNotFoundError(msg)
    components: list[list[Passage]] = []
    for offset, component in zip(component_offsets(diagram), diagram.components):
        if not component:
            components.append(list(insertions.get(offset, [])))
            continue
        rebuilt: list[Passage] = []
        for i, passage in enumerate(component):
            rebuilt.append(passage)
            rebuilt.extend(insertions.get(offset + i, []))
        components.append(rebuilt)
    return make_diagram(components)


def _remove(diagram: OrientedDiagram, crossings: set[int]) -> OrientedDiagram:
    return make_diagram([[p for p in component if p.crossing not in crossings] for component in diagram.components])


def _r1_insert(diagram: OrientedDiagram, move: MoveSpec) -> OrientedDiagram:
    (arc,) = move.site
    over_first, sign = move.variant or (1, 1)
    k = _next_id(diagram)
    pair = [Passage(crossing=k, over=True, sign=sign), Passage(crossing=k, over=False, sign=sign)]
    if not over_first:
        pair.reverse()
    return _insert(diagram, {arc: pair})


def _r1_delete(diagram: OrientedDiagram, move: MoveSpec) -> OrientedDiagram:
    (k,) = move.site
    where = _locate(diagram)
    if (k, True) not in where:
        msg = f"Crossing {k} does not exist"
        raise SiteNotFoundError(msg)
    over, under = where[(k, True)], where[(k, False)]
    if not (_adjacent(diagram, over, under) or _adjacent(diagram, under, over)):
        msg = f"Crossing {k} is not a kink: its passages are not consecutive"
        raise PatternMismatchError(msg)
    return _remove(diagram, {k})


def _r2_insert(diagram: OrientedDiagram, move: MoveSpec) -> OrientedDiagram:
    over_arc, under_arc = move.site
    first_sign, reverse, under_first = move.variant or (1, 0, 0)
    p = _next_id(diagram)
    q = p + 1
    overs = [Passage(crossing=p, over=True, sign=first_sign), Passage(crossing=q, over=True, sign=-first_sign)]
    unders = [Passage(crossing=p, over=False, sign=first_sign), Passage(crossing=q, over=False, sign=-first_sign)]
    if reverse:
        unders.reverse()
    if over_arc == under_arc:
        return _insert(diagram, {over_arc: unders + overs if under_first else overs + unders})
    return _insert(diagram, {over_arc: overs, under_arc: unders})


def _r2_delete(diagram: OrientedDiagram, move: MoveSpec) -> OrientedDiagram:
    p, q = move.site
    where = _locate(diagram)
    if p == q or (p, True) not in where or (q, True) not in where:
        msg = f"Crossings {p} and {q} are not two distinct crossings of the diagram"
        raise SiteNotFoundError(msg)
    if diagram.sign_of(p) == diagram.sign_of(q):
        msg = f"Crossings {p} and {q} have the same sign and cannot cancel"
        raise PatternMismatchError(msg)
    for over in (True, False):
        a, b = where[(p, over)], where[(q, over)]
        if not (_adjacent(diagram, a, b) or _adjacent(diagram, b, a)):
            role = "over" if over else "under"
            msg = f"The {role} passages of crossings {p} and {q} are not consecutive"
            raise PatternMismatchError(msg)
    return _remove(diagram, {p, q})


def _r3_side(diagram: OrientedDiagram, p: int, q: int, r: int) -> int:
    """1 or 2 when (p, q, r) forms the corresponding side of the braid-like R3 pattern, 0 otherwise."""
    if len({p, q, r}) != 3:
        return 0
    where = _locate(diagram)
    if any((c, True) not in where for c in (p, q, r)):
        return 0
    if any(diagram.sign_of(c) != 1 for c in (p, q, r)):
        return 0
    x1, x2 = where[(p, True)], where[(q, True)]
    y1, y2 = where[(p, False)], where[(r, True)]
    z1, z2 = where[(q, False)], where[(r, False)]
    if _adjacent(diagram, x1, x2) and _adjacent(diagram, y1, y2) and _adjacent(diagram, z1, z2):
        return 1
    if _adjacent(diagram, x2, x1) and _adjacent(diagram, y2, y1) and _adjacent(diagram, z2, z1):
        return 2
    return 0


def _r3(diagram: OrientedDiagram, move: MoveSpec) -> OrientedDiagram:
    p, q, r = move.site
    if not _r3_side(diagram, p, q, r):
        msg = f"Crossings {(p, q, r)} do not form a positive braid-like R3 triangle"
        raise PatternMismatchError(msg)
    where = _locate(diagram)
    components = [list(component) for component in diagram.components]
    for first, second in (((p, True), (q, True)), ((p, False), (r, True)), ((q, False), (r, False))):
        (c1, i1), (c2, i2) = where[first], where[second]
        components[c1][i1], components[c2][i2] = components[c2][i2], components[c1][i1]
    return make_diagram(components)


_APPLY = {
    MoveKind.R1_INSERT: _r1_insert,
    MoveKind.R1_DELETE: _r1_delete,
    MoveKind.R2_INSERT: _r2_insert,
    MoveKind.R2_DELETE: _r2_delete,
    MoveKind.R3: _r3,
}


def apply_move(diagram: OrientedDiagram, move: MoveSpec) -> OrientedDiagram:
    return _APPLY[move.kind](diagram, move)


def inverse_move(diagram: OrientedDiagram, move: MoveSpec) -> MoveSpec:
    """The move undoing ``move`` applied to ``diagram``; defined for insertions and R3."""
    if move.kind is MoveKind.R1_INSERT:
        return MoveSpec(kind=MoveKind.R1_DELETE, site=(_next_id(diagram),))
    if move.kind is MoveKind.R2_INSERT:
        p = _next_id(diagram)
        return MoveSpec(kind=MoveKind.R2_DELETE, site=(p, p + 1))
    if move.kind is MoveKind.R3:
        return move
    msg = f"No tracked inverse for {move.kind.value}"
    raise PatternMismatchError(msg)


def find_move_sites(diagram: OrientedDiagram) -> list[MoveSpec]:
    """Every applicable R1-delete, R2-delete and R3 move, in a deterministic order."""
    sites: list[MoveSpec] = []
    where = _locate(diagram)
    ids = diagram.crossing_ids
    for k in ids:
        over, under = where[(k, True)], where[(k, False)]
        if _adjacent(diagram, over, under) or _adjacent(diagram, under, over):
            sites.append(MoveSpec(kind=MoveKind.R1_DELETE, site=(k,)))
    for i, p in enumerate(ids):
        for q in ids[i + 1 :]:
            if diagram.sign_of(p) == diagram.sign_of(q):
                continue
            if all(
                _adjacent(diagram, where[(p, o)], where[(q, o)]) or _adjacent(diagram, where[(q, o)], where[(p, o)])
                for o in (True, False)
            ):
                sites.append(MoveSpec(kind=MoveKind.R2_DELETE, site=(p, q)))
    for component in diagram.components:
        k = len(component)
        for i in range(k):
            a, b = component[i], component[(i + 1) % k]
            if not (a.over and b.over) or a.crossing == b.crossing:
                continue
            for p, q in ((a.crossing, b.crossing), (b.crossing, a.crossing)):
                for r in ids:
                    if _r3_side(diagram, p, q, r):
                        spec = MoveSpec(kind=MoveKind.R3, site=(p, q, r))
                        if spec not in sites:
                            sites.append(spec)
    return sites


def random_move(diagram: OrientedDiagram, rng: random.Random) -> MoveSpec:
    """Draw one applicable move: an existing deletion or R3 site half of the time when any exist, else an insertion."""
    existing = find_move_sites(diagram)
    if existing and rng.random() < 0.5:
        return rng.choice(existing)
    arcs = semiarc_count(diagram)
    if arcs == 0:
        # The empty diagram has nowhere to insert.
        msg = "The empty diagram admits no Reidemeister move"
        raise SiteNotFoundError(msg)
    if rng.random() < 0.5:
        return MoveSpec(
            kind=MoveKind.R1_INSERT, site=(rng.randrange(arcs),), variant=(rng.randrange(2), rng.choice((1, -1)))
        )
    return MoveSpec(
        kind=MoveKind.R2_INSERT,
        site=(rng.randrange(arcs), rng.randrange(arcs)),
        variant=(rng.choice((1, -1)), rng.randrange(2), rng.randrange(2)),
    )
