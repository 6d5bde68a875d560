from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache
from typing import Optional

from pydantic.dataclasses import dataclass

from biqbracket.errors import GaussCodeSyntaxError, PDCodeSyntaxError, SignMismatchError, UnpairedCrossingError

OVER_IN = "over_in"
UNDER_IN = "under_in"
OVER_OUT = "over_out"
UNDER_OUT = "under_out"

_COMPONENT = re.compile(r"(?:[OU]\d+[+\-−])+", re.IGNORECASE)
_TOKEN = re.compile(r"([OU])(\d+)([+\-−])", re.IGNORECASE)
_PD_CROSSING = re.compile(r"(?:X\s*)?\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]", re.IGNORECASE)


@dataclass(frozen=True)
class Passage:
    crossing: int
    over: bool
    sign: int

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class OrientedDiagram:
    """A signed Gauss code: one circular passage sequence per component, empty for a crossing-free circle.

    Build instances through ``make_diagram`` (or the parsers), which enforce the pairing invariants.
    """

    components: tuple[tuple[Passage, ...], ...]

    @property
    def crossing_ids(self) -> tuple[int, ...]:
        return tuple(sorted({p.crossing for component in self.components for p in component}))

    @property
    def crossing_count(self) -> int:
        return sum(len(component) for component in self.components) // 2

    @property
    def component_count(self) -> int:
        return len(self.components)

    def sign_of(self, crossing: int) -> int:
        for component in self.components:
            for passage in component:
                if passage.crossing == crossing:
                    return passage.sign
        msg = f"Crossing {crossing} does not occur in the diagram"
        raise KeyError(msg)

    def __str__(self) -> str:
        return to_gauss(self)


@dataclass(frozen=True)
class Semiarc:
    index: int
    component: int
    tail: Optional[tuple[int, str]]
    head: Optional[tuple[int, str]]

    @property
    def closed(self) -> bool:
        return self.tail is None


@dataclass(frozen=True)
class CrossingArcs:
    crossing: int
    sign: int
    over_in: int
    under_in: int
    over_out: int
    under_out: int


def make_diagram(components: list[list[Passage]] | tuple[tuple[Passage, ...], ...]) -> OrientedDiagram:
    frozen = tuple(tuple(component) for component in components)
    _validate(frozen)
    return OrientedDiagram(components=frozen)


def _validate(components: tuple[tuple[Passage, ...], ...]) -> None:
    overs: Counter[int] = Counter()
    unders: Counter[int] = Counter()
    signs: dict[int, int] = {}
    for component in components:
        for passage in component:
            if passage.crossing <= 0:
                msg = f"Crossing ids must be positive integers, found {passage.crossing}"
                raise GaussCodeSyntaxError(msg)
            if passage.sign not in (1, -1):
                msg = f"Crossing {passage.crossing} has sign {passage.sign}; expected +1 or -1"
                raise GaussCodeSyntaxError(msg)
            (overs if passage.over else unders)[passage.crossing] += 1
            previous = signs.setdefault(passage.crossing, passage.sign)
            if previous != passage.sign:
                msg = f"Crossing {passage.crossing} occurs with both signs"
                raise SignMismatchError(msg)
    for crossing in sorted(set(overs) | set(unders)):
        if overs[crossing] != 1 or unders[crossing] != 1:
            msg = (
                f"Crossing {crossing} must occur exactly once as O and once as U; "
                f"found {overs[crossing]} O and {unders[crossing]} U"
            )
            raise UnpairedCrossingError(msg)


def parse_gauss(text: str) -> OrientedDiagram:
    """Parse a signed Gauss code such as ``"O1+U2+O3+U1+O2+U3+"``.

    Components are separated by commas or whitespace, ``()`` is a crossing-free circle and ``#`` starts a comment.
    """
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    components: list[list[Passage]] = []
    for chunk in re.split(r"[,\s]+", body):
        if not chunk:
            continue
        if chunk == "()":
            components.append([])
            continue
        if not _COMPONENT.fullmatch(chunk):
            msg = f"Cannot parse Gauss code component {chunk!r}"
            raise GaussCodeSyntaxError(msg)
        passages = []
        for role, crossing, sign in _TOKEN.findall(chunk):
            if int(crossing) == 0:
                msg = f"Crossing ids start at 1, found {role}{crossing}{sign}"
                raise GaussCodeSyntaxError(msg)
            passages.append(Passage(crossing=int(crossing), over=role.upper() == "O", sign=1 if sign == "+" else -1))
        components.append(passages)
    return make_diagram(components)


def to_gauss(diagram: OrientedDiagram) -> str:
    return ", ".join("".join(map(str, component)) if component else "()" for component in diagram.components)


def canonicalize(diagram: OrientedDiagram) -> OrientedDiagram:
    """Relabel crossings 1..n in order of first occurrence."""
    relabel: dict[int, int] = {}
    for component in diagram.components:
        for passage in component:
            relabel.setdefault(passage.crossing, len(relabel) + 1)
    return OrientedDiagram(
        components=tuple(
            tuple(Passage(crossing=relabel[p.crossing], over=p.over, sign=p.sign) for p in component)
            for component in diagram.components
        )
    )


@lru_cache(maxsize=4096)
def semiarcs(diagram: OrientedDiagram) -> tuple[Semiarc, ...]:
    arcs: list[Semiarc] = []
    for index, component in enumerate(diagram.components):
        k = len(component)
        if k == 0:
            arcs.append(Semiarc(index=len(arcs), component=index, tail=None, head=None))
            continue
        for i, passage in enumerate(component):
            following = component[(i + 1) % k]
            arcs.append(
                Semiarc(
                    index=len(arcs),
                    component=index,
                    tail=(passage.crossing, OVER_OUT if passage.over else UNDER_OUT),
                    head=(following.crossing, OVER_IN if following.over else UNDER_IN),
                )
            )
    return tuple(arcs)


def component_offsets(diagram: OrientedDiagram) -> tuple[int, ...]:
    """Index of the first semiarc of every component."""
    offsets = []
    total = 0
    for component in diagram.components:
        offsets.append(total)
        total += max(len(component), 1)
    return tuple(offsets)


@lru_cache(maxsize=4096)
def crossing_arcs(diagram: OrientedDiagram) -> tuple[CrossingArcs, ...]:
    """The four semiarcs at every crossing, in increasing crossing-id order."""
    ends: dict[int, dict[str, int]] = {}
    signs: dict[int, int] = {}
    for offset, component in zip(component_offsets(diagram), diagram.components):
        k = len(component)
        for i, passage in enumerate(component):
            slots = ends.setdefault(passage.crossing, {})
            signs[passage.crossing] = passage.sign
            incoming = offset + (i - 1) % k
            outgoing = offset + i
            if passage.over:
                slots[OVER_IN], slots[OVER_OUT] = incoming, outgoing
            else:
                slots[UNDER_IN], slots[UNDER_OUT] = incoming, outgoing
    return tuple(
        CrossingArcs(
            crossing=crossing,
            sign=signs[crossing],
            over_in=slots[OVER_IN],
            under_in=slots[UNDER_IN],
            over_out=slots[OVER_OUT],
            under_out=slots[UNDER_OUT],
        )
        for crossing, slots in sorted(ends.items())
    )


def semiarc_count(diagram: OrientedDiagram) -> int:
    return sum(max(len(component), 1) for component in diagram.components)


def _pd_is_positive(i: int, j: int, k: int, l: int) -> bool:
    return i == j or k == l or j == l + 1 or l > j + 1


def parse_pd(text: str) -> OrientedDiagram:
    """Parse a PD code ``X[i,j,k,l], ...`` (counterclockwise from the incoming under-strand).

    Over-strand directions are propagated from the under-strands; where propagation cannot decide,
    the consecutive-label convention of knot tables is used. Crossing ``t`` of the list becomes crossing id ``t + 1``.
    """
    body = re.sub(r"^\s*PD\s*", "", text.strip(), flags=re.IGNORECASE)
    quads = [tuple(int(v) for v in match) for match in _PD_CROSSING.findall(body)]
    leftover = _PD_CROSSING.sub("", body)
    if set(leftover) - set(" ,[]()\n\t\r"):
        msg = f"Unexpected text in PD code: {leftover.strip()!r}"
        raise PDCodeSyntaxError(msg)
    if not quads:
        return make_diagram([])

    occurrences: dict[int, list[tuple[int, int]]] = {}
    for c, quad in enumerate(quads):
        for slot, label in enumerate(quad):
            occurrences.setdefault(label, []).append((c, slot))
    for label, places in occurrences.items():
        if len(places) != 2:
            msg = f"PD label {label} occurs {len(places)} times; every label must occur exactly twice"
            raise PDCodeSyntaxError(msg)

    # True when the strand enters the crossing through that slot.
    entering: dict[tuple[int, int], bool] = {}
    for c in range(len(quads)):
        entering[(c, 0)] = True
        entering[(c, 2)] = False

    def other_place(c: int, slot: int) -> tuple[int, int]:
        first, second = occurrences[quads[c][slot]]
        return second if first == (c, slot) else first

    def propagate() -> None:
        changed = True
        while changed:
            changed = False
            for c in range(len(quads)):
                if (c, 1) in entering:
                    continue
                for slot, partner in ((1, 3), (3, 1)):
                    other = other_place(c, slot)
                    if other in entering and other != (c, slot):
                        entering[(c, slot)] = not entering[other]
                        entering[(c, partner)] = entering[other]
                        changed = True
                        break

    propagate()
    for c, (i, j, k, l) in enumerate(quads):
        if (c, 1) not in entering:
            positive = _pd_is_positive(i, j, k, l)
            entering[(c, 3)] = positive
            entering[(c, 1)] = not positive
            propagate()

    for label, ((c1, s1), (c2, s2)) in occurrences.items():
        if entering[(c1, s1)] == entering[(c2, s2)]:
            msg = f"PD label {label} cannot be oriented consistently"
            raise PDCodeSyntaxError(msg)

    signs = [1 if entering[(c, 3)] else -1 for c in range(len(quads))]
    head_of = {quads[c][slot]: (c, slot) for (c, slot), enters in entering.items() if enters}
    components: list[list[Passage]] = []
    visited: set[int] = set()
    for start in sorted(occurrences):
        if start in visited:
            continue
        passages: list[Passage] = []
        label = start
        while label not in visited:
            visited.add(label)
            c, slot = head_of[label]
            over = slot in (1, 3)
            passages.append(Passage(crossing=c + 1, over=over, sign=signs[c]))
            out_slot = 2 if slot == 0 else (3 if slot == 1 else 1)
            label = quads[c][out_slot]
        components.append(passages)
    return make_diagram(components)


def same_up_to_rotation(first: OrientedDiagram, second: OrientedDiagram) -> bool:
    if first.component_count != second.component_count:
        return False
    return all(_min_rotation(a) == _min_rotation(b) for a, b in zip(first.components, second.components))


def _min_rotation(component: tuple[Passage, ...]) -> tuple[tuple[int, bool, int], ...]:
    keyed = tuple((p.crossing, p.over, p.sign) for p in component)
    if not keyed:
        return keyed
    return min(keyed[i:] + keyed[:i] for i in range(len(keyed)))
