from __future__ import annotations

from typing import TYPE_CHECKING

from biqbracket.diagram.gauss import OrientedDiagram, Passage, make_diagram
from biqbracket.errors import GaussCodeSyntaxError

if TYPE_CHECKING:
    import random
    from collections.abc import Sequence


def braid_closure(word: Sequence[int], strands: int) -> OrientedDiagram:
    """Closure of a braid word; letter ``±i`` is σ_i^{±1} on positions i and i+1, crossing ids follow the word.

    At σ_i the strand coming from position i passes over; at σ_i^{-1} it passes under.
    """
    if strands < 1:
        msg = "A braid needs at least one strand"
        raise GaussCodeSyntaxError(msg)
    for letter in word:
        if letter == 0 or abs(letter) >= strands:
            msg = f"Letter {letter} is not a generator of the {strands}-strand braid group"
            raise GaussCodeSyntaxError(msg)

    def run(start: int) -> tuple[list[Passage], int]:
        position = start
        passages = []
        for k, letter in enumerate(word, start=1):
            i = abs(letter)
            sign = 1 if letter > 0 else -1
            if position == i:
                passages.append(Passage(crossing=k, over=sign > 0, sign=sign))
                position = i + 1
            elif position == i + 1:
                passages.append(Passage(crossing=k, over=sign < 0, sign=sign))
                position = i
        return passages, position

    components = []
    done: set[int] = set()
    for start in range(1, strands + 1):
        if start in done:
            continue
        component: list[Passage] = []
        position = start
        while position not in done:
            done.add(position)
            passages, position = run(position)
            component.extend(passages)
        components.append(component)
    return make_diagram(components)


def random_braid_diagram(rng: random.Random, max_crossings: int, max_strands: int = 3) -> OrientedDiagram:
    strands = rng.randint(1, max_strands)
    if strands == 1:
        return braid_closure([], 1)
    length = rng.randint(0, max_crossings)
    word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]
    return braid_closure(word, strands)
