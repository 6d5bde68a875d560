"""Relation templates of the bracket ideals.

A relation is written as signed terms separated by `` + `` / `` - ``. A term is an optional integer factor, an
optional ``d`` for δ, a word of variable letters and, for triple families, ``/`` followed by the label slot of each
letter. Slots 1-3 are the labels read along one side of the third move and 4-6 those along the other side:

    1 = (x, y)       2 = (y, z)       3 = (x∘y, z∗y)
    4 = (x, z)       5 = (y∗x, z∗x)   6 = (x∘z, y∘z)

``/1`` abbreviates ``/123`` and ``/2`` abbreviates ``/456``. Element and pair families place every letter at
(x, x) or (x, y).
"""

from __future__ import annotations

import re

from pydantic.dataclasses import dataclass

from biqbracket.errors import InvalidVariantError

_SPLIT = re.compile(r"\s+([+-])\s+")
_TERM = re.compile(r"(\d+)?(d)?([A-F]*)(?:/([1-6]+))?")


@dataclass(frozen=True)
class TermTemplate:
    coefficient: int
    delta: int
    factors: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Family:
    name: str
    arity: int
    relations: tuple[str, ...]


def parse_relation(text: str) -> tuple[TermTemplate, ...]:
    pieces = _SPLIT.split(text.strip())
    signs = [1] + [1 if op == "+" else -1 for op in pieces[1::2]]
    terms = []
    for sign, token in zip(signs, pieces[::2]):
        match = _TERM.fullmatch(token)
        if match is None or not any(match.groups()):
            msg = f"Bad relation term {token!r} in {text!r}"
            raise InvalidVariantError(msg)
        factor, delta, letters, slots = match.groups()
        if slots is None:
            positions = [1] * len(letters)
        elif len(slots) == 1:
            positions = [int(slots) * 3 - 2 + i for i in range(len(letters))]
        else:
            positions = [int(s) for s in slots]
        if len(positions) != len(letters):
            msg = f"Term {token!r} names {len(letters)} letters but {len(positions)} slots"
            raise InvalidVariantError(msg)
        terms.append(
            TermTemplate(
                coefficient=sign * int(factor or 1),
                delta=1 if delta else 0,
                factors=tuple(zip(letters, positions)),
            )
        )
    return tuple(terms)


# Third-move relations shared by both variants. Two terms carry a misprinted (x, z) subscript on their first factor;
# the corrected reading places it at (x, y).
_COMMON_TRIPLES = (
    "AAA/1 + CCA/1 - AAA/2 - ACC/2",
    "ABB/1 + CBC/1 - BBA/2 - CBC/2",
    "BAB/1 + BCC/1 - BAB/2 - CCB/2",
    "ACA/1 + CAA/1 - CAA/2",
    "AAC/1 - AAC/2 - ACA/2",
    "ACB/1 - BBC/2 - CBA/2",
    "BCB/1 + {bac} - BAC/2",
    "ABC/1 + {cbb} - BCA/2",
    "CAB/1 - BCB/2 - CAB/2",
    "CCB/1 - BCC/2",
    "ACC/1 - CCA/2",
    "CAC/1 - CAC/2",
)

_READINGS = {
    "corrected": {"bac": "BAC/1", "cbb": "CBB/1"},
    "verbatim": {"bac": "BAC/423", "cbb": "CBB/423"},
}

_EXTRA_TRIPLES_1 = (
    "BCA/1",
    "CBA/1",
    "BBC/1",
    "CCC/1",
    "ABC/2",
    "ACB/2",
    "CBB/2",
    "CCC/2",
    "AAB/1 - ABA/2 - AAB/2 - dABB/2 - BBB/2",
    "BAA/2 - BAA/1 - ABA/1 - dBBA/1 - BBB/1",
)

_EXTRA_TRIPLES_2 = (
    "CCC/1",
    "CCC/2",
    "AAB/1 - ABA/2 - AAB/2 - dABB/2 - BBB/2 - ABC/2 - ACB/2 - CBB/2",
    "BAA/2 - BAA/1 - ABA/1 - dBBA/1 - BBB/1 - BCA/1 - CBA/1 - BBC/1",
)


def families(variant: int, transcription: str = "corrected") -> tuple[Family, Family, Family]:
    """The element, pair and triple families generating the ideal of ``variant``."""
    if transcription not in _READINGS:
        msg = f"Unknown transcription {transcription!r}; expected one of {', '.join(_READINGS)}"
        raise InvalidVariantError(msg)
    common = tuple(relation.format(**_READINGS[transcription]) for relation in _COMMON_TRIPLES)
    if variant == 1:
        return (
            Family(name="i_1", arity=1, relations=("dA + B - 1", "dD + E - 1", "C", "F")),
            Family(
                name="ii_1",
                arity=2,
                relations=("AF", "CD", "BF", "CE", "AD - BE", "AD + CF - 1", "dAD + AE + BD"),
            ),
            Family(name="iii_1", arity=3, relations=common + _EXTRA_TRIPLES_1),
        )
    if variant == 2:
        return (
            Family(name="i_2", arity=1, relations=("dA + B + C - 1", "dD + E + F - 1")),
            Family(name="ii_2", arity=2, relations=("AF + CD", "BF + CE", "AD - BE", "AD + CF - 1", "dAD + AE + BD")),
            Family(name="iii_2", arity=3, relations=common + _EXTRA_TRIPLES_2),
        )
    msg = f"Variant must be 1 or 2, got {variant}"
    raise InvalidVariantError(msg)
