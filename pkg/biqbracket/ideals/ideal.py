from __future__ import annotations

import json
from itertools import product
from typing import TYPE_CHECKING, Any, Optional

from pydantic.dataclasses import dataclass
from sympy.polys.rings import PolyElement

from biqbracket.biquandle.biquandle import Biquandle, biquandle_hash
from biqbracket.cli_cmds.console import logger
from biqbracket.code_utils.config_consts import DEFAULT_TRANSCRIPTION
from biqbracket.ideals.templates import families, parse_relation
from biqbracket.polyring.polynomial import to_json_terms
from biqbracket.polyring.variables import LETTERS, make_ring

if TYPE_CHECKING:
    from biqbracket.ideals.templates import TermTemplate

# A=D=1, B=E=-1, C=F=0, δ=2 sends every generator of both ideals to zero.
ANNIHILATING_POINT = {"A": 1, "B": -1, "C": 0, "D": 1, "E": -1, "F": 0, "delta": 2}


def _labels(b: Biquandle, subscripts: tuple[int, ...]) -> dict[int, tuple[int, int]]:
    if len(subscripts) == 1:
        (x,) = subscripts
        return {1: (x, x)}
    if len(subscripts) == 2:
        x, y = subscripts
        return {1: (x, y)}
    x, y, z = subscripts
    return {
        1: (x, y),
        2: (y, z),
        3: (b.o(x, y), b.s(z, y)),
        4: (x, z),
        5: (b.s(y, x), b.s(z, x)),
        6: (b.o(x, z), b.o(y, z)),
    }


def _instantiate(
    terms: tuple[TermTemplate, ...], labels: dict[int, tuple[int, int]], m: int, delta: Optional[int]
) -> dict[tuple[int, ...], int]:
    ngens = len(LETTERS) * m * m + 1
    result: dict[tuple[int, ...], int] = {}
    for term in terms:
        monom = [0] * ngens
        c = term.coefficient
        for letter, slot in term.factors:
            x, y = labels[slot]
            monom[LETTERS.index(letter) * m * m + (x - 1) * m + (y - 1)] += 1
        if term.delta:
            if delta is None:
                monom[-1] += term.delta
            else:
                c *= delta**term.delta
        key = tuple(monom)
        result[key] = result.get(key, 0) + c
    return {k: v for k, v in result.items() if v}


def raw_relations(
    b: Biquandle, variant: int, delta: Optional[int] = 1, transcription: str = DEFAULT_TRANSCRIPTION
) -> dict[str, list[PolyElement]]:
    """Every instantiated relation per family, in family then lexicographic subscript order, before dedup.

    ``delta=None`` keeps δ as a ring variable.
    """
    ring = make_ring(b.m)
    out: dict[str, list[PolyElement]] = {}
    for family in families(variant, transcription):
        templates = [parse_relation(relation) for relation in family.relations]
        polys = []
        for subscripts in product(b.elements, repeat=family.arity):
            labels = _labels(b, subscripts)
            polys.extend(ring.from_dict(_instantiate(t, labels, b.m, delta)) for t in templates)
        out[family.name] = polys
    return out


@dataclass(frozen=True, config={"arbitrary_types_allowed": True})
class IdealSpec:
    biquandle: Biquandle
    variant: int
    delta: Optional[int]
    transcription: str
    generators: tuple[PolyElement, ...]
    family_counts: tuple[tuple[str, int], ...]

    @property
    def raw_count(self) -> int:
        return sum(count for _, count in self.family_counts)

    @property
    def ring(self) -> Any:
        return make_ring(self.biquandle.m)

    def manifest(self) -> dict[str, Any]:
        return {
            "biquandle": biquandle_hash(self.biquandle),
            "m": self.biquandle.m,
            "variant": self.variant,
            "delta": "symbolic" if self.delta is None else self.delta,
            "transcription": self.transcription,
            "families": dict(self.family_counts),
            "generators": len(self.generators),
        }

    def groebner_manifest(self, prime: int, order: str) -> dict[str, Any]:
        return {**self.manifest(), "prime": prime, "order": order}

    def to_json(self) -> str:
        return json.dumps(
            {"manifest": self.manifest(), "generators": [to_json_terms(g) for g in self.generators]}, indent=2
        )


def build_ideal(
    b: Biquandle, variant: int, delta: Optional[int] = 1, transcription: str = DEFAULT_TRANSCRIPTION
) -> IdealSpec:
    relations = raw_relations(b, variant, delta, transcription)
    generators: list[PolyElement] = []
    seen: set[PolyElement] = set()
    for polys in relations.values():
        for g in polys:
            if g and g not in seen:
                seen.add(g)
                generators.append(g)
    counts = tuple((name, len(polys)) for name, polys in relations.items())
    logger.debug(
        f"I_{variant} for m={b.m}: {sum(c for _, c in counts)} relations, {len(generators)} distinct nonzero generators"
    )
    return IdealSpec(
        biquandle=b,
        variant=variant,
        delta=delta,
        transcription=transcription,
        generators=tuple(generators),
        family_counts=counts,
    )
