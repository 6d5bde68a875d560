from __future__ import annotations

import re
from functools import lru_cache
from typing import Optional

from pydantic.dataclasses import dataclass
from sympy import Symbol
from sympy.polys.domains import GF, ZZ
from sympy.polys.rings import PolyRing

from biqbracket.code_utils.config_consts import SUPPORTED_ORDERS
from biqbracket.errors import DomainMismatchError

LETTERS = ("A", "B", "C", "D", "E", "F")
DELTA = "delta"

_NAME = re.compile(r"([A-F])\[(\d+),(\d+)\]")


@dataclass(frozen=True)
class VarId:
    """A bracket variable ``letter[x,y]``, or δ when ``letter == "delta"``."""

    letter: str
    x: Optional[int] = None
    y: Optional[int] = None

    @property
    def is_delta(self) -> bool:
        return self.letter == DELTA

    @property
    def name(self) -> str:
        return DELTA if self.is_delta else f"{self.letter}[{self.x},{self.y}]"

    def index(self, m: int) -> int:
        """Position in the ring's variable enumeration: letters A..F, subscripts row-major, δ last."""
        if self.is_delta:
            return len(LETTERS) * m * m
        if self.x is None or self.y is None or not (1 <= self.x <= m and 1 <= self.y <= m):
            msg = f"Variable {self.name} has subscripts outside 1..{m}"
            raise DomainMismatchError(msg)
        return LETTERS.index(self.letter) * m * m + (self.x - 1) * m + (self.y - 1)

    def __str__(self) -> str:
        return self.name


def parse_var(name: str) -> VarId:
    if name == DELTA:
        return VarId(letter=DELTA)
    match = _NAME.fullmatch(name)
    if match is None:
        msg = f"{name!r} is not a bracket variable"
        raise DomainMismatchError(msg)
    return VarId(letter=match.group(1), x=int(match.group(2)), y=int(match.group(3)))


def variable_names(m: int) -> list[str]:
    names = [f"{letter}[{x},{y}]" for letter in LETTERS for x in range(1, m + 1) for y in range(1, m + 1)]
    names.append(DELTA)
    return names


@lru_cache(maxsize=64)
def make_ring(m: int, prime: Optional[int] = None, order: str = "grevlex") -> PolyRing:
    """The bracket ring for an m-element biquandle: over ℤ when ``prime`` is None, else over GF(prime)."""
    if order not in SUPPORTED_ORDERS:
        msg = f"Unsupported monomial order {order!r}; expected one of {', '.join(SUPPORTED_ORDERS)}"
        raise DomainMismatchError(msg)
    domain = ZZ if prime is None else GF(prime)
    return PolyRing([Symbol(name) for name in variable_names(m)], domain, order)


def ring_size(ring: PolyRing) -> int:
    """The m of a bracket ring, recovered from its variable count 6m² + 1."""
    m = round(((ring.ngens - 1) / len(LETTERS)) ** 0.5)
    if len(LETTERS) * m * m + 1 != ring.ngens:
        msg = f"Ring with {ring.ngens} generators is not a bracket ring"
        raise DomainMismatchError(msg)
    return m


def ring_prime(ring: PolyRing) -> Optional[int]:
    return None if ring.domain == ZZ else int(ring.domain.characteristic())


def ring_order(ring: PolyRing) -> str:
    return str(ring.order.alias)


def variable(ring: PolyRing, var: VarId) -> object:
    return ring.gens[var.index(ring_size(ring))]
