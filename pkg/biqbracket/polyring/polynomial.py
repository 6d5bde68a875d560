from __future__ import annotations

import re
from typing import TYPE_CHECKING, Literal, Optional, Union

from sympy.polys.domains import GF
from sympy.polys.rings import PolyElement, PolyRing

from biqbracket.errors import DomainMismatchError
from biqbracket.polyring.variables import ring_prime

if TYPE_CHECKING:
    from collections.abc import Mapping

_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_POWER = re.compile(r"(.+?)\s*\^\s*(\d+)")


def coefficient(c: object, prime: Optional[int]) -> int:
    """Integer value of a ring coefficient; GF(p) elements map to their symmetric representative."""
    value = int(c)  # type: ignore[call-overload]
    if prime is None:
        return value
    value %= prime
    return value - prime if value > prime // 2 else value


def terms_of(p: PolyElement) -> list[tuple[tuple[int, ...], int]]:
    """(monomial, integer coefficient) pairs in decreasing monomial order."""
    prime = ring_prime(p.ring)
    return [(monom, coefficient(c, prime)) for monom, c in p.terms()]


def monomial_text(ring: PolyRing, monom: tuple[int, ...]) -> str:
    factors = []
    for symbol, e in zip(ring.symbols, monom):
        if e == 1:
            factors.append(str(symbol))
        elif e > 1:
            factors.append(f"{symbol}^{e}")
    return "*".join(factors)


def to_text(p: PolyElement) -> str:
    """Render as ``3*A[1,2]^2*delta - 1``, terms in decreasing monomial order."""
    if not p:
        return "0"
    parts: list[str] = []
    for monom, c in terms_of(p):
        body = monomial_text(p.ring, monom)
        magnitude = abs(c)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        if not parts:
            parts.append(f"-{text}" if c < 0 else text)
        else:
            parts.append(f"- {text}" if c < 0 else f"+ {text}")
    return " ".join(parts)


def parse_polynomial(text: str, ring: PolyRing) -> PolyElement:
    index = {str(symbol): i for i, symbol in enumerate(ring.symbols)}
    body = text.strip()
    if not body:
        msg = "Empty polynomial text"
        raise DomainMismatchError(msg)
    terms: dict[tuple[int, ...], int] = {}
    position = 0
    for match in _TERM.finditer(body):
        if match.start() != position:
            break
        position = match.end()
        sign = -1 if match.group(1) == "-" else 1
        c = sign
        monom = [0] * ring.ngens
        for factor in match.group(2).split("*"):
            factor = factor.strip()
            if not factor:
                msg = f"Empty factor in {text!r}"
                raise DomainMismatchError(msg)
            if factor.isdigit():
                c *= int(factor)
                continue
            power = _POWER.fullmatch(factor)
            name, e = (power.group(1), int(power.group(2))) if power else (factor, 1)
            if name not in index:
                msg = f"Unknown variable {name!r} in {text!r}"
                raise DomainMismatchError(msg)
            monom[index[name]] += e
        key = tuple(monom)
        terms[key] = terms.get(key, 0) + c
    if position != len(body):
        msg = f"Cannot parse polynomial {text!r}"
        raise DomainMismatchError(msg)
    return ring.from_dict({m: c for m, c in terms.items() if c})


def to_json_terms(p: PolyElement) -> list[list[object]]:
    """``[[coefficient, [[variable, exponent], ...]], ...]`` in decreasing monomial order."""
    names = [str(symbol) for symbol in p.ring.symbols]
    return [[c, [[names[i], e] for i, e in enumerate(monom) if e]] for monom, c in terms_of(p)]


def from_json_terms(data: list[list[object]], ring: PolyRing) -> PolyElement:
    index = {str(symbol): i for i, symbol in enumerate(ring.symbols)}
    terms: dict[tuple[int, ...], int] = {}
    for entry in data:
        c, factors = entry
        monom = [0] * ring.ngens
        for name, e in factors:  # type: ignore[attr-defined]
            if name not in index:
                msg = f"Unknown variable {name!r} in polynomial JSON"
                raise DomainMismatchError(msg)
            monom[index[name]] += int(e)
        key = tuple(monom)
        terms[key] = terms.get(key, 0) + int(c)  # type: ignore[call-overload]
    return ring.from_dict({m: c for m, c in terms.items() if c})


def poly_arith(
    op: Literal["add", "mul", "scale"], lhs: PolyElement, rhs: Union[PolyElement, int]
) -> PolyElement:
    if isinstance(rhs, PolyElement) and rhs.ring != lhs.ring:
        msg = f"Cannot combine polynomials over {lhs.ring.domain} and {rhs.ring.domain} with different variables"
        raise DomainMismatchError(msg)
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "scale":
        if isinstance(rhs, PolyElement):
            msg = "scale takes an integer factor"
            raise DomainMismatchError(msg)
        return lhs * rhs
    msg = f"Unknown operation {op!r}"
    raise DomainMismatchError(msg)


def prime_field_ring(ring: PolyRing, prime: int, order: Optional[str] = None) -> PolyRing:
    return PolyRing(ring.symbols, GF(prime), order or ring.order)


def to_prime_field(p: PolyElement, prime: int, order: Optional[str] = None) -> PolyElement:
    target = prime_field_ring(p.ring, prime, order)
    source_prime = ring_prime(p.ring)
    return target.from_dict({m: v % prime for m, c in p.terms() if (v := coefficient(c, source_prime)) % prime})


def to_integers(p: PolyElement, ring: PolyRing) -> PolyElement:
    """Lift GF(p) coefficients to their symmetric integer representatives in ``ring``."""
    prime = ring_prime(p.ring)
    return ring.from_dict({m: coefficient(c, prime) for m, c in p.terms()})


def evaluate(p: PolyElement, values: Mapping[str, int]) -> int:
    """Integer value of ``p`` at a point.

    ``values`` maps full variable names (``"A[1,2]"``) or bare letters (``"A"``, covering every subscript).
    """
    point = []
    for symbol in p.ring.symbols:
        name = str(symbol)
        if name in values:
            point.append(values[name])
        elif name.split("[", 1)[0] in values:
            point.append(values[name.split("[", 1)[0]])
        else:
            msg = f"No value given for {name}"
            raise DomainMismatchError(msg)
    prime = ring_prime(p.ring)
    total = 0
    for monom, c in p.terms():
        term = coefficient(c, prime)
        for v, e in zip(point, monom):
            if e:
                term *= v**e
        total += term
    return total if prime is None else total % prime
